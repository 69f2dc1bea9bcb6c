//! Per-curve reports and the canonical JSON rendering shared by the
//! command-line front end and the examples.
//!
//! A report bundles everything the pipeline produces for one reduced
//! non-principal form: the exact sextic, the Igusa invariants, the factored
//! scaled discriminant D = J10, the Mestre determinant, the conic
//! obstruction when the curve is not definable over Q, and an optional
//! maximal-curve scan summary.
//!
//! JSON output is canonical: keys serialize in sorted order, every exact
//! value is a decimal string (never a JSON number, which consumers may
//! truncate to 53 bits), and factorizations are arrays of [prime, exponent]
//! string pairs in ascending prime order. Parsing and re-serializing a
//! document reproduces it byte for byte.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::arith::Factorization;
use crate::bigfloat::PrecisionContext;
use crate::conic::{conic_obstruction, det_mestre, mestre_matrix, ConicMatrix, ObstructionReport};
use crate::counting::{maximal_scan_k, MaximalScanRow};
use crate::curves::{normalized_sextic, SexticK};
use crate::error::{Error, Result};
use crate::hermitian::{definable_over_q, enumerate_reduced, type_number, HermitianForm};
use crate::igusa::{igusa_k, scaled_disc_factorization, sextic_disc_k, IgusaInvariants};
use crate::kfield::KElement;

/// The N values accepted by the `report` command: the fields of class
/// number one, where every non-principal reduced form yields a curve report.
pub const REPORT_N: [u64; 7] = [3, 7, 11, 19, 43, 67, 163];

/// Decimal digits for the automatic precision policy:
/// max(120, 40 + 3 sqrt(N) a), capped at 2000.
///
/// Coefficient heights grow like exp(pi sqrt(N) a), so the budget scales
/// with sqrt(N) a. The policy is an estimate, not a guarantee: recognition
/// recomputes at doubled precision and retries on mismatch, so a too-small
/// budget costs time, never correctness.
pub fn auto_digits(n: u64, a: &BigInt) -> u32 {
    let a = a.to_f64().unwrap_or(f64::MAX).min(1e9);
    let estimate = 40.0 + 3.0 * (n as f64).sqrt() * a;
    (estimate.ceil() as u32).clamp(120, 2000)
}

/// Condensed outcome of a maximal-curve scan over split primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanSummary {
    pub p_min: u64,
    pub p_max: u64,
    pub rows: usize,
    pub skipped: usize,
    pub maximal: usize,
    /// True when every row with good reduction attained p + 1 + 2a.
    pub all_maximal: bool,
}

impl ScanSummary {
    pub fn from_rows(p_min: u64, p_max: u64, rows: &[MaximalScanRow]) -> Self {
        let skipped = rows.iter().filter(|r| r.skipped.is_some()).count();
        let maximal = rows.iter().filter(|r| r.is_maximal).count();
        ScanSummary {
            p_min,
            p_max,
            rows: rows.len(),
            skipped,
            maximal,
            all_maximal: rows.iter().all(|r| r.skipped.is_some() || r.is_maximal),
        }
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} <= p < {}: {} rows, {} skipped, {} maximal ({})",
            self.p_min,
            self.p_max,
            self.rows,
            self.skipped,
            self.maximal,
            if self.all_maximal { "all maximal" } else { "NOT all maximal" }
        )
    }
}

/// Everything the pipeline produces for one reduced non-principal form.
///
/// Internal consistency: `d_factorization` is the factorization of |J10|,
/// and `obstruction` is present exactly when the curve is not definable
/// over Q and det M is nonzero.
#[derive(Clone, Debug)]
pub struct CurveReport {
    pub form: HermitianForm,
    /// Digits at which recognition succeeded (after any retries).
    pub digits_used: u32,
    pub definable_over_q: bool,
    pub sextic: SexticK,
    pub igusa: IgusaInvariants,
    /// Factorization of |D| = |J10| = |disc f| / 2^12.
    pub d_factorization: Factorization,
    pub mestre: ConicMatrix,
    pub det_m: BigRational,
    pub det_m_factorization: Option<Factorization>,
    pub obstruction: Option<ObstructionReport>,
    pub scan: Option<ScanSummary>,
}

/// Runs the full pipeline for one form. `digits` of None engages the
/// automatic policy; an explicit value is used as the starting precision.
///
/// Principal forms are rejected (their polarization is a product of
/// elliptic curves), as are non-reduced ones.
pub fn curve_report(form: &HermitianForm, digits: Option<u32>) -> Result<CurveReport> {
    let digits = digits.unwrap_or_else(|| auto_digits(form.n(), form.a()));
    let ctx = PrecisionContext::new(digits)?;
    let sextic = normalized_sextic(form, &ctx)?;
    let digits_used = sextic.provenance().map_or(digits, |(_, d)| d);
    let igusa = igusa_k(&sextic)?;
    let disc = sextic_disc_k(&sextic);
    if !disc.is_rational() {
        return Err(Error::Recognition(format!(
            "discriminant of the sextic for {form} is not rational"
        )));
    }
    let d_factorization = scaled_disc_factorization(disc.x())?;
    let definable = definable_over_q(form)?;
    let mestre = mestre_matrix(&igusa);
    let (det_m, det_m_factorization) = det_mestre(&mestre);
    let obstruction = if !definable && !det_m.is_zero() {
        Some(conic_obstruction(&mestre)?)
    } else {
        None
    };
    Ok(CurveReport {
        form: form.clone(),
        digits_used,
        definable_over_q: definable,
        sextic,
        igusa,
        d_factorization,
        mestre,
        det_m,
        det_m_factorization,
        obstruction,
        scan: None,
    })
}

/// Attaches a maximal-curve scan of the report's own sextic (positive root)
/// over split primes in [p_min, p_max).
pub fn attach_scan(report: &mut CurveReport, p_min: u64, p_max: u64) {
    let rows = maximal_scan_k(&report.sextic, p_min, p_max);
    report.scan = Some(ScanSummary::from_rows(p_min, p_max, &rows));
}

impl fmt::Display for CurveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "curve for form {}", self.form)?;
        writeln!(f, "  digits used: {}", self.digits_used)?;
        writeln!(
            f,
            "  definable over Q: {}",
            if self.definable_over_q { "yes" } else { "no" }
        )?;
        let (den, pairs) = sextic_common_denominator(&self.sextic);
        writeln!(f, "  y^2 = f(x), coefficients c0..c6 times {den}:")?;
        for (k, (u, v)) in pairs.iter().enumerate() {
            let sign = if v.is_negative() { "-" } else { "+" };
            let vabs = v.abs();
            writeln!(
                f,
                "    {den} c{k} = {u} {sign} {vabs} sqrt(-{})",
                self.sextic.n()
            )?;
        }
        writeln!(f, "  J2  = {}", self.igusa.j2)?;
        writeln!(f, "  J4  = {}", self.igusa.j4)?;
        writeln!(f, "  J6  = {}", self.igusa.j6)?;
        writeln!(f, "  J8  = {}", self.igusa.j8)?;
        writeln!(f, "  J10 = {}", self.igusa.j10)?;
        let d_sign = if self.igusa.j10.is_negative() { "-" } else { "" };
        writeln!(f, "  D = J10 = {d_sign}{}", self.d_factorization)?;
        writeln!(f, "  M =\n{}", indent(&self.mestre.to_string(), "    "))?;
        match &self.det_m_factorization {
            Some(fact) if !self.det_m.is_zero() => {
                let sign = if self.det_m.is_negative() { "-" } else { "" };
                writeln!(f, "  det M = {} = {sign}{fact}", self.det_m)?;
            }
            _ => writeln!(f, "  det M = {}", self.det_m)?,
        }
        match &self.obstruction {
            Some(ob) => {
                let places: Vec<String> =
                    ob.obstructed_places.iter().map(|p| p.to_string()).collect();
                writeln!(
                    f,
                    "  conic diagonal <{}, {}, {}>",
                    ob.diagonal[0], ob.diagonal[1], ob.diagonal[2]
                )?;
                writeln!(f, "  obstructed places: {{{}}}", places.join(", "))?;
                writeln!(
                    f,
                    "  rational model: {}",
                    if ob.solvable_over_q { "exists" } else { "none (field of moduli is not a field of definition)" }
                )?;
            }
            None if self.definable_over_q => {
                writeln!(f, "  rational model: exists")?;
            }
            None => {
                writeln!(f, "  conic degenerate (det M = 0); no obstruction computed")?;
            }
        }
        if let Some(scan) = &self.scan {
            writeln!(f, "  maximal scan {scan}")?;
        }
        Ok(())
    }
}

/// The full multi-curve document for one N of class number one.
#[derive(Clone, Debug)]
pub struct ReportDocument {
    pub n_field: u64,
    /// Number of reduced forms (the table column n).
    pub form_count: u64,
    /// Number of conjugation orbits including the principal one (t).
    pub type_number: u64,
    /// Number of curves up to isomorphism over K (t - 1).
    pub curve_classes: u64,
    pub curves: Vec<CurveReport>,
}

/// Builds the document: one report per reduced non-principal form, in
/// enumeration order. `scan_to` of Some(p_max) attaches a maximal-curve
/// scan over 167 <= p < p_max to every curve.
pub fn report_document(
    n: u64,
    digits: Option<u32>,
    scan_to: Option<u64>,
) -> Result<ReportDocument> {
    if !REPORT_N.contains(&n) {
        return Err(Error::InvalidInput(format!(
            "report requires N in {REPORT_N:?} (class number one); got {n}"
        )));
    }
    let forms = enumerate_reduced(n)?;
    let form_count = forms.len() as u64;
    let t = type_number(n)?;
    let mut curves = Vec::new();
    for form in forms.iter().filter(|f| !f.is_principal()) {
        let mut report = curve_report(form, digits)?;
        if let Some(p_max) = scan_to {
            attach_scan(&mut report, 167, p_max);
        }
        curves.push(report);
    }
    Ok(ReportDocument {
        n_field: n,
        form_count,
        type_number: t,
        curve_classes: t - 1,
        curves,
    })
}

impl fmt::Display for ReportDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "N = {}: n = {} reduced forms, t = {}, {} curve class(es)",
            self.n_field, self.form_count, self.type_number, self.curve_classes
        )?;
        if self.curves.is_empty() {
            writeln!(f, "no curves: every reduced form is principal")?;
        }
        for report in &self.curves {
            writeln!(f)?;
            write!(f, "{report}")?;
        }
        Ok(())
    }
}

fn indent(text: &str, pad: &str) -> String {
    text.lines()
        .map(|line| format!("{pad}{line}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Writes the sextic as (u_k + v_k sqrt(-N)) / den over the least common
/// denominator: returns (den, [(u_0, v_0), ..., (u_6, v_6)]).
pub fn sextic_common_denominator(f: &SexticK) -> (BigInt, Vec<(BigInt, BigInt)>) {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.x().denom()).lcm(c.y().denom());
    }
    let pairs = f
        .coeffs()
        .iter()
        .map(|c| {
            let u = (c.x() * BigRational::from(den.clone())).to_integer();
            let v = (c.y() * BigRational::from(den.clone())).to_integer();
            (u, v)
        })
        .collect();
    (den, pairs)
}

/// A big integer as a decimal string value.
pub fn json_bigint(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

/// A rational as "n" when integral, "num/den" otherwise.
pub fn json_rational(q: &BigRational) -> Value {
    if q.is_integer() {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

/// A K-element as four decimal strings {x_num, x_den, y_num, y_den}.
pub fn json_kelement(c: &KElement) -> Value {
    let mut m = Map::new();
    m.insert("x_num".into(), Value::String(c.x().numer().to_string()));
    m.insert("x_den".into(), Value::String(c.x().denom().to_string()));
    m.insert("y_num".into(), Value::String(c.y().numer().to_string()));
    m.insert("y_den".into(), Value::String(c.y().denom().to_string()));
    Value::Object(m)
}

/// A factorization as [[prime, exponent], ...] string pairs, ascending.
pub fn json_factorization(f: &Factorization) -> Value {
    Value::Array(
        f.iter()
            .map(|(p, e)| {
                Value::Array(vec![
                    Value::String(p.to_string()),
                    Value::String(e.to_string()),
                ])
            })
            .collect(),
    )
}

/// A form as its four integer components (b = r + s i).
pub fn json_form(f: &HermitianForm) -> Value {
    let mut m = Map::new();
    m.insert("a".into(), json_bigint(f.a()));
    m.insert("r".into(), json_bigint(&f.r()));
    m.insert("s".into(), json_bigint(&f.s()));
    m.insert("c".into(), json_bigint(f.c()));
    Value::Object(m)
}

pub fn json_igusa(j: &IgusaInvariants) -> Value {
    let mut m = Map::new();
    m.insert("j2".into(), json_rational(&j.j2));
    m.insert("j4".into(), json_rational(&j.j4));
    m.insert("j6".into(), json_rational(&j.j6));
    m.insert("j8".into(), json_rational(&j.j8));
    m.insert("j10".into(), json_rational(&j.j10));
    Value::Object(m)
}

pub fn json_obstruction(ob: &ObstructionReport) -> Value {
    let mut m = Map::new();
    m.insert("det".into(), json_rational(&ob.det));
    m.insert(
        "det_factorization".into(),
        ob.det_factorization
            .as_ref()
            .map_or(Value::Null, json_factorization),
    );
    m.insert(
        "diagonal".into(),
        Value::Array(ob.diagonal.iter().map(json_bigint).collect()),
    );
    m.insert(
        "places".into(),
        Value::Array(
            ob.obstructed_places
                .iter()
                .map(|p| Value::String(p.to_string()))
                .collect(),
        ),
    );
    m.insert("solvable_over_q".into(), Value::Bool(ob.solvable_over_q));
    Value::Object(m)
}

pub fn json_scan_summary(s: &ScanSummary) -> Value {
    let mut m = Map::new();
    m.insert("p_min".into(), Value::String(s.p_min.to_string()));
    m.insert("p_max".into(), Value::String(s.p_max.to_string()));
    m.insert("rows".into(), Value::String(s.rows.to_string()));
    m.insert("skipped".into(), Value::String(s.skipped.to_string()));
    m.insert("maximal".into(), Value::String(s.maximal.to_string()));
    m.insert("all_maximal".into(), Value::Bool(s.all_maximal));
    Value::Object(m)
}

pub fn json_scan_row(r: &MaximalScanRow) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), Value::String(r.p.to_string()));
    m.insert("a".into(), Value::String(r.a.to_string()));
    m.insert(
        "count".into(),
        r.count
            .map_or(Value::Null, |c| Value::String(c.to_string())),
    );
    m.insert(
        "twist_count".into(),
        r.twist_count
            .map_or(Value::Null, |c| Value::String(c.to_string())),
    );
    m.insert("is_maximal".into(), Value::Bool(r.is_maximal));
    m.insert(
        "skipped".into(),
        r.skipped
            .as_ref()
            .map_or(Value::Null, |s| Value::String(s.clone())),
    );
    Value::Object(m)
}

impl CurveReport {
    pub fn to_json(&self) -> Value {
        let (den, pairs) = sextic_common_denominator(&self.sextic);
        let mut sextic = Map::new();
        sextic.insert("denominator".into(), json_bigint(&den));
        sextic.insert(
            "pairs".into(),
            Value::Array(
                pairs
                    .iter()
                    .map(|(u, v)| Value::Array(vec![json_bigint(u), json_bigint(v)]))
                    .collect(),
            ),
        );
        sextic.insert(
            "coefficients".into(),
            Value::Array(self.sextic.coeffs().iter().map(json_kelement).collect()),
        );

        let mut m = Map::new();
        m.insert("form".into(), json_form(&self.form));
        m.insert("principal".into(), Value::Bool(self.form.is_principal()));
        m.insert(
            "digits_used".into(),
            Value::String(self.digits_used.to_string()),
        );
        m.insert(
            "definable_over_q".into(),
            Value::Bool(self.definable_over_q),
        );
        m.insert("sextic".into(), Value::Object(sextic));
        m.insert("igusa".into(), json_igusa(&self.igusa));
        m.insert(
            "d_factorization".into(),
            json_factorization(&self.d_factorization),
        );
        m.insert("det_m".into(), json_rational(&self.det_m));
        m.insert(
            "det_m_factorization".into(),
            self.det_m_factorization
                .as_ref()
                .map_or(Value::Null, json_factorization),
        );
        m.insert(
            "obstruction".into(),
            self.obstruction
                .as_ref()
                .map_or(Value::Null, json_obstruction),
        );
        m.insert(
            "maximal_scan".into(),
            self.scan.as_ref().map_or(Value::Null, json_scan_summary),
        );
        Value::Object(m)
    }
}

impl ReportDocument {
    /// The versioned document; all keys sort canonically on serialization.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), Value::String("1".into()));
        m.insert("N".into(), Value::String(self.n_field.to_string()));
        m.insert("n".into(), Value::String(self.form_count.to_string()));
        m.insert("t".into(), Value::String(self.type_number.to_string()));
        m.insert(
            "t_minus_1".into(),
            Value::String(self.curve_classes.to_string()),
        );
        m.insert(
            "curves".into(),
            Value::Array(self.curves.iter().map(CurveReport::to_json).collect()),
        );
        Value::Object(m)
    }
}

/// Canonical pretty serialization: sorted keys, two-space indent, no
/// floats anywhere. Parsing and re-rendering reproduces the bytes.
pub fn render_json(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable value");
    out.push('\n');
    out
}
