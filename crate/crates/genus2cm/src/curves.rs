//! Exact genus 2 curve models y^2 = f(x) over K = Q(sqrt(-N)).
//!
//! The analytic sextic attached to a reduced Hermitian form, rescaled by
//! 1/(a^6 |eta((1+sqrt(-N))/2)|^24), has coefficients in (1/2a^6) O where
//! O = Z + Z(1+sqrt(-N))/2 is the maximal order. This module performs that
//! rescaling, identifies each floating coefficient with its exact field
//! element, and carries the exact sextics used downstream (invariants,
//! obstruction, point counts). Recognition is never silent: every result is
//! recomputed at doubled precision and must reproduce the same exact values.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{BigFloat, PrecisionContext};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::kfield::KElement;
use crate::theta::{bolza_klein_sextic, sextic_normalizer};

/// Additional precision-doubling attempts after the initial one.
const MAX_RETRIES: u32 = 3;

/// A degree 6 binary form over K = Q(sqrt(-N)), stored dehomogenized:
/// f(x) = c_0 + c_1 x + ... + c_6 x^6 with c_6 != 0.
///
/// When the sextic came out of a Hermitian form, `provenance` records that
/// form and the digit count at which recognition succeeded, and the
/// integrality invariant holds: a^6 c_k lies in the maximal order, i.e.
/// 2 a^6 c_k = x_k + y_k sqrt(-N) with integers x_k = y_k mod 2.
///
/// Equality compares the field and the coefficients; provenance is metadata.
#[derive(Clone, Debug)]
pub struct SexticK {
    n: u64,
    coeffs: [KElement; 7],
    provenance: Option<(HermitianForm, u32)>,
}

impl PartialEq for SexticK {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs == other.coeffs
    }
}

impl SexticK {
    /// A sextic from explicit coefficients, constant term first.
    pub fn new(n: u64, coeffs: [KElement; 7]) -> Result<Self> {
        crate::hermitian::validate_n(n)?;
        if coeffs[6].is_zero() {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        for c in &coeffs {
            if !c.is_rational() && c.field_n() != n {
                return Err(Error::InvalidInput(format!(
                    "coefficient lives in Q(sqrt(-{})) but the sextic is over Q(sqrt(-{n}))",
                    c.field_n()
                )));
            }
        }
        Ok(SexticK {
            n,
            coeffs,
            provenance: None,
        })
    }

    /// A sextic tied to its source form; enforces the order-integrality
    /// invariant 2 a^6 c_k = x_k + y_k sqrt(-N), x_k = y_k mod 2.
    pub fn with_provenance(
        n: u64,
        coeffs: [KElement; 7],
        form: HermitianForm,
        digits: u32,
    ) -> Result<Self> {
        let mut sextic = SexticK::new(n, coeffs)?;
        let two_a6 = BigRational::from_integer(BigInt::from(2) * form.a().pow(6));
        for c in &sextic.coeffs {
            let x = c.x() * &two_a6;
            let y = c.y() * &two_a6;
            if !x.is_integer() || !y.is_integer() {
                return Err(Error::Recognition(format!(
                    "2 a^6 ({c}) is not in Z[sqrt(-{n})]"
                )));
            }
            let odd = |v: &BigRational| v.to_integer() % 2 != BigInt::zero();
            if odd(&x) != odd(&y) {
                return Err(Error::Recognition(format!(
                    "2 a^6 ({c}) has mixed parity, so a^6 ({c}) is outside the maximal order"
                )));
            }
        }
        sextic.provenance = Some((form, digits));
        Ok(sextic)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Coefficients c_0..c_6, constant term first.
    pub fn coeffs(&self) -> &[KElement; 7] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &KElement {
        &self.coeffs[k]
    }

    pub fn provenance(&self) -> Option<(&HermitianForm, u32)> {
        self.provenance.as_ref().map(|(f, d)| (f, *d))
    }

    /// True when every coefficient has zero sqrt(-N) part.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    /// The same sextic over Q, when it is rational.
    pub fn to_rational(&self) -> Option<SexticQ> {
        if !self.is_rational() {
            return None;
        }
        let coeffs: Vec<BigRational> = self.coeffs.iter().map(|c| c.x().clone()).collect();
        Some(SexticQ {
            coeffs: coeffs.try_into().expect("seven coefficients"),
        })
    }
}

impl fmt::Display for SexticK {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=6).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match k {
                0 => write!(out, "({c})")?,
                1 => write!(out, "({c})*x")?,
                _ => write!(out, "({c})*x^{k}")?,
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

/// A degree 6 binary form over Q, dehomogenized, with c_6 != 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SexticQ {
    coeffs: [BigRational; 7],
}

impl SexticQ {
    pub fn new(coeffs: [BigRational; 7]) -> Result<Self> {
        if coeffs[6].is_zero() {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        Ok(SexticQ { coeffs })
    }

    pub fn from_i64(coeffs: [i64; 7]) -> Self {
        let v: Vec<BigRational> = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        SexticQ::new(v.try_into().expect("seven coefficients")).expect("nonzero leading term")
    }

    /// Coefficients c_0..c_6, constant term first.
    pub fn coeffs(&self) -> &[BigRational; 7] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// The same sextic viewed over K = Q(sqrt(-N)).
    pub fn to_k(&self, n: u64) -> Result<SexticK> {
        crate::hermitian::validate_n(n)?;
        let coeffs: Vec<KElement> = self
            .coeffs
            .iter()
            .map(|c| KElement::new(n, c.clone(), BigRational::zero()))
            .collect();
        SexticK::new(n, coeffs.try_into().expect("seven coefficients"))
    }
}

impl fmt::Display for SexticQ {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=6).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match k {
                0 => write!(out, "({c})")?,
                1 => write!(out, "({c})*x")?,
                _ => write!(out, "({c})*x^{k}")?,
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

/// The unique w = x + y sqrt(-N) with 2 a^6 x and 2 a^6 y integers of equal
/// parity within 10^(-digits/2) of z.
///
/// x and y are found by rounding 2 a^6 Re(z) and 2 a^6 Im(z)/sqrt(N); the
/// parity and residual checks then certify the identification.
pub fn recognize_in_k(
    z: &Complex,
    n: u64,
    a: &BigInt,
    ctx: &PrecisionContext,
) -> Result<KElement> {
    crate::hermitian::validate_n(n)?;
    if !a.is_positive() {
        return Err(Error::InvalidInput("scale a must be positive".into()));
    }
    let fb = ctx.frac_bits();
    let two_a6: BigInt = BigInt::from(2) * a.pow(6);
    let scale = BigFloat::from_bigint(&two_a6, fb);
    let sqrt_n = BigFloat::from_i64(n as i64, fb).sqrt();

    let x_int = z.re.mul(&scale).round_to_bigint();
    let y_int = z.im.div(&sqrt_n).mul(&scale).round_to_bigint();
    if (&x_int % 2i32 != BigInt::zero()) != (&y_int % 2i32 != BigInt::zero()) {
        return Err(Error::Recognition(format!(
            "2 a^6 z rounds to ({x_int}, {y_int}) sqrt(-{n}), which has mixed parity"
        )));
    }

    let w_re = BigFloat::from_ratio(&x_int, &two_a6, fb);
    let w_im = BigFloat::from_ratio(&y_int, &two_a6, fb).mul(&sqrt_n);
    let residual2 = z.sub(&Complex::new(w_re, w_im)).norm2();
    let tol = ctx.pow10_neg(ctx.digits() / 2);
    if residual2.cmp_value(&tol.mul(&tol)) != std::cmp::Ordering::Less {
        return Err(Error::Recognition(format!(
            "residual 10^{:.1} exceeds the 10^-{} tolerance",
            residual2.log10_abs() / 2.0,
            ctx.digits() / 2
        )));
    }
    Ok(KElement::new(
        n,
        BigRational::new(x_int, two_a6.clone()),
        BigRational::new(y_int, two_a6),
    ))
}

/// One full analytic pass at a fixed precision: sextic at the period
/// matrix, eta rescaling, coefficient-wise recognition.
fn recognized_coeffs(form: &HermitianForm, ctx: &PrecisionContext) -> Result<[KElement; 7]> {
    let a_small = form
        .a()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("form coefficient a exceeds u64".into()))?;
    let f_z = bolza_klein_sextic(&form.period_matrix(), ctx)?;
    let scale = sextic_normalizer(form.n(), a_small, ctx)?;
    let mut out = Vec::with_capacity(7);
    for z in f_z.iter() {
        out.push(recognize_in_k(&z.scale(&scale), form.n(), form.a(), ctx)?);
    }
    Ok(out.try_into().expect("seven coefficients"))
}

/// Largest coefficient-wise distance between the analytic normalized
/// sextic recomputed at this precision and the given exact coefficients,
/// in the complex embedding sqrt(-N) -> i sqrt(N).
///
/// This is the recognition residual max_k |scale * f_Z,k - c_k|; for a
/// correct identification it shrinks with the working precision.
pub fn recognition_residual(
    form: &HermitianForm,
    exact: &SexticK,
    ctx: &PrecisionContext,
) -> Result<BigFloat> {
    let a_small = form
        .a()
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("form coefficient a exceeds u64".into()))?;
    let f_z = bolza_klein_sextic(&form.period_matrix(), ctx)?;
    let scale = sextic_normalizer(form.n(), a_small, ctx)?;
    let fb = ctx.frac_bits();
    let sqrt_n = BigFloat::from_i64(form.n() as i64, fb).sqrt();
    let mut max2 = BigFloat::from_i64(0, fb);
    for (z, c) in f_z.iter().zip(exact.coeffs()) {
        let w_re = BigFloat::from_ratio(c.x().numer(), c.x().denom(), fb);
        let w_im = BigFloat::from_ratio(c.y().numer(), c.y().denom(), fb).mul(&sqrt_n);
        let d2 = z.scale(&scale).sub(&Complex::new(w_re, w_im)).norm2();
        if d2.cmp_value(&max2) == std::cmp::Ordering::Greater {
            max2 = d2;
        }
    }
    Ok(max2.sqrt())
}

/// The exact normalized sextic of a reduced, non-principal form: the product
/// of the six odd theta gradient linear forms divided by
/// a^6 |eta((1+sqrt(-N))/2)|^24, with coefficients recognized in K.
///
/// A failed recognition doubles the precision and retries; a successful one
/// is still recomputed at doubled precision and must reproduce the same
/// exact coefficients before it is accepted.
pub fn normalized_sextic(form: &HermitianForm, ctx: &PrecisionContext) -> Result<SexticK> {
    if form.is_principal() {
        return Err(Error::PrincipalForm(format!(
            "{form} is principal; its polarization is a product of elliptic curves and carries no genus 2 curve"
        )));
    }
    if !form.is_reduced() {
        return Err(Error::InvalidInput(format!(
            "{form} is not reduced; reduce it first"
        )));
    }
    let mut cur = *ctx;
    let mut last_err = None;
    for _ in 0..=MAX_RETRIES {
        match recognized_coeffs(form, &cur) {
            Ok(coeffs) => {
                let confirm = recognized_coeffs(form, &cur.doubled())?;
                if confirm == coeffs {
                    return SexticK::with_provenance(form.n(), coeffs, form.clone(), cur.digits());
                }
                last_err = Some(Error::Recognition(format!(
                    "coefficients at {} digits are not reproduced at {} digits",
                    cur.digits(),
                    cur.doubled().digits()
                )));
            }
            Err(e @ Error::Recognition(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        cur = cur.doubled();
    }
    Err(last_err.unwrap_or_else(|| Error::Recognition("no attempt was made".into())))
}

/// Coefficient-wise Galois conjugation y_k -> -y_k.
///
/// This is the conjugate curve y^2 = conj(f)(x). It is not the normalized
/// sextic of any particular form (that role belongs to `reverse_sextic`),
/// so provenance is dropped. The two are linked through the antisymmetry
/// conj(c_k) = (-1)^(k+1) c_(6-k) satisfied by every normalized sextic:
/// the conjugate curve is the x -> -x flip of the (-1)-twist of the
/// reversed one, hence isomorphic to it over the algebraic closure.
pub fn iota_sextic(f: &SexticK) -> SexticK {
    let coeffs: Vec<KElement> = f.coeffs.iter().map(|c| c.conj()).collect();
    SexticK {
        n: f.n,
        coeffs: coeffs.try_into().expect("seven coefficients"),
        provenance: None,
    }
}

/// The reversed sextic x^6 f(1/x): the same curve under the coordinate
/// flip (x, y) -> (1/x, y/x^3).
///
/// For a sextic attached to a form whose conjugate (a, -conj(b), c) is
/// itself reduced, this is exactly the normalized sextic of that conjugate:
/// the conjugate period matrix is the coordinate swap of the original, so
/// the six gradient linear forms reappear with their components exchanged,
/// and provenance is carried over. When the conjugate is not reduced (the
/// form is its own partner), reduction would inject an automorphy factor,
/// so provenance is dropped.
pub fn reverse_sextic(f: &SexticK) -> Result<SexticK> {
    let mut coeffs = f.coeffs.clone();
    coeffs.reverse();
    let provenance = match &f.provenance {
        Some((form, digits)) if form.iota().is_reduced() => Some((form.iota(), *digits)),
        _ => None,
    };
    let mut out = SexticK::new(f.n, coeffs)?;
    out.provenance = provenance;
    Ok(out)
}

fn poly_mul(p: &[KElement], q: &[KElement]) -> Vec<KElement> {
    let mut out = vec![KElement::zero(); p.len() + q.len() - 1];
    for (i, pa) in p.iter().enumerate() {
        for (j, qb) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + pa.clone() * qb.clone();
        }
    }
    out
}

/// The N = 163 showcase curve y^2 = 6^-3 h(x) h'(x), where h is the fixed
/// cubic below and h'(x) = conj(x^3 h(-1/x)) is its twisted reversal.
///
/// The product satisfies conj(c_k) = (-1)^(k+1) c_(6-k), so it is not
/// obviously rational, but its even-index structure drives the discriminant
/// and invariant checks downstream.
pub fn intro_fixture_163() -> SexticK {
    let coeff = |x: i64, y: i64| KElement::from_integers(163, x, y, 1);
    // h = h3 x^3 + h2 x^2 + h1 x + h0, constant term first.
    let h = [
        coeff(-37250, -1596),
        coeff(510153, -47481),
        coeff(1752597, 129789),
        coeff(-151790, 7144),
    ];
    // x^3 h(-1/x) = h0 x^3 - h1 x^2 + h2 x - h3, then conjugate.
    let h_twist = [
        coeff(151790, 7144),
        coeff(1752597, -129789),
        coeff(-510153, -47481),
        coeff(-37250, 1596),
    ];
    let prod = poly_mul(&h, &h_twist);
    let scale = BigRational::new(BigInt::one(), BigInt::from(216));
    let coeffs: Vec<KElement> = prod.iter().map(|c| c.scale(&scale)).collect();
    SexticK::new(163, coeffs.try_into().expect("seven coefficients"))
        .expect("fixture sextic is valid")
}

/// The rational model y^2 = x^6 + 24384 x^5 + 61311 x^4 + 585856 x^3
/// + 813483 x^2 + 3214656 x + 1472877 sharing its weighted invariants with
/// the N = 43 curve of the form (2, 1+2i, 6).
pub fn q_model_43() -> SexticQ {
    SexticQ::from_i64([1472877, 3214656, 813483, 585856, 61311, 24384, 1])
}
