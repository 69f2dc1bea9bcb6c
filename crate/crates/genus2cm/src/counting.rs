//! Reduction of curve models modulo split primes, brute-force point
//! counting over F_p, quadratic twists, and the maximal-curve scan: for
//! every prime p with 4p = a^2 + N in the scanned range, the reduced curve
//! or its quadratic twist should attain p + 1 + 2a points, the maximum
//! allowed by the Weil bounds with Serre's improvement.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{is_prime_u64, kronecker_i64, sqrt_mod_p};
use crate::curves::{SexticK, SexticQ};
use crate::error::{Error, Result};

/// A sextic with coefficients in F_p, p an odd prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpSextic {
    p: u64,
    coeffs: [u64; 7],
}

/// Choice of square root of -N modulo a split prime: `Plus` is the root
/// in (0, p/2), `Minus` its negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichRoot {
    Plus,
    Minus,
}

/// One prime of the maximal-curve scan.
#[derive(Clone, Debug)]
pub struct MaximalScanRow {
    pub p: u64,
    /// The positive integer with 4p = a^2 + N.
    pub a: u64,
    /// Point count of the reduced curve; None when the row is skipped.
    pub count: Option<u64>,
    /// Point count of its quadratic twist.
    pub twist_count: Option<u64>,
    /// Whether max(count, twist_count) = p + 1 + 2a.
    pub is_maximal: bool,
    /// Reason the row could not be scanned (bad reduction), if any.
    pub skipped: Option<String>,
}

impl FpSextic {
    /// Residues of the seven coefficients mod an odd prime, constant first.
    pub fn new(p: u64, coeffs: [u64; 7]) -> Result<Self> {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
        }
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(format!(
                "coefficients must be reduced mod {p}"
            )));
        }
        Ok(FpSextic { p, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64; 7] {
        &self.coeffs
    }

    /// f(x) mod p by Horner evaluation.
    pub fn evaluate(&self, x: u64) -> u64 {
        let p = self.p as u128;
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x as u128 + c as u128) % p;
        }
        acc as u64
    }

    /// disc(f) mod p via the Sylvester resultant of f and f'; requires
    /// degree 6 (leading coefficient a unit mod p).
    fn disc_mod_p(&self) -> Result<u64> {
        let p = self.p;
        if self.coeffs[6] == 0 {
            return Err(Error::InvalidInput(format!(
                "degree drop: leading coefficient vanishes mod {p}"
            )));
        }
        let mut m = [[0u64; 11]; 11];
        for row in 0..5 {
            for k in 0..=6 {
                m[row][row + k] = self.coeffs[6 - k];
            }
        }
        for row in 0..6 {
            for k in 0..=5 {
                m[5 + row][row + k] = mul_mod(self.coeffs[6 - k], (6 - k) as u64, p);
            }
        }
        let res = det_mod_p(&mut m, p);
        // disc = -Res(f, f') / c6.
        Ok(mul_mod(p - res % p, inv_mod(self.coeffs[6], p), p) % p)
    }
}

impl fmt::Display for FpSextic {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "y^2 = ")?;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if k < 6 {
                write!(out, " + ")?;
            }
            match k {
                0 => write!(out, "{c}")?,
                1 => write!(out, "{c} x")?,
                _ => write!(out, "{c} x^{k}")?,
            }
        }
        write!(out, "  over F_{}", self.p)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Determinant over F_p by Gaussian elimination; consumes the matrix.
fn det_mod_p(m: &mut [[u64; 11]; 11], p: u64) -> u64 {
    let mut det = 1u64;
    for col in 0..11 {
        let pivot_row = match (col..11).find(|&r| m[r][col] % p != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = p - det;
        }
        let pivot = m[col][col] % p;
        det = mul_mod(det, pivot, p);
        let pinv = inv_mod(pivot, p);
        for row in col + 1..11 {
            if m[row][col] % p == 0 {
                continue;
            }
            let factor = mul_mod(m[row][col] % p, pinv, p);
            for k in col..11 {
                let sub = mul_mod(factor, m[col][k] % p, p);
                m[row][k] = (m[row][k] % p + p - sub) % p;
            }
        }
    }
    det % p
}

/// Residue of an exact rational mod p; errors when p divides the
/// denominator.
fn rational_mod_p(x: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(Error::InvalidInput(format!(
            "denominator of {x} vanishes mod {p}"
        )));
    }
    let num = x.numer().mod_floor(&pb);
    let num = num.to_u64().expect("reduced residue fits u64");
    let den = den.to_u64().expect("reduced residue fits u64");
    Ok(mul_mod(num, inv_mod(den, p), p))
}

/// Reduction of a curve over K modulo a degree-one prime above p: the
/// coefficient x + y sqrt(-N) maps to x + y rho mod p where rho is the
/// chosen square root of -N mod p.
pub fn reduce_mod_p(f: &SexticK, p: u64, which: WhichRoot) -> Result<FpSextic> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let n = f.n();
    if kronecker_i64(-(n as i64), p as i64) != 1 {
        return Err(Error::InvalidInput(format!(
            "{p} is not split in Q(sqrt(-{n}))"
        )));
    }
    let pb = BigInt::from(p);
    let minus_n = (-BigInt::from(n)).mod_floor(&pb);
    let root = sqrt_mod_p(&minus_n, &pb).ok_or_else(|| {
        Error::InvalidInput(format!("-{n} has no square root mod {p}"))
    })?;
    let r = root.to_u64().expect("root below p");
    let rho = match which {
        WhichRoot::Plus => r.min(p - r),
        WhichRoot::Minus => r.max(p - r),
    };
    let mut coeffs = [0u64; 7];
    for (k, c) in f.coeffs().iter().enumerate() {
        let x = rational_mod_p(c.x(), p)?;
        let y = rational_mod_p(c.y(), p)?;
        coeffs[k] = (x + mul_mod(y, rho, p)) % p;
    }
    FpSextic::new(p, coeffs)
}

/// Reduction of a rational sextic mod an odd prime.
pub fn reduce_q_mod_p(f: &SexticQ, p: u64) -> Result<FpSextic> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let mut coeffs = [0u64; 7];
    for (k, c) in f.coeffs().iter().enumerate() {
        coeffs[k] = rational_mod_p(c, p)?;
    }
    FpSextic::new(p, coeffs)
}

/// Number of points of the smooth projective genus 2 curve y^2 = f(x)
/// over F_p: sum over x of 1 + chi(f(x)), plus 2 or 0 points at infinity
/// according as the leading coefficient is a square or not.
pub fn count_points(fbar: &FpSextic) -> Result<u64> {
    if fbar.disc_mod_p()? == 0 {
        return Err(Error::InvalidInput(format!(
            "singular reduction mod {}",
            fbar.p
        )));
    }
    let p = fbar.p;
    // chi via a squares table: chi(0) contributes the single point y = 0.
    let mut is_square = vec![false; p as usize];
    for x in 0..p {
        is_square[mul_mod(x, x, p) as usize] = true;
    }
    let mut count: u64 = 0;
    for x in 0..p {
        let v = fbar.evaluate(x);
        if v == 0 {
            count += 1;
        } else if is_square[v as usize] {
            count += 2;
        }
    }
    if is_square[fbar.coeffs[6] as usize] {
        count += 2;
    }
    Ok(count)
}

/// Quadratic twist: coefficients scaled by the least positive non-residue.
pub fn twist(fbar: &FpSextic) -> FpSextic {
    let p = fbar.p;
    let nr = (2..p)
        .find(|&n| kronecker_i64(n as i64, p as i64) == -1)
        .expect("odd prime has a non-residue");
    FpSextic {
        p,
        coeffs: fbar.coeffs.map(|c| mul_mod(c, nr, p)),
    }
}

/// All primes p in [p_min, p_max) with 4p - N a positive perfect square,
/// as (p, a) pairs ascending in p.
pub fn split_prime_scan(n: u64, p_min: u64, p_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in p_min..p_max {
        if !is_prime_u64(p) {
            continue;
        }
        let q = match (4 * p).checked_sub(n) {
            Some(q) if q > 0 => q,
            _ => continue,
        };
        let a = q.isqrt();
        if a * a == q {
            out.push((p, a));
        }
    }
    out
}

/// Maximal-curve scan with a caller-supplied reduction: one row per split
/// prime in [p_min, p_max); bad-reduction rows are recorded as skipped,
/// never dropped.
pub fn scan_rows<F>(n: u64, p_min: u64, p_max: u64, reduce: F) -> Vec<MaximalScanRow>
where
    F: Fn(u64) -> Result<FpSextic>,
{
    let mut rows = Vec::new();
    for (p, a) in split_prime_scan(n, p_min, p_max) {
        let expected = p + 1 + 2 * a;
        let outcome = reduce(p).and_then(|fbar| {
            let c = count_points(&fbar)?;
            let t = count_points(&twist(&fbar))?;
            Ok((c, t))
        });
        match outcome {
            Ok((count, twist_count)) => rows.push(MaximalScanRow {
                p,
                a,
                count: Some(count),
                twist_count: Some(twist_count),
                is_maximal: count.max(twist_count) == expected,
                skipped: None,
            }),
            Err(e) => rows.push(MaximalScanRow {
                p,
                a,
                count: None,
                twist_count: None,
                is_maximal: false,
                skipped: Some(e.to_string()),
            }),
        }
    }
    rows
}

/// Maximal-curve scan of a curve over K: for each split prime with
/// 4p = a^2 + N in range, reduce (plus root), count, and compare
/// max(count, twist count) with p + 1 + 2a. Bad-reduction rows are
/// reported as skipped, never dropped.
pub fn maximal_scan_k(f: &SexticK, p_min: u64, p_max: u64) -> Vec<MaximalScanRow> {
    scan_rows(f.n(), p_min, p_max, |p| reduce_mod_p(f, p, WhichRoot::Plus))
}

/// Maximal-curve scan of a rational model, same contract as over K.
pub fn maximal_scan_q(f: &SexticQ, n: u64, p_min: u64, p_max: u64) -> Vec<MaximalScanRow> {
    scan_rows(n, p_min, p_max, |p| reduce_q_mod_p(f, p))
}

/// Serre's genus 2 upper bound p + 1 + 2*floor(2 sqrt(p)).
pub fn weil_serre_max(p: u64) -> u64 {
    p + 1 + 2 * (4 * p).isqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::PrecisionContext;
    use crate::curves::{iota_sextic, normalized_sextic, q_model_43};
    use crate::hermitian::HermitianForm;

    fn golden_curve_2() -> SexticK {
        let ctx = PrecisionContext::new(120).unwrap();
        normalized_sextic(&HermitianForm::from_i64(43, 3, 1, 2, 4), &ctx).unwrap()
    }

    /// Naive oracle: all (x, y) pairs plus points at infinity.
    fn oracle_count(fbar: &FpSextic) -> u64 {
        let p = fbar.p();
        let mut count = 0;
        for x in 0..p {
            let v = fbar.evaluate(x);
            for y in 0..p {
                if mul_mod(y, y, p) == v {
                    count += 1;
                }
            }
        }
        count
            + if {
                let c6 = fbar.coeffs()[6];
                (1..p).any(|y| mul_mod(y, y, p) == c6)
            } {
                2
            } else {
                0
            }
    }

    #[test]
    fn count_of_x6_plus_1_small_primes() {
        // Over F_3, x^6 + 1 = (x^2 + 1)^3 is a repeated-root model and is
        // rejected, even though its naive plane count would be 4.
        let f3 = FpSextic::new(3, [1, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(count_points(&f3).is_err());
        // Over F_5 it is smooth: affine points at x = 0 (two), x = 2, x = 3
        // (one each, f(x) = 0), plus two at infinity.
        let f5 = FpSextic::new(5, [1, 0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(count_points(&f5).unwrap(), 6);
        assert_eq!(oracle_count(&f5), 6);
    }

    #[test]
    fn count_matches_oracle_on_deterministic_sweep() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
        let mut checked = 0;
        while checked < 100 {
            let p = primes[(next() % primes.len() as u64) as usize];
            let mut coeffs = [0u64; 7];
            for c in coeffs.iter_mut() {
                *c = next() % p;
            }
            if coeffs[6] == 0 {
                continue;
            }
            let f = FpSextic::new(p, coeffs).unwrap();
            if f.disc_mod_p().unwrap() == 0 {
                continue;
            }
            assert_eq!(count_points(&f).unwrap(), oracle_count(&f), "p={p} {coeffs:?}");
            checked += 1;
        }
    }

    #[test]
    fn twist_pairs_sum_to_2p_plus_2() {
        let f = FpSextic::new(13, [1, 4, 0, 2, 0, 0, 5]).unwrap();
        if f.disc_mod_p().unwrap() != 0 {
            let c = count_points(&f).unwrap();
            let t = count_points(&twist(&f)).unwrap();
            assert_eq!(c + t, 2 * 13 + 2);
        }
        let g = FpSextic::new(7, [1, 0, 0, 0, 0, 0, 1]).unwrap();
        let c = count_points(&g).unwrap();
        let t = count_points(&twist(&g)).unwrap();
        assert_eq!(c + t, 2 * 7 + 2);
        assert_eq!(count_points(&twist(&twist(&g))).unwrap(), c);
        assert_eq!(twist(&g).coeffs(), &[3, 0, 0, 0, 0, 0, 3]);
    }

    #[test]
    fn singular_reduction_rejected() {
        // x^6 - x^4 has a repeated root everywhere.
        let f = FpSextic::new(11, [0, 0, 0, 0, 10, 0, 1]).unwrap();
        assert!(count_points(&f).is_err());
    }

    #[test]
    fn split_scan_matches_known_pairs() {
        let pairs = split_prime_scan(43, 167, 300);
        assert!(pairs.contains(&(167, 25)));
        assert!(pairs.contains(&(251, 31)));
        for &(p, a) in &pairs {
            assert_eq!(4 * p, a * a + 43);
            assert_eq!(kronecker_i64(-43, p as i64), 1);
        }
    }

    #[test]
    fn rational_reduction_independent_of_root_and_conjugate_reductions() {
        let f = q_model_43().to_k(43).unwrap();
        let plus = reduce_mod_p(&f, 167, WhichRoot::Plus).unwrap();
        let minus = reduce_mod_p(&f, 167, WhichRoot::Minus).unwrap();
        assert_eq!(plus, minus);

        let g = golden_curve_2();
        let gp = reduce_mod_p(&g, 167, WhichRoot::Plus).unwrap();
        let gm = reduce_mod_p(&g, 167, WhichRoot::Minus).unwrap();
        assert_ne!(gp, gm);
        let conj = iota_sextic(&g);
        assert_eq!(reduce_mod_p(&conj, 167, WhichRoot::Plus).unwrap(), gm);
        // Conjugate models agree up to a quadratic twist.
        let (cp, cm) = (count_points(&gp).unwrap(), count_points(&gm).unwrap());
        assert!(cm == cp || cm == 2 * 167 + 2 - cp);
    }

    #[test]
    fn golden_curve_reduction_at_167_is_maximal() {
        let fbar = reduce_mod_p(&golden_curve_2(), 167, WhichRoot::Plus).unwrap();
        let c = count_points(&fbar).unwrap();
        let t = count_points(&twist(&fbar)).unwrap();
        assert_eq!(c.max(t), 218);
        assert_eq!(218, 167 + 1 + 2 * 25);
    }

    #[test]
    fn maximal_scan_of_rational_model_below_1000() {
        // The rational model has good reduction at every split prime of the
        // scan (its discriminant is 2^46 3^12 5^12 43^15) and is maximal
        // exactly at the split primes with p = 1 mod 4: the curve or its
        // twist attains p + 1 + 2a there, while at p = 3 mod 4 both the
        // curve and its twist have p + 1 points.
        let rows = maximal_scan_q(&q_model_43(), 43, 167, 1000);
        assert!(!rows.is_empty());
        assert!(rows.iter().any(|r| r.p % 4 == 1));
        assert!(rows.iter().any(|r| r.p % 4 == 3));
        for row in &rows {
            assert!(row.skipped.is_none(), "unexpected skip at {}", row.p);
            assert_eq!(row.is_maximal, row.p % 4 == 1, "at {}", row.p);
            let (c, t) = (row.count.unwrap(), row.twist_count.unwrap());
            assert_eq!(c + t, 2 * row.p + 2);
            if row.p % 4 == 3 {
                assert_eq!(c, row.p + 1);
            }
            let serre = weil_serre_max(row.p);
            assert_eq!(row.p + 1 + 2 * row.a, serre);
            for v in [c, t] {
                assert!(v >= row.p + 1 - 2 * (4 * row.p).isqrt());
                assert!(v <= serre);
            }
        }
    }

    #[test]
    fn maximal_scan_of_k_model_below_700() {
        // The curve with coefficients in K itself is maximal at every split
        // prime in range, for either choice of root.
        for which in [WhichRoot::Plus, WhichRoot::Minus] {
            let rows = scan_rows(43, 167, 700, |p| {
                reduce_mod_p(&golden_curve_2(), p, which)
            });
            assert!(rows.len() >= 5);
            for row in &rows {
                assert!(row.skipped.is_none(), "unexpected skip at {}", row.p);
                assert!(row.is_maximal, "not maximal at {}", row.p);
                let (c, t) = (row.count.unwrap(), row.twist_count.unwrap());
                assert_eq!(c + t, 2 * row.p + 2);
                assert_eq!(c.max(t), row.p + 1 + 2 * row.a);
            }
        }
    }

    #[test]
    fn bad_reduction_rows_are_skipped_not_dropped() {
        // Force a bad-reduction row: p = 11 is in the N = 43 scan
        // (4*11 = 1 + 43) and the tampered constant term has an
        // 11-divisible denominator.
        let half = BigRational::new(BigInt::from(1), BigInt::from(11));
        let mut coeffs = q_model_43().coeffs().clone();
        coeffs[0] = half;
        let f = SexticQ::new(coeffs).unwrap();
        let rows = maximal_scan_q(&f, 43, 2, 200);
        let row11 = rows.iter().find(|r| r.p == 11).expect("11 in scan");
        assert!(row11.skipped.is_some());
        assert!(!row11.is_maximal);
    }

    #[test]
    fn inert_prime_rejected() {
        // kronecker(-43, 5) = -1: 5 stays inert.
        assert!(reduce_mod_p(&golden_curve_2(), 5, WhichRoot::Plus).is_err());
        assert!(reduce_mod_p(&golden_curve_2(), 6, WhichRoot::Plus).is_err());
    }
}
