//! Invariants of binary sextics: discriminant, the Igusa invariants
//! J2, J4, J6, J8, J10, and weighted-projective comparison of curves.
//!
//! The J's are computed through the classical covariant tower: the
//! transvectants A = (f,f)_6, i = (f,f)_4, B = (i,i)_4, C = (i,(i,i)_2)_4
//! are converted to Igusa's integral normalization by fixed rational
//! constants, and J10 is the discriminant scaled by 2^-12. The golden-value
//! tests pin every constant; the conversion is calibration, not derivation.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::curves::{SexticK, SexticQ};
use crate::error::{Error, Result};
use crate::kfield::KElement;

/// Coefficient field for the generic invariant machinery.
pub trait Coeff:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Coeff for KElement {
    fn from_i64(v: i64) -> Self {
        KElement::from_i64(v)
    }
}

/// A homogeneous binary form; coeffs[k] multiplies x^k y^(order-k).
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> BinaryForm<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a form has at least one coefficient");
        BinaryForm { coeffs }
    }

    fn zero_of_order(order: usize) -> Self {
        BinaryForm {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    fn dx(&self) -> Self {
        let n = self.order();
        assert!(n > 0, "derivative of a constant form");
        let coeffs = (0..n)
            .map(|k| self.coeffs[k + 1].clone() * C::from_i64((k + 1) as i64))
            .collect();
        BinaryForm { coeffs }
    }

    fn dy(&self) -> Self {
        let n = self.order();
        assert!(n > 0, "derivative of a constant form");
        let coeffs = (0..n)
            .map(|k| self.coeffs[k].clone() * C::from_i64((n - k) as i64))
            .collect();
        BinaryForm { coeffs }
    }

    /// d^(a+b) f / dx^a dy^b.
    fn diff(&self, a: usize, b: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..a {
            f = f.dx();
        }
        for _ in 0..b {
            f = f.dy();
        }
        f
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![C::zero(); self.order() + rhs.order() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs: out }
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "order mismatch in form sum");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        BinaryForm { coeffs }
    }

    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.clone() * C::from_i64(num) / C::from_i64(den))
            .collect();
        BinaryForm { coeffs }
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

fn binomial(n: usize, k: usize) -> i64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The r-th transvectant
/// (f,g)_r = (m-r)!(n-r)!/(m! n!) sum_k (-1)^k C(r,k) f_(x^(r-k) y^k) g_(x^k y^(r-k))
/// of forms of orders m and n; the result has order m + n - 2r.
pub fn transvectant<C: Coeff>(f: &BinaryForm<C>, g: &BinaryForm<C>, r: usize) -> BinaryForm<C> {
    let m = f.order();
    let n = g.order();
    assert!(r <= m && r <= n, "transvectant index exceeds form order");
    let mut acc = BinaryForm::zero_of_order(m + n - 2 * r);
    for k in 0..=r {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let term = f.diff(r - k, k).mul(&g.diff(k, r - k));
        acc = acc.add(&term.scale_ratio(sign * binomial(r, k), 1));
    }
    acc.scale_ratio(
        factorial(m - r) * factorial(n - r),
        factorial(m) * factorial(n),
    )
}

/// Clebsch's invariants A (degree 2), B (degree 4), C (degree 6) of a
/// binary sextic, via A = (f,f)_6, i = (f,f)_4, B = (i,i)_4,
/// C = (i,(i,i)_2)_4.
fn clebsch_abc<C: Coeff>(f: &BinaryForm<C>) -> (C, C, C) {
    let a = transvectant(f, f, 6).coeffs.remove(0);
    let i = transvectant(f, f, 4);
    let b = transvectant(&i, &i, 4).coeffs.remove(0);
    let delta = transvectant(&i, &i, 2);
    let c = transvectant(&i, &delta, 4).coeffs.remove(0);
    (a, b, c)
}

/// Determinant over a field by Gaussian elimination with exact division.
fn det<C: Coeff>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    let mut acc = C::one();
    let mut negate = false;
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return C::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            negate = !negate;
        }
        let pivot = m[col][col].clone();
        acc = acc * pivot.clone();
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone() / pivot.clone();
            for k in col..n {
                let delta = factor.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - delta;
            }
        }
    }
    if negate {
        -acc
    } else {
        acc
    }
}

/// Discriminant of a degree 6 polynomial with c6 != 0, as
/// -Res(f, f')/c6 via the 11x11 Sylvester determinant.
fn disc_core<C: Coeff>(coeffs: &[C; 7]) -> C {
    assert!(!coeffs[6].is_zero(), "degenerate leading coefficient");
    let n = 11;
    let mut m = vec![vec![C::zero(); n]; n];
    // Five shifted copies of f, highest coefficient first.
    for row in 0..5 {
        for k in 0..=6 {
            m[row][row + k] = coeffs[6 - k].clone();
        }
    }
    // Six shifted copies of f'.
    for row in 0..6 {
        for k in 0..=5 {
            m[5 + row][row + k] = coeffs[6 - k].clone() * C::from_i64((6 - k) as i64);
        }
    }
    -det(m) / coeffs[6].clone()
}

/// The five Igusa invariants of a sextic over any coefficient field.
///
/// J2, J4, J6 come from Clebsch A, B, C through the fixed conversion below;
/// J8 is (J2 J6 - J4^2)/4 and J10 is 2^-12 disc. The conversion constants
/// are pinned by the golden tables in the tests.
fn igusa_core<C: Coeff>(coeffs: &[C; 7]) -> [C; 5] {
    let f = BinaryForm::new(coeffs.to_vec());
    let (a, b, c) = clebsch_abc(&f);
    let i2 = a.clone() * C::from_i64(-120);
    let i4 = a.clone() * a.clone() * C::from_i64(-720) + b.clone() * C::from_i64(6750);
    let i6 = a.clone() * a.clone() * a.clone() * C::from_i64(8640)
        - a.clone() * b.clone() * C::from_i64(108000)
        + c * C::from_i64(202500);
    let j2 = i2 / C::from_i64(8);
    let j4 = (j2.clone() * j2.clone() * C::from_i64(4) - i4) / C::from_i64(96);
    let j6 = (j2.clone() * j2.clone() * j2.clone() * C::from_i64(8)
        - j2.clone() * j4.clone() * C::from_i64(160)
        - i6)
        / C::from_i64(576);
    let j8 = (j2.clone() * j6.clone() - j4.clone() * j4.clone()) / C::from_i64(4);
    let j10 = disc_core(coeffs) / C::from_i64(4096);
    [j2, j4, j6, j8, j10]
}

/// Igusa invariants with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgusaInvariants {
    pub j2: BigRational,
    pub j4: BigRational,
    pub j6: BigRational,
    pub j8: BigRational,
    pub j10: BigRational,
}

impl IgusaInvariants {
    fn from_array(js: [BigRational; 5]) -> Self {
        let [j2, j4, j6, j8, j10] = js;
        IgusaInvariants { j2, j4, j6, j8, j10 }
    }

    pub fn as_array(&self) -> [&BigRational; 5] {
        [&self.j2, &self.j4, &self.j6, &self.j8, &self.j10]
    }

    /// The invariants as integers; errors when any has a denominator.
    pub fn as_integers(&self) -> Result<[BigInt; 5]> {
        let mut out = Vec::with_capacity(5);
        for j in self.as_array() {
            if !j.is_integer() {
                return Err(Error::InvalidInput(format!(
                    "invariant {j} is not an integer"
                )));
            }
            out.push(j.to_integer());
        }
        Ok(out.try_into().expect("five invariants"))
    }
}

impl fmt::Display for IgusaInvariants {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "J2 = {}, J4 = {}, J6 = {}, J8 = {}, J10 = {}",
            self.j2, self.j4, self.j6, self.j8, self.j10
        )
    }
}

/// Discriminant of a sextic over K.
pub fn sextic_disc_k(f: &SexticK) -> KElement {
    disc_core(f.coeffs())
}

/// Discriminant of a sextic over Q.
pub fn sextic_disc_q(f: &SexticQ) -> BigRational {
    disc_core(f.coeffs())
}

/// Igusa invariants of a sextic over K.
///
/// The invariants of every curve in this crate's pipeline are rational
/// (conjugation sends the sextic to an isomorphic one of equal invariants);
/// a K-sextic with genuinely irrational invariants is rejected.
pub fn igusa_k(f: &SexticK) -> Result<IgusaInvariants> {
    let js = igusa_core(f.coeffs());
    let mut out = Vec::with_capacity(5);
    for j in js {
        if !j.is_rational() {
            return Err(Error::InvalidInput(format!(
                "invariant {j} of {f} is not rational"
            )));
        }
        out.push(j.x().clone());
    }
    Ok(IgusaInvariants::from_array(
        out.try_into().expect("five invariants"),
    ))
}

/// Igusa invariants of a sextic over Q.
pub fn igusa_q(f: &SexticQ) -> IgusaInvariants {
    IgusaInvariants::from_array(igusa_core(f.coeffs()))
}

/// Whether two invariant tuples agree in weighted projective space, i.e.
/// J'_2k = lambda^2k J_2k for some scalar lambda: the two curves are
/// isomorphic over an algebraic closure.
///
/// Implemented by cross-ratio checks J_2k^5 J10'^k = J'_2k^5 J10^k for
/// k = 1..4; J10 anchors the scale and must be nonzero.
pub fn weighted_equal(lhs: &IgusaInvariants, rhs: &IgusaInvariants) -> Result<bool> {
    if lhs.j10.is_zero() || rhs.j10.is_zero() {
        return Err(Error::InvalidInput(
            "weighted comparison needs nonzero J10 (nonsingular curves)".into(),
        ));
    }
    let pow5 = |v: &BigRational| v * v * v * v * v;
    let powk = |v: &BigRational, k: usize| -> BigRational {
        let mut acc = BigRational::one();
        for _ in 0..k {
            acc *= v;
        }
        acc
    };
    for (k, (l, r)) in [
        (&lhs.j2, &rhs.j2),
        (&lhs.j4, &rhs.j4),
        (&lhs.j6, &rhs.j6),
        (&lhs.j8, &rhs.j8),
    ]
    .into_iter()
    .enumerate()
    {
        if pow5(l) * powk(&rhs.j10, k + 1) != pow5(r) * powk(&lhs.j10, k + 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// 2^-12 disc as a factored integer, the shape the arithmetic identities
/// use. Errors when the scaled discriminant is not a nonzero integer.
pub fn scaled_disc_factorization(d: &BigRational) -> Result<crate::arith::Factorization> {
    let scaled = d / BigRational::from_integer(BigInt::from(4096));
    if !scaled.is_integer() || scaled.is_zero() {
        return Err(Error::InvalidInput(format!(
            "2^-12 disc = {scaled} is not a nonzero integer"
        )));
    }
    let v = scaled.to_integer();
    let f = crate::arith::factor(&v.abs());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::PrecisionContext;
    use crate::curves::{intro_fixture_163, normalized_sextic, q_model_43};
    use crate::hermitian::HermitianForm;

    fn big(s: &str) -> BigRational {
        BigRational::from_integer(s.parse().unwrap())
    }

    fn golden_curve(a: i64, r: i64) -> SexticK {
        let ctx = PrecisionContext::new(120).unwrap();
        normalized_sextic(&HermitianForm::from_i64(43, a, r, 2, 4 * 3 / a), &ctx).unwrap()
    }

    #[test]
    fn golden_invariants_first_curve() {
        let ctx = PrecisionContext::new(120).unwrap();
        let f = normalized_sextic(&HermitianForm::from_i64(43, 2, 1, 2, 6), &ctx).unwrap();
        let j = igusa_k(&f).unwrap();
        assert_eq!(j.j2, big("1728012"));
        assert_eq!(j.j4, big("93313728006"));
        assert_eq!(j.j6, big("-186622271996"));
        assert_eq!(j.j8, big("-2176943579975806271997"));
        assert_eq!(j.j10, big("2176782336000000000000"));
    }

    #[test]
    fn golden_invariants_second_curve() {
        let j = igusa_k(&golden_curve(3, 1)).unwrap();
        assert_eq!(j.j2, big("14333772"));
        assert_eq!(j.j4, big("7393823156166"));
        assert_eq!(j.j6, big("3726840435157546564"));
        assert_eq!(j.j8, big("-312234946681873274015037"));
        assert_eq!(j.j10, big("7355827511386641000000000000"));
    }

    #[test]
    fn j8_relation_holds_on_golden_tables() {
        for j in [
            igusa_k(&golden_curve(3, 1)).unwrap(),
            igusa_q(&q_model_43()),
        ] {
            assert_eq!(
                j.j8 * BigRational::from_integer(4.into()),
                &j.j2 * &j.j6 - &j.j4 * &j.j4
            );
        }
    }

    #[test]
    fn disc_factorizations() {
        let ctx = PrecisionContext::new(120).unwrap();
        let f1 = normalized_sextic(&HermitianForm::from_i64(43, 2, 1, 2, 6), &ctx).unwrap();
        let d1 = sextic_disc_k(&f1);
        assert!(d1.is_rational());
        // 2^-12 disc = (2^2*3*5)^12 = 60^12.
        assert_eq!(
            d1.x() / BigRational::from_integer(4096.into()),
            big("60").pow(12)
        );
        let d2 = sextic_disc_k(&golden_curve(3, 1));
        assert_eq!(
            d2.x() / BigRational::from_integer(4096.into()),
            big("210").pow(12)
        );
    }

    #[test]
    fn fixture_disc_matches_arithmetic_prediction() {
        // 2^-12 disc = (2*3^2*5*7*11*17*19*23)^12 for the showcase curve.
        let d = sextic_disc_k(&intro_fixture_163());
        assert!(d.is_rational());
        assert_eq!(
            d.x() / BigRational::from_integer(4096.into()),
            big("51482970").pow(12)
        );
    }

    #[test]
    fn invariants_blind_to_conjugation() {
        let j_plus = igusa_k(&golden_curve(3, 1)).unwrap();
        let j_minus = igusa_k(&golden_curve(3, -1)).unwrap();
        assert_eq!(j_plus, j_minus);
    }

    #[test]
    fn rational_model_weighted_match() {
        let ctx = PrecisionContext::new(120).unwrap();
        let f1 = normalized_sextic(&HermitianForm::from_i64(43, 2, 1, 2, 6), &ctx).unwrap();
        let j_curve = igusa_k(&f1).unwrap();
        let j_model = igusa_q(&q_model_43());
        assert!(weighted_equal(&j_model, &j_curve).unwrap());
        assert!(weighted_equal(&j_curve, &j_curve).unwrap());
        let j_other = igusa_k(&golden_curve(3, 1)).unwrap();
        assert!(!weighted_equal(&j_curve, &j_other).unwrap());
    }

    #[test]
    fn repeated_root_sextic_has_zero_disc() {
        // x^4 (x-1)(x+1) = x^6 - x^4.
        let f = SexticQ::from_i64([0, 0, 0, 0, -1, 0, 1]);
        assert!(sextic_disc_q(&f).is_zero());
    }

    #[test]
    fn weighted_class_stable_under_coordinate_moves() {
        // x -> x + 1 and the reversal x -> 1/x both preserve every J exactly
        // (unimodular substitutions of the binary form).
        let f = q_model_43();
        let j = igusa_q(&f);
        let c = f.coeffs();
        let mut shifted = vec![BigRational::zero(); 7];
        for k in 0..=6 {
            for l in 0..=k {
                shifted[l] += &c[k] * BigRational::from_integer(binomial(k, l).into());
            }
        }
        let f_shift = SexticQ::new(shifted.try_into().unwrap()).unwrap();
        assert_eq!(igusa_q(&f_shift), j);
        let mut rev = c.clone();
        rev.reverse();
        let f_rev = SexticQ::new(rev).unwrap();
        assert_eq!(igusa_q(&f_rev), j);
    }

    #[test]
    fn transvectant_basics() {
        // For f = x^2 + y^2 (order 2): (f,f)_2 is the Hessian-type scalar.
        let f = BinaryForm::new(vec![
            BigRational::one(),
            BigRational::zero(),
            BigRational::one(),
        ]);
        let t2 = transvectant(&f, &f, 2);
        assert_eq!(t2.order(), 0);
        // (f,f)_2 = (f_xx f_yy - f_xy^2) * (0!0!/2!2!) * 2 = 2*(2*2-0)/4 = 2.
        assert_eq!(t2.coeff(0), &BigRational::from_integer(2.into()));
        // Odd transvectant of a form with itself vanishes.
        let t1 = transvectant(&f, &f, 1);
        assert!(t1.coeffs.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn determinant_examples() {
        let m = vec![
            vec![big("2"), big("1"), big("0")],
            vec![big("1"), big("3"), big("1")],
            vec![big("0"), big("1"), big("4")],
        ];
        assert_eq!(det(m), big("18"));
        let singular = vec![
            vec![big("1"), big("2")],
            vec![big("2"), big("4")],
        ];
        assert!(det(singular).is_zero());
    }
}
