//! The factored-discriminant identity: the scaled discriminant of the
//! showcase curve is predicted prime-by-prime from lattice points of a
//! positive definite ternary quadratic form,
//!
//!   log D = -6 * sum over m in Z^3 with k(m) = (N - Q(m))/4 a positive
//!           integer, of sum over d | k(m) of (-N|d) log d.
//!
//! Everything is exact: the enumeration box is provably exhaustive via a
//! rational lower bound on the smallest eigenvalue of the Gram matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{divisors, factor, kronecker, Factorization};
use crate::error::{Error, Result};
use crate::hermitian::validate_n;

/// Positive definite integral ternary quadratic form Q(m) = m^t G m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    g: [[BigInt; 3]; 3],
}

impl TernaryForm {
    /// Builds from a symmetric Gram matrix; rejects asymmetric or
    /// non-positive-definite input (leading principal minors, exactly).
    pub fn new(g: [[BigInt; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "gram matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let form = TernaryForm { g };
        let minors = [form.minor1(), form.minor2(), form.det()];
        if minors.iter().any(|m| !m.is_positive()) {
            return Err(Error::IndefiniteGram(format!(
                "leading principal minors {}, {}, {} must all be positive",
                minors[0], minors[1], minors[2]
            )));
        }
        Ok(form)
    }

    pub fn from_i64(g: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(g.map(|row| row.map(BigInt::from)))
    }

    pub fn gram(&self) -> &[[BigInt; 3]; 3] {
        &self.g
    }

    fn minor1(&self) -> BigInt {
        self.g[0][0].clone()
    }

    fn minor2(&self) -> BigInt {
        &self.g[0][0] * &self.g[1][1] - &self.g[0][1] * &self.g[1][0]
    }

    pub fn det(&self) -> BigInt {
        let g = &self.g;
        let minor = |r: [usize; 2], c: [usize; 2]| {
            &g[r[0]][c[0]] * &g[r[1]][c[1]] - &g[r[0]][c[1]] * &g[r[1]][c[0]]
        };
        &g[0][0] * minor([1, 2], [1, 2]) - &g[0][1] * minor([1, 2], [0, 2])
            + &g[0][2] * minor([1, 2], [0, 1])
    }

    /// Q(m) for integer coordinates.
    pub fn evaluate(&self, m: [i64; 3]) -> BigInt {
        let mb = m.map(BigInt::from);
        let mut q = BigInt::zero();
        for i in 0..3 {
            for j in 0..3 {
                q += &self.g[i][j] * &mb[i] * &mb[j];
            }
        }
        q
    }

    /// Exact positive rational lower bound on the smallest eigenvalue:
    /// the better of the Gershgorin disc bound and 4 det / tr^2.
    fn eigenvalue_lower_bound(&self) -> BigRational {
        let g = &self.g;
        let gersh = (0..3)
            .map(|i| {
                let radius: BigInt = (0..3).filter(|&j| j != i).map(|j| g[i][j].abs()).sum();
                BigRational::from_integer(&g[i][i] - radius)
            })
            .min()
            .expect("three rows");
        let tr: BigInt = (0..3).map(|i| g[i][i].clone()).sum();
        let minor_bound = BigRational::new(BigInt::from(4) * self.det(), &tr * &tr);
        debug_assert!(minor_bound.is_positive(), "positive definite form");
        gersh.max(minor_bound)
    }
}

/// Smallest nonnegative integer t with t^2 >= s.
fn sqrt_ceil(s: &BigRational) -> i64 {
    if !s.is_positive() {
        return 0;
    }
    let mut t = (s.numer() * s.denom()).sqrt() / s.denom();
    let fits = |t: &BigInt| BigRational::from_integer(t * t) >= *s;
    while !fits(&t) {
        t += 1;
    }
    while t.is_positive() && fits(&(&t - 1)) {
        t -= 1;
    }
    i64::try_from(t).expect("enumeration box within i64")
}

fn gz_exponents_boxed(q: &TernaryForm, n: u64, margin: i64) -> Result<Factorization> {
    validate_n(n)?;
    let nb = BigInt::from(n);
    let minus_n = -nb.clone();
    // Any m with some |m_i| > box has Q(m) >= lower*(box+1)^2 >= N.
    let lower = q.eigenvalue_lower_bound();
    let box_radius = (sqrt_ceil(&(BigRational::from_integer(nb.clone()) / lower)) - 1).max(0)
        + margin;
    let mut exponents: BTreeMap<BigInt, i64> = BTreeMap::new();
    for m1 in -box_radius..=box_radius {
        for m2 in -box_radius..=box_radius {
            for m3 in -box_radius..=box_radius {
                let value = q.evaluate([m1, m2, m3]);
                let num = &nb - value;
                if !num.is_positive() || !(&num % 4u8).is_zero() {
                    continue;
                }
                let k = num / 4u8;
                for d in divisors(&k) {
                    let chi = kronecker(&minus_n, &d);
                    if chi == 0 {
                        continue;
                    }
                    for (p, e) in factor(&d).iter() {
                        *exponents.entry(p.clone()).or_insert(0) -= 6 * chi as i64 * e;
                    }
                }
            }
        }
    }
    Ok(Factorization::from_pairs(exponents))
}

/// Exact exponent map of the predicted discriminant: for every lattice
/// point with k(m) = (N - Q(m))/4 a positive integer and every divisor d
/// of k(m), each prime p contributes -6*(-N|d)*v_p(d).
pub fn gz_exponents(q: &TernaryForm, n: u64) -> Result<Factorization> {
    gz_exponents_boxed(q, n, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::intro_fixture_163;
    use crate::igusa::{scaled_disc_factorization, sextic_disc_k};

    fn showcase_form() -> TernaryForm {
        TernaryForm::from_i64([[24, 4, 6], [4, 55, 1], [6, 1, 83]]).unwrap()
    }

    fn golden_map() -> Factorization {
        Factorization::from_pairs([
            (BigInt::from(2), 12),
            (BigInt::from(3), 24),
            (BigInt::from(5), 12),
            (BigInt::from(7), 12),
            (BigInt::from(11), 12),
            (BigInt::from(17), 12),
            (BigInt::from(19), 12),
            (BigInt::from(23), 12),
        ])
    }

    #[test]
    fn showcase_exponent_map() {
        assert_eq!(gz_exponents(&showcase_form(), 163).unwrap(), golden_map());
    }

    #[test]
    fn exponent_map_matches_fixture_discriminant() {
        let d = sextic_disc_k(&intro_fixture_163());
        let f = scaled_disc_factorization(d.x()).unwrap();
        assert_eq!(gz_exponents(&showcase_form(), 163).unwrap(), f);
    }

    #[test]
    fn output_primes_are_small_and_inert() {
        let out = gz_exponents(&showcase_form(), 163).unwrap();
        assert!(!out.is_empty());
        for (p, e) in out.iter() {
            assert!(p * 4u8 < BigInt::from(163), "prime {p} too large");
            assert_eq!(kronecker(&BigInt::from(-163), p), -1, "prime {p} splits");
            assert!(e > 0);
        }
    }

    #[test]
    fn box_enlargement_does_not_change_output() {
        let base = gz_exponents_boxed(&showcase_form(), 163, 0).unwrap();
        let padded = gz_exponents_boxed(&showcase_form(), 163, 2).unwrap();
        assert_eq!(base, padded);
    }

    #[test]
    fn form_with_large_minimum_gives_empty_map() {
        let q = TernaryForm::from_i64([[163, 0, 0], [0, 163, 0], [0, 0, 163]]).unwrap();
        assert_eq!(gz_exponents(&q, 163).unwrap(), Factorization::one());
    }

    #[test]
    fn indefinite_and_asymmetric_forms_rejected() {
        assert!(matches!(
            TernaryForm::from_i64([[1, 0, 0], [0, -1, 0], [0, 0, 1]]),
            Err(Error::IndefiniteGram(_))
        ));
        assert!(matches!(
            TernaryForm::from_i64([[1, 2, 0], [3, 1, 0], [0, 0, 1]]),
            Err(Error::InvalidInput(_))
        ));
        // Semidefinite (zero minor) is rejected too.
        assert!(matches!(
            TernaryForm::from_i64([[1, 1, 0], [1, 1, 0], [0, 0, 1]]),
            Err(Error::IndefiniteGram(_))
        ));
    }

    #[test]
    fn evaluate_basic_values() {
        let q = showcase_form();
        assert_eq!(q.evaluate([1, 0, 0]), BigInt::from(24));
        assert_eq!(q.evaluate([0, 1, 0]), BigInt::from(55));
        assert_eq!(q.evaluate([1, 1, 0]), BigInt::from(24 + 55 + 8));
        assert_eq!(q.evaluate([-1, -1, 0]), q.evaluate([1, 1, 0]));
    }

    #[test]
    fn sqrt_ceil_examples() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(sqrt_ceil(&r(16, 1)), 4);
        assert_eq!(sqrt_ceil(&r(17, 1)), 5);
        assert_eq!(sqrt_ceil(&r(163, 14)), 4);
        assert_eq!(sqrt_ceil(&r(-3, 1)), 0);
        assert_eq!(sqrt_ceil(&r(1, 4)), 1);
    }
}
