//! Mestre's conic attached to a genus 2 curve: the symmetric 3x3 matrix M
//! built from the Igusa invariants, its determinant, and local solvability
//! of x M x^t = 0 over every completion of Q.
//!
//! For a curve with no extra automorphisms the conic has a rational point
//! exactly when the curve is definable over its field of moduli, so the set
//! of obstructed places decides descent to Q.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor, is_prime, kronecker, Factorization};
use crate::error::{Error, Result};
use crate::igusa::IgusaInvariants;

/// A place of Q: a finite prime or the archimedean place.
///
/// The derived order sorts primes ascending with infinity last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Prime(BigInt),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(out, "{p}"),
            Place::Infinity => write!(out, "infinity"),
        }
    }
}

/// Symmetric 3x3 matrix of rationals defining the conic x M x^t = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicMatrix {
    m: [[BigRational; 3]; 3],
}

impl ConicMatrix {
    /// Builds from rows; rejects asymmetric input.
    pub fn new(m: [[BigRational; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "conic matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(ConicMatrix { m })
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|row| row.map(|v| BigRational::from_integer(BigInt::from(v)))))
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[[BigRational; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> BigRational {
        let m = &self.m;
        let minor = |r: [usize; 2], c: [usize; 2]| {
            &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]]
        };
        &m[0][0] * minor([1, 2], [1, 2]) - &m[0][1] * minor([1, 2], [0, 2])
            + &m[0][2] * minor([1, 2], [0, 1])
    }
}

impl fmt::Display for ConicMatrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.m.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// Everything the descent criterion reports for one curve.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    /// det M; nonzero (singular matrices are rejected upstream).
    pub det: BigRational,
    /// Factorization of |det M| when det M is an integer.
    pub det_factorization: Option<Factorization>,
    /// A diagonal form ⟨d1,d2,d3⟩ congruent to M, squarefree integers.
    pub diagonal: [BigInt; 3],
    /// Places where the conic has no local point.
    pub obstructed_places: BTreeSet<Place>,
    /// Equivalent to obstructed_places being empty (local-global principle).
    pub solvable_over_q: bool,
}

/// Mestre's conic matrix from the Igusa invariants; six polynomial entries
/// and symmetric completion.
pub fn mestre_matrix(j: &IgusaInvariants) -> ConicMatrix {
    let c = |v: i64| BigRational::from_integer(BigInt::from(v));
    let (j2, j4, j6, j10) = (&j.j2, &j.j4, &j.j6, &j.j10);
    let m11 = c(3) * j2 * j2 * j2 - c(160) * j4 * j2 - c(3600) * j6;
    let m12 = -(j4 * j2 * j2) + c(330) * j6 * j2 + c(160) * j4 * j4;
    let m13 = -(j6 * j2 * j2) - c(840) * j6 * j4 - c(8000) * j10;
    let m22 = c(-25) * j6 * j2 * j2 - c(8) * j4 * j4 * j2 - c(120) * j6 * j4 - c(2000) * j10;
    // Weight homogeneity (entry m_ij has weight 2(i+j)+2) forces the J2
    // factor in the first term; the printed golden entries confirm it.
    let m23 = c(67) * j6 * j4 * j2 + c(600) * j10 * j2 + c(90) * j6 * j6;
    let m33 = c(-33) * j6 * j6 * j2 - c(100) * j6 * j4 * j4 - c(800) * j10 * j4;
    ConicMatrix {
        m: [
            [m11.clone(), m12.clone(), m13.clone()],
            [m12, m22.clone(), m23.clone()],
            [m13, m23, m33],
        ],
    }
}

/// det M together with the factorization of |det M| when it is a nonzero
/// integer. Zero determinant signals extra automorphisms.
pub fn det_mestre(m: &ConicMatrix) -> (BigRational, Option<Factorization>) {
    let d = m.det();
    let f = if d.is_integer() && !d.is_zero() {
        Some(factor(&d.to_integer()))
    } else {
        None
    };
    (d, f)
}

/// p-adic valuation and unit part of a nonzero rational.
fn unit_and_val(p: &BigInt, x: &BigRational) -> (i64, BigRational) {
    fn strip(p: &BigInt, mut n: BigInt) -> (i64, BigInt) {
        let mut v = 0;
        while (&n % p).is_zero() {
            n /= p;
            v += 1;
        }
        (v, n)
    }
    let (vn, nu) = strip(p, x.numer().clone());
    let (vd, de) = strip(p, x.denom().clone());
    (vn - vd, BigRational::new(nu, de))
}

/// Legendre symbol of a p-adic unit rational modulo an odd prime.
fn legendre_of_unit(p: &BigInt, u: &BigRational) -> i32 {
    let inv_den = u.denom().modpow(&(p - 2), p);
    let r = (u.numer() * inv_den).mod_floor(p);
    kronecker(&r, p)
}

/// Residue of a 2-adic unit rational modulo 8 (odd denominators are
/// self-inverse mod 8).
fn odd_unit_mod8(u: &BigRational) -> i64 {
    let r = (u.numer() * u.denom()).mod_floor(&BigInt::from(8));
    let digits = r.to_u64_digits().1;
    *digits.first().unwrap_or(&0) as i64
}

/// The Hilbert symbol (a,b)_v for nonzero rationals at a place of Q.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput(
            "hilbert symbol needs nonzero arguments".into(),
        ));
    }
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not a prime place")));
            }
            let (alpha, u) = unit_and_val(p, a);
            let (beta, w) = unit_and_val(p, b);
            if *p == BigInt::from(2) {
                let eps = |r: i64| ((r % 4) - 1) / 2 % 2; // (u-1)/2 mod 2 from r = u mod 8
                let omega = |r: i64| (r * r - 1) / 8 % 2; // (u^2-1)/8 mod 2
                let (ru, rw) = (odd_unit_mod8(&u), odd_unit_mod8(&w));
                let e = eps(ru) * eps(rw) + alpha.rem_euclid(2) * omega(rw)
                    + beta.rem_euclid(2) * omega(ru);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let mut s = 1;
                // (-1|p)^(alpha beta)
                let p_half = ((p - 1u32) / 2u32).mod_floor(&BigInt::from(2));
                if alpha.rem_euclid(2) * beta.rem_euclid(2) == 1 && p_half.is_one() {
                    s = -s;
                }
                if beta.rem_euclid(2) == 1 {
                    s *= legendre_of_unit(p, &u);
                }
                if alpha.rem_euclid(2) == 1 {
                    s *= legendre_of_unit(p, &w);
                }
                Ok(s)
            }
        }
    }
}

/// Exact congruence diagonalization of a nonsingular symmetric 3x3 matrix.
pub fn diagonalize_conic(m: &ConicMatrix) -> Result<[BigRational; 3]> {
    if m.det().is_zero() {
        return Err(Error::InvalidInput(
            "singular conic matrix: the curve has extra automorphisms".into(),
        ));
    }
    let mut a = m.m.clone();
    for k in 0..3 {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..3).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else {
                // All remaining diagonal entries vanish; a nonzero off-diagonal
                // pair exists because the matrix is nonsingular.
                let (i, j) = (k + 1..3)
                    .flat_map(|j| (k..j).map(move |i| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                    .expect("nonsingular matrix has a nonzero entry");
                // Add row/col j into row/col i: the new (i,i) entry is 2a_ij.
                for col in 0..3 {
                    let v = a[j][col].clone();
                    a[i][col] += v;
                }
                for row in 0..3 {
                    let v = a[row][j].clone();
                    a[row][i] += v;
                }
                if i != k {
                    a.swap(k, i);
                    for row in a.iter_mut() {
                        row.swap(k, i);
                    }
                }
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..3 {
            if a[i][k].is_zero() {
                continue;
            }
            let r = &a[i][k] / &pivot;
            for col in 0..3 {
                let v = &r * &a[k][col];
                a[i][col] -= v;
            }
            for row in 0..3 {
                let v = &r * &a[row][k];
                a[row][i] -= v;
            }
        }
    }
    Ok([a[0][0].clone(), a[1][1].clone(), a[2][2].clone()])
}

/// Integer in the rational square class of x, with square factors of small
/// primes stripped by bounded trial division. Larger square factors stay:
/// they never change a Hilbert symbol, only the cosmetics of the report.
fn square_class_integer(x: &BigRational) -> BigInt {
    let mut n = x.numer() * x.denom();
    let negative = n.is_negative();
    n = n.abs();
    let mut p = 2u64;
    while p < 100_000 {
        let p2 = BigInt::from(p) * BigInt::from(p);
        if &p2 > &n {
            break;
        }
        while n.is_multiple_of(&p2) {
            n /= &p2;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if negative {
        -n
    } else {
        n
    }
}

/// Local solvability of the conic at every place of Q.
///
/// Isotropy is tested by Hilbert symbols on an exact diagonalization. The
/// tested place set is {∞, 2} ∪ {odd p dividing the integer determinant}
/// after clearing denominators: at any other odd prime the conic is smooth
/// modulo p, so it has a local point and the symbol is +1 automatically.
pub fn conic_obstruction(m: &ConicMatrix) -> Result<ObstructionReport> {
    let (det, det_factorization) = det_mestre(m);
    let diag = diagonalize_conic(m)?;
    let d: [BigInt; 3] = [
        square_class_integer(&diag[0]),
        square_class_integer(&diag[1]),
        square_class_integer(&diag[2]),
    ];
    let rat = |v: BigInt| BigRational::from_integer(v);
    // x M x^t = 0 has a point over Q_v iff (-d1 d3, -d2 d3)_v = +1.
    let a = rat(-(&d[0] * &d[2]));
    let b = rat(-(&d[1] * &d[2]));
    let det_int_factors = match (&det_factorization, det.is_integer()) {
        (Some(f), true) => f.clone(),
        _ => {
            let scale = m
                .m
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let cleared = &det * BigRational::from_integer(&scale * &scale * &scale);
            factor(&cleared.to_integer())
        }
    };
    let mut places: BTreeSet<Place> = BTreeSet::from([Place::Infinity, Place::Prime(2.into())]);
    for (p, _) in det_int_factors.iter() {
        if p.is_odd() {
            places.insert(Place::Prime(p.clone()));
        }
    }
    let mut obstructed = BTreeSet::new();
    for v in places {
        if hilbert_symbol(&a, &b, &v)? == -1 {
            obstructed.insert(v);
        }
    }
    debug_assert!(obstructed.len() % 2 == 0, "hilbert product formula");
    Ok(ObstructionReport {
        det,
        det_factorization,
        diagonal: d,
        solvable_over_q: obstructed.is_empty(),
        obstructed_places: obstructed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::PrecisionContext;
    use crate::curves::normalized_sextic;
    use crate::hermitian::{definable_over_q, enumerate_reduced};
    use crate::igusa::igusa_k;

    fn big(s: &str) -> BigRational {
        BigRational::from_integer(s.parse().unwrap())
    }

    fn golden_j_second_curve() -> IgusaInvariants {
        IgusaInvariants {
            j2: big("14333772"),
            j4: big("7393823156166"),
            j6: big("3726840435157546564"),
            j8: big("-312234946681873274015037"),
            j10: big("7355827511386641000000000000"),
        }
    }

    #[test]
    fn mestre_entries_match_printed_values() {
        let m = mestre_matrix(&golden_j_second_curve());
        assert_eq!(m.entry(0, 0), &big("-21538723388574481387776"));
        assert_eq!(m.entry(0, 1), &big("24856361223852137345176064256"));
        assert_eq!(m.entry(0, 2), &big("-23971255400369899892885589544571136"));
        assert_eq!(m.entry(1, 1), &big("-28732882146400381994651008552571136"));
        assert_eq!(
            m.entry(1, 2),
            &big("27776672840855638207256856144392139100416")
        );
        assert_eq!(
            m.entry(2, 2),
            &big("-26987491534155851141341724256178812956900004096")
        );
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entry(i, j), m.entry(j, i));
            }
        }
    }

    #[test]
    fn mestre_trivial_evaluations() {
        let unit = IgusaInvariants {
            j2: big("1"),
            j4: big("0"),
            j6: big("0"),
            j8: big("0"),
            j10: big("0"),
        };
        let m = mestre_matrix(&unit);
        assert_eq!(m.entry(0, 0), &big("3"));
        for (i, j) in [(0, 1), (0, 2), (1, 1), (1, 2), (2, 2)] {
            assert!(m.entry(i, j).is_zero());
        }
        let zero = IgusaInvariants {
            j2: big("0"),
            j4: big("0"),
            j6: big("0"),
            j8: big("0"),
            j10: big("0"),
        };
        let mz = mestre_matrix(&zero);
        assert!(mz.rows().iter().flatten().all(|v| v.is_zero()));
    }

    #[test]
    fn det_mestre_golden_factorization() {
        let m = mestre_matrix(&golden_j_second_curve());
        let (d, f) = det_mestre(&m);
        let expected = Factorization::from_pairs([
            (BigInt::from(2), 64),
            (BigInt::from(3), 38),
            (BigInt::from(5), 34),
            (BigInt::from(7), 28),
            (BigInt::from(19), 4),
            (BigInt::from(29), 2),
            (BigInt::from(37), 2),
            (BigInt::from(43), 1),
        ]);
        assert_eq!(d, -BigRational::from_integer(expected.value()));
        assert_eq!(f.unwrap(), expected);
    }

    #[test]
    fn det_mestre_trivial_cases() {
        let id = ConicMatrix::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let (d, f) = det_mestre(&id);
        assert_eq!(d, big("1"));
        assert_eq!(f.unwrap(), Factorization::one());
        let flat = ConicMatrix::from_i64([[1, 1, 1], [1, 1, 1], [1, 1, 1]]).unwrap();
        let (d, f) = det_mestre(&flat);
        assert!(d.is_zero());
        assert!(f.is_none());
    }

    #[test]
    fn hilbert_symbol_basics() {
        let inf = Place::Infinity;
        let two = Place::Prime(2.into());
        assert_eq!(hilbert_symbol(&big("-1"), &big("-1"), &inf).unwrap(), -1);
        assert_eq!(hilbert_symbol(&big("-1"), &big("-1"), &two).unwrap(), -1);
        for v in [
            inf.clone(),
            two.clone(),
            Place::Prime(3.into()),
            Place::Prime(5.into()),
            Place::Prime(7.into()),
        ] {
            for b in [big("-6"), big("2"), big("15"), big("-1")] {
                assert_eq!(hilbert_symbol(&big("1"), &b, &v).unwrap(), 1);
            }
        }
        // Odd-place spot checks against quadratic residues.
        assert_eq!(
            hilbert_symbol(&big("5"), &big("3"), &Place::Prime(3.into())).unwrap(),
            -1
        );
        assert_eq!(
            hilbert_symbol(&big("2"), &big("7"), &Place::Prime(7.into())).unwrap(),
            1
        );
        assert_eq!(
            hilbert_symbol(&big("2"), &big("5"), &Place::Prime(5.into())).unwrap(),
            -1
        );
        // Rational (non-integral) arguments reduce by square classes.
        assert_eq!(
            hilbert_symbol(
                &BigRational::new(BigInt::from(5), BigInt::from(4)),
                &big("3"),
                &Place::Prime(3.into())
            )
            .unwrap(),
            -1
        );
    }

    #[test]
    fn hilbert_symbol_rejects_zero_and_composite_place() {
        assert!(hilbert_symbol(&big("0"), &big("1"), &Place::Infinity).is_err());
        assert!(hilbert_symbol(&big("1"), &big("0"), &Place::Infinity).is_err());
        assert!(hilbert_symbol(&big("1"), &big("1"), &Place::Prime(6.into())).is_err());
    }

    #[test]
    fn hilbert_product_formula_sweep() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 || b == 0 {
                    continue;
                }
                let (ra, rb) = (big(&a.to_string()), big(&b.to_string()));
                let mut places = vec![Place::Infinity, Place::Prime(2.into())];
                for v in [a.unsigned_abs(), b.unsigned_abs()] {
                    for (p, _) in factor(&BigInt::from(v)).iter() {
                        if p.is_odd() {
                            places.push(Place::Prime(p.clone()));
                        }
                    }
                }
                places.sort();
                places.dedup();
                let prod: i32 = places
                    .iter()
                    .map(|v| hilbert_symbol(&ra, &rb, v).unwrap())
                    .product();
                assert_eq!(prod, 1, "product formula failed for ({a},{b})");
            }
        }
    }

    #[test]
    fn obstruction_for_golden_curve_is_43_and_infinity() {
        let m = mestre_matrix(&golden_j_second_curve());
        let rep = conic_obstruction(&m).unwrap();
        let expected: BTreeSet<Place> =
            BTreeSet::from([Place::Prime(43.into()), Place::Infinity]);
        assert_eq!(rep.obstructed_places, expected);
        assert!(!rep.solvable_over_q);
        assert_eq!(rep.obstructed_places.len() % 2, 0);
        assert!(rep.det_factorization.is_some());
    }

    #[test]
    fn obstruction_trivial_diagonals() {
        let split = ConicMatrix::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, -1]]).unwrap();
        let rep = conic_obstruction(&split).unwrap();
        assert!(rep.obstructed_places.is_empty());
        assert!(rep.solvable_over_q);
        let definite = ConicMatrix::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let rep = conic_obstruction(&definite).unwrap();
        assert!(rep.obstructed_places.contains(&Place::Infinity));
        assert!(!rep.solvable_over_q);
        assert_eq!(rep.obstructed_places.len() % 2, 0);
    }

    #[test]
    fn obstruction_handles_zero_diagonal_pivots() {
        // Antidiagonal matrix: x1 x3 + x2^2 type form with no (1,1) pivot.
        let m = ConicMatrix::from_i64([[0, 0, 1], [0, 1, 0], [1, 0, 0]]).unwrap();
        let rep = conic_obstruction(&m).unwrap();
        assert!(rep.solvable_over_q);
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = ConicMatrix::from_i64([[1, 2, 3], [2, 4, 6], [3, 6, 9]]).unwrap();
        assert!(matches!(
            conic_obstruction(&m),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn descent_obstruction_matches_form_criterion() {
        let ctx = PrecisionContext::new(120).unwrap();
        for form in enumerate_reduced(43).unwrap() {
            if form.is_principal() {
                continue;
            }
            let f = normalized_sextic(&form, &ctx).unwrap();
            let j = igusa_k(&f).unwrap();
            let m = mestre_matrix(&j);
            let definable = definable_over_q(&form).unwrap();
            if m.det().is_zero() {
                // Extra automorphisms: Mestre's criterion is inapplicable,
                // and such curves here descend (the even model is visible).
                assert!(definable, "singular matrix for non-definable {form}");
                assert!(matches!(
                    conic_obstruction(&m),
                    Err(Error::InvalidInput(_))
                ));
            } else {
                let rep = conic_obstruction(&m).unwrap();
                assert_eq!(
                    rep.solvable_over_q, definable,
                    "descent mismatch for {form}"
                );
                assert!(!rep.obstructed_places.is_empty());
                assert_eq!(rep.obstructed_places.len() % 2, 0);
            }
        }
    }
}
