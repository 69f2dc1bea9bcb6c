//! Positive definite binary Hermitian forms over Z[i] of discriminant -N:
//! enumeration of reduced forms, reduction to the fundamental domain, the
//! iota involution, class and type numbers, and period matrices.
//!
//! A triple (a, b, c) denotes Phi(u, v) = 2a*u*conj(u) + b*u*conj(v) +
//! conj(b)*conj(u)*v + 2c*v*conj(v) with discriminant b*conj(b) - 4ac = -N.
//! The normalization b = 1 mod 2Z[i] (re odd, im even) is an SL2(Z[i]) class
//! invariant: translations shift b by multiples of 2a, inversion sends b to
//! -conj(b), and both preserve the parity pair.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, kronecker_i64};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::kfield::KElement;

/// Number of reduction states explored before giving up.
const REDUCTION_NODE_CAP: usize = 10_000;

/// Checks that N is a prime congruent to 3 mod 4.
pub fn validate_n(n: u64) -> Result<()> {
    if n % 4 != 3 || !is_prime(&BigInt::from(n)) {
        return Err(Error::InvalidInput(format!(
            "N = {n} must be a prime congruent to 3 mod 4"
        )));
    }
    Ok(())
}

/// A positive definite Hermitian form (a, b, c) of discriminant -N.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HermitianForm {
    n: u64,
    a: BigInt,
    b: GaussianInt,
    c: BigInt,
}

impl HermitianForm {
    /// Validates a > 0, c > 0, b*conj(b) - 4ac = -N, re(b) odd, im(b) even.
    pub fn new(n: u64, a: BigInt, b: GaussianInt, c: BigInt) -> Result<Self> {
        validate_n(n)?;
        if !a.is_positive() || !c.is_positive() {
            return Err(Error::InvalidInput(format!(
                "form ({a}, {b}, {c}): a and c must be positive"
            )));
        }
        if !b.is_odd_even() {
            return Err(Error::InvalidInput(format!(
                "form ({a}, {b}, {c}): need re(b) odd and im(b) even"
            )));
        }
        let disc = b.norm() - BigInt::from(4) * &a * &c;
        if disc != -BigInt::from(n) {
            return Err(Error::InvalidInput(format!(
                "form ({a}, {b}, {c}) has discriminant {disc}, expected -{n}"
            )));
        }
        Ok(HermitianForm { n, a, b, c })
    }

    /// Integer shorthand used throughout the tests.
    pub fn from_i64(n: u64, a: i64, r: i64, s: i64, c: i64) -> Self {
        HermitianForm::new(
            n,
            BigInt::from(a),
            GaussianInt::from_i64(r, s),
            BigInt::from(c),
        )
        .expect("valid form")
    }

    fn unchecked(n: u64, a: BigInt, b: GaussianInt, c: BigInt) -> Self {
        debug_assert!(a.is_positive() && c.is_positive());
        debug_assert_eq!(b.norm() - BigInt::from(4) * &a * &c, -BigInt::from(n));
        HermitianForm { n, a, b, c }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &GaussianInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// re(b), written r in the triple (a, r+si, c).
    pub fn r(&self) -> &BigInt {
        &self.b.re
    }

    /// im(b), written s.
    pub fn s(&self) -> &BigInt {
        &self.b.im
    }

    /// b*conj(b) - 4ac; equals -N for every valid form.
    pub fn discriminant(&self) -> BigInt {
        self.b.norm() - BigInt::from(4) * &self.a * &self.c
    }

    /// The involution (a, b, c) -> (a, -conj(b), c).
    pub fn iota(&self) -> HermitianForm {
        HermitianForm::unchecked(self.n, self.a.clone(), -&self.b.conj(), self.c.clone())
    }

    /// Representative point (x, y, t) = (r/2a, s/2a, sqrt(N)/2a) in upper
    /// half space, with t stored via its square to stay rational.
    pub fn rep_point(&self) -> H3Point {
        let two_a = BigInt::from(2) * &self.a;
        H3Point {
            x: BigRational::new(self.b.re.clone(), two_a.clone()),
            y: BigRational::new(self.b.im.clone(), two_a),
            t2: BigRational::new(BigInt::from(self.n), BigInt::from(4) * &self.a * &self.a),
        }
    }

    /// The symmetric period matrix (1/2a) [[r+sqrt(-N), s], [s, -r+sqrt(-N)]].
    pub fn period_matrix(&self) -> PeriodMatrix {
        PeriodMatrix {
            n: self.n,
            a: self.a.clone(),
            r: self.b.re.clone(),
            s: self.b.im.clone(),
        }
    }

    /// True for (1, 1, (N+1)/4), the form whose polarization is a product.
    pub fn is_principal(&self) -> bool {
        self.a.is_one()
            && self.b == GaussianInt::one()
            && self.c == BigInt::from((self.n + 1) / 4)
    }

    /// True iff this form appears in `enumerate_reduced(N)`; enumeration
    /// membership is the normative definition of "reduced".
    pub fn is_reduced(&self) -> bool {
        enumerate_reduced(self.n)
            .map(|list| list.contains(self))
            .unwrap_or(false)
    }
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// A point (x, y, t) of hyperbolic 3-space with t kept as t^2 for exactness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H3Point {
    pub x: BigRational,
    pub y: BigRational,
    pub t2: BigRational,
}

impl H3Point {
    /// x^2 + y^2 + t^2, the quantity the inversion inequality bounds.
    /// For a rep point this equals c/a.
    pub fn norm2(&self) -> BigRational {
        &self.x * &self.x + &self.y * &self.y + &self.t2
    }
}

/// The exact period matrix Z = (1/2a) [[r+sqrt(-N), s], [s, -r+sqrt(-N)]].
///
/// Its imaginary part is (sqrt(N)/2a) * Identity, positive definite since
/// a > 0, so Z lies in the rank 2 Siegel upper half space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodMatrix {
    n: u64,
    a: BigInt,
    r: BigInt,
    s: BigInt,
}

impl PeriodMatrix {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    fn over_2a(&self, num: KElement) -> KElement {
        num.scale(&BigRational::new(BigInt::one(), BigInt::from(2) * &self.a))
    }

    /// Entry (1,1) = (r + sqrt(-N)) / 2a as an exact field element.
    pub fn z11(&self) -> KElement {
        self.over_2a(
            KElement::from_rational(BigRational::from_integer(self.r.clone()))
                + KElement::sqrt_neg_n(self.n),
        )
    }

    /// Entry (1,2) = (2,1) = s / 2a.
    pub fn z12(&self) -> KElement {
        self.over_2a(KElement::from_rational(BigRational::from_integer(
            self.s.clone(),
        )))
    }

    /// Entry (2,2) = (-r + sqrt(-N)) / 2a.
    pub fn z22(&self) -> KElement {
        self.over_2a(
            KElement::from_rational(BigRational::from_integer(-&self.r))
                + KElement::sqrt_neg_n(self.n),
        )
    }
}

impl fmt::Display for PeriodMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(1/{}) [[{}+sqrt(-{}), {}], [{}, {}+sqrt(-{})]]",
            BigInt::from(2) * &self.a,
            self.r,
            self.n,
            self.s,
            self.s,
            -&self.r,
            self.n
        )
    }
}

/// Generators of the SL2(Z[i]) action on forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sl2GaussianGen {
    /// (u, v) -> (u + lambda*v, v).
    Translate(GaussianInt),
    /// (u, v) -> (-v, u).
    Invert,
    /// (u, v) -> (i*u, -i*v), which negates b.
    NegateB,
}

/// Applies one generator to a form.
///
/// Translate(lambda): (a, b + 2a*conj(lambda), c + a*|lambda|^2 + re(b*lambda)).
/// Invert: (c, -conj(b), a). NegateB: (a, -b, c). All three preserve the
/// discriminant and positive definiteness.
pub fn apply_generator(form: &HermitianForm, g: &Sl2GaussianGen) -> HermitianForm {
    match g {
        Sl2GaussianGen::Translate(lambda) => {
            let two_a = GaussianInt::new(BigInt::from(2) * &form.a, BigInt::zero());
            let b = &form.b + &(&two_a * &lambda.conj());
            let blam = &form.b * lambda;
            let c = &form.c + &form.a * lambda.norm() + blam.re;
            HermitianForm::unchecked(form.n, form.a.clone(), b, c)
        }
        Sl2GaussianGen::Invert => HermitianForm::unchecked(
            form.n,
            form.c.clone(),
            -&form.b.conj(),
            form.a.clone(),
        ),
        Sl2GaussianGen::NegateB => {
            HermitianForm::unchecked(form.n, form.a.clone(), -&form.b, form.c.clone())
        }
    }
}

/// Applies a word of generators left to right.
pub fn apply_generator_word(form: &HermitianForm, word: &[Sl2GaussianGen]) -> HermitianForm {
    word.iter().fold(form.clone(), |f, g| apply_generator(&f, g))
}

/// Nearest integer to num/den (den > 0), ties toward positive infinity.
///
/// Ties-up keeps the descent idempotent on reduced forms: it leaves
/// r in (-a, a] and s in (-a, a] untouched, and the enumeration only ever
/// emits r in (-a, a], s in [0, a].
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let shifted: BigInt = BigInt::from(2) * num + den;
    shifted.div_floor(&(BigInt::from(2) * den))
}

/// Translation-minimizes b and inverts while c < a. The result satisfies
/// |r| <= a, |s| <= a and a <= c but may differ from the reduced
/// representative by a boundary move.
fn descend(mut form: HermitianForm) -> HermitianForm {
    loop {
        let two_a = BigInt::from(2) * &form.a;
        let tr = round_div(&-&form.b.re, &two_a);
        let ts = round_div(&-&form.b.im, &two_a);
        if !tr.is_zero() || !ts.is_zero() {
            // b + 2a*conj(lambda) = b + 2a*(tr + ts*i) wants lambda = tr - ts*i.
            let lambda = GaussianInt::new(tr.clone(), -ts);
            form = apply_generator(&form, &Sl2GaussianGen::Translate(lambda));
        }
        if form.c < form.a {
            form = apply_generator(&form, &Sl2GaussianGen::Invert);
        } else {
            return form;
        }
    }
}

/// Reduces a form to its unique reduced representative.
///
/// Gauss-style descent (translate, invert while c < a) followed by a
/// breadth-first search over single generator moves to resolve boundary
/// orientation; terminates at the member of `enumerate_reduced(N)` in the
/// same orbit.
pub fn reduce_form(form: &HermitianForm) -> Result<HermitianForm> {
    let reduced: BTreeSet<HermitianForm> = enumerate_reduced(form.n)?.into_iter().collect();
    let start = descend(form.clone());
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let moves = [
        Sl2GaussianGen::NegateB,
        Sl2GaussianGen::Invert,
        Sl2GaussianGen::Translate(GaussianInt::from_i64(1, 0)),
        Sl2GaussianGen::Translate(GaussianInt::from_i64(-1, 0)),
        Sl2GaussianGen::Translate(GaussianInt::from_i64(0, 1)),
        Sl2GaussianGen::Translate(GaussianInt::from_i64(0, -1)),
    ];
    while let Some(f) = queue.pop_front() {
        if reduced.contains(&f) {
            return Ok(f);
        }
        for g in &moves {
            let next = descend(apply_generator(&f, g));
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        if seen.len() > REDUCTION_NODE_CAP {
            break;
        }
    }
    Err(Error::InvalidInput(format!(
        "reduction of {form} did not reach a reduced form within {REDUCTION_NODE_CAP} states"
    )))
}

/// Lists the reduced forms of discriminant -N in canonical order
/// (ascending a, then re(b), then im(b)).
///
/// For 0 <= r, s <= sqrt(N/2) with r odd, s even, and m = (r^2+s^2+N)/4,
/// every divisor a of m with max(r, s) <= a <= sqrt(m) contributes
/// (a, r+si, m/a), and also (a, -r+si, m/a) unless a = m/a, r = a, s = a,
/// or s = 0.
pub fn enumerate_reduced(n: u64) -> Result<Vec<HermitianForm>> {
    validate_n(n)?;
    let mut list = Vec::new();
    let mut r = 1u64;
    while 2 * r * r <= n {
        let mut s = 0u64;
        while 2 * s * s <= n {
            let m = (r * r + s * s + n) / 4;
            let lo = r.max(s);
            let mut a = lo.max(1);
            while a * a <= m {
                if m % a == 0 {
                    let c = m / a;
                    list.push(HermitianForm::from_i64(
                        n, a as i64, r as i64, s as i64, c as i64,
                    ));
                    if a != c && r != a && s != a && s != 0 {
                        list.push(HermitianForm::from_i64(
                            n, a as i64, -(r as i64), s as i64, c as i64,
                        ));
                    }
                }
                a += 1;
            }
            s += 2;
        }
        r += 2;
    }
    list.sort();
    Ok(list)
}

/// Class number of the quaternion order attached to N: the number of
/// reduced forms. (N+5)/12 when (-3|N) = +1, (N+13)/12 when (-3|N) = -1,
/// and 1 for N = 3 where the symbol vanishes.
pub fn class_number_formula(n: u64) -> Result<u64> {
    validate_n(n)?;
    if n == 3 {
        return Ok(1);
    }
    Ok(match kronecker_i64(-3, n as i64) {
        1 => (n + 5) / 12,
        _ => (n + 13) / 12,
    })
}

/// Number of orbits of the involution phi -> reduce(iota(phi)) on the
/// reduced forms: the type number. The associated curve count is t - 1.
pub fn type_number(n: u64) -> Result<u64> {
    let forms = enumerate_reduced(n)?;
    let mut fixed = 0u64;
    for f in &forms {
        if reduce_form(&f.iota())? == *f {
            fixed += 1;
        }
    }
    let total = forms.len() as u64;
    Ok(fixed + (total - fixed) / 2)
}

/// True when the curve attached to a reduced, non-principal form descends
/// to Q, i.e. when iota fixes its class.
pub fn definable_over_q(form: &HermitianForm) -> Result<bool> {
    if form.is_principal() {
        return Err(Error::PrincipalForm(format!(
            "{form} is the principal form; its polarization is a product and there is no curve"
        )));
    }
    if !form.is_reduced() {
        return Err(Error::InvalidInput(format!("{form} is not reduced")));
    }
    Ok(reduce_form(&form.iota())? == *form)
}

/// Reduced forms of discriminant -N fixed by the involution phi ->
/// reduce(iota(phi)).
pub fn iota_fixed_forms(n: u64) -> Result<Vec<HermitianForm>> {
    let mut out = Vec::new();
    for f in enumerate_reduced(n)? {
        if reduce_form(&f.iota())? == f {
            out.push(f);
        }
    }
    Ok(out)
}

/// The principal form (1, 1, (N+1)/4).
pub fn principal_form(n: u64) -> Result<HermitianForm> {
    validate_n(n)?;
    Ok(HermitianForm::from_i64(n, 1, 1, 0, ((n + 1) / 4) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn forms_as_tuples(n: u64) -> Vec<(i64, i64, i64, i64)> {
        enumerate_reduced(n)
            .unwrap()
            .iter()
            .map(|f| {
                (
                    f.a().to_i64().unwrap(),
                    f.r().to_i64().unwrap(),
                    f.s().to_i64().unwrap(),
                    f.c().to_i64().unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn enumerate_43() {
        assert_eq!(
            forms_as_tuples(43),
            vec![(1, 1, 0, 11), (2, 1, 2, 6), (3, -1, 2, 4), (3, 1, 2, 4)]
        );
    }

    #[test]
    fn enumerate_163_matches_table() {
        assert_eq!(
            forms_as_tuples(163),
            vec![
                (1, 1, 0, 41),
                (2, 1, 2, 21),
                (3, -1, 2, 14),
                (3, 1, 2, 14),
                (4, -3, 2, 11),
                (4, 3, 2, 11),
                (5, -1, 4, 9),
                (5, 1, 4, 9),
                (6, -5, 2, 8),
                (6, -1, 2, 7),
                (6, 1, 2, 7),
                (6, 5, 2, 8),
                (7, -5, 6, 8),
                (7, 5, 6, 8),
            ]
        );
    }

    #[test]
    fn enumerate_3_is_single_product_form() {
        assert_eq!(forms_as_tuples(3), vec![(1, 1, 0, 1)]);
    }

    #[test]
    fn composite_or_wrong_residue_rejected() {
        assert!(enumerate_reduced(21).is_err());
        assert!(enumerate_reduced(13).is_err());
        assert!(HermitianForm::new(
            43,
            BigInt::from(1),
            GaussianInt::from_i64(2, 1),
            BigInt::from(12)
        )
        .is_err());
    }

    #[test]
    fn class_number_matches_enumeration() {
        for (n, expect) in [(3, 1), (7, 1), (11, 2), (19, 2), (43, 4), (67, 6), (163, 14)] {
            assert_eq!(class_number_formula(n).unwrap(), expect, "N={n}");
            assert_eq!(
                enumerate_reduced(n).unwrap().len() as u64,
                expect,
                "N={n}"
            );
        }
    }

    #[test]
    fn type_numbers_and_curve_counts() {
        for (n, t) in [(3, 1), (7, 1), (11, 2), (19, 2), (43, 3), (67, 4), (163, 8)] {
            assert_eq!(type_number(n).unwrap(), t, "N={n}");
        }
    }

    #[test]
    fn iota_examples() {
        let f = HermitianForm::from_i64(43, 3, 1, 2, 4);
        assert_eq!(f.iota(), HermitianForm::from_i64(43, 3, -1, 2, 4));
        assert_eq!(f.iota().iota(), f);
        let p = HermitianForm::from_i64(43, 1, 1, 0, 11);
        assert_eq!(p.iota(), HermitianForm::from_i64(43, 1, -1, 0, 11));
        assert!(!p.iota().is_reduced());
    }

    #[test]
    fn rep_points() {
        let rational = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        let w = HermitianForm::from_i64(163, 1, 1, 0, 41).rep_point();
        assert_eq!((w.x, w.y, w.t2), (rational(1, 2), rational(0, 1), rational(163, 4)));
        let w = HermitianForm::from_i64(43, 2, 1, 2, 6).rep_point();
        assert_eq!((w.x, w.y, w.t2), (rational(1, 4), rational(1, 2), rational(43, 16)));
        let w = HermitianForm::from_i64(163, 7, 5, 6, 8).rep_point();
        assert_eq!(
            (w.x, w.y, w.t2),
            (rational(5, 14), rational(3, 7), rational(163, 196))
        );
    }

    #[test]
    fn rep_point_norm2_is_c_over_a() {
        for f in enumerate_reduced(163).unwrap() {
            let expect = BigRational::new(f.c().clone(), f.a().clone());
            assert_eq!(f.rep_point().norm2(), expect);
        }
    }

    #[test]
    fn reduced_membership() {
        assert!(HermitianForm::from_i64(43, 2, 1, 2, 6).is_reduced());
        assert!(!HermitianForm::from_i64(43, 1, -1, 0, 11).is_reduced());
        assert!(HermitianForm::from_i64(163, 6, 5, 2, 8).is_reduced());
    }

    #[test]
    fn generator_actions() {
        let f = HermitianForm::from_i64(43, 1, 1, 0, 11);
        assert_eq!(
            apply_generator(&f, &Sl2GaussianGen::NegateB),
            HermitianForm::from_i64(43, 1, -1, 0, 11)
        );
        assert_eq!(
            apply_generator(&f, &Sl2GaussianGen::Invert),
            HermitianForm::from_i64(43, 11, -1, 0, 1)
        );
        // Translation keeps the discriminant and moves b by 2a*conj(lambda).
        let g = Sl2GaussianGen::Translate(GaussianInt::from_i64(2, -3));
        let t = apply_generator(&f, &g);
        assert_eq!(t.discriminant(), BigInt::from(-43));
        assert_eq!(t.b(), &GaussianInt::from_i64(5, 6));
    }

    #[test]
    fn reduce_form_examples() {
        let target = HermitianForm::from_i64(43, 1, 1, 0, 11);
        let f = HermitianForm::from_i64(43, 1, -1, 0, 11);
        assert_eq!(reduce_form(&f).unwrap(), target);
        let f = HermitianForm::from_i64(43, 11, -1, 0, 1);
        assert_eq!(reduce_form(&f).unwrap(), target);
        // Boundary orientation: s = a with the wrong sign of r.
        let f = HermitianForm::from_i64(43, 2, -1, 2, 6);
        assert_eq!(reduce_form(&f).unwrap(), HermitianForm::from_i64(43, 2, 1, 2, 6));
    }

    #[test]
    fn reduce_form_is_idempotent_on_reduced_lists() {
        for n in [3, 7, 11, 19, 43, 67, 163] {
            for f in enumerate_reduced(n).unwrap() {
                assert_eq!(reduce_form(&f).unwrap(), f, "N={n} form {f}");
            }
        }
    }

    #[test]
    fn iota_reduce_is_involution_with_known_fixed_points() {
        let fixed = iota_fixed_forms(163).unwrap();
        assert_eq!(
            fixed,
            vec![
                HermitianForm::from_i64(163, 1, 1, 0, 41),
                HermitianForm::from_i64(163, 2, 1, 2, 21),
            ]
        );
        for f in enumerate_reduced(163).unwrap() {
            let g = reduce_form(&f.iota()).unwrap();
            assert_eq!(reduce_form(&g.iota()).unwrap(), f);
        }
    }

    #[test]
    fn principality() {
        assert!(HermitianForm::from_i64(163, 1, 1, 0, 41).is_principal());
        assert!(!HermitianForm::from_i64(163, 2, 1, 2, 21).is_principal());
        assert!(HermitianForm::from_i64(43, 1, 1, 0, 11).is_principal());
        assert_eq!(principal_form(43).unwrap(), HermitianForm::from_i64(43, 1, 1, 0, 11));
    }

    #[test]
    fn descent_to_q() {
        assert!(definable_over_q(&HermitianForm::from_i64(43, 2, 1, 2, 6)).unwrap());
        assert!(!definable_over_q(&HermitianForm::from_i64(43, 3, 1, 2, 4)).unwrap());
        assert!(!definable_over_q(&HermitianForm::from_i64(163, 3, 1, 2, 14)).unwrap());
        let principal = HermitianForm::from_i64(43, 1, 1, 0, 11);
        assert!(matches!(
            definable_over_q(&principal),
            Err(Error::PrincipalForm(_))
        ));
    }

    #[test]
    fn period_matrix_entries() {
        let z = HermitianForm::from_i64(43, 2, 1, 2, 6).period_matrix();
        assert_eq!(z.z11(), KElement::from_integers(43, 1, 1, 4));
        assert_eq!(z.z12(), KElement::from_integers(43, 2, 0, 4));
        assert_eq!(z.z22(), KElement::from_integers(43, -1, 1, 4));
        let z = HermitianForm::from_i64(163, 1, 1, 0, 41).period_matrix();
        assert_eq!(z.z11(), KElement::from_integers(163, 1, 1, 2));
        assert_eq!(z.z12(), KElement::from_integers(163, 0, 0, 1));
        assert_eq!(z.z22(), KElement::from_integers(163, -1, 1, 2));
    }

    #[test]
    fn enumerated_forms_satisfy_geometry() {
        for n in [3u64, 7, 11, 19, 43, 67, 163] {
            for f in enumerate_reduced(n).unwrap() {
                assert_eq!(f.discriminant(), BigInt::from(-(n as i64)));
                assert!(f.b().is_odd_even());
                // max(|r|, s) <= a <= c, i.e. |x| <= 1/2, 0 <= y <= 1/2 and
                // x^2 + y^2 + t^2 = c/a >= 1.
                assert!(f.r().abs() <= *f.a());
                assert!(!f.s().is_negative() && f.s() <= f.a());
                assert!(f.a() <= f.c());
            }
        }
    }
}
