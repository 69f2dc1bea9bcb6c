//! Exact arithmetic in the imaginary quadratic field K = Q(sqrt(-N)),
//! N a prime congruent to 3 mod 4.
//!
//! Elements are stored as x + y*sqrt(-N) with rational x, y and the field
//! tag N. Plain rationals may carry the tag 0; they unify with any field on
//! first contact, which lets K-valued code embed integer constants without
//! threading N everywhere.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element x + y*sqrt(-N) of K = Q(sqrt(-N)).
///
/// Invariants: n = 0 implies y = 0 (a rational awaiting a field tag);
/// otherwise n = 3 mod 4. Elements with distinct nonzero tags never mix.
#[derive(Clone, Debug)]
pub struct KElement {
    n: u64,
    x: BigRational,
    y: BigRational,
}

impl KElement {
    pub fn new(n: u64, x: BigRational, y: BigRational) -> Self {
        assert!(n % 4 == 3, "KElement: N must be 3 mod 4");
        KElement { n, x, y }
    }

    /// Builds (x + y*sqrt(-N)) / d from integer data.
    pub fn from_integers(n: u64, x: i64, y: i64, d: i64) -> Self {
        assert!(d != 0);
        let den = BigRational::from_integer(BigInt::from(d));
        KElement::new(
            n,
            BigRational::from_integer(BigInt::from(x)) / &den,
            BigRational::from_integer(BigInt::from(y)) / den,
        )
    }

    /// A rational element with no field tag yet.
    pub fn from_rational(x: BigRational) -> Self {
        KElement {
            n: 0,
            x,
            y: BigRational::zero(),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        KElement::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// sqrt(-N) itself.
    pub fn sqrt_neg_n(n: u64) -> Self {
        KElement::new(n, BigRational::zero(), BigRational::one())
    }

    /// Field tag (0 for an untagged rational).
    pub fn field_n(&self) -> u64 {
        self.n
    }

    /// Rational part x.
    pub fn x(&self) -> &BigRational {
        &self.x
    }

    /// Coefficient y of sqrt(-N).
    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Galois conjugate x - y*sqrt(-N).
    pub fn conj(&self) -> Self {
        KElement {
            n: self.n,
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    /// Norm to Q: x^2 + N*y^2, nonnegative, zero only at zero.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x + BigRational::from_integer(BigInt::from(self.n)) * &self.y * &self.y
    }

    /// Trace to Q: 2x.
    pub fn trace(&self) -> BigRational {
        &self.x + &self.x
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        KElement {
            n: self.n,
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = KElement::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Multiplicative inverse. Panics at zero.
    pub fn inv(&self) -> Self {
        let nrm = self.norm();
        assert!(!nrm.is_zero(), "KElement: division by zero");
        self.conj().scale(&nrm.recip())
    }

    /// Common field tag of two operands; 0 only if both are untagged.
    fn unify(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, m) => m,
            (m, 0) => m,
            (m, k) => {
                assert!(m == k, "KElement: mixed fields sqrt(-{m}) and sqrt(-{k})");
                m
            }
        }
    }
}

impl PartialEq for KElement {
    fn eq(&self, other: &Self) -> bool {
        // Untagged rationals compare equal to tagged ones with y = 0.
        if self.n != other.n && self.n != 0 && other.n != 0 {
            return false;
        }
        self.x == other.x && self.y == other.y
    }
}

impl Eq for KElement {}

impl Add for KElement {
    type Output = KElement;
    fn add(self, rhs: KElement) -> KElement {
        KElement {
            n: KElement::unify(self.n, rhs.n),
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl Sub for KElement {
    type Output = KElement;
    fn sub(self, rhs: KElement) -> KElement {
        self + (-rhs)
    }
}

impl Neg for KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        KElement {
            n: self.n,
            x: -self.x,
            y: -self.y,
        }
    }
}

impl Mul for KElement {
    type Output = KElement;
    fn mul(self, rhs: KElement) -> KElement {
        let n = KElement::unify(self.n, rhs.n);
        // (x1 + y1 s)(x2 + y2 s) with s^2 = -N.
        let nn = BigRational::from_integer(BigInt::from(n));
        KElement {
            n,
            x: &self.x * &rhs.x - nn * &self.y * &rhs.y,
            y: &self.x * &rhs.y + &self.y * &rhs.x,
        }
    }
}

impl Div for KElement {
    type Output = KElement;
    fn div(self, rhs: KElement) -> KElement {
        let n = KElement::unify(self.n, rhs.n);
        let mut q = self * rhs.inv();
        q.n = n;
        q
    }
}

impl Zero for KElement {
    fn zero() -> Self {
        KElement::from_i64(0)
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl One for KElement {
    fn one() -> Self {
        KElement::from_i64(1)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let root = format!("sqrt(-{})", self.n);
        let ymag = self.y.abs();
        let ypart = if ymag.is_one() {
            root
        } else {
            format!("{ymag}*{root}")
        };
        if self.x.is_zero() {
            return write!(f, "{}{ypart}", if self.y.is_negative() { "-" } else { "" });
        }
        write!(
            f,
            "{} {} {ypart}",
            self.x,
            if self.y.is_negative() { "-" } else { "+" }
        )
    }
}
