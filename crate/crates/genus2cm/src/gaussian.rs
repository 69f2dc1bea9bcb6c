//! Gaussian integers re + im*i, the coefficient ring Z[i] of the Hermitian
//! forms in this crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// An element of Z[i].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussianInt { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussianInt::new(BigInt::from(re), BigInt::from(im))
    }

    pub fn zero() -> Self {
        GaussianInt::from_i64(0, 0)
    }

    pub fn one() -> Self {
        GaussianInt::from_i64(1, 0)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussianInt::from_i64(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate re - im*i.
    pub fn conj(&self) -> Self {
        GaussianInt::new(self.re.clone(), -&self.im)
    }

    /// Norm re^2 + im^2, always nonnegative.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplication by the unit i: (re, im) -> (-im, re).
    pub fn times_i(&self) -> Self {
        GaussianInt::new(-&self.im, self.re.clone())
    }

    /// Scalar multiple by an ordinary integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        GaussianInt::new(&self.re * k, &self.im * k)
    }

    /// True when re is odd and im is even, the normalization b = 1 mod 2Z[i]
    /// carried by every Hermitian form here.
    pub fn is_odd_even(&self) -> bool {
        self.re.is_odd() && self.im.is_even()
    }
}

impl Add for &GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return fmt_imaginary(f, &self.im, false);
        }
        write!(f, "{}", self.re)?;
        fmt_imaginary(f, &self.im, true)
    }
}

fn fmt_imaginary(f: &mut fmt::Formatter<'_>, im: &BigInt, signed: bool) -> fmt::Result {
    let mag = im.abs();
    let sign = if im.is_negative() {
        "-"
    } else if signed {
        "+"
    } else {
        ""
    };
    if mag == BigInt::from(1) {
        write!(f, "{sign}i")
    } else {
        write!(f, "{sign}{mag}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_and_norm() {
        let b = GaussianInt::from_i64(1, 2);
        let prod = &b * &b.conj();
        assert_eq!(prod, GaussianInt::from_i64(5, 0));
        assert_eq!(b.norm(), BigInt::from(5));
    }

    #[test]
    fn times_i_has_order_four() {
        let b = GaussianInt::from_i64(-5, 6);
        let r = b.times_i().times_i().times_i().times_i();
        assert_eq!(r, b);
        assert_eq!(b.times_i(), GaussianInt::from_i64(-6, -5));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianInt::from_i64(1, 2).to_string(), "1+2i");
        assert_eq!(GaussianInt::from_i64(-5, 6).to_string(), "-5+6i");
        assert_eq!(GaussianInt::from_i64(1, -2).to_string(), "1-2i");
        assert_eq!(GaussianInt::from_i64(3, 0).to_string(), "3");
        assert_eq!(GaussianInt::from_i64(0, 1).to_string(), "i");
        assert_eq!(GaussianInt::from_i64(0, -4).to_string(), "-4i");
    }

    #[test]
    fn parity_normalization() {
        assert!(GaussianInt::from_i64(1, 2).is_odd_even());
        assert!(GaussianInt::from_i64(-3, 0).is_odd_even());
        assert!(!GaussianInt::from_i64(2, 1).is_odd_even());
    }
}
