//! Complex numbers over the fixed-point reals of [`crate::bigfloat`].

use std::fmt;

use crate::bigfloat::BigFloat;

/// re + im*i at a shared fixed-point scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        assert_eq!(re.frac_bits(), im.frac_bits());
        Complex { re, im }
    }

    pub fn zero(frac_bits: u32) -> Self {
        Complex::new(BigFloat::zero(frac_bits), BigFloat::zero(frac_bits))
    }

    pub fn one(frac_bits: u32) -> Self {
        Complex::new(BigFloat::one(frac_bits), BigFloat::zero(frac_bits))
    }

    pub fn from_real(re: BigFloat) -> Self {
        let z = BigFloat::zero(re.frac_bits());
        Complex::new(re, z)
    }

    pub fn frac_bits(&self) -> u32 {
        self.re.frac_bits()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Exact.
    pub fn add(&self, rhs: &Complex) -> Complex {
        Complex::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    /// Exact.
    pub fn sub(&self, rhs: &Complex) -> Complex {
        Complex::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, rhs: &Complex) -> Complex {
        Complex::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }

    /// Scale by a real factor.
    pub fn scale(&self, k: &BigFloat) -> Complex {
        Complex::new(self.re.mul(k), self.im.mul(k))
    }

    /// Exact scaling by a machine integer.
    pub fn mul_i64(&self, k: i64) -> Complex {
        Complex::new(self.re.mul_i64(k), self.im.mul_i64(k))
    }

    /// |z|^2 as a real.
    pub fn norm2(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// z^e by repeated squaring.
    pub fn powi(&self, e: u64) -> Complex {
        let mut base = self.clone();
        let mut acc = Complex::one(self.frac_bits());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const PREC: u32 = 256;

    fn from_ratio(p: i64, q: i64) -> BigFloat {
        BigFloat::from_ratio(&BigInt::from(p), &BigInt::from(q), PREC)
    }

    #[test]
    fn multiplication_matches_norm() {
        let z = Complex::new(from_ratio(3, 5), from_ratio(-4, 5));
        let n = z.mul(&z.conj());
        assert!(n.im.is_zero());
        let diff = n.re.sub(&z.norm2());
        assert!(diff.abs().cmp_value(&from_ratio(1, 1 << 30)) == std::cmp::Ordering::Less);
        assert_eq!(z.norm2().round_to_bigint(), BigInt::from(1));
    }

    #[test]
    fn powers_of_i() {
        let i = Complex::new(BigFloat::zero(PREC), BigFloat::one(PREC));
        let m1 = i.powi(2);
        assert_eq!(m1.re.round_to_bigint(), BigInt::from(-1));
        assert!(m1.im.is_zero());
        assert_eq!(i.powi(4), Complex::one(PREC));
    }
}
