//! Fixed-point arbitrary-precision reals: an unbounded integer mantissa
//! scaled by 2^(-frac_bits).
//!
//! Addition and subtraction are exact, so structural cancellations (such as
//! the vanishing gradient components at diagonal period matrices) hold to
//! the last bit. Multiplication, division and the elementary functions are
//! correct up to a few units in the last place; every precision context
//! carries 64 guard bits beyond the requested decimal digits to absorb
//! that drift.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Guard bits appended beyond the requested decimal precision.
const GUARD_BITS: u32 = 64;

/// Working precision: decimal digits requested by the caller plus the
/// derived binary scale shared by every number in one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    frac_bits: u32,
}

impl PrecisionContext {
    /// At least 30 digits; the binary scale is digits * log2(10) + 64.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 30 {
            return Err(Error::InvalidInput(format!(
                "precision of {digits} digits is below the 30-digit floor"
            )));
        }
        // ceil(digits * log2(10)) with log2(10) = 3.321928...
        let frac_bits = ((digits as u64 * 3_321_929).div_ceil(1_000_000)) as u32 + GUARD_BITS;
        Ok(PrecisionContext { digits, frac_bits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    /// A context with twice the decimal digits, for recognition retries.
    pub fn doubled(&self) -> Self {
        PrecisionContext::new(self.digits * 2).expect("doubling keeps digits >= 30")
    }

    /// 10^(-k) as a value at this precision.
    pub fn pow10_neg(&self, k: u32) -> BigFloat {
        let den = BigInt::from(10u32).pow(k);
        BigFloat::from_ratio(&BigInt::one(), &den, self.frac_bits)
    }
}

/// A real number mant * 2^(-frac_bits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    frac_bits: u32,
}

impl BigFloat {
    pub fn zero(frac_bits: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn one(frac_bits: u32) -> Self {
        BigFloat::from_bigint(&BigInt::one(), frac_bits)
    }

    pub fn from_bigint(v: &BigInt, frac_bits: u32) -> Self {
        BigFloat {
            mant: v << frac_bits,
            frac_bits,
        }
    }

    pub fn from_i64(v: i64, frac_bits: u32) -> Self {
        BigFloat::from_bigint(&BigInt::from(v), frac_bits)
    }

    /// num/den rounded to the working scale. den must be nonzero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, frac_bits: u32) -> Self {
        assert!(!den.is_zero());
        let scaled: BigInt = num << (frac_bits + 1);
        let q = scaled.div_floor(den);
        BigFloat {
            mant: (q + 1) >> 1,
            frac_bits,
        }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn check(&self, rhs: &BigFloat) {
        assert_eq!(
            self.frac_bits, rhs.frac_bits,
            "mixed precision contexts in one operation"
        );
    }

    /// Exact.
    pub fn add(&self, rhs: &BigFloat) -> BigFloat {
        self.check(rhs);
        BigFloat {
            mant: &self.mant + &rhs.mant,
            frac_bits: self.frac_bits,
        }
    }

    /// Exact.
    pub fn sub(&self, rhs: &BigFloat) -> BigFloat {
        self.check(rhs);
        BigFloat {
            mant: &self.mant - &rhs.mant,
            frac_bits: self.frac_bits,
        }
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat {
            mant: -&self.mant,
            frac_bits: self.frac_bits,
        }
    }

    pub fn abs(&self) -> BigFloat {
        BigFloat {
            mant: self.mant.abs(),
            frac_bits: self.frac_bits,
        }
    }

    /// Rounded to nearest; error at most one ulp.
    pub fn mul(&self, rhs: &BigFloat) -> BigFloat {
        self.check(rhs);
        let prod: BigInt = (&self.mant * &rhs.mant) >> (self.frac_bits - 1);
        BigFloat {
            mant: (prod + 1) >> 1,
            frac_bits: self.frac_bits,
        }
    }

    /// Rounded to nearest; error at most one ulp. Panics on zero divisor.
    pub fn div(&self, rhs: &BigFloat) -> BigFloat {
        self.check(rhs);
        assert!(!rhs.mant.is_zero(), "BigFloat division by zero");
        let num: BigInt = &self.mant << (self.frac_bits + 1);
        let q = num.div_floor(&rhs.mant);
        BigFloat {
            mant: (q + 1) >> 1,
            frac_bits: self.frac_bits,
        }
    }

    /// Exact multiplication by a machine integer.
    pub fn mul_i64(&self, k: i64) -> BigFloat {
        BigFloat {
            mant: &self.mant * BigInt::from(k),
            frac_bits: self.frac_bits,
        }
    }

    /// Division by a machine integer, rounded to nearest.
    pub fn div_u64(&self, k: u64) -> BigFloat {
        assert!(k > 0);
        let num: BigInt = &self.mant << 1;
        let q = num.div_floor(&BigInt::from(k));
        BigFloat {
            mant: (q + 1) >> 1,
            frac_bits: self.frac_bits,
        }
    }

    /// Exact scaling by 2^k (k may be negative; rounds toward -inf then).
    pub fn scale_pow2(&self, k: i32) -> BigFloat {
        let mant = if k >= 0 {
            &self.mant << (k as u32)
        } else {
            &self.mant >> ((-k) as u32)
        };
        BigFloat {
            mant,
            frac_bits: self.frac_bits,
        }
    }

    /// The same value at a different scale (rounded when narrowing).
    pub fn rescale(&self, frac_bits: u32) -> BigFloat {
        if frac_bits >= self.frac_bits {
            BigFloat {
                mant: &self.mant << (frac_bits - self.frac_bits),
                frac_bits,
            }
        } else {
            let shifted: BigInt = &self.mant >> (self.frac_bits - frac_bits - 1);
            BigFloat {
                mant: (shifted + 1) >> 1,
                frac_bits,
            }
        }
    }

    /// x^e by repeated squaring.
    pub fn powi(&self, e: u64) -> BigFloat {
        let mut base = self.clone();
        let mut acc = BigFloat::one(self.frac_bits);
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

    /// Floor square root for nonnegative values; error at most one ulp.
    pub fn sqrt(&self) -> BigFloat {
        assert!(!self.mant.is_negative(), "sqrt of negative BigFloat");
        let shifted: BigInt = &self.mant << self.frac_bits;
        BigFloat {
            mant: shifted.sqrt(),
            frac_bits: self.frac_bits,
        }
    }

    pub fn cmp_value(&self, rhs: &BigFloat) -> Ordering {
        self.check(rhs);
        self.mant.cmp(&rhs.mant)
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_bigint(&self) -> BigInt {
        let half = BigInt::one() << (self.frac_bits - 1);
        if self.mant.is_negative() {
            -((-&self.mant + half) >> self.frac_bits)
        } else {
            (&self.mant + half) >> self.frac_bits
        }
    }

    /// Base-10 logarithm of |x| as a double, -inf for zero. Used for
    /// residual diagnostics only.
    pub fn log10_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        // Top 53 bits give log2 of the mantissa to double accuracy.
        let shift = bits.saturating_sub(53);
        let top = (self.mant.abs() >> shift).to_f64().unwrap();
        (top.log2() + shift as f64 - self.frac_bits as f64) * std::f64::consts::LOG10_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let sign = if self.mant.is_negative() { -1.0 } else { 1.0 };
        sign * 10f64.powf(self.log10_abs())
    }

    /// Decimal rendering with the given number of fractional digits,
    /// rounded toward zero.
    pub fn to_decimal(&self, digits: u32) -> String {
        let neg = self.mant.is_negative();
        let mag = self.mant.abs();
        let scaled: BigInt = (mag * BigInt::from(10u32).pow(digits)) >> self.frac_bits;
        let s = scaled.to_string();
        let (int_part, frac_part) = if s.len() > digits as usize {
            let split = s.len() - digits as usize;
            (s[..split].to_string(), s[split..].to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", s, width = digits as usize))
        };
        format!("{}{int_part}.{frac_part}", if neg { "-" } else { "" })
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

/// pi at the given scale, by Machin's formula
/// pi = 16*atan(1/5) - 4*atan(1/239).
pub fn pi(frac_bits: u32) -> BigFloat {
    let a = atan_inv(5, frac_bits);
    let b = atan_inv(239, frac_bits);
    a.mul_i64(16).sub(&b.mul_i64(4))
}

/// atan(1/n) for integer n >= 2 by the alternating Taylor series; every
/// term is an exact integer division, so the total error is bounded by the
/// term count in ulps.
pub fn atan_inv(n: u64, frac_bits: u32) -> BigFloat {
    assert!(n >= 2);
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut power = (BigInt::one() << frac_bits) / BigInt::from(n);
    let mut acc = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        power /= &n2;
        j += 1;
    }
    BigFloat {
        mant: acc,
        frac_bits,
    }
}

/// e^x for any finite x: argument halving until |x| < 1/2, Taylor series,
/// then repeated squaring.
pub fn exp(x: &BigFloat) -> BigFloat {
    let frac_bits = x.frac_bits;
    if x.is_zero() {
        return BigFloat::one(frac_bits);
    }
    // Halve until the value is below 1/2: integer bit length of |mant|
    // above the scale point plus one.
    let int_bits = x.mant.bits() as i64 - frac_bits as i64;
    let k = (int_bits + 1).max(0) as u32;
    let y = x.scale_pow2(-(k as i32));
    let mut term = BigFloat::one(frac_bits);
    let mut sum = BigFloat::one(frac_bits);
    let mut j = 1u64;
    while !term.is_zero() {
        term = term.mul(&y).div_u64(j);
        sum = sum.add(&term);
        j += 1;
    }
    for _ in 0..k {
        sum = sum.mul(&sum);
    }
    sum
}

/// (sin x, cos x) for |x| <= 1, by the joint Taylor series.
pub fn sincos(x: &BigFloat) -> (BigFloat, BigFloat) {
    let frac_bits = x.frac_bits;
    assert!(
        x.mant.abs() <= (BigInt::one() << frac_bits),
        "sincos argument must satisfy |x| <= 1"
    );
    let mut sin = BigFloat::zero(frac_bits);
    let mut cos = BigFloat::one(frac_bits);
    let mut term = BigFloat::one(frac_bits);
    let mut j = 1u64;
    loop {
        term = term.mul(x).div_u64(j);
        if term.is_zero() {
            break;
        }
        // j mod 4 decides target series and sign: x^1 -> +sin, x^2 -> -cos,
        // x^3 -> -sin, x^4 -> +cos.
        match j % 4 {
            1 => sin = sin.add(&term),
            2 => cos = cos.sub(&term),
            3 => sin = sin.sub(&term),
            _ => cos = cos.add(&term),
        }
        j += 1;
    }
    (sin, cos)
}

/// Sign of a mantissa as -1/0/+1, for compact comparisons.
pub fn signum(x: &BigFloat) -> i32 {
    match x.mant.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREC: u32 = 400; // roughly 100 decimal digits of working room

    fn close_ulps(a: &BigFloat, b: &BigFloat, ulps: i64) -> bool {
        let d = a.sub(b);
        d.mant.abs() <= BigInt::from(ulps)
    }

    #[test]
    fn context_scale() {
        let ctx = PrecisionContext::new(120).unwrap();
        assert_eq!(ctx.digits(), 120);
        assert!(ctx.frac_bits() >= 120 * 3 + 64);
        assert!(PrecisionContext::new(29).is_err());
        assert_eq!(ctx.doubled().digits(), 240);
    }

    #[test]
    fn add_is_exact_and_cancels() {
        let a = BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(3), PREC);
        let b = a.neg();
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = BigFloat::from_ratio(&BigInt::from(355), &BigInt::from(113), PREC);
        let b = BigFloat::from_ratio(&BigInt::from(-7), &BigInt::from(13), PREC);
        let r = a.mul(&b).div(&b);
        assert!(close_ulps(&r, &a, 4));
    }

    #[test]
    fn pi_against_second_machin_formula() {
        // Stormer: pi = 24*atan(1/8) + 8*atan(1/57) + 4*atan(1/239).
        let p1 = pi(PREC);
        let p2 = atan_inv(8, PREC)
            .mul_i64(24)
            .add(&atan_inv(57, PREC).mul_i64(8))
            .add(&atan_inv(239, PREC).mul_i64(4));
        assert!(close_ulps(&p1, &p2, 2000));
        assert!(p1.to_decimal(50).starts_with(
            "3.14159265358979323846264338327950288419716939937510"
        ));
    }

    #[test]
    fn exp_of_one_is_e() {
        let e = exp(&BigFloat::one(PREC));
        assert!(e.to_decimal(50).starts_with(
            "2.71828182845904523536028747135266249775724709369995"
        ));
    }

    #[test]
    fn exp_respects_negation() {
        let x = BigFloat::from_ratio(&BigInt::from(40), &BigInt::from(7), PREC);
        let prod = exp(&x).mul(&exp(&x.neg()));
        assert!(close_ulps(&prod, &BigFloat::one(PREC), 1 << 12));
    }

    #[test]
    fn sincos_pythagoras_and_known_value() {
        let x = pi(PREC).div_u64(6);
        let (s, c) = sincos(&x);
        assert!(close_ulps(&s, &BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(2), PREC), 1 << 10));
        let one = s.mul(&s).add(&c.mul(&c));
        assert!(close_ulps(&one, &BigFloat::one(PREC), 1 << 10));
    }

    #[test]
    fn sqrt_squares_back() {
        let two = BigFloat::from_i64(2, PREC);
        let r = two.sqrt();
        assert!(close_ulps(&r.mul(&r), &two, 4));
        assert!(r.to_decimal(40).starts_with("1.4142135623730950488016887242096980785696"));
    }

    #[test]
    fn rounding_to_integers() {
        let x = BigFloat::from_ratio(&BigInt::from(7), &BigInt::from(2), PREC);
        assert_eq!(x.round_to_bigint(), BigInt::from(4));
        assert_eq!(x.neg().round_to_bigint(), BigInt::from(-4));
        let y = BigFloat::from_ratio(&BigInt::from(10403), &BigInt::from(100), PREC);
        assert_eq!(y.round_to_bigint(), BigInt::from(104));
    }

    #[test]
    fn log10_estimates() {
        let x = BigFloat::from_ratio(&BigInt::one(), &BigInt::from(10u32).pow(30), PREC);
        let l = x.log10_abs();
        assert!((l + 30.0).abs() < 1e-9, "log was {l}");
        assert!(BigFloat::zero(PREC).log10_abs().is_infinite());
    }

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_ratio(&BigInt::from(-1), &BigInt::from(8), PREC);
        assert_eq!(x.to_decimal(4), "-0.1250");
        let y = BigFloat::from_i64(1472877, PREC);
        assert_eq!(y.to_decimal(2), "1472877.00");
    }
}
