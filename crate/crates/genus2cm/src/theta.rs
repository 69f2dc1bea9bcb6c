//! Genus 2 theta gradients at split-CM period matrices, Dedekind eta at
//! (1 + sqrt(-N))/2, and the complex sextic built from the six odd
//! characteristics.
//!
//! At Z = (1/2a) [[r+sqrt(-N), s], [s, -r+sqrt(-N)]] every theta term
//! collapses to a 16a-th root of unity times a real power:
//!
//!   e^(pi i m^t Z m) = zeta^(k(o)) * B^(q(o)),   o = 2m in Z^2,
//!
//! with zeta = e^(i pi / 8a), B = e^(-pi sqrt(N) / 8a), integer exponents
//! k(o) = r(o1^2 - o2^2) + 2s o1 o2 and q(o) = o1^2 + o2^2. One real
//! exponential and one sine/cosine pair per period matrix suffice; the rest
//! is table lookups over integer lattice points.

use num_traits::ToPrimitive;

use crate::bigfloat::{exp, pi, sincos, BigFloat, PrecisionContext};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::hermitian::PeriodMatrix;

/// Hard ceiling on the B-power table size; precision requests whose
/// truncation radius would exceed it are rejected.
const MAX_Q_TABLE: usize = 1 << 24;

/// A theta characteristic (mu, nu) with entries in {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaCharacteristic {
    pub mu: [u8; 2],
    pub nu: [u8; 2],
}

impl ThetaCharacteristic {
    pub fn new(mu: [u8; 2], nu: [u8; 2]) -> Self {
        assert!(
            mu.iter().chain(nu.iter()).all(|&b| b <= 1),
            "characteristic entries must be 0 or 1"
        );
        ThetaCharacteristic { mu, nu }
    }

    /// mu . nu mod 2; theta_(mu,nu)(-u) = (-1)^parity theta_(mu,nu)(u).
    pub fn parity(&self) -> u8 {
        (self.mu[0] * self.nu[0] + self.mu[1] * self.nu[1]) % 2
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }
}

/// The six odd characteristics, ordered lexicographically by
/// (mu1, mu2, nu1, nu2).
pub fn odd_characteristics() -> Vec<ThetaCharacteristic> {
    let mut out = Vec::with_capacity(6);
    for bits in 0u8..16 {
        let ch = ThetaCharacteristic::new(
            [(bits >> 3) & 1, (bits >> 2) & 1],
            [(bits >> 1) & 1, bits & 1],
        );
        if ch.is_odd() {
            out.push(ch);
        }
    }
    out
}

/// A homogeneous complex sextic: coefficient k multiplies u1^k u2^(6-k).
pub type SexticC = [Complex; 7];

/// Shared tables for evaluating gradients at one period matrix.
struct Engine {
    a: u64,
    r: i64,
    s: i64,
    q_max: usize,
    pi_val: BigFloat,
    /// zeta^j for 0 <= j < 16a.
    zeta_pow: Vec<Complex>,
    /// B^q for 0 <= q <= q_max.
    b_pow: Vec<BigFloat>,
}

impl Engine {
    fn new(pm: &PeriodMatrix, ctx: &PrecisionContext) -> Result<Engine> {
        let fb = ctx.frac_bits();
        let a = pm.a().to_u64().ok_or_else(|| {
            Error::InvalidInput("period matrix coefficient a exceeds u64".into())
        })?;
        let r = pm.r().to_i64().ok_or_else(|| {
            Error::InvalidInput("period matrix coefficient r exceeds i64".into())
        })?;
        let s = pm.s().to_i64().ok_or_else(|| {
            Error::InvalidInput("period matrix coefficient s exceeds i64".into())
        })?;
        let n = pm.n();

        // Truncation: keep lattice points m with
        // pi (sqrt(N)/2a) (|m|-1)^2 <= (digits+10) ln 10, where |m|^2 = q/4.
        // The first omitted shell is then below 10^-(digits+10) and the tail
        // is dominated by the geometric series in B.
        let d = (ctx.digits() + 10) as f64;
        let decay = std::f64::consts::PI * (n as f64).sqrt() / (2.0 * a as f64);
        let radius = (d * std::f64::consts::LN_10 / decay).sqrt() + 1.0;
        let q_max = (4.0 * radius * radius).ceil() as usize;
        if q_max > MAX_Q_TABLE {
            return Err(Error::InvalidInput(format!(
                "truncation table of {q_max} entries exceeds the {MAX_Q_TABLE} cap"
            )));
        }
        // q_max/4 >= (radius)^2 makes the omitted tail < 10^-(digits+10).
        assert!(decay * (radius - 1.0) * (radius - 1.0) >= d * std::f64::consts::LN_10 - 1e-6);

        let pi_val = pi(fb);
        let sqrt_n = BigFloat::from_i64(n as i64, fb).sqrt();
        // B = e^(-pi sqrt(N)/8a) computed from the positive exponential.
        let growth = exp(&pi_val.mul(&sqrt_n).div_u64(8 * a));
        let b = BigFloat::one(fb).div(&growth);
        let mut b_pow = Vec::with_capacity(q_max + 1);
        b_pow.push(BigFloat::one(fb));
        for q in 1..=q_max {
            let next = b_pow[q - 1].mul(&b);
            b_pow.push(next);
        }

        let (sin_t, cos_t) = sincos(&pi_val.div_u64(8 * a));
        let zeta = Complex::new(cos_t, sin_t);
        let mut zeta_pow = Vec::with_capacity(16 * a as usize);
        zeta_pow.push(Complex::one(fb));
        for j in 1..16 * a as usize {
            let next = zeta_pow[j - 1].mul(&zeta);
            zeta_pow.push(next);
        }

        Ok(Engine {
            a,
            r,
            s,
            q_max,
            pi_val,
            zeta_pow,
            b_pow,
        })
    }

    /// (g1, g2) = gradient of theta_(mu,nu)(u, Z) at u = 0.
    ///
    /// With o = 2n + mu and the exact phase splitting
    /// e^(pi i m^t nu) = i^(mu.nu) (-1)^(n.nu), each component is
    /// g_k = pi i i^(mu.nu) Sum_n (-1)^(n.nu) o_k zeta^k(o) B^q(o); for odd
    /// characteristics mu.nu = 1 and the prefactor collapses to -pi.
    fn gradient(&self, ch: &ThetaCharacteristic) -> Result<(Complex, Complex)> {
        if !ch.is_odd() {
            return Err(Error::InvalidInput(
                "theta gradient requires an odd characteristic".into(),
            ));
        }
        let fb = self.pi_val.frac_bits();
        let order = 16 * self.a as i64;
        let o_cap = (self.q_max as f64).sqrt() as i64 + 1;
        let mut s1 = Complex::zero(fb);
        let mut s2 = Complex::zero(fb);
        let mut o1 = -o_cap + (((-o_cap - ch.mu[0] as i64) % 2 + 2) % 2);
        while o1 <= o_cap {
            let mut o2 = -o_cap + (((-o_cap - ch.mu[1] as i64) % 2 + 2) % 2);
            while o2 <= o_cap {
                let q = (o1 * o1 + o2 * o2) as usize;
                if q <= self.q_max && (o1, o2) != (0, 0) {
                    let k = self.r * (o1 * o1 - o2 * o2) + 2 * self.s * o1 * o2;
                    let j = k.rem_euclid(order) as usize;
                    let n1 = (o1 - ch.mu[0] as i64) >> 1;
                    let n2 = (o2 - ch.mu[1] as i64) >> 1;
                    let sign =
                        if (n1 * ch.nu[0] as i64 + n2 * ch.nu[1] as i64).rem_euclid(2) == 0 {
                            1
                        } else {
                            -1
                        };
                    let w = self.zeta_pow[j].scale(&self.b_pow[q]);
                    if o1 != 0 {
                        s1 = s1.add(&w.mul_i64(sign * o1));
                    }
                    if o2 != 0 {
                        s2 = s2.add(&w.mul_i64(sign * o2));
                    }
                }
                o2 += 2;
            }
            o1 += 2;
        }
        let neg_pi = self.pi_val.neg();
        Ok((s1.scale(&neg_pi), s2.scale(&neg_pi)))
    }
}

/// Gradient of one odd theta function at u = 0 for the given period matrix.
pub fn theta_gradient(
    ch: &ThetaCharacteristic,
    pm: &PeriodMatrix,
    ctx: &PrecisionContext,
) -> Result<(Complex, Complex)> {
    Engine::new(pm, ctx)?.gradient(ch)
}

/// The complex Bolza-Klein sextic: the product of the six odd gradient
/// linear forms g1 u1 + g2 u2, which is the leading Taylor term of the
/// product of the six odd theta functions.
pub fn bolza_klein_sextic(pm: &PeriodMatrix, ctx: &PrecisionContext) -> Result<SexticC> {
    let engine = Engine::new(pm, ctx)?;
    let fb = ctx.frac_bits();
    let mut coeffs = vec![Complex::one(fb)];
    for ch in odd_characteristics() {
        let (g1, g2) = engine.gradient(&ch)?;
        let mut next = vec![Complex::zero(fb); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] = next[k].add(&c.mul(&g2));
            next[k + 1] = next[k + 1].add(&c.mul(&g1));
        }
        coeffs = next;
    }
    Ok(coeffs.try_into().expect("six linear factors"))
}

/// |eta((1 + sqrt(-N))/2)|^24.
///
/// The nome is q = e^(2 pi i tau) = -e^(-pi sqrt(N)) exactly, so
/// |eta|^24 = e^(-pi sqrt(N)) * P^24 with P = prod (1 - q^n), evaluated
/// through the sparse pentagonal-number series.
pub fn eta24_abs(n: u64, ctx: &PrecisionContext) -> Result<BigFloat> {
    if n % 4 != 3 {
        return Err(Error::InvalidInput(format!("N = {n} must be 3 mod 4")));
    }
    let fb = ctx.frac_bits();
    let pi_sqrt_n = pi(fb).mul(&BigFloat::from_i64(n as i64, fb).sqrt());
    let q_abs = exp(&pi_sqrt_n.neg());
    let p = pentagonal_product(&q_abs);
    Ok(q_abs.mul(&p.powi(24)))
}

/// 1 / ((2 pi)^6 a^6 |eta((1+sqrt(-N))/2)|^24), the scale carrying the
/// complex sextic to the normalized one. Each of the six gradient factors
/// gives up a conventional 2 pi (as in the genus 1 derivative formula
/// theta' = -2 pi eta^3), and the polarization contributes a^6 |eta|^24.
///
/// Computed as e^(pi sqrt(N)) / ((2 pi)^6 a^6 P^24) so that no intermediate
/// value is small: dividing by the tiny |eta|^24 directly would spend guard
/// bits on its leading zeros.
pub(crate) fn sextic_normalizer(n: u64, a: u64, ctx: &PrecisionContext) -> Result<BigFloat> {
    if n % 4 != 3 {
        return Err(Error::InvalidInput(format!("N = {n} must be 3 mod 4")));
    }
    let fb = ctx.frac_bits();
    let pi_val = pi(fb);
    let pi_sqrt_n = pi_val.mul(&BigFloat::from_i64(n as i64, fb).sqrt());
    let growth = exp(&pi_sqrt_n);
    let q_abs = BigFloat::one(fb).div(&growth);
    let p = pentagonal_product(&q_abs);
    let a6 = BigFloat::from_bigint(&num_bigint::BigInt::from(a).pow(6), fb);
    let two_pi_6 = pi_val.powi(6).mul_i64(64);
    Ok(growth.div(&p.powi(24).mul(&two_pi_6).mul(&a6)))
}

/// P = prod_(n>=1) (1 - q^n) at q = -q_abs via Euler's pentagonal series
/// P = sum_(k in Z) (-1)^k q^(k(3k-1)/2). Since q < 0, the term for
/// exponent e carries the sign (-1)^(k+e).
fn pentagonal_product(q_abs: &BigFloat) -> BigFloat {
    let fb = q_abs.frac_bits();
    let mut acc = BigFloat::one(fb);
    let mut k = 1u64;
    loop {
        let e1 = k * (3 * k - 1) / 2;
        let e2 = k * (3 * k + 1) / 2;
        let t1 = q_abs.powi(e1);
        if t1.is_zero() {
            return acc;
        }
        let t2 = q_abs.powi(e2);
        let signed = |t: BigFloat, e: u64| if (k + e) % 2 == 0 { t } else { t.neg() };
        acc = acc.add(&signed(t1, e1)).add(&signed(t2, e2));
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::HermitianForm;

    /// Direct product oracle for eta: prod (1 - q^n) term by term.
    fn eta_product_oracle(n: u64, ctx: &PrecisionContext) -> BigFloat {
        let fb = ctx.frac_bits();
        let pi_sqrt_n = pi(fb).mul(&BigFloat::from_i64(n as i64, fb).sqrt());
        let q = exp(&pi_sqrt_n.neg()).neg();
        let mut acc = BigFloat::one(fb);
        let mut q_pow = q.clone();
        while !q_pow.is_zero() {
            acc = acc.mul(&BigFloat::one(fb).sub(&q_pow));
            q_pow = q_pow.mul(&q);
        }
        acc
    }

    #[test]
    fn exactly_six_odd_characteristics() {
        let odd = odd_characteristics();
        assert_eq!(odd.len(), 6);
        assert!(odd.contains(&ThetaCharacteristic::new([1, 0], [1, 0])));
        assert!(!odd.contains(&ThetaCharacteristic::new([0, 0], [1, 1])));
        for ch in &odd {
            assert_eq!(ch.parity(), 1);
        }
    }

    #[test]
    fn eta_pentagonal_matches_product_oracle() {
        let ctx = PrecisionContext::new(100).unwrap();
        for n in [43u64, 163] {
            let via_series = eta24_abs(n, &ctx).unwrap();
            let q_abs = {
                let fb = ctx.frac_bits();
                let x = pi(fb).mul(&BigFloat::from_i64(n as i64, fb).sqrt());
                exp(&x.neg())
            };
            let via_product = q_abs.mul(&eta_product_oracle(n, &ctx).powi(24));
            let diff = via_series.sub(&via_product).abs();
            assert!(
                diff.cmp_value(&ctx.pow10_neg(90)) == std::cmp::Ordering::Less,
                "N={n}: pentagonal and product forms differ by 10^{:.1}",
                diff.log10_abs()
            );
        }
    }

    #[test]
    fn normalizer_inverts_eta() {
        let ctx = PrecisionContext::new(80).unwrap();
        let a = 3u64;
        let fb = ctx.frac_bits();
        let lhs = sextic_normalizer(43, a, &ctx).unwrap();
        let denom = eta24_abs(43, &ctx)
            .unwrap()
            .mul(&pi(fb).powi(6).mul_i64(64))
            .mul_i64((a as i64).pow(6));
        let rhs = BigFloat::one(fb).div(&denom);
        // Compare relatively: the direct form loses leading bits to |eta|^24.
        let rel = lhs.sub(&rhs).div(&rhs).abs();
        assert!(rel.cmp_value(&ctx.pow10_neg(55)) == std::cmp::Ordering::Less);
    }

    #[test]
    fn diagonal_period_matrix_gradient_vanishes_exactly() {
        let ctx = PrecisionContext::new(60).unwrap();
        let pm = HermitianForm::from_i64(163, 1, 1, 0, 41).period_matrix();
        let ch = ThetaCharacteristic::new([1, 0], [1, 0]);
        let (g1, g2) = theta_gradient(&ch, &pm, &ctx).unwrap();
        // The series factors; the u2 component cancels term by term, and
        // fixed point addition is exact, so the zero is exact.
        assert!(g2.is_zero());
        assert!(!g1.is_zero());
    }

    #[test]
    fn even_characteristic_rejected() {
        let ctx = PrecisionContext::new(40).unwrap();
        let pm = HermitianForm::from_i64(43, 2, 1, 2, 6).period_matrix();
        let ch = ThetaCharacteristic::new([0, 0], [1, 1]);
        assert!(theta_gradient(&ch, &pm, &ctx).is_err());
    }

    #[test]
    fn gradient_precision_stability() {
        let pm = HermitianForm::from_i64(43, 2, 1, 2, 6).period_matrix();
        let ch = ThetaCharacteristic::new([0, 1], [0, 1]);
        let lo = PrecisionContext::new(60).unwrap();
        let hi = PrecisionContext::new(120).unwrap();
        let (g1_lo, g2_lo) = theta_gradient(&ch, &pm, &lo).unwrap();
        let (g1_hi, g2_hi) = theta_gradient(&ch, &pm, &hi).unwrap();
        for (a, b) in [(g1_lo, g1_hi), (g2_lo, g2_hi)] {
            let d = a.re.rescale(hi.frac_bits()).sub(&b.re).abs();
            assert!(d.log10_abs() < -55.0, "re drift 10^{:.1}", d.log10_abs());
            let d = a.im.rescale(hi.frac_bits()).sub(&b.im).abs();
            assert!(d.log10_abs() < -55.0, "im drift 10^{:.1}", d.log10_abs());
        }
    }

    #[test]
    fn diagonal_sextic_degenerates_to_u1_cubed_u2_cubed() {
        let ctx = PrecisionContext::new(60).unwrap();
        let pm = HermitianForm::from_i64(43, 1, 1, 0, 11).period_matrix();
        let f = bolza_klein_sextic(&pm, &ctx).unwrap();
        for (k, c) in f.iter().enumerate() {
            if k == 3 {
                assert!(!c.is_zero());
            } else {
                // Three factors are exactly proportional to u1 and three
                // to u2; every other coefficient has an exact zero factor.
                assert!(c.is_zero(), "coefficient {k} should vanish exactly");
            }
        }
    }

    #[test]
    fn sextic_independent_of_characteristic_order() {
        let ctx = PrecisionContext::new(60).unwrap();
        let pm = HermitianForm::from_i64(43, 3, 1, 2, 4).period_matrix();
        let engine = Engine::new(&pm, &ctx).unwrap();
        let fb = ctx.frac_bits();
        let mut orders = vec![odd_characteristics()];
        let mut rev = odd_characteristics();
        rev.reverse();
        orders.push(rev);
        let mut rot = odd_characteristics();
        rot.rotate_left(2);
        orders.push(rot);
        let products: Vec<Vec<Complex>> = orders
            .iter()
            .map(|chars| {
                let mut coeffs = vec![Complex::one(fb)];
                for ch in chars {
                    let (g1, g2) = engine.gradient(ch).unwrap();
                    let mut next = vec![Complex::zero(fb); coeffs.len() + 1];
                    for (k, c) in coeffs.iter().enumerate() {
                        next[k] = next[k].add(&c.mul(&g2));
                        next[k + 1] = next[k + 1].add(&c.mul(&g1));
                    }
                    coeffs = next;
                }
                coeffs
            })
            .collect();
        for alt in &products[1..] {
            for (c0, c1) in products[0].iter().zip(alt) {
                let d = c0.sub(c1);
                assert!(d.re.log10_abs() < -55.0 && d.im.log10_abs() < -55.0);
            }
        }
    }
}
