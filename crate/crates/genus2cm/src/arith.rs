//! Integer number theory: Kronecker symbol, primality testing, factorization,
//! divisor enumeration, and square roots modulo a prime.
//!
//! Every routine is exact. Factorization is trial division backed by
//! Pollard-Brent rho, which covers everything this crate ever factors
//! (discriminants and determinants here are highly smooth).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial division bound used by [`factor`] before switching to rho.
const TRIAL_BOUND: u64 = 10_000_000;

/// Brute-force bound for [`sqrt_mod_p`]; Tonelli-Shanks above it.
const SQRT_SCAN_BOUND: u64 = 10_000;

/// Kronecker symbol (a|n), the extension of the Jacobi symbol to all n != 0.
///
/// Completely multiplicative in n; zero exactly when gcd(a, n) > 1.
///
/// # Panics
/// If n = 0.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i32 {
    assert!(!n.is_zero(), "kronecker: n must be nonzero");
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let eight = BigInt::from(8);
    // Split off (a|2) per factor of 2 in n: 0 if a even, else +1 for
    // a = +-1 mod 8 and -1 for a = +-3 mod 8.
    while n.is_even() {
        n /= 2;
        if a.is_even() {
            return 0;
        }
        let m8 = a.mod_floor(&eight).to_i64().unwrap();
        if m8 == 3 || m8 == 5 {
            result = -result;
        }
    }
    if n.is_one() {
        return result;
    }
    // Jacobi loop via quadratic reciprocity; n stays odd and positive.
    a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let m8 = n.mod_floor(&eight).to_i64().unwrap();
            if m8 == 3 || m8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&BigInt::from(4)).to_i64().unwrap() == 3
            && n.mod_floor(&BigInt::from(4)).to_i64().unwrap() == 3
        {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Convenience wrapper for machine-sized arguments.
pub fn kronecker_i64(a: i64, n: i64) -> i32 {
    kronecker(&BigInt::from(a), &BigInt::from(n))
}

/// Deterministic Miller-Rabin primality test.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is proven
/// deterministic below 3.3 * 10^24, far beyond anything factored here.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    const WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        let wb = BigInt::from(w);
        if n == &wb {
            return true;
        }
        if n.is_multiple_of(&wb) {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd.
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Convenience wrapper for machine-sized arguments.
pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigInt::from(n))
}

/// A positive integer in factored form: an ordered map prime -> exponent.
///
/// Keys are prime, exponents nonzero. The sign of the original integer is
/// carried by the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: BTreeMap<BigInt, i64>,
}

impl Factorization {
    /// The empty factorization, representing 1.
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Builds from (prime, exponent) pairs; merges duplicates, drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (BigInt, i64)>>(pairs: I) -> Self {
        let mut f = Factorization::one();
        for (p, e) in pairs {
            f.push(p, e);
        }
        f
    }

    /// Multiplies in p^e. Entries that cancel to exponent 0 are removed.
    pub fn push(&mut self, p: BigInt, e: i64) {
        if e == 0 {
            return;
        }
        let entry = self.factors.entry(p.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&p);
        }
    }

    /// Exponent of p (0 when absent).
    pub fn exponent(&self, p: &BigInt) -> i64 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// Primes in ascending order with their exponents.
    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, i64)> {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reconstructs the integer. Requires all exponents nonnegative.
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::one();
        for (p, e) in self.iter() {
            assert!(e >= 0, "value: negative exponent on {p}");
            v *= p.pow(e as u32);
        }
        v
    }

    /// Pointwise product of two factored integers.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut f = self.clone();
        for (p, e) in other.iter() {
            f.push(p.clone(), e);
        }
        f
    }

    /// Raises every exponent by the factor k.
    pub fn pow(&self, k: i64) -> Factorization {
        Factorization::from_pairs(self.iter().map(|(p, e)| (p.clone(), e * k)))
    }

    /// Greatest common divisor of all exponents (0 for the empty product).
    /// A twelfth power has exponent gcd divisible by 12.
    pub fn exponent_gcd(&self) -> i64 {
        self.iter().fold(0i64, |g, (_, e)| g.gcd(&e.abs()))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in self.iter() {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors |n| completely.
///
/// Trial division up to 10^7, then deterministic Miller-Rabin plus
/// Pollard-Brent rho on any remaining cofactor.
///
/// # Panics
/// If n = 0.
pub fn factor(n: &BigInt) -> Factorization {
    assert!(!n.is_zero(), "factor: n must be nonzero");
    let mut m = n.abs();
    let mut f = Factorization::one();
    if m.is_one() {
        return f;
    }
    for p in [2u64, 3, 5] {
        let pb = BigInt::from(p);
        let mut e = 0;
        while m.is_multiple_of(&pb) {
            m /= &pb;
            e += 1;
        }
        f.push(pb, e);
    }
    // Wheel over residues coprime to 30.
    const WHEEL: [u64; 8] = [1, 7, 11, 13, 17, 19, 23, 29];
    let mut base = 0u64;
    'trial: while base <= TRIAL_BOUND && !m.is_one() {
        for &off in &WHEEL {
            let d = base + off;
            if d < 7 {
                continue;
            }
            let db = BigInt::from(d);
            if &db * &db > m {
                break 'trial;
            }
            let mut e = 0;
            while m.is_multiple_of(&db) {
                m /= &db;
                e += 1;
            }
            f.push(db, e);
        }
        base += 30;
    }
    if !m.is_one() {
        if &m * &m <= BigInt::from(TRIAL_BOUND) * BigInt::from(TRIAL_BOUND) {
            // Trial division already passed sqrt(m), so m is prime.
            f.push(m, 1);
        } else {
            factor_backstop(m, &mut f);
        }
    }
    f
}

/// Recursively splits a cofactor with no prime factor below the trial bound.
fn factor_backstop(m: BigInt, f: &mut Factorization) {
    if m.is_one() {
        return;
    }
    if is_prime(&m) {
        f.push(m, 1);
        return;
    }
    let d = pollard_brent(&m);
    factor_backstop(&m / &d, f);
    factor_backstop(d, f);
}

/// Pollard-Brent rho: returns a nontrivial divisor of an odd composite m
/// with no small prime factors. Deterministic: increments the polynomial
/// constant until a divisor appears.
fn pollard_brent(m: &BigInt) -> BigInt {
    let one = BigInt::one();
    for c in 1u64.. {
        let cb = BigInt::from(c);
        let step = |x: &BigInt| (x * x + &cb).mod_floor(m);
        let mut x = BigInt::from(2);
        let mut cycle_len = 1u64;
        loop {
            let y = x.clone();
            for _ in 0..cycle_len {
                x = step(&x);
            }
            let mut count = 0u64;
            while count < cycle_len {
                // Batch gcd: accumulate |x - y| products 128 at a time.
                let mut q = one.clone();
                let block = cycle_len.min(count + 128) - count;
                let x_block_start = x.clone();
                for _ in 0..block {
                    x = step(&x);
                    q = (q * (&x - &y).abs()).mod_floor(m);
                }
                count += block;
                let g = q.gcd(m);
                if g.is_one() {
                    continue;
                }
                if &g != m {
                    return g;
                }
                // Overshot: replay the block one step at a time.
                let mut xr = x_block_start;
                loop {
                    xr = step(&xr);
                    let g = (&xr - &y).abs().gcd(m);
                    if !g.is_one() {
                        if &g != m {
                            return g;
                        }
                        break; // cycle degenerate for this c; bump c
                    }
                }
                break;
            }
            if count < cycle_len {
                break; // inner failure, restart with next c
            }
            cycle_len *= 2;
            if cycle_len > 1 << 24 {
                break;
            }
        }
    }
    unreachable!("pollard_brent: exhausted constants")
}

/// All positive divisors of n in ascending order.
///
/// # Panics
/// If n < 1.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive(), "divisors: n must be positive");
    let f = factor(n);
    let mut divs = vec![BigInt::one()];
    for (p, e) in f.iter() {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Square root of a modulo an odd prime p, normalized to 0 <= rho <= (p-1)/2.
///
/// Returns `None` exactly when a is a nonresidue. Brute force below 10^4,
/// Tonelli-Shanks above.
///
/// # Panics
/// If p is not an odd prime.
pub fn sqrt_mod_p(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    assert!(p.is_odd() && is_prime(p), "sqrt_mod_p: p must be an odd prime");
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if kronecker(&a, p) == -1 {
        return None;
    }
    let half = (p - 1) / 2;
    if p.to_u64().is_some_and(|pv| pv <= SQRT_SCAN_BOUND) {
        let mut rho = BigInt::zero();
        while rho <= half {
            if (&rho * &rho).mod_floor(p) == a {
                return Some(rho);
            }
            rho += 1;
        }
        unreachable!("sqrt_mod_p: residue with no root");
    }
    let rho = tonelli_shanks(&a, p);
    Some(if rho <= half { rho } else { p - rho })
}

/// Tonelli-Shanks for an odd prime p and quadratic residue a (not 0 mod p).
fn tonelli_shanks(a: &BigInt, p: &BigInt) -> BigInt {
    let one = BigInt::one();
    let two = BigInt::from(2);
    // p - 1 = q * 2^s, q odd.
    let p_minus_1: BigInt = p - 1u32;
    let s = p_minus_1.trailing_zeros().unwrap();
    let q = &p_minus_1 >> s;
    if s == 1 {
        // p = 3 mod 4: direct exponentiation.
        return a.modpow(&((p + 1) >> 2), p);
    }
    // Any quadratic nonresidue serves as the cocycle generator.
    let mut z = two.clone();
    while kronecker(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1) >> 1), p);
    while !t.is_one() {
        // Least i with t^(2^i) = 1.
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = t2.modpow(&two, p);
            i += 1;
        }
        let b = c.modpow(&(one.clone() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (t * &c).mod_floor(p);
        r = (r * b).mod_floor(p);
    }
    r
}
