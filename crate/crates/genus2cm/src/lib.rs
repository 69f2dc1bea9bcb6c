//! Explicit genus 2 curves whose Jacobians split as a product E x E of
//! elliptic curves with complex multiplication by the maximal order of
//! K = Q(sqrt(-N)), for primes N = 3 mod 4 of class number one.
//!
//! The pipeline runs in five stages:
//!
//! 1. [`hermitian`] enumerates the reduced positive definite binary
//!    Hermitian forms over Z[i] of discriminant -N. Each non-principal
//!    form is a principal polarization on E x E, hence a genus 2 curve.
//! 2. [`theta`] evaluates genus 2 theta gradients at the form's period
//!    matrix and assembles the product of the six odd gradient linear
//!    forms: a sextic with complex coefficients.
//! 3. [`curves`] normalizes that sextic by an eta quotient and recognizes
//!    the normalized coefficients as exact elements of K.
//! 4. [`igusa`] computes Igusa-Clebsch invariants of the recognized
//!    sextic and [`conic`] decides the field-of-moduli obstruction via
//!    the associated ternary conic.
//! 5. [`gz`] and [`counting`] verify the arithmetic: the discriminant
//!    factorization against a ternary-form divisor sum, and maximality
//!    of the reductions at split primes p = (a^2 + N)/4.
//!
//! All exact arithmetic is over unbounded integers and rationals; the
//! analytic stage uses a fixed point big float ([`bigfloat`]) whose
//! additions are exact, so structural cancellations hold to the last bit.

pub mod arith;
pub mod bigfloat;
pub mod complex;
pub mod conic;
pub mod counting;
pub mod curves;
pub mod error;
pub mod gaussian;
pub mod gz;
pub mod hermitian;
pub mod igusa;
pub mod kfield;
pub mod report;
pub mod theta;

pub use error::{Error, Result};
