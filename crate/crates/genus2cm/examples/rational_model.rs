//! The bielliptic N = 43 curve through its rational model: the model has
//! the same weighted Igusa invariants as the curve of (2, 1+2i, 6), yet
//! its reductions behave differently. The model over K is maximal at
//! every split prime, while the rational model is maximal exactly at the
//! split primes p = 1 mod 4.
//!
//! The split comes from the quartic twist relating the two models: the
//! twisting scalar is a fourth power residue mod p precisely when
//! p = 1 mod 4, and at p = 3 mod 4 the count lands at p + 1 dead in the
//! middle of the Weil interval.
//!
//! ```bash
//! cargo run --release --example rational_model
//! ```

use genus2cm::bigfloat::PrecisionContext;
use genus2cm::counting::{maximal_scan_k, maximal_scan_q};
use genus2cm::curves::{normalized_sextic, q_model_43};
use genus2cm::error::Result;
use genus2cm::hermitian::HermitianForm;
use genus2cm::igusa::{igusa_k, igusa_q, weighted_equal};

fn main() -> Result<()> {
    let q = q_model_43();
    println!("rational model: {q}\n");

    let form = HermitianForm::from_i64(43, 2, 1, 2, 6);
    let ctx = PrecisionContext::new(120)?;
    let f = normalized_sextic(&form, &ctx)?;
    assert!(weighted_equal(&igusa_q(&q), &igusa_k(&f)?)?);
    println!("weighted Igusa invariants equal those of the curve of {form}\n");

    let (p_min, p_max) = (167, 2000);
    let k_rows = maximal_scan_k(&f, p_min, p_max);
    let q_rows = maximal_scan_q(&q, 43, p_min, p_max);
    println!(
        "{:>6} {:>7} {:>9} {:>9} {:>10} {:>10}",
        "p", "p mod 4", "K count", "Q count", "K maximal", "Q maximal"
    );
    for (kr, qr) in k_rows.iter().zip(&q_rows) {
        assert_eq!(kr.p, qr.p);
        println!(
            "{:>6} {:>7} {:>9} {:>9} {:>10} {:>10}",
            kr.p,
            kr.p % 4,
            kr.count.unwrap(),
            qr.count.unwrap(),
            kr.is_maximal,
            qr.is_maximal
        );
        assert!(kr.is_maximal);
        assert_eq!(qr.is_maximal, kr.p % 4 == 1);
        if kr.p % 4 == 3 {
            // Off the maximal residue class the rational model sits at the
            // center of the Weil interval.
            assert_eq!(qr.count.unwrap(), kr.p + 1);
        }
    }
    println!("\nK model maximal at every split prime; rational model exactly at p = 1 mod 4.");
    Ok(())
}
