//! Igusa invariants of the curves with split CM by Z[(1 + sqrt(-43))/2]:
//! the transvectant chain on the exact sextic, the weighted invariants
//! J2 ... J10, and the factored scaled discriminant D.
//!
//! Both curves have rational integer invariants even though only one of
//! them descends to Q, and D is a perfect twelfth power in each case.
//!
//! ```bash
//! cargo run --release --example igusa_invariants
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use genus2cm::bigfloat::PrecisionContext;
use genus2cm::curves::normalized_sextic;
use genus2cm::error::Result;
use genus2cm::hermitian::HermitianForm;
use genus2cm::igusa::{igusa_k, scaled_disc_factorization, sextic_disc_k};

fn main() -> Result<()> {
    let ctx = PrecisionContext::new(120)?;
    for form in [
        HermitianForm::from_i64(43, 2, 1, 2, 6),
        HermitianForm::from_i64(43, 3, 1, 2, 4),
    ] {
        let f = normalized_sextic(&form, &ctx)?;
        let j = igusa_k(&f)?;
        println!("form {form}");
        for (name, value) in [
            ("J2", &j.j2),
            ("J4", &j.j4),
            ("J6", &j.j6),
            ("J8", &j.j8),
            ("J10", &j.j10),
        ] {
            println!("  {name:>3} = {value}");
        }

        // 4 J8 = J2 J6 - J4^2 holds identically; J10 is the scaled
        // discriminant up to the factor 2^12.
        let c = |v: i64| BigRational::from(BigInt::from(v));
        assert_eq!(c(4) * &j.j8, &j.j2 * &j.j6 - &j.j4 * &j.j4);
        let disc = sextic_disc_k(&f);
        assert!(disc.is_rational());
        assert_eq!(c(4096) * &j.j10, disc.x().clone());

        let d = scaled_disc_factorization(disc.x())?;
        println!("    D = {d}\n");
    }
    Ok(())
}
