//! Decide whether each N = 43 curve admits a model over Q: build Mestre's
//! conic from the Igusa invariants, factor its determinant, and test local
//! solvability of the conic at every relevant place.
//!
//! The curve of (2, 1+2i, 6) has extra automorphisms, so its conic is
//! degenerate (det M = 0) and the descent succeeds; a rational model is
//! printed. The curve of (3, 1+2i, 4) has a nondegenerate conic with no
//! points over Q_43 and R, so its field of moduli Q is not a field of
//! definition: the curve exists only over K = Q(sqrt(-43)).
//!
//! ```bash
//! cargo run --release --example field_of_moduli
//! ```

use num_traits::{Signed, Zero};

use genus2cm::bigfloat::PrecisionContext;
use genus2cm::conic::{conic_obstruction, det_mestre, mestre_matrix};
use genus2cm::curves::{normalized_sextic, q_model_43};
use genus2cm::error::Result;
use genus2cm::hermitian::{definable_over_q, HermitianForm};
use genus2cm::igusa::{igusa_k, igusa_q, weighted_equal};

fn main() -> Result<()> {
    let ctx = PrecisionContext::new(120)?;
    for form in [
        HermitianForm::from_i64(43, 2, 1, 2, 6),
        HermitianForm::from_i64(43, 3, 1, 2, 4),
    ] {
        println!("form {form}: iota-fixed class = {}", definable_over_q(&form)?);
        let f = normalized_sextic(&form, &ctx)?;
        let j = igusa_k(&f)?;
        let m = mestre_matrix(&j);
        let (det, det_fact) = det_mestre(&m);

        if det.is_zero() {
            // Degenerate conic: the curve has extra automorphisms and
            // always descends; exhibit the rational model and confirm it
            // has the same weighted invariants.
            println!("  det M = 0: conic degenerate, extra automorphisms");
            let q = q_model_43();
            assert!(weighted_equal(&igusa_q(&q), &j)?);
            println!("  rational model with equal weighted invariants:");
            println!("    {q}");
        } else {
            match &det_fact {
                Some(fact) => {
                    let sign = if det.is_negative() { "-" } else { "" };
                    println!("  det M = {sign}{fact}");
                }
                None => println!("  det M = {det}"),
            }
            let ob = conic_obstruction(&m)?;
            println!("  conic diagonalizes to <{}, {}, {}>", ob.diagonal[0], ob.diagonal[1], ob.diagonal[2]);
            if ob.solvable_over_q {
                println!("  locally solvable everywhere: a rational model exists");
            } else {
                let places: Vec<String> =
                    ob.obstructed_places.iter().map(|p| p.to_string()).collect();
                println!(
                    "  no local point at {{{}}}: field of moduli Q is not a field of definition",
                    places.join(", ")
                );
            }
        }
        println!();
    }
    Ok(())
}
