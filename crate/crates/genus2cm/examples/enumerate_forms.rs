//! Enumerate the reduced binary Hermitian forms of discriminant -N over
//! the Gaussian integers, for every N with class number one, and show how
//! the conjugation involution pairs them up.
//!
//! Each class of forms corresponds to a principal polarization on the
//! abelian surface E x E; the principal form carries the product
//! polarization (no curve), every other orbit of the involution carries
//! exactly one genus 2 curve.
//!
//! ```bash
//! cargo run --example enumerate_forms
//! ```

use genus2cm::error::Result;
use genus2cm::hermitian::{
    class_number_formula, definable_over_q, enumerate_reduced, reduce_form, type_number,
};
use genus2cm::report::REPORT_N;

fn main() -> Result<()> {
    println!("{:>5} {:>3} {:>3} {:>7}  forms (a, b, c) with b b~ - 4ac = -N", "N", "n", "t", "curves");
    for n in REPORT_N {
        let forms = enumerate_reduced(n)?;
        let t = type_number(n)?;
        assert_eq!(forms.len() as u64, class_number_formula(n)?);
        println!(
            "{:>5} {:>3} {:>3} {:>7}",
            n,
            forms.len(),
            t,
            t - 1,
        );
        for form in &forms {
            let partner = reduce_form(&form.iota())?;
            let role = if form.is_principal() {
                "principal: product polarization, no curve".to_string()
            } else if definable_over_q(form)? {
                "self-paired: curve has a rational model candidate".to_string()
            } else {
                format!("paired with {partner}: curve only defined over K")
            };
            println!("        {form:<16} {role}");
        }
    }
    Ok(())
}
