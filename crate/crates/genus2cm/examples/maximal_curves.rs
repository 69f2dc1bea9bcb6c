//! Reduce the exact N = 43 curve modulo split primes and check that every
//! good reduction is a maximal curve: its point count, or its quadratic
//! twist's, attains p + 1 + 2a where p = a^2 + 43 b^2 with 4p = a^2 + 43
//! normalized so a > 0.
//!
//! A split prime admits two reductions, one per square root of -43 mod p;
//! both are scanned. Primes of bad reduction are reported as skipped
//! rather than silently dropped (none occur in this range).
//!
//! ```bash
//! cargo run --release --example maximal_curves
//! ```

use genus2cm::bigfloat::PrecisionContext;
use genus2cm::counting::{reduce_mod_p, scan_rows, WhichRoot};
use genus2cm::curves::normalized_sextic;
use genus2cm::error::Result;
use genus2cm::hermitian::HermitianForm;
use genus2cm::report::ScanSummary;

fn main() -> Result<()> {
    let form = HermitianForm::from_i64(43, 3, 1, 2, 4);
    let ctx = PrecisionContext::new(120)?;
    let f = normalized_sextic(&form, &ctx)?;
    let (p_min, p_max) = (167, 2000);
    println!("form {form}: scanning split primes in [{p_min}, {p_max})");

    for (which, label) in [(WhichRoot::Plus, "+"), (WhichRoot::Minus, "-")] {
        println!("\nreduction by the {label} root of -43 mod p:");
        println!(
            "{:>6} {:>4} {:>7} {:>7} {:>7} {:>8}",
            "p", "a", "count", "twist", "target", "maximal"
        );
        let rows = scan_rows(43, p_min, p_max, |p| reduce_mod_p(&f, p, which));
        for row in &rows {
            if let Some(reason) = &row.skipped {
                println!("{:>6} {:>4} skipped: {reason}", row.p, row.a);
                continue;
            }
            println!(
                "{:>6} {:>4} {:>7} {:>7} {:>7} {:>8}",
                row.p,
                row.a,
                row.count.unwrap(),
                row.twist_count.unwrap(),
                row.p + 1 + 2 * row.a,
                row.is_maximal
            );
        }
        let summary = ScanSummary::from_rows(p_min, p_max, &rows);
        println!("{summary}");
    }
    Ok(())
}
