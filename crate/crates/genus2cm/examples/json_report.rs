//! Produce the full machine-readable report for one field: every curve
//! class of N = 43 with its exact model, invariants, factored
//! discriminant, descent obstruction, and a maximal-curve scan, rendered
//! as canonical JSON (sorted keys, all scalars as decimal strings, so the
//! output is stable byte-for-byte across runs and safe for invariants
//! beyond 2^53).
//!
//! ```bash
//! cargo run --release --example json_report > report_43.json
//! ```

use genus2cm::error::Result;
use genus2cm::report::{render_json, report_document};

fn main() -> Result<()> {
    // None picks the automatic precision per curve; scan split primes
    // below 600.
    let doc = report_document(43, None, Some(600))?;
    print!("{}", render_json(&doc.to_json()));
    Ok(())
}
