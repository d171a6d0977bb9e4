//! Low- and medium-weight codeword count bounds, as exponents, checked
//! against exact counts where the enumerator is available.
//!
//! ```bash
//! cargo run --example weight_bounds
//! ```

use rmlab::lab::run_bounds;
use rmlab::spectrum::{ss_low_bound, ss_low_bound_simplified, ss_med_bound, BoundParams};

fn main() -> rmlab::Result<()> {
    let params = BoundParams::default();
    let (m, r) = (40, 4);
    println!("m = {m}, r = {r}");
    for ell in 1..=8 {
        let low = ss_low_bound(&params, m, r, ell)?;
        let simple = ss_low_bound_simplified(&params, m, r, ell)?;
        let med = ss_med_bound(&params, m, r, ell)?;
        println!("  l = {ell}: low {low:.1}  simplified {simple:.1}  medium {med:.1}");
    }

    let summary = run_bounds(6, 2, 2, &params)?;
    for c in &summary.checks {
        println!(
            "RM(6,2) {} l=2: log2 WtDist = {:.2}, bound = {:.1}, holds = {}",
            c.kind, c.log2_wtdist, c.bound, c.holds
        );
    }
    for note in &summary.notes {
        println!("note: {note}");
    }
    Ok(())
}
