//! Exact weight enumerators of RM(m, r) and the interval counts built on them.
//!
//! ```bash
//! cargo run --example weight_spectrum -- 6 2
//! ```

use rmlab::spectrum::{interval_counts, weight_enumerator};

fn main() -> rmlab::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (m, r) = match args[..] {
        [m, r] => (m, r),
        _ => (6, 2),
    };
    let we = weight_enumerator(m, r)?;
    println!(
        "RM({m}, {r}): {} codewords, minimum weight {:?}",
        we.total(),
        we.min_nonzero_weight()
    );
    for (w, count) in we.nonzero() {
        println!("  A_{w:<3} = {count}");
    }

    let rep = interval_counts(&we);
    println!("delta = {:.3e}, t = {}", rep.delta, rep.t);
    println!("low intervals {:?}", rep.low);
    println!("medium intervals {:?}", rep.med);
    println!("biased polynomials {}", rep.biased_count);
    print!("cache file:\n{}", we.to_cache());
    Ok(())
}
