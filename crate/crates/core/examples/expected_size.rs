//! Exact `E[|I_r(Z)|] / 2^C` from the weight enumerator against a Monte
//! Carlo estimate.
//!
//! ```bash
//! cargo run --example expected_size
//! ```

use rmlab::lab::{run_expected_size_experiment, DegreeSpec, ExperimentConfig, Mode, SizeSpec};
use rmlab::spectrum::{expected_size_exact, weight_enumerator};

fn main() -> rmlab::Result<()> {
    let we = weight_enumerator(2, 1)?;
    println!("RM(2,1), K = 1: exact {}", expected_size_exact(&we, 1)?);

    for (m, r, k) in [(4, 1, 3), (5, 1, 5), (6, 2, 18)] {
        let cfg = ExperimentConfig::new(
            Mode::ExpectedSize,
            m,
            DegreeSpec::R(r),
            Some(SizeSpec::K(k)),
        )
        .with_trials(10_000);
        let run = run_expected_size_experiment(&cfg)?;
        let s = run.summary.expected_size_mc.expect("expected-size stats");
        println!(
            "m={m} r={r} K={k}: MC {:.4e} +- {:.1e}, exact {:.4e}, exact * 2^K = {:.4}, within 3 sigma: {:?}",
            s.mc_mean,
            s.mc_stderr,
            s.exact.unwrap_or(f64::NAN),
            s.exact_times_2k.unwrap_or(f64::NAN),
            s.within_3sigma
        );
    }
    Ok(())
}
