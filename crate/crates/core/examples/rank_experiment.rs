//! Full-rank probability of random columns of `E(m, r)`, with the matching
//! erasure experiment run on the same seeds.
//!
//! ```bash
//! cargo run --example rank_experiment
//! ```

use rmlab::lab::{
    run_bec_experiment, run_rank_experiment, DegreeSpec, ExperimentConfig, Mode, SizeSpec,
};

fn main() -> rmlab::Result<()> {
    let (m, r) = (6, 2);
    for eps in [0.5, 0.2, 0.1] {
        let size = Some(SizeSpec::Epsilon(eps));
        let rank = run_rank_experiment(
            &ExperimentConfig::new(Mode::Rank, m, DegreeSpec::R(r), size).with_trials(2000),
        )?;
        let bec = run_bec_experiment(
            &ExperimentConfig::new(Mode::Bec, m, DegreeSpec::R(r), size).with_trials(2000),
        )?;
        let s = &rank.summary;
        println!(
            "eps {eps}: K = {:?}, full rank {:.4} [{:.4}, {:.4}], union bound on failure {:.4}, bec success {:.4}",
            s.config.k,
            s.success_rate,
            s.wilson95.0,
            s.wilson95.1,
            s.union_bound.unwrap_or(f64::NAN),
            bec.summary.success_rate
        );
        let same = rank
            .records
            .iter()
            .zip(&bec.records)
            .all(|(a, b)| a.success == b.success);
        println!("  per-trial outcomes identical: {same}");
    }
    Ok(())
}
