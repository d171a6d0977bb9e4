//! A small experiment grid written as long-form CSV.
//!
//! ```bash
//! cargo run --example experiment_grid
//! ```
//!
//! The full shipped grid runs with `rmlab grid`.

use rmlab::lab::{run_grid, write_csv, GridConfig, Report};

fn main() -> rmlab::Result<()> {
    let grid = GridConfig::from_toml(
        r#"
        seed = 11
        trials = 100
        modes = ["rank", "bsc"]
        m = [8, 10]
        r = [1, 2]
        epsilon = [0.5]
        "#,
    )?;
    let outcome = run_grid(&grid)?;
    for (cfg, why) in &outcome.skipped {
        eprintln!("skipped {} m={}: {why}", cfg.mode.name(), cfg.m);
    }
    let reports: Vec<Report> = outcome
        .summaries
        .into_iter()
        .map(Report::Experiment)
        .collect();
    write_csv(std::io::stdout().lock(), &reports)
}
