//! Seeded Monte Carlo experiments, their configuration and output.

mod config;
mod grid;
mod report;
mod runners;
mod stats;

pub use config::{ConfigEcho, DegreeSpec, ExperimentConfig, Mode, Resolved, Sampling, SizeSpec};
pub use grid::{run_grid, GridConfig, GridOutcome, DEFAULT_GRID_TOML};
pub use report::{write_csv, write_json_lines, write_reports, Format, Report};
pub use runners::{
    cached_enumerator, failure_within_bound, run_bec_experiment, run_bounds, run_bsc_experiment,
    run_closure_experiment, run_expected_size_experiment, run_experiment, run_rank_experiment,
    run_spectrum, spectrum_summary, trial_rng, trial_seed, within_3sigma, BoundValue,
    BoundsSummary, BscStats, ExpectedSizeStats, ExperimentRun, ExperimentSummary, SpectrumSummary,
    TrialRecord,
};
pub use stats::{binomial_sigma, mean_and_stderr, wilson, wilson95, Z95};
