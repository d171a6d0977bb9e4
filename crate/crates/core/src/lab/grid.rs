use serde::Deserialize;

use super::config::{DegreeSpec, ExperimentConfig, Mode, Sampling, SizeSpec};
use super::runners::{run_experiment, ExperimentSummary};
use crate::error::{Error, Result};

/// The grid shipped with the crate.
pub const DEFAULT_GRID_TOML: &str = include_str!("../../grids/default.toml");

/// A cartesian grid of experiments read from TOML.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub seed: u64,
    pub trials: usize,
    #[serde(default)]
    pub sampling: Sampling,
    pub modes: Vec<Mode>,
    pub m: Vec<usize>,
    pub r: Vec<usize>,
    pub epsilon: Vec<f64>,
}

impl GridConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn default_grid() -> Self {
        Self::from_toml(DEFAULT_GRID_TOML).expect("shipped grid parses")
    }

    /// Every cell, in `modes x m x r x epsilon` order.
    pub fn cells(&self) -> Vec<ExperimentConfig> {
        let mut out = Vec::new();
        for &mode in &self.modes {
            for &m in &self.m {
                for &r in &self.r {
                    for &eps in &self.epsilon {
                        out.push(
                            ExperimentConfig::new(
                                mode,
                                m,
                                DegreeSpec::R(r),
                                Some(SizeSpec::Epsilon(eps)),
                            )
                            .with_trials(self.trials)
                            .with_seed(self.seed)
                            .with_sampling(self.sampling),
                        );
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct GridOutcome {
    pub summaries: Vec<ExperimentSummary>,
    /// Cells rejected by validation, with the reason.
    pub skipped: Vec<(ExperimentConfig, String)>,
}

impl GridOutcome {
    pub fn violations(&self) -> usize {
        self.summaries.iter().map(|s| s.violations).sum()
    }
}

/// Runs every valid cell; invalid cells are skipped, not fatal.
pub fn run_grid(grid: &GridConfig) -> Result<GridOutcome> {
    if grid.modes.contains(&Mode::Spectrum) {
        return Err(Error::Config("spectrum is not a grid mode".into()));
    }
    let mut summaries = Vec::new();
    let mut skipped = Vec::new();
    for cfg in grid.cells() {
        match cfg.resolve() {
            Err(Error::Config(msg)) => skipped.push((cfg, msg)),
            Err(e) => return Err(e),
            Ok(_) => summaries.push(run_experiment(&cfg)?.summary),
        }
    }
    Ok(GridOutcome { summaries, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_grid_parses() {
        let g = GridConfig::default_grid();
        assert_eq!(g.trials, 200);
        assert_eq!(g.modes, vec![Mode::Rank, Mode::Bec, Mode::Bsc]);
        assert_eq!(g.cells().len(), 3 * 4 * 3 * 3);
        assert!(g.cells().iter().all(|c| c.resolve().is_ok()));
    }

    #[test]
    fn unknown_key_rejected() {
        let text = format!("{DEFAULT_GRID_TOML}\nbogus = 1\n");
        assert!(GridConfig::from_toml(&text).is_err());
    }

    #[test]
    fn small_grid_runs() {
        let g = GridConfig {
            seed: 1,
            trials: 5,
            sampling: Sampling::Distinct,
            modes: vec![Mode::Rank, Mode::Bsc],
            m: vec![3, 5],
            r: vec![1],
            epsilon: vec![0.5],
        };
        let out = run_grid(&g).unwrap();
        // bsc at m = 3 needs m >= 4.
        assert_eq!(out.summaries.len(), 3);
        assert_eq!(out.skipped.len(), 1);
        assert_eq!(out.violations(), 0);
    }
}
