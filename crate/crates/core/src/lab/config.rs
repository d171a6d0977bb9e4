use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{binomial_sum, MAX_VARS};
use crate::spectrum::k_for_epsilon;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Rank,
    Bec,
    Bsc,
    ExpectedSize,
    Spectrum,
    Closure,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Rank => "rank",
            Mode::Bec => "bec",
            Mode::Bsc => "bsc",
            Mode::ExpectedSize => "expected-size",
            Mode::Spectrum => "spectrum",
            Mode::Closure => "closure",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    #[default]
    Distinct,
    WithReplacement,
}

impl Sampling {
    pub fn name(self) -> &'static str {
        match self {
            Sampling::Distinct => "distinct",
            Sampling::WithReplacement => "with-replacement",
        }
    }
}

/// Degree parameter as given by the user.
///
/// `R` is the degree of the evaluation vectors (the vanishing degree; for
/// `bec` the parity-check degree `m-d-1`; for `bsc` the error-locator degree).
/// `D` is the code degree, accepted by `bec` and `bsc` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSpec {
    R(usize),
    D(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SizeSpec {
    K(usize),
    Epsilon(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub m: usize,
    pub degree: DegreeSpec,
    /// Required for every mode except `spectrum`.
    pub size: Option<SizeSpec>,
    pub trials: usize,
    pub seed: u64,
    pub sampling: Sampling,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, m: usize, degree: DegreeSpec, size: Option<SizeSpec>) -> Self {
        Self {
            mode,
            m,
            degree,
            size,
            trials: 1000,
            seed: 0,
            sampling: Sampling::Distinct,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.sampling = sampling;
        self
    }

    /// Validates and fills in derived parameters.
    pub fn resolve(&self) -> Result<Resolved> {
        let m = self.m;
        if m == 0 || m > MAX_VARS.min(24) {
            return Err(Error::Config(format!("m = {m} outside 1..=24")));
        }
        if self.trials == 0 && self.mode != Mode::Spectrum {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let (r, d) = match (self.mode, self.degree) {
            (Mode::Bec, DegreeSpec::R(r)) => {
                if r >= m {
                    return Err(Error::Config(format!("bec needs r < m, got r = {r}")));
                }
                (r, Some(m - r - 1))
            }
            (Mode::Bec, DegreeSpec::D(d)) => {
                if d >= m {
                    return Err(Error::Config(format!("bec needs d < m, got d = {d}")));
                }
                (m - d - 1, Some(d))
            }
            (Mode::Bsc, DegreeSpec::R(r)) => {
                if r == 0 || m < 2 * r + 2 {
                    return Err(Error::Config(format!(
                        "bsc needs r >= 1 and m >= 2r+2, got m = {m}, r = {r}"
                    )));
                }
                (r, Some(m - 2 * r - 2))
            }
            (Mode::Bsc, DegreeSpec::D(d)) => {
                if d + 2 > m || !(m - d - 2).is_multiple_of(2) || m - d - 2 == 0 {
                    return Err(Error::Config(format!(
                        "bsc needs d = m - 2r - 2 for some r >= 1, got d = {d}"
                    )));
                }
                ((m - d - 2) / 2, Some(d))
            }
            (mode, DegreeSpec::D(_)) => {
                return Err(Error::Config(format!("{} takes --r, not --d", mode.name())));
            }
            (_, DegreeSpec::R(r)) => {
                if r > m {
                    return Err(Error::Config(format!("r = {r} exceeds m = {m}")));
                }
                (r, None)
            }
        };
        let dimension = binomial_sum(m, r) as usize;
        let (k, epsilon) = match (self.mode, self.size) {
            (Mode::Spectrum, _) => (None, None),
            (_, None) => return Err(Error::Config("one of --k / --epsilon is required".into())),
            (_, Some(SizeSpec::K(k))) => (Some(k), None),
            (_, Some(SizeSpec::Epsilon(eps))) => {
                if !(0.0..=1.0).contains(&eps) {
                    return Err(Error::Config(format!("epsilon = {eps} outside [0, 1]")));
                }
                (Some(k_for_epsilon(dimension, eps)), Some(eps))
            }
        };
        if self.sampling == Sampling::WithReplacement && self.mode != Mode::Rank {
            return Err(Error::Config(format!(
                "{} only supports distinct sampling",
                self.mode.name()
            )));
        }
        if let Some(k) = k {
            if self.sampling == Sampling::Distinct && k as u64 > 1u64 << m {
                return Err(Error::Config(format!(
                    "K = {k} exceeds 2^m = {}",
                    1u64 << m
                )));
            }
        }
        Ok(Resolved {
            mode: self.mode,
            m,
            r,
            d,
            k: k.unwrap_or(0),
            epsilon,
            dimension,
            trials: self.trials,
            seed: self.seed,
            sampling: self.sampling,
        })
    }
}

/// A validated configuration with every derived parameter spelled out.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub mode: Mode,
    pub m: usize,
    pub r: usize,
    pub d: Option<usize>,
    pub k: usize,
    pub epsilon: Option<f64>,
    /// `C(m, <= r)`.
    pub dimension: usize,
    pub trials: usize,
    pub seed: u64,
    pub sampling: Sampling,
}

impl Resolved {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            mode: self.mode.name().to_string(),
            m: self.m,
            r: Some(self.r),
            d: self.d,
            k: (self.mode != Mode::Spectrum).then_some(self.k),
            epsilon: self.epsilon,
            ell: None,
            trials: (self.mode != Mode::Spectrum).then_some(self.trials),
            seed: (self.mode != Mode::Spectrum).then_some(self.seed),
            sampling: (self.mode != Mode::Spectrum).then(|| self.sampling.name().to_string()),
        }
    }
}

/// Configuration echo written with every report.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<String>,
}

impl ConfigEcho {
    pub const CSV_COLUMNS: [&'static str; 10] = [
        "mode", "m", "r", "d", "k", "epsilon", "ell", "trials", "seed", "sampling",
    ];

    pub(crate) fn csv_cells(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        vec![
            self.mode.clone(),
            self.m.to_string(),
            opt(&self.r),
            opt(&self.d),
            opt(&self.k),
            opt(&self.epsilon),
            opt(&self.ell),
            opt(&self.trials),
            opt(&self.seed),
            opt(&self.sampling),
        ]
    }
}
