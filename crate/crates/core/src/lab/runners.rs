use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{ConfigEcho, ExperimentConfig, Mode, Resolved, Sampling};
use super::stats::{binomial_sigma, mean_and_stderr, wilson95};
use crate::channels::{
    erasure_decode, error_decode, sample_distinct_points, sample_points_with_replacement,
    DecodeStatus, ReceivedWord,
};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, Echelon};
use crate::poly::{binomial_sum, MonomialBasis, Polynomial};
use crate::spectrum::{
    check_low_bound, check_med_bound, expected_size, interval_counts, scaled_avoid_sum,
    ss_low_bound, ss_med_bound, union_bound_failure, weight_enumerator, BoundCheck, BoundParams,
    SpectrumReport, WeightEnumerator, DEFAULT_ENUM_CAP,
};
use crate::vanishing::{closure, is_minimal_rank, vanishing_space_in, PointSet};

/// Per-trial RNG seed: a hash of `(seed, trial)` so results do not depend
/// on how trials are scheduled across threads.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    fn splitmix(mut x: u64) -> u64 {
        x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
        x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        x ^ (x >> 31)
    }
    splitmix(seed ^ splitmix(trial as u64))
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, trial))
}

/// Enumerators are shared across every experiment in the process.
pub fn cached_enumerator(m: usize, r: usize) -> Option<Arc<WeightEnumerator>> {
    if crate::poly::binomial_sum(m, r) as usize > DEFAULT_ENUM_CAP {
        return None;
    }
    type Cache = Mutex<HashMap<(usize, usize), Arc<WeightEnumerator>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(we) = cache.lock().unwrap().get(&(m, r)) {
        return Some(Arc::clone(we));
    }
    let we = Arc::new(weight_enumerator(m, r).ok()?);
    cache.lock().unwrap().insert((m, r), Arc::clone(&we));
    Some(we)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub success: bool,
    /// `dim I_r(Z) - (C(m,<=r) - K)`.
    pub excess_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_size: Option<usize>,
    /// Degree-(r+1) independence of the error positions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independent: Option<bool>,
    /// Unique erasure solve at the located set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unique_solve: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BscStats {
    pub independence_rate: f64,
    pub unique_solve_rate: f64,
    pub both_predicates_rate: f64,
    pub min_distance: u64,
    /// `K > 2^(2r+2) / 2`.
    pub beyond_min_distance: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedSizeStats {
    pub mc_mean: f64,
    pub mc_stderr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_times_2k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaled_avoid_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_3sigma: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub config: ConfigEcho,
    pub successes: usize,
    pub trials: usize,
    pub success_rate: f64,
    pub wilson95: (f64, f64),
    pub mean_excess_dim: f64,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub union_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_size: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_closure_excess: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bsc: Option<BscStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_size_mc: Option<ExpectedSizeStats>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violation_examples: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ExperimentRun {
    pub summary: ExperimentSummary,
    pub records: Vec<TrialRecord>,
}

fn summarize(res: &Resolved, records: &[TrialRecord]) -> ExperimentSummary {
    let trials = records.len();
    let successes = records.iter().filter(|t| t.success).count();
    let violations: Vec<String> = records
        .iter()
        .flat_map(|t| {
            t.violations
                .iter()
                .map(move |v| format!("trial {}: {v}", t.trial))
        })
        .collect();
    ExperimentSummary {
        config: res.echo(),
        successes,
        trials,
        success_rate: successes as f64 / trials as f64,
        wilson95: wilson95(successes, trials),
        mean_excess_dim: records.iter().map(|t| t.excess_dim as f64).sum::<f64>() / trials as f64,
        violations: violations.len(),
        union_bound: None,
        expected_size: None,
        mean_closure_excess: None,
        bsc: None,
        expected_size_mc: None,
        notes: Vec::new(),
        violation_examples: violations.into_iter().take(5).collect(),
    }
}

fn run_trials(
    res: &Resolved,
    trial: impl Fn(usize) -> Result<TrialRecord> + Sync + Send,
) -> Result<Vec<TrialRecord>> {
    (0..res.trials).into_par_iter().map(trial).collect()
}

fn expect_mode(cfg: &ExperimentConfig, mode: Mode) -> Result<Resolved> {
    if cfg.mode != mode {
        return Err(Error::Config(format!(
            "expected mode {}, got {}",
            mode.name(),
            cfg.mode.name()
        )));
    }
    cfg.resolve()
}

fn attach_oracles(summary: &mut ExperimentSummary, res: &Resolved) -> Result<()> {
    match cached_enumerator(res.m, res.r) {
        Some(we) if res.k <= we.n() => {
            summary.union_bound = Some(union_bound_failure(&we, res.k)?);
            summary.expected_size = Some(expected_size(&we, res.k)?);
        }
        _ => summary.notes.push(format!(
            "exact oracle unavailable: C(m,<=r) = {} above the enumeration cap",
            res.dimension
        )),
    }
    Ok(())
}

/// Full-rank experiment for random evaluation columns of `E(m, r)`.
pub fn run_rank_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    let res = expect_mode(cfg, Mode::Rank)?;
    let basis = MonomialBasis::new(res.m, res.r)?;
    let records = run_trials(&res, |trial| {
        let mut rng = trial_rng(res.seed, trial);
        let points = match res.sampling {
            Sampling::Distinct => sample_distinct_points(res.m, res.k, &mut rng)?,
            Sampling::WithReplacement => sample_points_with_replacement(res.m, res.k, &mut rng),
        };
        let mut echelon = Echelon::new(basis.len());
        let mut all_new = true;
        for &z in &points {
            all_new &= echelon.insert(&basis.eval_vector(z))?;
        }
        let rank = echelon.inserted();
        let mut rec = TrialRecord {
            trial,
            success: all_new,
            excess_dim: res.k - rank,
            ..Default::default()
        };
        if all_new != (rank == res.k) {
            rec.violations
                .push("sequential inserts disagree with the final rank".into());
        }
        if res.sampling == Sampling::Distinct {
            let set = PointSet::from_points(res.m, points)?;
            if is_minimal_rank(&set, res.r)? != all_new {
                rec.violations
                    .push("minimal-dimension test disagrees with sequential inserts".into());
            }
        }
        Ok(rec)
    })?;
    let mut summary = summarize(&res, &records);
    attach_oracles(&mut summary, &res)?;
    if res.sampling == Sampling::WithReplacement {
        summary
            .notes
            .push("oracles assume distinct sampling".into());
    }
    Ok(ExperimentRun { summary, records })
}

/// Erasure decoding of RM(m, d) with `K` random erasures.
pub fn run_bec_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    let res = expect_mode(cfg, Mode::Bec)?;
    let d = res.d.expect("bec resolves d");
    let checks = MonomialBasis::new(res.m, res.r)?;
    let code = MonomialBasis::shared(res.m, d)?;
    let records = run_trials(&res, |trial| {
        let mut rng = trial_rng(res.seed, trial);
        // Points first so rank and bec trials see the same sets.
        let points = sample_distinct_points(res.m, res.k, &mut rng)?;
        let sent = Polynomial::random(Arc::clone(&code), &mut rng).encode();
        let received = ReceivedWord::erase_points(res.m, sent.table(), &points)?;
        let outcome = erasure_decode(&received, d)?;

        let mut echelon = Echelon::new(checks.len());
        for &z in &points {
            echelon.insert(&checks.eval_vector(z))?;
        }
        let rank = echelon.inserted();
        let full_rank = rank == res.k;
        let mut rec = TrialRecord {
            trial,
            success: outcome.decoded() == Some(&sent),
            excess_dim: res.k - rank,
            ..Default::default()
        };
        match &outcome.status {
            DecodeStatus::Decoded(c) => {
                if c.anf_in(&code).is_err() {
                    rec.violations
                        .push("decoded word is not a degree-d codeword".into());
                }
                let mut diff = c.table().xor(received.known_values());
                for (w, e) in diff
                    .words_mut()
                    .iter_mut()
                    .zip(received.erased_mask().words())
                {
                    *w &= !e;
                }
                if !diff.is_zero() {
                    rec.violations
                        .push("decoded word disagrees with a known symbol".into());
                }
                if !full_rank {
                    rec.violations
                        .push("decoded although erased columns are dependent".into());
                }
            }
            DecodeStatus::AmbiguousErasure => {
                if full_rank {
                    rec.violations
                        .push("ambiguous although erased columns are independent".into());
                }
            }
            other => rec.violations.push(format!("unexpected status {other:?}")),
        }
        let set = PointSet::from_points(res.m, points)?;
        if is_minimal_rank(&set, res.r)? != full_rank {
            rec.violations
                .push("minimal-rank test disagrees with column rank".into());
        }
        if rec.success != full_rank {
            rec.violations
                .push("success differs from the rank condition".into());
        }
        Ok(rec)
    })?;
    let mut summary = summarize(&res, &records);
    attach_oracles(&mut summary, &res)?;
    if res.k > res.dimension {
        summary.notes.push(format!(
            "K = {} exceeds C(m,<=m-d-1) = {}; decoding cannot succeed",
            res.k, res.dimension
        ));
    }
    Ok(ExperimentRun { summary, records })
}

/// Error decoding of RM(m, m-2r-2) with `K` random flips.
pub fn run_bsc_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    let res = expect_mode(cfg, Mode::Bsc)?;
    let d = res.d.expect("bsc resolves d");
    let (m, r) = (res.m, res.r);
    let code = MonomialBasis::shared(m, d)?;
    let low = MonomialBasis::shared(m, r)?;
    let mid = MonomialBasis::new(m, r + 1)?;
    let records = run_trials(&res, |trial| {
        let mut rng = trial_rng(res.seed, trial);
        let points = sample_distinct_points(m, res.k, &mut rng)?;
        let sent = Polynomial::random(Arc::clone(&code), &mut rng).encode();
        let mut y = sent.table().clone();
        for &z in &points {
            y.flip(z as usize);
        }
        let report = error_decode(&y, m, r)?;

        let mut echelon = Echelon::new(mid.len());
        let independent = points
            .iter()
            .all(|&z| echelon.insert(&mid.eval_vector(z)).expect("lengths match"));
        let unique = report.unique_erasure_solve;
        let mut rec = TrialRecord {
            trial,
            success: report.outcome.decoded() == Some(&sent),
            independent: Some(independent),
            unique_solve: Some(unique),
            closure_size: Some(report.located.len()),
            ..Default::default()
        };

        let vanishing = vanishing_space_in(&points, &low)?;
        rec.excess_dim = vanishing.dim()
            - vanishing
                .ambient()
                .saturating_sub(res.k)
                .min(vanishing.dim());
        if !vanishing.is_subspace_of(&report.kernel) {
            rec.violations
                .push("I_r(supp e) is not contained in the syndrome kernel".into());
        }
        if independent {
            if !vanishing.same_span(&report.kernel) {
                rec.violations
                    .push("kernel differs from I_r(supp e) under independence".into());
            }
            let set = PointSet::from_points(m, points.iter().copied())?;
            if closure(&set, r)?.points() != report.located.as_slice() {
                rec.violations
                    .push("located set differs from the degree-r closure".into());
            }
            if unique && !rec.success {
                rec.violations
                    .push("both predicates held but output differs from the sent word".into());
            }
        }
        if let Some(c) = report.outcome.decoded() {
            let mut located = BitVector::zeros(1 << m);
            for &z in &report.located {
                located.set(z as usize, true);
            }
            if c.table().xor(&y).iter_ones().any(|t| !located.get(t)) {
                rec.violations
                    .push("decoded word changes a position outside the located set".into());
            }
        }
        Ok(rec)
    })?;
    let mut summary = summarize(&res, &records);
    let n = records.len() as f64;
    let rate =
        |f: &dyn Fn(&TrialRecord) -> bool| records.iter().filter(|t| f(t)).count() as f64 / n;
    let min_distance = 1u64 << (2 * r + 2);
    summary.bsc = Some(BscStats {
        independence_rate: rate(&|t| t.independent == Some(true)),
        unique_solve_rate: rate(&|t| t.unique_solve == Some(true)),
        both_predicates_rate: rate(&|t| {
            t.independent == Some(true) && t.unique_solve == Some(true)
        }),
        min_distance,
        beyond_min_distance: res.k as u64 > min_distance / 2,
    });
    Ok(ExperimentRun { summary, records })
}

/// Monte Carlo estimate of `E[2^(dim I_r(Z) - C)]` against the exact value.
pub fn run_expected_size_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    let res = expect_mode(cfg, Mode::ExpectedSize)?;
    let basis = MonomialBasis::new(res.m, res.r)?;
    let records = run_trials(&res, |trial| {
        let mut rng = trial_rng(res.seed, trial);
        let points = sample_distinct_points(res.m, res.k, &mut rng)?;
        let mut echelon = Echelon::new(basis.len());
        for &z in &points {
            echelon.insert(&basis.eval_vector(z))?;
        }
        let rank = echelon.inserted();
        Ok(TrialRecord {
            trial,
            success: rank == res.k,
            excess_dim: res.k - rank,
            sample: Some((-(rank as f64)).exp2()),
            ..Default::default()
        })
    })?;
    let mut summary = summarize(&res, &records);
    let samples: Vec<f64> = records.iter().filter_map(|t| t.sample).collect();
    let (mc_mean, mc_stderr) = mean_and_stderr(&samples);
    let mut stats = ExpectedSizeStats {
        mc_mean,
        mc_stderr,
        exact: None,
        exact_times_2k: None,
        scaled_avoid_sum: None,
        within_3sigma: None,
    };
    match cached_enumerator(res.m, res.r) {
        Some(we) => {
            let exact = expected_size(&we, res.k)?;
            stats.exact = Some(exact);
            stats.exact_times_2k = Some(exact * (res.k as f64).exp2());
            stats.within_3sigma = Some(within_3sigma(mc_mean, mc_stderr, exact));
            if let Some(eps) = res.epsilon {
                stats.scaled_avoid_sum = Some(scaled_avoid_sum(&we, res.k, eps)?);
            }
            summary.union_bound = Some(union_bound_failure(&we, res.k)?);
            summary.expected_size = Some(exact);
        }
        None => summary
            .notes
            .push("exact comparison disabled: C(m,<=r) above the enumeration cap".into()),
    }
    summary.expected_size_mc = Some(stats);
    Ok(ExperimentRun { summary, records })
}

/// `|estimate - exact| <= 3 sigma`, with a rounding floor for zero-variance samples.
pub fn within_3sigma(estimate: f64, stderr: f64, exact: f64) -> bool {
    (estimate - exact).abs() <= 3.0 * stderr + 1e-12 * exact.abs().max(1.0)
}

/// Whether an empirical failure rate respects an upper bound up to `3 sigma`.
pub fn failure_within_bound(failures: usize, trials: usize, bound: f64) -> bool {
    let rate = failures as f64 / trials as f64;
    rate <= bound + 3.0 * binomial_sigma(bound.min(1.0), trials)
}

/// How often a random `K`-set equals its own degree-`r` closure.
pub fn run_closure_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    let res = expect_mode(cfg, Mode::Closure)?;
    let basis = MonomialBasis::shared(res.m, res.r)?;
    let records = run_trials(&res, |trial| {
        let mut rng = trial_rng(res.seed, trial);
        let points = sample_distinct_points(res.m, res.k, &mut rng)?;
        let set = PointSet::from_points(res.m, points.iter().copied())?;
        let cl = closure(&set, res.r)?;
        let vanishing = vanishing_space_in(&points, &basis)?;
        let floor = vanishing.ambient().saturating_sub(res.k);
        let mut rec = TrialRecord {
            trial,
            success: cl.len() == res.k,
            excess_dim: vanishing.dim() - floor,
            closure_size: Some(cl.len()),
            ..Default::default()
        };
        if !set.is_subset_of(&cl) {
            rec.violations
                .push("Z is not contained in its closure".into());
        }
        Ok(rec)
    })?;
    let mut summary = summarize(&res, &records);
    summary.mean_closure_excess = Some(
        records
            .iter()
            .map(|t| (t.closure_size.unwrap_or(0) - res.k) as f64)
            .sum::<f64>()
            / records.len() as f64,
    );
    Ok(ExperimentRun { summary, records })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub config: ConfigEcho,
    pub dimension: usize,
    pub total: u128,
    pub min_nonzero_weight: Option<usize>,
    /// `(w, count)` for every weight with a nonzero count.
    pub weights: Vec<(usize, u64)>,
    pub intervals: SpectrumReport,
}

pub fn run_spectrum(cfg: &ExperimentConfig) -> Result<(SpectrumSummary, Arc<WeightEnumerator>)> {
    let res = expect_mode(cfg, Mode::Spectrum)?;
    let we = match cached_enumerator(res.m, res.r) {
        Some(we) => we,
        None => Arc::new(weight_enumerator(res.m, res.r)?),
    };
    Ok((spectrum_summary(cfg, &we)?, we))
}

/// Summary of an already computed enumerator, e.g. one read from a cache.
pub fn spectrum_summary(cfg: &ExperimentConfig, we: &WeightEnumerator) -> Result<SpectrumSummary> {
    let res = expect_mode(cfg, Mode::Spectrum)?;
    if (we.m(), we.r()) != (res.m, res.r) {
        return Err(Error::Config(format!(
            "enumerator is for RM({}, {})",
            we.m(),
            we.r()
        )));
    }
    Ok(SpectrumSummary {
        config: res.echo(),
        dimension: we.dimension(),
        total: we.total(),
        min_nonzero_weight: we.min_nonzero_weight(),
        weights: we.nonzero().collect(),
        intervals: interval_counts(we),
    })
}

/// Dispatches on `cfg.mode`; `spectrum` is handled by [`run_spectrum`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    match cfg.mode {
        Mode::Rank => run_rank_experiment(cfg),
        Mode::Bec => run_bec_experiment(cfg),
        Mode::Bsc => run_bsc_experiment(cfg),
        Mode::ExpectedSize => run_expected_size_experiment(cfg),
        Mode::Closure => run_closure_experiment(cfg),
        Mode::Spectrum => Err(Error::Config(
            "spectrum is not a trial-based experiment".into(),
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub kind: &'static str,
    pub alpha: f64,
    /// Base-2 exponent.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsSummary {
    pub config: ConfigEcho,
    pub params: BoundParams,
    pub values: Vec<BoundValue>,
    /// Comparisons with exact counts, when the enumerator is within its cap.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<BoundCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Evaluates both weight-distribution bounds at `ell`, and compares them
/// with the exact enumerator of RM(m, r) when it is small enough.
/// A bound outside its domain becomes a note.
pub fn run_bounds(m: usize, r: usize, ell: usize, params: &BoundParams) -> Result<BoundsSummary> {
    if m == 0 || m > 62 || r > m {
        return Err(Error::Config(format!(
            "bounds need 1 <= m <= 62 and r <= m, got m = {m}, r = {r}"
        )));
    }
    let config = ConfigEcho {
        mode: "bounds".into(),
        m,
        r: Some(r),
        ell: Some(ell),
        ..Default::default()
    };
    let alpha_low = (-(ell as f64)).exp2();
    let we = if m <= 24 {
        cached_enumerator(m, r)
    } else {
        None
    };
    let mut summary = BoundsSummary {
        config,
        params: *params,
        values: Vec::new(),
        checks: Vec::new(),
        notes: Vec::new(),
    };
    for (kind, alpha, bound) in [
        ("low", alpha_low, ss_low_bound(params, m, r, ell)),
        ("med", 0.5 - alpha_low, ss_med_bound(params, m, r, ell)),
    ] {
        match bound {
            Ok(bound) => summary.values.push(BoundValue { kind, alpha, bound }),
            Err(Error::Domain(msg)) => {
                summary.notes.push(format!("{kind}: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        }
        if let Some(we) = &we {
            let check = if kind == "low" {
                check_low_bound(we, params, ell)?
            } else {
                check_med_bound(we, params, ell)?
            };
            summary.checks.push(check);
        }
    }
    if we.is_none() {
        summary.notes.push(format!(
            "exact WtDist unavailable: C(m,<=r) = {} above the enumeration cap",
            binomial_sum(m, r)
        ));
    }
    Ok(summary)
}
