//! Expected vanishing-space size and union-bound calculators.
//!
//! For a codeword of weight `w` in a length-`n` code, the probability that a
//! uniformly random `K`-subset of coordinates avoids all of its ones is
//! `C(n-w, K) / C(n, K)`. Everything here is a weighted sum of these terms.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

/// Block lengths up to this use exact big-integer binomials.
pub const EXACT_MAX_N: usize = 1 << 24;

fn check_k(we: &WeightEnumerator, k: usize) -> Result<()> {
    if k > we.n() {
        return Err(Error::Domain(format!(
            "K = {k} exceeds the block length {}",
            we.n()
        )));
    }
    Ok(())
}

/// `n (n-1) ... (n-k+1)`.
fn falling(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, j| acc * BigUint::from(n - j))
}

/// `sum over weights of counts[w] * C(n-w, K)`, skipping `w = 0` unless asked,
/// over the common denominator `C(n, K)` (as falling factorials).
fn avoid_sum_exact(we: &WeightEnumerator, k: usize, include_zero: bool) -> BigRational {
    let n = we.n();
    let num: BigUint = we
        .nonzero()
        .filter(|&(w, _)| include_zero || w > 0)
        .map(|(w, c)| falling(n - w, k) * BigUint::from(c))
        .sum();
    BigRational::new(num.into(), falling(n, k).into())
}

/// `ln(C(n-w, K) / C(n, K))`, or `None` when the ratio is zero.
fn ln_avoid(n: usize, w: usize, k: usize) -> Option<f64> {
    if w + k > n {
        return None;
    }
    Some((0..k).map(|j| (-(w as f64) / (n - j) as f64).ln_1p()).sum())
}

fn avoid_sum_float(we: &WeightEnumerator, k: usize, include_zero: bool) -> f64 {
    let n = we.n();
    we.nonzero()
        .filter(|&(w, _)| include_zero || w > 0)
        .filter_map(|(w, c)| ln_avoid(n, w, k).map(|l| c as f64 * l.exp()))
        .sum()
}

fn avoid_sum(we: &WeightEnumerator, k: usize, include_zero: bool) -> f64 {
    if we.n() <= EXACT_MAX_N {
        to_f64(&avoid_sum_exact(we, k, include_zero))
    } else {
        avoid_sum_float(we, k, include_zero)
    }
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact `E[|I_r(Z)|] / 2^C(m,<=r)` for `Z` a uniform `K`-subset.
pub fn expected_size_exact(we: &WeightEnumerator, k: usize) -> Result<BigRational> {
    check_k(we, k)?;
    let scale = BigRational::from_integer((BigUint::one() << we.dimension()).into());
    Ok(avoid_sum_exact(we, k, true) / scale)
}

/// `E[|I_r(Z)|] / 2^C`; exact arithmetic up to `n = 2^24`, log-space beyond.
pub fn expected_size(we: &WeightEnumerator, k: usize) -> Result<f64> {
    check_k(we, k)?;
    Ok(avoid_sum(we, k, true) * (-(we.dimension() as f64)).exp2())
}

/// Log-space evaluation regardless of `n`.
pub fn expected_size_log_space(we: &WeightEnumerator, k: usize) -> Result<f64> {
    check_k(we, k)?;
    Ok(avoid_sum_float(we, k, true) * (-(we.dimension() as f64)).exp2())
}

/// Expected number of nonzero codewords vanishing on a random `K`-set, an
/// upper bound on the probability that the set is not of minimal rank.
pub fn union_bound_failure(we: &WeightEnumerator, k: usize) -> Result<f64> {
    check_k(we, k)?;
    Ok(avoid_sum(we, k, false))
}

pub fn union_bound_failure_exact(we: &WeightEnumerator, k: usize) -> Result<BigRational> {
    check_k(we, k)?;
    Ok(avoid_sum_exact(we, k, false))
}

/// `K = round((1 - epsilon) * C(m,<=r))`.
pub fn k_for_epsilon(dimension: usize, epsilon: f64) -> usize {
    ((1.0 - epsilon) * dimension as f64).round() as usize
}

/// `sum_w counts[w] * 2^(-eps*C) * C(n-w, K) / C(n, K)` with `K = round((1-eps) C)`.
pub fn scaled_avoid_sum(we: &WeightEnumerator, k: usize, epsilon: f64) -> Result<f64> {
    check_k(we, k)?;
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside [0, 1]")));
    }
    let c = we.dimension();
    if k != k_for_epsilon(c, epsilon) {
        return Err(Error::Domain(format!(
            "K = {k} does not match round((1 - {epsilon}) * {c}) = {}",
            k_for_epsilon(c, epsilon)
        )));
    }
    Ok(avoid_sum(we, k, true) * (-epsilon * c as f64).exp2())
}
