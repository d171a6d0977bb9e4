//! Evaluators for the low- and medium-weight codeword count bounds.
//!
//! Both bounds are returned as base-2 exponents. The asymptotic constants
//! are explicit, configurable coefficients; nothing here claims the bounds
//! hold for any particular choice of them.

use serde::{Deserialize, Serialize};

use super::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::poly::binomial_sum;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Coefficient of the `m^4` term.
    pub c4: f64,
    /// Coefficient on `l * gamma^(l-1)` in the simplified low-weight bound.
    pub a_low: f64,
    /// `c(gamma, l) = max(a_med * gamma^2 * l, b_med * gamma)`.
    pub a_med: f64,
    pub b_med: f64,
    /// Medium-weight bound requires `gamma <= med_gamma_max`.
    pub med_gamma_max: f64,
    /// Medium-weight bound requires `l / m <= med_ell_ratio_cap`.
    pub med_ell_ratio_cap: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self {
            c4: 1.0,
            a_low: 1.0,
            a_med: 1.0,
            b_med: 1.0,
            med_gamma_max: 0.45,
            med_ell_ratio_cap: 0.5,
        }
    }
}

impl BoundParams {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c4", self.c4),
            ("a_low", self.a_low),
            ("a_med", self.a_med),
            ("b_med", self.b_med),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

fn gamma_of(m: usize, r: usize) -> Result<f64> {
    if m == 0 || r == 0 {
        return Err(Error::Domain("gamma = r/m needs m, r >= 1".into()));
    }
    let gamma = r as f64 / m as f64;
    if gamma > 0.5 {
        return Err(Error::Domain(format!("gamma = {gamma} exceeds 1/2")));
    }
    Ok(gamma)
}

/// `c_gamma = 1/(1-gamma)` and `d_gamma = (2-gamma)/(1-gamma)^2`.
pub fn low_weight_coefficients(gamma: f64) -> (f64, f64) {
    let q = 1.0 - gamma;
    (1.0 / q, (2.0 - gamma) / (q * q))
}

/// Exponent `c4 m^4 + 17 (c_gamma l + d_gamma) gamma^(l-1) C(m,<=r)` bounding
/// `log2 WtDist(2^-l)`.
pub fn ss_low_bound(params: &BoundParams, m: usize, r: usize, ell: usize) -> Result<f64> {
    params.validate()?;
    if ell < 1 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    let gamma = gamma_of(m, r)?;
    let (c, d) = low_weight_coefficients(gamma);
    Ok(params.c4 * (m as f64).powi(4)
        + 17.0 * (c * ell as f64 + d) * gamma.powi(ell as i32 - 1) * binomial_sum(m, r) as f64)
}

/// Simplified form `c4 m^4 + a_low l gamma^(l-1) C(m,<=r)`.
pub fn ss_low_bound_simplified(
    params: &BoundParams,
    m: usize,
    r: usize,
    ell: usize,
) -> Result<f64> {
    params.validate()?;
    if ell < 1 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    let gamma = gamma_of(m, r)?;
    Ok(params.c4 * (m as f64).powi(4)
        + params.a_low * ell as f64 * gamma.powi(ell as i32 - 1) * binomial_sum(m, r) as f64)
}

/// Exponent `c4 m^4 + (1 - 2^-c(gamma,l)) C(m,<=r)` bounding
/// `log2 WtDist(1/2 - 2^-l)`.
pub fn ss_med_bound(params: &BoundParams, m: usize, r: usize, ell: usize) -> Result<f64> {
    params.validate()?;
    if ell < 1 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    let gamma = gamma_of(m, r)?;
    if gamma > params.med_gamma_max {
        return Err(Error::Domain(format!(
            "gamma = {gamma} above the medium-weight cap {}",
            params.med_gamma_max
        )));
    }
    let ratio = ell as f64 / m as f64;
    if ratio > params.med_ell_ratio_cap {
        return Err(Error::Domain(format!(
            "l/m = {ratio} above the medium-weight cap {}",
            params.med_ell_ratio_cap
        )));
    }
    let c = (params.a_med * gamma * gamma * ell as f64).max(params.b_med * gamma);
    Ok(params.c4 * (m as f64).powi(4) + (1.0 - (-c).exp2()) * binomial_sum(m, r) as f64)
}

/// `WtDist(alpha)`: codewords (the zero word included) of fractional weight `<= alpha`.
pub fn wtdist(we: &WeightEnumerator, alpha: f64) -> u128 {
    let limit = alpha * we.n() as f64;
    we.nonzero()
        .filter(|&(w, _)| w as f64 <= limit)
        .map(|(_, c)| c as u128)
        .sum()
}

/// Comparison of one bound against an exact enumerator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub kind: &'static str,
    pub m: usize,
    pub r: usize,
    pub ell: usize,
    pub alpha: f64,
    pub wtdist: u128,
    pub log2_wtdist: f64,
    pub bound: f64,
    pub holds: bool,
    /// Smallest `c4` (others fixed) for which the bound would hold.
    pub minimal_c4: f64,
}

fn check(
    kind: &'static str,
    we: &WeightEnumerator,
    params: &BoundParams,
    ell: usize,
    alpha: f64,
    bound: f64,
) -> BoundCheck {
    let count = wtdist(we, alpha);
    let log2_wtdist = (count as f64).log2();
    let m4 = (we.m() as f64).powi(4);
    let rest = bound - params.c4 * m4;
    BoundCheck {
        kind,
        m: we.m(),
        r: we.r(),
        ell,
        alpha,
        wtdist: count,
        log2_wtdist,
        bound,
        holds: bound >= log2_wtdist,
        minimal_c4: ((log2_wtdist - rest) / m4).max(0.0),
    }
}

pub fn check_low_bound(
    we: &WeightEnumerator,
    params: &BoundParams,
    ell: usize,
) -> Result<BoundCheck> {
    let bound = ss_low_bound(params, we.m(), we.r(), ell)?;
    Ok(check("low", we, params, ell, (-(ell as f64)).exp2(), bound))
}

pub fn check_med_bound(
    we: &WeightEnumerator,
    params: &BoundParams,
    ell: usize,
) -> Result<BoundCheck> {
    let bound = ss_med_bound(params, we.m(), we.r(), ell)?;
    Ok(check(
        "med",
        we,
        params,
        ell,
        0.5 - (-(ell as f64)).exp2(),
        bound,
    ))
}
