use serde::Serialize;

use super::enumerator::WeightEnumerator;

/// Low- and medium-weight interval counts of an enumerator.
///
/// `Low_i = [2^(-i-1), 2^(-i))` for `i = 2..=r-1` and
/// `Med_i = [1/2 - 2^(-i), 1/2 - 2^(-i-1))` for `i = 2..=t`. The rightmost
/// interval of each family (`Low_2`, `Med_t`) is closed on the right, so
/// adjacent intervals never share an endpoint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub m: usize,
    pub r: usize,
    /// Bias threshold `C(m,<=r)^-2`.
    pub delta: f64,
    /// `ceil(log2(1/delta))`.
    pub t: usize,
    /// `(i, L_i)` for `i = 2..=r-1`.
    pub low: Vec<(usize, u64)>,
    /// `(i, M_i)` for `i = 2..=t`.
    pub med: Vec<(usize, u64)>,
    /// Polynomials with `|wt - 1/2| >= delta/2`.
    pub biased_count: u64,
}

/// Smallest `t` with `2^t >= c^2`.
fn ceil_log2_square(c: u128) -> usize {
    let sq = c * c;
    (0..128).find(|&t| 1u128 << t >= sq).unwrap_or(128)
}

fn in_low(w: u128, m: usize, i: usize, closed: bool) -> bool {
    let n = 1u128 << m;
    // w / n >= 2^(-i-1)  and  w / n < 2^(-i)  (<= when closed)
    let lower = w << (i + 1) >= n;
    let upper = if closed { w << i <= n } else { w << i < n };
    lower && upper
}

fn in_med(w: u128, m: usize, i: usize, closed: bool) -> bool {
    let n = 1u128 << m;
    // w / n >= 1/2 - 2^(-i)  <=>  w 2^i >= n (2^(i-1) - 1)
    let lower = w << i >= n * ((1u128 << (i - 1)) - 1);
    // w / n < 1/2 - 2^(-i-1)  <=>  w 2^(i+1) < n (2^i - 1)
    let bound = n * ((1u128 << i) - 1);
    let upper = if closed {
        w << (i + 1) <= bound
    } else {
        w << (i + 1) < bound
    };
    lower && upper
}

pub fn interval_counts(we: &WeightEnumerator) -> SpectrumReport {
    let m = we.m();
    let r = we.r();
    let c = we.dimension() as u128;
    let t = ceil_log2_square(c);
    let count_where = |pred: &dyn Fn(u128) -> bool| -> u64 {
        we.nonzero()
            .filter(|&(w, _)| pred(w as u128))
            .map(|(_, n)| n)
            .sum()
    };

    let low = (2..r)
        .map(|i| (i, count_where(&|w| in_low(w, m, i, i == 2))))
        .collect();
    let med = (2..=t)
        .map(|i| (i, count_where(&|w| in_med(w, m, i, i == t))))
        .collect();
    let n = 1i128 << m;
    let biased_count = count_where(&|w| {
        // |w/n - 1/2| >= 1/(2 c^2)  <=>  |2w - n| c^2 >= n
        ((2 * w as i128 - n).unsigned_abs()) * c * c >= n as u128
    });

    SpectrumReport {
        m,
        r,
        delta: 1.0 / (c * c) as f64,
        t,
        low,
        med,
        biased_count,
    }
}
