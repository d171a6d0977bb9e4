use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::poly::{subset_transform, MonomialBasis, MAX_VARS};

/// Default cap on `C(m,<=r)` for exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: usize = 26;

/// Exact weight distribution of RM(m, r): `counts[w]` codewords of weight `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    m: usize,
    r: usize,
    counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn from_counts(m: usize, r: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != (1 << m) + 1 {
            return Err(Error::DimensionMismatch {
                expected: (1 << m) + 1,
                got: counts.len(),
            });
        }
        if r > m {
            return Err(Error::Domain(format!("r = {r} exceeds m = {m}")));
        }
        let we = Self { m, r, counts };
        let c = we.dimension();
        if c >= 128 || we.total() != 1u128 << c || we.counts[0] != 1 {
            return Err(Error::Invariant(format!(
                "counts do not describe RM({m}, {r}): total {}, A_0 = {}",
                we.total(),
                we.counts[0]
            )));
        }
        Ok(we)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Block length `2^m`.
    pub fn n(&self) -> usize {
        1 << self.m
    }

    /// Code dimension `C(m,<=r)`.
    pub fn dimension(&self) -> usize {
        crate::poly::binomial_sum(self.m, self.r) as usize
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(weight, count)` pairs with nonzero count, ascending weight.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| (w, c))
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.nonzero().map(|(w, _)| w).find(|&w| w > 0)
    }

    /// Cache text: `"m r"` header, then `"w count"` lines for nonzero counts.
    pub fn to_cache(&self) -> String {
        let mut out = format!("{} {}\n", self.m, self.r);
        for (w, c) in self.nonzero() {
            let _ = writeln!(out, "{w} {c}");
        }
        out
    }

    pub fn from_cache(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let nums = |idx: usize, line: &str| -> Result<Vec<u64>> {
            line.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::parse(idx + 1, format!("bad number {t:?}")))
                })
                .collect()
        };
        let [m, r] = nums(0, header)?[..] else {
            return Err(Error::parse(1, "header must be \"m r\""));
        };
        let (m, r) = (m as usize, r as usize);
        if m > MAX_VARS {
            return Err(Error::parse(1, format!("m = {m} too large")));
        }
        let mut counts = vec![0u64; (1 << m) + 1];
        let mut last = None;
        for (idx, line) in lines {
            let [w, c] = nums(idx, line)?[..] else {
                return Err(Error::parse(idx + 1, "expected \"w count\""));
            };
            let w = w as usize;
            if w > 1 << m {
                return Err(Error::parse(idx + 1, format!("weight {w} exceeds 2^m")));
            }
            if last.is_some_and(|prev| prev >= w) {
                return Err(Error::parse(idx + 1, "weights must be strictly ascending"));
            }
            last = Some(w);
            counts[w] = c;
        }
        Self::from_counts(m, r, counts)
    }
}

pub fn weight_enumerator(m: usize, r: usize) -> Result<WeightEnumerator> {
    weight_enumerator_with(m, r, DEFAULT_ENUM_CAP, 6)
}

/// Exhaustive weight distribution.
///
/// The degree `>= 2` part `Q` of each polynomial is walked in Gray-code
/// order, xoring one monomial truth table per step. For each `Q`, the
/// weights of all `2^(m+1)` affine shifts `Q + a.x + c` are read off the
/// Walsh-Hadamard spectrum of `(-1)^Q`. The walk is split into
/// `2^shard_bits` shards by fixing the top coefficients; shards are merged
/// by count addition, so the result does not depend on `shard_bits`.
pub fn weight_enumerator_with(
    m: usize,
    r: usize,
    cap: usize,
    shard_bits: usize,
) -> Result<WeightEnumerator> {
    let basis = MonomialBasis::new(m, r)?;
    if basis.len() > cap {
        return Err(Error::BudgetExceeded {
            what: "enumerated code dimension C(m,<=r)",
            needed: basis.len() as u128,
            limit: cap as u128,
        });
    }
    let n = 1usize << m;
    if r == 0 {
        let mut counts = vec![0u64; n + 1];
        counts[0] += 1;
        counts[n] += 1;
        return WeightEnumerator::from_counts(m, r, counts);
    }

    let high: Vec<BitVector> = basis.monomials()[m + 1..]
        .iter()
        .map(|mono| {
            let mut t = BitVector::unit(n, mono.0 as usize);
            subset_transform(&mut t, m);
            t
        })
        .collect();
    let h = high.len();
    let g = shard_bits.min(h);
    let walk_bits = h - g;

    let counts = (0..1usize << g)
        .into_par_iter()
        .map(|shard| {
            let mut counts = vec![0u64; n + 1];
            let mut table = BitVector::zeros(n);
            for (j, t) in high[walk_bits..].iter().enumerate() {
                if shard >> j & 1 == 1 {
                    table.xor_assign(t);
                }
            }
            let mut spectrum = vec![0i64; n];
            affine_coset_weights(&table, m, &mut spectrum, &mut counts);
            for step in 1..1usize << walk_bits {
                table.xor_assign(&high[step.trailing_zeros() as usize]);
                affine_coset_weights(&table, m, &mut spectrum, &mut counts);
            }
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    WeightEnumerator::from_counts(m, r, counts)
}

/// Adds the weights of `Q + a.x + c` for every `a` and `c` to `counts`.
fn affine_coset_weights(table: &BitVector, m: usize, spectrum: &mut [i64], counts: &mut [u64]) {
    let n = 1usize << m;
    for (t, s) in spectrum.iter_mut().enumerate() {
        *s = if table.get(t) { -1 } else { 1 };
    }
    let mut half = 1;
    while half < n {
        for block in spectrum.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
    let n = n as i64;
    for &f in spectrum.iter() {
        counts[((n - f) / 2) as usize] += 1;
        counts[((n + f) / 2) as usize] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_map(we: &WeightEnumerator) -> Vec<(usize, u64)> {
        we.nonzero().collect()
    }

    #[test]
    fn small_spectra() {
        assert_eq!(
            as_map(&weight_enumerator(2, 1).unwrap()),
            vec![(0, 1), (2, 6), (4, 1)]
        );
        assert_eq!(
            as_map(&weight_enumerator(3, 1).unwrap()),
            vec![(0, 1), (4, 14), (8, 1)]
        );
        assert_eq!(
            as_map(&weight_enumerator(4, 0).unwrap()),
            vec![(0, 1), (16, 1)]
        );
    }

    #[test]
    fn shard_count_does_not_matter() {
        let a = weight_enumerator_with(5, 2, 26, 0).unwrap();
        for g in [1, 3, 10] {
            assert_eq!(weight_enumerator_with(5, 2, 26, g).unwrap(), a);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = weight_enumerator(7, 2).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn cache_round_trip() {
        let we = weight_enumerator(4, 2).unwrap();
        let text = we.to_cache();
        assert!(text.starts_with("4 2\n0 1\n"));
        assert_eq!(WeightEnumerator::from_cache(&text).unwrap(), we);
        assert!(WeightEnumerator::from_cache("2 1\n2 6\n0 1\n").is_err());
        assert!(WeightEnumerator::from_cache("2 1\n5 1\n").is_err());
    }
}
