mod common;

use common::{choose, k_subsets, naive_enumerator, naive_vanishing_dim};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rmlab::spectrum::{
    expected_size, expected_size_exact, expected_size_log_space, interval_counts, scaled_avoid_sum,
    union_bound_failure, union_bound_failure_exact, weight_enumerator, weight_enumerator_with,
    wtdist, WeightEnumerator,
};

fn small_codes() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for m in 1..=6usize {
        for r in 0..=m {
            if common::choose_sum(m as u64, r as u64) <= 12 {
                v.push((m, r));
            }
        }
    }
    v
}

#[test]
fn enumerator_matches_naive_oracle() {
    for (m, r) in small_codes() {
        let we = weight_enumerator(m, r).unwrap();
        assert_eq!(
            we.counts(),
            naive_enumerator(m, r).as_slice(),
            "m={m} r={r}"
        );
    }
}

#[test]
fn shard_count_does_not_matter() {
    for (m, r) in [(5, 2), (6, 2), (7, 1)] {
        let base = weight_enumerator_with(m, r, 26, 0).unwrap();
        for g in [1, 3, 8] {
            assert_eq!(weight_enumerator_with(m, r, 26, g).unwrap(), base);
        }
    }
}

#[test]
fn wtdist_is_monotone() {
    let we = weight_enumerator(6, 2).unwrap();
    let mut last = 0;
    for i in 0..=128 {
        let now = wtdist(&we, i as f64 / 128.0);
        assert!(now >= last);
        last = now;
    }
    assert_eq!(last, we.total());
    assert_eq!(wtdist(&we, 0.0), 1);
}

/// `E[|I_r(Z)|] / 2^C` by averaging over every `K`-subset.
fn brute_expected_size(m: usize, r: usize, k: u32) -> BigRational {
    let c = common::choose_sum(m as u64, r as u64) as u32;
    let mut total = BigRational::from_integer(0.into());
    let mut count = 0u64;
    for set in k_subsets(1 << m, k) {
        let pts: Vec<u32> = (0..1u32 << m).filter(|&z| set >> z & 1 == 1).collect();
        let dim = naive_vanishing_dim(m, r, &pts) as u32;
        total += BigRational::new(1.into(), (num_bigint::BigInt::one()) << (c - dim));
        count += 1;
    }
    total / BigRational::from_integer(count.into())
}

#[test]
fn expected_size_matches_subset_average() {
    for (m, r) in [(2, 1), (3, 1), (3, 2)] {
        let we = weight_enumerator(m, r).unwrap();
        for k in 0..=(1u32 << m) {
            assert_eq!(
                expected_size_exact(&we, k as usize).unwrap(),
                brute_expected_size(m, r, k),
                "m={m} r={r} K={k}"
            );
        }
    }
}

#[test]
fn expected_size_times_2k_at_least_one() {
    for (m, r) in [(3, 1), (4, 2), (5, 1), (6, 2)] {
        let we = weight_enumerator(m, r).unwrap();
        for k in 0..=we.dimension().min(we.n()) {
            let scaled = expected_size_exact(&we, k).unwrap()
                * BigRational::from_integer((num_bigint::BigInt::one()) << k);
            assert!(scaled >= BigRational::one(), "m={m} r={r} K={k}");
        }
    }
    // Degree-1 codes at K = 1: exactly one half.
    for m in 2..=6 {
        let we = weight_enumerator(m, 1).unwrap();
        assert_eq!(
            expected_size_exact(&we, 1).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
    }
}

#[test]
fn union_bound_values_and_monotonicity() {
    let we = weight_enumerator(2, 1).unwrap();
    assert_eq!(
        union_bound_failure_exact(&we, 2).unwrap(),
        BigRational::one()
    );
    assert_eq!(union_bound_failure(&we, 4).unwrap(), 0.0);
    // Weight-2 words: 6 * C(2,2)/C(4,2) = 1; hand formula for K = 1.
    let k1 = (6.0 * choose(2, 1) as f64 + choose(0, 1) as f64) / choose(4, 1) as f64;
    assert_eq!(union_bound_failure(&we, 1).unwrap(), k1);
    let we = weight_enumerator(6, 2).unwrap();
    let vals: Vec<f64> = (0..=64)
        .map(|k| union_bound_failure(&we, k).unwrap())
        .collect();
    assert!(vals.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn exact_and_log_space_paths_agree() {
    for (m, r) in [(6, 2), (8, 1), (10, 1)] {
        let we = weight_enumerator(m, r).unwrap();
        for k in [1, 3, we.dimension() / 2, we.dimension()] {
            let a = expected_size(&we, k).unwrap();
            let b = expected_size_log_space(&we, k).unwrap();
            assert!(
                (a - b).abs() <= 1e-9 * a.abs(),
                "m={m} r={r} K={k}: {a} vs {b}"
            );
            let exact = expected_size_exact(&we, k).unwrap().to_f64().unwrap();
            assert!((a - exact).abs() <= 1e-12 * exact);
        }
    }
}

#[test]
fn scaled_avoid_sum_requires_matching_k() {
    let we = weight_enumerator(6, 2).unwrap();
    assert!(scaled_avoid_sum(&we, 18, 0.2).is_ok());
    assert!(scaled_avoid_sum(&we, 17, 0.2).is_err());
}

#[test]
fn cache_round_trip_and_errors() {
    let we = weight_enumerator(5, 2).unwrap();
    let text = we.to_cache();
    assert_eq!(WeightEnumerator::from_cache(&text).unwrap(), we);
    assert!(WeightEnumerator::from_cache("2 1\n0 1\n4 1\n2 6\n").is_err());
    assert!(WeightEnumerator::from_cache("2 1\n0 1\n2 5\n4 1\n").is_err());
}

#[test]
fn interval_totals_and_bias() {
    for (m, r) in [(4, 3), (5, 3), (6, 2)] {
        let we = weight_enumerator(m, r).unwrap();
        let rep = interval_counts(&we);
        let c = we.dimension() as f64;
        let delta = 1.0 / (c * c);
        assert_eq!(rep.delta, delta);
        assert!((1u128 << rep.t) as f64 >= c * c && ((1u128 << rep.t) as f64) < 2.0 * c * c);
        let n = we.n() as f64;
        let biased: u64 = we
            .nonzero()
            .filter(|&(w, _)| (w as f64 / n - 0.5).abs() >= delta / 2.0)
            .map(|(_, k)| k)
            .sum();
        assert_eq!(rep.biased_count, biased);
        // Low intervals tile [2^-r, 1/4].
        let low_total: u64 = rep.low.iter().map(|&(_, k)| k).sum();
        let direct: u64 = we
            .nonzero()
            .filter(|&(w, _)| r > 2 && w as f64 >= n / (1u64 << r) as f64 && w as f64 <= n / 4.0)
            .map(|(_, k)| k)
            .sum();
        assert_eq!(low_total, direct, "m={m} r={r}");
    }
}
