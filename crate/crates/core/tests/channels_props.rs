mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmlab::channels::{
    erasure_decode, error_decode, sample_distinct_points, sample_points_with_replacement, syndrome,
    DecodeStatus, ReceivedWord,
};
use rmlab::gf2::BitVector;
use rmlab::poly::{MonomialBasis, Polynomial};

/// All codewords of RM(m, d) agreeing with `y` off the erased positions.
fn consistent_codewords(m: usize, d: usize, y: &ReceivedWord) -> Vec<BitVector> {
    let monos = common::monomials(m, d);
    let erased = y.erased_mask();
    let known = y.known_values();
    (0u64..1 << monos.len())
        .map(|code| {
            let coeffs: Vec<u8> = (0..monos.len()).map(|i| (code >> i & 1) as u8).collect();
            common::truth_table(m, &monos, &coeffs)
        })
        .filter(|t| (0..1usize << m).all(|i| erased.get(i) || known.get(i) == (t[i] == 1)))
        .map(|t| BitVector::from_bools(&t.iter().map(|&b| b == 1).collect::<Vec<_>>()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn erasure_decode_matches_brute_force(m in 2usize..=4, d_frac in 0.0f64..1.0, seed in any::<u64>(), k in 0usize..=10) {
        let d = ((m as f64) * d_frac) as usize;
        prop_assume!(common::choose_sum(m as u64, d as u64) <= 11);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = k.min(1 << m);
        let sent = Polynomial::random(MonomialBasis::shared(m, d).unwrap(), &mut rng).encode();
        let pts = sample_distinct_points(m, k, &mut rng).unwrap();
        let y = ReceivedWord::erase_points(m, sent.table(), &pts).unwrap();
        let candidates = consistent_codewords(m, d, &y);
        let out = erasure_decode(&y, d).unwrap();
        match &out.status {
            DecodeStatus::Decoded(c) => {
                prop_assert_eq!(candidates.len(), 1);
                prop_assert_eq!(c, &sent);
            }
            DecodeStatus::AmbiguousErasure => prop_assert!(candidates.len() > 1),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn error_decode_corrects_within_half_distance(seed in any::<u64>(), k in 0usize..=7) {
        // RM(8, 4) has minimum distance 16.
        let (m, r) = (8, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sent = Polynomial::random(MonomialBasis::shared(m, m - 2 * r - 2).unwrap(), &mut rng).encode();
        let mut y = sent.table().clone();
        let pts = sample_distinct_points(m, k, &mut rng).unwrap();
        for &z in &pts {
            y.flip(z as usize);
        }
        let report = error_decode(&y, m, r).unwrap();
        prop_assert!(pts.iter().all(|z| report.located.contains(z)));
        if k <= 3 {
            // Three points are always affinely independent enough to pin down.
            prop_assert_eq!(report.outcome.decoded(), Some(&sent));
        }
    }

    #[test]
    fn codewords_have_zero_syndrome(m in 2usize..=9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = m / 2;
        let c = Polynomial::random(MonomialBasis::shared(m, d).unwrap(), &mut rng).encode();
        let checks = MonomialBasis::new(m, m - d - 1).unwrap();
        prop_assert!(syndrome(c.table(), &checks).is_zero());
        let mut y = c.table().clone();
        y.flip((seed % (1 << m)) as usize);
        prop_assert!(!syndrome(&y, &checks).is_zero());
    }
}

#[test]
fn sampling_is_seeded_and_distinct() {
    let a = sample_distinct_points(10, 300, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    let b = sample_distinct_points(10, 300, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    assert_eq!(a, b);
    let mut sorted = a.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), 300);
    assert!(a.iter().all(|&z| z < 1024));
    let w = sample_points_with_replacement(2, 1000, &mut ChaCha8Rng::seed_from_u64(5));
    assert!(w.iter().all(|&z| z < 4));
    assert!(sample_distinct_points(3, 9, &mut ChaCha8Rng::seed_from_u64(5)).is_err());
}

#[test]
fn error_decode_rejects_bad_parameters() {
    let y = BitVector::zeros(16);
    assert!(error_decode(&y, 4, 0).is_err());
    assert!(error_decode(&y, 3, 1).is_err());
    assert!(error_decode(&BitVector::zeros(15), 4, 1).is_err());
    let report = error_decode(&y, 4, 1).unwrap();
    assert_eq!(report.outcome.decoded().map(|c| c.weight()), Some(0));
}
