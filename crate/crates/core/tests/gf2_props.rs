mod common;

use common::{bits, dense, mat_vec, naive_rank};
use proptest::prelude::*;
use rmlab::gf2::{BitMatrix, BitVector, Echelon, Solution};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
            BitMatrix::from_rows(rows.iter().map(|b| BitVector::from_bools(b)).collect(), c)
                .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rank_matches_naive_and_nullity(m in matrix(70, 70)) {
        let rank = m.rank();
        prop_assert_eq!(rank, naive_rank(&dense(&m)));
        let ns = m.nullspace();
        prop_assert_eq!(rank + ns.nrows(), m.ncols());
        for v in ns.rows() {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        prop_assert_eq!(naive_rank(&dense(&ns)), ns.nrows());
    }

    #[test]
    fn rref_is_canonical(m in matrix(20, 20)) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(p1, p2);
        // Same row space: stacking adds no rank.
        let mut both = m.clone();
        for row in r1.rows() {
            both.push_row(row.clone()).unwrap();
        }
        prop_assert_eq!(both.rank(), m.rank());
    }

    #[test]
    fn solve_agrees_with_exhaustive_search(m in matrix(12, 10), seed in any::<u64>()) {
        let cols = m.ncols();
        let rows = dense(&m);
        let b: Vec<u8> = (0..m.nrows()).map(|i| (seed >> (i % 64) & 1) as u8).collect();
        let solutions: Vec<u32> = (0..1u32 << cols)
            .filter(|x| {
                let xv: Vec<u8> = (0..cols).map(|j| (x >> j & 1) as u8).collect();
                mat_vec(&rows, &xv) == b
            })
            .collect();
        let bv = BitVector::from_bools(&b.iter().map(|&x| x == 1).collect::<Vec<_>>());
        match m.solve(&bv).unwrap() {
            Solution::UniqueSolution(x) => {
                prop_assert_eq!(solutions.len(), 1);
                prop_assert_eq!(mat_vec(&rows, &bits(&x)), b);
            }
            Solution::Ambiguous { particular, free } => {
                prop_assert_eq!(solutions.len(), 1usize << free);
                prop_assert!(free > 0);
                prop_assert_eq!(mat_vec(&rows, &bits(&particular)), b);
            }
            Solution::Inconsistent => prop_assert!(solutions.is_empty()),
        }
    }

    #[test]
    fn echelon_counts_rank(m in matrix(40, 40)) {
        let mut e = Echelon::new(m.ncols());
        let mut accepted = 0;
        for (i, row) in m.rows().iter().enumerate() {
            let before = naive_rank(&dense(&m)[..i]);
            let after = naive_rank(&dense(&m)[..=i]);
            let new = e.insert(row).unwrap();
            prop_assert_eq!(new, after > before);
            accepted += new as usize;
        }
        prop_assert_eq!(accepted, m.rank());
        prop_assert_eq!(e.basis(), m.rref().0);
    }

    #[test]
    fn dump_round_trip(m in matrix(10, 130)) {
        prop_assert_eq!(BitMatrix::from_dump(&m.to_dump()).unwrap(), m);
    }

    #[test]
    fn transpose_twice(m in matrix(30, 90)) {
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }
}

#[test]
fn mismatched_lengths_are_errors() {
    let mut e = Echelon::new(3);
    assert!(e.insert(&BitVector::zeros(4)).is_err());
    let m = BitMatrix::identity(3);
    assert!(m.solve(&BitVector::zeros(2)).is_err());
    assert!(m.mul_vec(&BitVector::zeros(4)).is_err());
    assert!(BitMatrix::from_rows(vec![BitVector::zeros(3), BitVector::zeros(2)], 3).is_err());
}

#[test]
fn padding_bits_stay_clear() {
    let v = BitVector::ones(70);
    assert_eq!(v.count_ones(), 70);
    assert_eq!(v.words()[1], (1u64 << 6) - 1);
    let w = v.xor(&BitVector::zeros(70));
    assert_eq!(w.count_ones(), 70);
}
