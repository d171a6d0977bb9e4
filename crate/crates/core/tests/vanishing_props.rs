mod common;

use common::{affine_span, choose_sum, naive_vanishing_dim};
use proptest::prelude::*;
use rmlab::poly::MonomialBasis;
use rmlab::vanishing::{
    closure, closure_by_span, is_minimal_rank, sequentially_independent, vanishing_space, PointSet,
};

fn point_set(max_m: usize, max_k: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (2..=max_m).prop_flat_map(move |m| {
        let n = 1u32 << m;
        (
            Just(m),
            prop::collection::btree_set(0..n, 1..=max_k.min(n as usize)),
        )
            .prop_map(|(m, s)| (m, s.into_iter().collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn vanishing_dim_matches_naive((m, pts) in point_set(7, 20), r in 0usize..=3) {
        let r = r.min(m);
        let z = PointSet::from_points(m, pts.iter().copied()).unwrap();
        let space = vanishing_space(&z, r).unwrap();
        prop_assert_eq!(space.dim(), naive_vanishing_dim(m, r, &pts));
        for p in space.polynomials() {
            prop_assert!(pts.iter().all(|&x| !p.eval(x)));
        }
        let basis = MonomialBasis::new(m, r).unwrap();
        let minimal = is_minimal_rank(&z, r).unwrap();
        prop_assert_eq!(minimal, space.dim() + pts.len() == space.ambient());
        prop_assert_eq!(sequentially_independent(&pts, &basis), minimal);
    }

    #[test]
    fn closure_laws((m, pts) in point_set(7, 12), extra in any::<u32>(), r in 0usize..=3) {
        let r = r.min(m);
        let z = PointSet::from_points(m, pts.iter().copied()).unwrap();
        let cl = closure(&z, r).unwrap();
        prop_assert!(z.is_subset_of(&cl));
        prop_assert!(closure(&cl, r).unwrap().same_members(&cl));
        prop_assert_eq!(closure_by_span(&z, r).unwrap(), cl.sorted());
        // Monotone under adding a point.
        let mut bigger = z.clone();
        bigger.insert(extra & ((1 << m) - 1)).unwrap();
        prop_assert!(cl.is_subset_of(&closure(&bigger, r).unwrap()));
    }

    #[test]
    fn degree_one_closure_is_affine_span((m, pts) in point_set(8, 6)) {
        let z = PointSet::from_points(m, pts.iter().copied()).unwrap();
        prop_assert_eq!(closure(&z, 1).unwrap().sorted(), affine_span(&pts));
    }
}

#[test]
fn subcube_dimension() {
    for m in 1..=6usize {
        for l in 1..=m {
            for r in 0..=m.min(3) {
                let cube = PointSet::from_points(m, 0..1u32 << l).unwrap();
                let dim = vanishing_space(&cube, r).unwrap().dim() as u64;
                let expected = choose_sum(m as u64, r as u64) - choose_sum(l as u64, r as u64);
                assert_eq!(dim, expected, "m={m} l={l} r={r}");
            }
        }
    }
}

#[test]
fn fixture_round_trip_keeps_order() {
    let text = "4\n1000\n0001\n1100\n";
    let z = PointSet::from_fixture(text).unwrap();
    assert_eq!(z.points(), &[0b0001, 0b1000, 0b0011]);
    assert_eq!(z.to_fixture(), text);
    assert!(PointSet::from_fixture("3\n100\n100\n").is_err());
    assert!(PointSet::from_fixture("3\n1000\n").is_err());
    assert!(PointSet::from_fixture("3\n1x0\n").is_err());
}

#[test]
fn empty_and_full_sets() {
    let empty = PointSet::new(3).unwrap();
    assert_eq!(vanishing_space(&empty, 2).unwrap().dim(), 7);
    assert!(closure(&empty, 2).unwrap().is_empty());
    let full = PointSet::full(3).unwrap();
    assert_eq!(vanishing_space(&full, 3).unwrap().dim(), 0);
    assert_eq!(closure(&full, 1).unwrap().len(), 8);
}
