mod common;

use proptest::prelude::*;
use trinion_core::error::Error;
use trinion_core::graph::{enumerate_trivalent_graphs, gamma0, TrivalentGraph};
use trinion_core::verlinde::{
    count_report, elimination_order, fusion_count_contraction, fusion_count_with,
    verify_rank_identity, verlinde_rank, verlinde_rank_with_precision, ContractionOptions,
};

#[test]
fn formula_matches_float_oracle() {
    for g in 2..=6 {
        for k in 1..=20 {
            let exact = verlinde_rank(g, k).unwrap();
            let approx = common::verlinde_f64(g, k);
            assert!(
                (exact.value as f64 - approx).abs() <= 1e-9 * approx,
                "g={g} k={k}: {} vs {approx}",
                exact.value
            );
            assert!(exact.radius < 1e-6);
        }
    }
}

#[test]
fn genus_two_closed_form() {
    for k in 1..=300u128 {
        let m = k + 2;
        assert_eq!(
            verlinde_rank(2, k as u32).unwrap().value,
            m * (m * m - 1) / 6
        );
    }
}

#[test]
fn level_one_is_two_to_the_genus() {
    for g in 2..=12 {
        assert_eq!(verlinde_rank(g, 1).unwrap().value, 1 << g);
    }
}

#[test]
fn precision_is_stable_and_checked() {
    for (g, k) in [(3, 17), (5, 9), (6, 12)] {
        let a = verlinde_rank(g, k).unwrap();
        let b = verlinde_rank_with_precision(g, k, 512).unwrap();
        assert_eq!(a.value, b.value);
        assert!(b.radius <= a.radius);
    }
    assert!(matches!(
        verlinde_rank_with_precision(9, 60, 64),
        Err(Error::Precision { .. })
    ));
    assert_eq!(verlinde_rank(2, 0), Err(Error::LevelZero));
}

#[test]
fn contraction_matches_brute_force() {
    for g in 2..=3 {
        for x in enumerate_trivalent_graphs(g).unwrap() {
            for k in 1..=4 {
                assert_eq!(
                    fusion_count_contraction(&x, k).unwrap(),
                    common::brute_count(&x, k)
                );
            }
        }
    }
}

#[test]
fn contraction_without_parity_counts_polytope_points() {
    for g in 2..=3 {
        for x in enumerate_trivalent_graphs(g).unwrap() {
            for k in 1..=4 {
                let opts = ContractionOptions {
                    parity: false,
                    ..Default::default()
                };
                let slow = common::labelings(x.edge_count(), k)
                    .filter(|a| {
                        common::incident_labels(&x, a).iter().all(|t| {
                            let s: u32 = t.iter().sum();
                            s <= 2 * k && t.iter().all(|&y| 2 * y <= s)
                        })
                    })
                    .count() as u128;
                assert_eq!(fusion_count_with(&x, k, opts).unwrap(), slow);
            }
        }
    }
}

#[test]
fn large_genus_chain() {
    // beyond the enumerated range the chain graph still contracts
    for g in 6..=9 {
        let x = gamma0(g).unwrap();
        for k in 1..=6 {
            assert_eq!(
                fusion_count_contraction(&x, k).unwrap(),
                verlinde_rank(g, k).unwrap().value
            );
        }
    }
}

#[test]
fn reports() {
    let r = count_report(&TrivalentGraph::dumbbell(), 3).unwrap();
    assert_eq!(
        (r.count_enumeration, r.count_contraction, r.count_formula),
        (Some(20), 20, 20)
    );
    assert!(r.agreement);
    let v = verify_rank_identity(4, 6).unwrap();
    assert!(v.agreement);
    assert_eq!(v.count_contraction, 42048);
    assert_eq!(v.count_enumeration, None);
    assert!(v.graph.is_none());
    assert_eq!(verify_rank_identity(2, 0), Err(Error::LevelZero));
}

#[test]
fn elimination_order_is_deterministic() {
    for x in enumerate_trivalent_graphs(4).unwrap() {
        let o = elimination_order(&x);
        assert_eq!(o, elimination_order(&x));
        let mut sorted = o.clone();
        sorted.sort();
        assert_eq!(sorted, (0..x.edge_count()).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn count_invariant_under_relabeling(
        g in 2u32..=4,
        i in any::<prop::sample::Index>(),
        k in 1u32..=7,
        vm in Just(()).prop_perturb(|_, mut rng| {
            let mut v: Vec<usize> = (0..6).collect();
            for j in (1..6).rev() { v.swap(j, rng.random_range(0..=j)); }
            v
        }),
        eo in Just(()).prop_perturb(|_, mut rng| {
            let mut v: Vec<usize> = (0..9).collect();
            for j in (1..9).rev() { v.swap(j, rng.random_range(0..=j)); }
            v
        }),
    ) {
        let graphs = enumerate_trivalent_graphs(g).unwrap();
        let x = &graphs[i.index(graphs.len())];
        let vmap: Vec<usize> = vm.into_iter().filter(|&v| v < x.vertex_count()).collect();
        let order: Vec<usize> = eo.into_iter().filter(|&e| e < x.edge_count()).collect();
        let y = x.relabeled(&vmap, &order);
        prop_assert_eq!(
            fusion_count_contraction(&y, k).unwrap(),
            fusion_count_contraction(x, k).unwrap()
        );
    }
}
