mod common;

use equisplit::balance::{group_by_value, group_count_bound, min_signed_sum, sign_balance};
use equisplit::check::check_split;
use equisplit::graph::{
    cross_edge_count, degree_sum, induced_edge_count, parse_edge_list, write_edge_list, Graph, VertexSet,
};
use equisplit::oracle::{exact_f, is_splittable_bruteforce, is_splittable_dp};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// A graph with a random disjoint pair of equal-size sides.
fn graph_and_sides() -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>)> {
    graph(16).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(0u8..3, n)).prop_map(|(g, labels)| {
            let a: Vec<usize> = (0..labels.len()).filter(|&v| labels[v] == 1).collect();
            let b: Vec<usize> = (0..labels.len()).filter(|&v| labels[v] == 2).collect();
            (g, a, b)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn degree_identity((g, a, b) in graph_and_sides()) {
        // Degrees are taken in the graph induced by A ∪ B.
        let union = VertexSet::new(g.n(), a.iter().chain(&b).copied().collect::<std::collections::BTreeSet<_>>()).unwrap();
        let (h, back) = g.induced_subgraph(&union).unwrap();
        let local = |side: &[usize]| {
            VertexSet::new(h.n(), side.iter().map(|v| back.binary_search(v).unwrap())).unwrap()
        };
        let (a, b) = (local(&a), local(&b));
        let (da, db) = (degree_sum(&h, &a).unwrap() as i64, degree_sum(&h, &b).unwrap() as i64);
        let (ea, eb) = (induced_edge_count(&h, &a).unwrap() as i64, induced_edge_count(&h, &b).unwrap() as i64);
        let cross = cross_edge_count(&h, &a, &b).unwrap() as i64;
        prop_assert_eq!(da, 2 * ea + cross);
        prop_assert_eq!(da - db, 2 * (ea - eb));
    }

    #[test]
    fn dp_agrees_with_bruteforce(g in graph(10)) {
        let dp = is_splittable_dp(&g).unwrap();
        let brute = is_splittable_bruteforce(&g).unwrap();
        prop_assert_eq!(dp.is_splittable(), brute.is_splittable());
        if let Some(w) = dp.witness() {
            prop_assert!(check_split(&g, w).is_ok());
        }
    }

    #[test]
    fn exact_witness_is_valid(g in graph(11)) {
        let best = exact_f(&g).unwrap();
        prop_assert!(check_split(&g, &best).is_ok());
        prop_assert!(2 * best.k <= g.n());
    }

    #[test]
    fn edge_list_round_trip(g in graph(20)) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn exact_balance_is_optimal(values in proptest::collection::vec(0u64..40, 0..12), target in -60i64..60) {
        let out = min_signed_sum(&values, target).unwrap();
        prop_assert_eq!(out.residual, (target - out.signed_sum(&values)).unsigned_abs());
        let best = (0u32..1 << values.len())
            .map(|mask| {
                let s: i64 = values.iter().enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { v as i64 } else { -(v as i64) })
                    .sum();
                (target - s).unsigned_abs()
            })
            .min()
            .unwrap();
        prop_assert_eq!(out.residual, best);
    }

    #[test]
    fn sign_balance_residual(lo in 0u64..20, width in 0u64..20, raw in proptest::collection::vec(0u64..1000, 1..40), frac in -1.0f64..1.0) {
        let hi = lo + width;
        let values: Vec<u64> = raw.iter().map(|r| lo + r % (width + 1)).collect();
        let target = (frac * (values.len() as u64 * lo) as f64) as i64;
        let out = sign_balance(&values, (lo, hi), target).unwrap();
        prop_assert!(out.residual <= hi);
    }

    #[test]
    fn grouping_meets_its_bound(values in proptest::collection::vec(0.0f64..100.0, 0..200), spread in 1.0f64..30.0, size in 1usize..5) {
        let groups = group_by_value(&values, 100.0, spread, size).unwrap();
        prop_assert!(groups.groups.len() >= group_count_bound(values.len(), 100.0, spread, size));
        let mut seen = vec![false; values.len()];
        for group in &groups.groups {
            prop_assert_eq!(group.len(), size);
            let lo = group.iter().map(|&i| values[i]).fold(f64::INFINITY, f64::min);
            let hi = group.iter().map(|&i| values[i]).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(hi - lo <= spread);
            for &i in group {
                prop_assert!(!seen[i]);
                seen[i] = true;
            }
        }
    }
}
