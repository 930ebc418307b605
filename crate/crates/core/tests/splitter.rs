mod common;

use common::{clique_plus_isolated, complete, family, regular};
use equisplit::check::check_split;
use equisplit::graph::{difference_count, Graph};
use equisplit::oracle::exact_f;
use equisplit::splitter::{
    estimate_gadget_probability, pigeonhole_pairs, random_delete, select_case, split, split_with_report, Branch,
    Conditioning, GadgetKind, GadgetProbe, PairOrigin, SplitParams,
};
use equisplit::Error;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_valid(g: &Graph, params: &SplitParams) -> equisplit::oracle::SplitResult {
    let report = split_with_report(g, params).unwrap();
    let result = report.result.unwrap_or_else(|| panic!("no result: {:?}", report.trace.failure));
    check_split(g, &result).unwrap();
    assert!(result.deleted.len() <= params.deletion_budget(g.n()));
    result
}

#[test]
fn complete_graph_uses_the_clone_shortcut() {
    let g = complete(1000);
    let params = SplitParams::new(0.1).unwrap();
    let report = split_with_report(&g, &params).unwrap();
    let result = report.result.unwrap();
    assert_eq!((result.k, result.deleted.len()), (500, 0));
    assert_eq!(report.trace.branch, Some(Branch::TrivialClones));
    assert_eq!(select_case(&g, &params).unwrap().planned, Some(Branch::TrivialClones));
}

#[test]
fn dense_random_graph_splits_almost_perfectly() {
    let g = family("gnp:n=2000,p=0.5,seed=7");
    let result = assert_valid(&g, &SplitParams::new(0.1).unwrap().with_seed(1));
    assert!(result.k >= 900);
}

#[test]
fn large_forest() {
    let g = family("forest:n=10000,seed=3");
    let result = assert_valid(&g, &SplitParams::new(0.05).unwrap().with_seed(2));
    // (1/2 − ε)n; about εn vertices are deleted on average, so k ≈ 4750.
    assert!(result.k >= 4500);
    assert!(result.k >= 4700, "k = {}", result.k);
    let surviving = 2 * result.k;
    assert!(result.k + 1 >= surviving.div_ceil(2));
}

#[test]
fn clique_with_isolated_vertices_is_case_one() {
    let g = clique_plus_isolated(20, 1000);
    let params = SplitParams::new(0.04).unwrap().with_beta(0.1).unwrap();
    let trace = select_case(&g, &params).unwrap();
    assert_eq!(trace.large_pairs, 20);
    assert_eq!(trace.case, Some(1));
    assert_valid(&g, &params);
}

#[test]
fn regular_graph_is_case_two_with_one_clump() {
    let g = regular(1000, 10, 1);
    let params = SplitParams::new(0.1).unwrap().with_seed(1);
    let trace = select_case(&g, &params).unwrap();
    assert_eq!(trace.case, Some(2));
    assert_eq!(trace.large_pairs, 0);
    assert_eq!(trace.clumps.len(), 1);
    assert!(matches!(trace.planned, Some(Branch::Case2Odd | Branch::Case2EvenConcentrated | Branch::Case2EvenSpread)));
    let report = split_with_report(&g, &params).unwrap();
    assert_ne!(report.trace.branch, Some(Branch::DirectBalancing), "{:?}", report.trace.fallback_reason);
    assert_valid(&g, &params);
}

#[test]
fn dense_graph_with_wide_window_takes_case_one() {
    let g = family("gnp:n=1000,p=0.5,seed=3");
    let params = SplitParams::new(0.1).unwrap().with_beta(0.1).unwrap();
    let report = split_with_report(&g, &params).unwrap();
    assert_eq!(report.trace.case, Some(1));
    assert!(matches!(report.trace.branch, Some(Branch::Case1LargeBox | Branch::Case1SmallBox)));
    check_split(&g, report.result.as_ref().unwrap()).unwrap();
}

#[test]
fn results_depend_only_on_graph_and_seed() {
    let g = family("forest:n=600,seed=9");
    let params = SplitParams::new(0.1).unwrap().with_seed(5);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| split_with_report(&g, &params))
    };
    let one = run(1).unwrap();
    let four = run(4).unwrap();
    assert_eq!(one, four);
    let other = split_with_report(&g, &params.clone().with_seed(6)).unwrap();
    assert!(other.result.is_some());
}

#[test]
fn never_beats_the_exact_optimum() {
    let params = SplitParams::new(0.25).unwrap();
    for seed in 0..40 {
        let n = 4 + (seed as usize % 9);
        let spec = match seed % 3 {
            0 => format!("gnp:n={n},p=0.5,seed={seed}"),
            1 => format!("forest:n={n},seed={seed}"),
            _ => format!("gnp:n={n},p=0.2,seed={seed}"),
        };
        let g = family(&spec);
        let best = exact_f(&g).unwrap().k;
        if let Ok(result) = split(&g, &params.clone().with_seed(seed)) {
            check_split(&g, &result).unwrap();
            assert!(result.k <= best, "{spec}: {} > {best}", result.k);
        }
    }
}

#[test]
fn tiny_graphs_are_rejected() {
    let params = SplitParams::new(0.1).unwrap();
    assert!(matches!(split(&Graph::empty(3), &params), Err(Error::SizeLimit(_))));
    assert!(matches!(select_case(&Graph::empty(2), &params), Err(Error::SizeLimit(_))));
}

#[test]
fn random_deletion_mean_is_within_three_sigma() {
    let n = 10_000;
    let g = Graph::empty(n);
    let seeds = 1000;
    let total: usize = (0..seeds).map(|s| n - random_delete(&g, 0.3, &[], s).unwrap().len()).sum();
    let mean = total as f64 / seeds as f64;
    // Standard error of the mean of `seeds` Bin(n, 0.3) counts.
    let sigma = (n as f64 * 0.3 * 0.7 / seeds as f64).sqrt();
    assert!((mean - 0.3 * n as f64).abs() <= 3.0 * sigma, "mean {mean}");
}

#[test]
fn pigeonhole_matches_recomputation() {
    let g = family("gnp:n=100,p=0.5,seed=11");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut order: Vec<usize> = (0..100).collect();
    order.shuffle(&mut rng);
    let pairs: Vec<(usize, usize)> = order.chunks(2).take(10).map(|c| (c[0], c[1])).collect();
    let boxes = pigeonhole_pairs(&g, &pairs).unwrap();
    for &(x, y) in &pairs {
        let delta = difference_count(&g, x, y).unwrap();
        let expected = (delta > 0).then(|| delta.ilog2() as usize);
        let found = boxes.boxes.iter().position(|b| b.contains(&(x, y)));
        assert_eq!(found, expected, "pair ({x}, {y}) with Δ = {delta}");
        assert_eq!(boxes.zero.contains(&(x, y)), delta == 0);
    }
    assert!(pigeonhole_pairs(&g, &[(0, 1), (1, 2)]).is_err());
}

#[test]
fn large_gadget_survives_light_deletion() {
    // x = 0 sees 40 vertices that y = 1 does not; background G(n, 0.01).
    let n = 1000;
    let background = family(&format!("gnp:n={n},p=0.01,seed=2"));
    let edges = background.edges().filter(|&(u, v)| u > 1 && v > 1).chain((2..42).map(|v| (0, v)));
    let g = Graph::new(n, edges).unwrap();
    let params = SplitParams::new(0.1).unwrap().with_beta(0.1).unwrap();
    let probe = GadgetProbe {
        pair: (0, 1),
        origin: PairOrigin::Large,
        kind: GadgetKind::Large,
        conditioning: Conditioning::None,
        p: Some(0.01),
    };
    let estimate = estimate_gadget_probability(&g, &probe, &params, 10_000, 7).unwrap();
    assert!(estimate.probability >= 0.9, "{estimate:?}");
    assert_eq!(estimate, estimate_gadget_probability(&g, &probe, &params, 10_000, 7).unwrap());

    let wrong = GadgetProbe { origin: PairOrigin::Small, ..probe };
    assert!(estimate_gadget_probability(&g, &wrong, &params, 10_000, 7).is_err());
}
