#![allow(dead_code)]

use std::collections::BTreeSet;

use equisplit::generators::{generate, FamilySpec};
use equisplit::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn family(spec: &str) -> Graph {
    generate(&spec.parse::<FamilySpec>().unwrap()).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// A `d`-regular graph on even `n`: the union of `d` edge-disjoint random
/// perfect matchings, redrawing any matching that repeats an edge.
pub fn regular(n: usize, d: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    let mut matchings = 0;
    while matchings < d {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let m: Vec<(usize, usize)> = perm.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        if m.iter().any(|e| edges.contains(e)) {
            continue;
        }
        edges.extend(m);
        matchings += 1;
    }
    Graph::new(n, edges).unwrap()
}

/// `K_size` on vertices `0..size` plus isolated vertices up to `n`.
pub fn clique_plus_isolated(size: usize, n: usize) -> Graph {
    Graph::new(n, (0..size).flat_map(|u| (u + 1..size).map(move |v| (u, v)))).unwrap()
}
