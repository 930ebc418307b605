//! Seeded graph families.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Largest order [`enumerate_all_graphs`] accepts.
pub const ENUMERATION_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gnp,
    Forest,
    OddCliques,
    Complete,
    Empty,
    Path,
    Cycle,
    Star,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Gnp,
        Family::Forest,
        Family::OddCliques,
        Family::Complete,
        Family::Empty,
        Family::Path,
        Family::Cycle,
        Family::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gnp => "gnp",
            Family::Forest => "forest",
            Family::OddCliques => "odd_cliques",
            Family::Complete => "complete",
            Family::Empty => "empty",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

/// A family with its parameters, e.g. `gnp:n=1000,p=0.5,seed=7` or
/// `odd_cliques:sizes=3;5;7`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    /// Edge probability, for `gnp`.
    pub p: Option<f64>,
    /// Explicit clique sizes, for `odd_cliques`.
    pub sizes: Option<Vec<usize>>,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, p: None, sizes: None, seed: 0 }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_sizes(mut self, sizes: Vec<usize>) -> Self {
        self.n = sizes.iter().sum();
        self.sizes = Some(sizes);
        self
    }

    pub fn validate(&self) -> Result<()> {
        match (self.family, self.p) {
            (Family::Gnp, None) => return invalid("gnp needs p"),
            (Family::Gnp, Some(p)) if !(0.0..=1.0).contains(&p) => {
                return invalid(format!("p = {p} outside [0, 1]"));
            }
            (Family::Gnp, _) => {}
            (_, Some(_)) => return invalid(format!("{} takes no p", self.family.name())),
            _ => {}
        }
        if let Some(sizes) = &self.sizes {
            if self.family != Family::OddCliques {
                return invalid(format!("{} takes no sizes", self.family.name()));
            }
            if let Some(s) = sizes.iter().find(|&&s| s % 2 == 0) {
                return invalid(format!("clique size {s} is not odd"));
            }
            let total: usize = sizes.iter().sum();
            if total != self.n {
                return invalid(format!("clique sizes sum to {total}, not n = {}", self.n));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={}", self.family.name(), self.n)?;
        if let Some(p) = self.p {
            write!(f, ",p={p}")?;
        }
        if let Some(sizes) = &self.sizes {
            let list: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            write!(f, ",sizes={}", list.join(";"))?;
        }
        write!(f, ",seed={}", self.seed)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let family: Family = name.trim().parse()?;
        let mut spec = FamilySpec::new(family, 0);
        let mut n = None;
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{item}`")))?;
            let bad = |what: &str| Error::InvalidArgument(format!("bad {what} `{value}`"));
            match key.trim() {
                "n" => n = Some(value.trim().parse().map_err(|_| bad("n"))?),
                "p" => spec.p = Some(value.trim().parse().map_err(|_| bad("p"))?),
                "seed" => spec.seed = value.trim().parse().map_err(|_| bad("seed"))?,
                "sizes" => {
                    let sizes = value
                        .split(';')
                        .map(|v| v.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("sizes"))?;
                    spec.sizes = Some(sizes);
                }
                other => return invalid(format!("unknown parameter `{other}`")),
            }
        }
        spec.n = match (n, &spec.sizes) {
            (Some(n), _) => n,
            (None, Some(sizes)) => sizes.iter().sum(),
            (None, None) => return invalid(format!("family spec `{s}` has no n")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds the graph a spec describes; equal specs give equal graphs.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges: Vec<(usize, usize)> = match spec.family {
        Family::Gnp => {
            let p = spec.p.expect("validated");
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random::<f64>() < p).collect()
        }
        Family::Forest => random_forest(n, &mut rng),
        Family::OddCliques => {
            let sizes = match &spec.sizes {
                Some(sizes) => sizes.clone(),
                None => random_odd_sizes(n, &mut rng),
            };
            let mut edges = Vec::new();
            let mut start = 0;
            for s in sizes {
                edges.extend((start..start + s).flat_map(|u| (u + 1..start + s).map(move |v| (u, v))));
                start += s;
            }
            edges
        }
        Family::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        Family::Empty => Vec::new(),
        Family::Path => (1..n).map(|v| (v - 1, v)).collect(),
        Family::Cycle => match n {
            0..=2 => (1..n).map(|v| (v - 1, v)).collect(),
            _ => (0..n).map(|v| (v, (v + 1) % n)).collect(),
        },
        Family::Star => (1..n).map(|v| (0, v)).collect(),
    };
    Graph::new(n, edges)
}

/// A uniform labelled tree on `n + 1` vertices from a random Prüfer code,
/// with vertex `n` removed: a uniform rooted forest on `0..n`.
fn random_forest(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let total = n + 1;
    if total < 2 {
        return Vec::new();
    }
    let code: Vec<usize> = (0..total - 2).map(|_| rng.random_range(0..total)).collect();
    let mut degree = vec![1usize; total];
    code.iter().for_each(|&v| degree[v] += 1);
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..total).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    let mut tree = Vec::with_capacity(total - 1);
    for &v in &code {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a Prüfer code always leaves a leaf");
        tree.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("two leaves remain");
    let std::cmp::Reverse(b) = leaves.pop().expect("two leaves remain");
    tree.push((a, b));
    tree.into_iter().filter(|&(u, v)| u != n && v != n).map(|(u, v)| (u.min(v), u.max(v))).collect()
}

/// Random odd sizes summing to `n`, each at most about `2√n + 1`.
fn random_odd_sizes(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let cap = 2 * (n as f64).sqrt() as usize + 1;
    let mut sizes = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let top = cap.min(remaining);
        let odd_choices = top.div_ceil(2);
        let s = 2 * rng.random_range(0..odd_choices) + 1;
        sizes.push(s);
        remaining -= s;
    }
    sizes
}

/// Every labelled graph on `n ≤ 7` vertices. Graph number `i` contains the
/// `j`-th pair (in lexicographic order) when bit `j` of `i` is set.
pub fn enumerate_all_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit(format!("enumerating graphs on {n} > {ENUMERATION_LIMIT} vertices")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let count = 1u64 << pairs.len();
    Ok((0..count).map(move |code| {
        let edges = pairs.iter().enumerate().filter(|&(j, _)| code >> j & 1 == 1).map(|(_, &e)| e);
        Graph::new(n, edges).expect("pairs are distinct and in range")
    }))
}

/// Toggles exactly `flips` distinct vertex pairs, chosen uniformly.
pub fn perturb(g: &Graph, flips: usize, seed: u64) -> Result<Graph> {
    let n = g.n();
    let pair_count = n * n.saturating_sub(1) / 2;
    if flips > pair_count {
        return invalid(format!("{flips} flips but only {pair_count} vertex pairs"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<usize> = sample(&mut rng, pair_count, flips).into_vec();
    chosen.sort_unstable();
    let mut toggled = vec![false; pair_count];
    chosen.iter().for_each(|&i| toggled[i] = true);
    let mut edges = Vec::with_capacity(g.edge_count() + flips);
    let mut index = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) != toggled[index] {
                edges.push((u, v));
            }
            index += 1;
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_specs() {
        let spec: FamilySpec = "gnp:n=1000,p=0.5,seed=7".parse().unwrap();
        assert_eq!(spec, FamilySpec::new(Family::Gnp, 1000).with_p(0.5).with_seed(7));
        assert_eq!(spec.to_string(), "gnp:n=1000,p=0.5,seed=7");
        let cliques: FamilySpec = "odd_cliques:sizes=3;5;7".parse().unwrap();
        assert_eq!(cliques.n, 15);
        assert!("odd_cliques:sizes=3;4".parse::<FamilySpec>().is_err());
        assert!("gnp:n=10,p=1.5".parse::<FamilySpec>().is_err());
        assert!("gnp:n=10".parse::<FamilySpec>().is_err());
        assert!("lattice:n=10".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn fixed_families() {
        let k5 = generate(&FamilySpec::new(Family::Complete, 5)).unwrap();
        assert_eq!(k5.edge_count(), 10);
        let cliques = generate(&FamilySpec::new(Family::OddCliques, 0).with_sizes(vec![3, 5, 7])).unwrap();
        assert_eq!((cliques.n(), cliques.edge_count()), (15, 34));
        assert_eq!(generate(&FamilySpec::new(Family::Cycle, 6)).unwrap().edge_count(), 6);
        assert_eq!(generate(&FamilySpec::new(Family::Path, 6)).unwrap().edge_count(), 5);
        assert_eq!(generate(&FamilySpec::new(Family::Star, 6)).unwrap().edge_count(), 5);
    }

    #[test]
    fn forests_are_acyclic() {
        for seed in 0..50 {
            let g = generate(&FamilySpec::new(Family::Forest, 30).with_seed(seed)).unwrap();
            // Union-find: no edge may join two vertices already connected.
            let mut parent: Vec<usize> = (0..30).collect();
            fn root(p: &mut [usize], v: usize) -> usize {
                if p[v] != v {
                    let r = root(p, p[v]);
                    p[v] = r;
                }
                p[v]
            }
            for (u, v) in g.edges() {
                let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
                assert_ne!(ru, rv);
                parent[ru] = rv;
            }
        }
    }

    #[test]
    fn random_odd_cliques_sum_to_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..200 {
            let sizes = random_odd_sizes(n, &mut rng);
            assert_eq!(sizes.iter().sum::<usize>(), n);
            assert!(sizes.iter().all(|s| s % 2 == 1));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all_graphs(2).unwrap().count(), 2);
        assert_eq!(enumerate_all_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_all_graphs(4).unwrap().count(), 64);
        assert!(enumerate_all_graphs(8).is_err());
    }

    #[test]
    fn perturbation() {
        let k6 = generate(&FamilySpec::new(Family::Complete, 6)).unwrap();
        assert_eq!(perturb(&k6, 0, 1).unwrap(), k6);
        assert_eq!(perturb(&k6, 15, 1).unwrap().edge_count(), 0);
        assert!(perturb(&k6, 16, 1).is_err());
        let once = perturb(&k6, 4, 9).unwrap();
        assert_eq!(once.edge_count(), 11);
        assert_eq!(perturb(&once, 4, 9).unwrap(), k6);
    }
}
