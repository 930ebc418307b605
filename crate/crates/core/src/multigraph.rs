//! Loop-free multigraphs obtained by contracting disjoint vertex pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// What a contracted node stands for in the original graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    Vertex(usize),
    Pair(usize, usize),
}

/// A multigraph without loops. Multiplicities are stored exactly.
///
/// Between a contracted pair and an ordinary vertex there are at most two
/// parallel edges; two contracted pairs can be joined by up to four.
#[derive(Clone, Debug)]
pub struct LoopFreeMultigraph {
    origins: Vec<Origin>,
    node_of: Vec<usize>,
    adjacency: Vec<BTreeMap<usize, u8>>,
}

impl LoopFreeMultigraph {
    pub fn node_count(&self) -> usize {
        self.origins.len()
    }

    pub fn origin(&self, node: usize) -> Origin {
        self.origins[node]
    }

    /// The node containing original vertex `v`.
    pub fn node_of(&self, v: usize) -> usize {
        self.node_of[v]
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u8 {
        self.adjacency[a].get(&b).copied().unwrap_or(0)
    }

    /// Non-zero multiplicities as `(a, b, count)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().filter(move |(&b, _)| b > a).map(move |(&b, &c)| (a, b, c)))
    }

    /// `Δ(x, y)` in the multigraph: nodes `v ≠ x, y` whose multiplicity to
    /// `x` differs from their multiplicity to `y`.
    pub fn disagreement_count(&self, x: usize, y: usize) -> usize {
        let rx = &self.adjacency[x];
        let ry = &self.adjacency[y];
        let mut count = 0;
        for (&v, &c) in rx {
            if v != y && ry.get(&v).copied().unwrap_or(0) != c {
                count += 1;
            }
        }
        for &v in ry.keys() {
            if v != x && !rx.contains_key(&v) {
                count += 1;
            }
        }
        count
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.node_count() {
            return invalid(format!("node {v} outside 0..{}", self.node_count()));
        }
        Ok(())
    }
}

/// Contracts every pair in `pairs` to a single node, dropping the loops that
/// arise. Nodes are numbered in increasing order of their smallest original
/// vertex.
pub fn contract_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Result<LoopFreeMultigraph> {
    let n = g.n();
    let mut partner = vec![usize::MAX; n];
    for &(x, y) in pairs {
        if x >= n || y >= n || x == y {
            return invalid(format!("pair ({x}, {y}) is not two distinct vertices of the graph"));
        }
        if partner[x] != usize::MAX || partner[y] != usize::MAX {
            return invalid(format!("pair ({x}, {y}) overlaps another pair"));
        }
        partner[x] = y;
        partner[y] = x;
    }

    let mut origins = Vec::with_capacity(n - pairs.len());
    let mut node_of = vec![usize::MAX; n];
    for v in 0..n {
        if node_of[v] != usize::MAX {
            continue;
        }
        let node = origins.len();
        node_of[v] = node;
        match partner[v] {
            usize::MAX => origins.push(Origin::Vertex(v)),
            w => {
                node_of[w] = node;
                origins.push(Origin::Pair(v, w));
            }
        }
    }

    let mut adjacency = vec![BTreeMap::new(); origins.len()];
    for (u, v) in g.edges() {
        let (a, b) = (node_of[u], node_of[v]);
        if a == b {
            continue;
        }
        *adjacency[a].entry(b).or_insert(0) += 1;
        *adjacency[b].entry(a).or_insert(0) += 1;
    }
    Ok(LoopFreeMultigraph { origins, node_of, adjacency })
}

/// Whether `x` and `y` disagree on `v`: the number of edges between `v` and
/// `x` differs from the number between `v` and `y`.
pub fn multigraph_disagree(m: &LoopFreeMultigraph, x: usize, y: usize, v: usize) -> Result<bool> {
    m.check_node(x)?;
    m.check_node(y)?;
    m.check_node(v)?;
    if x == y || x == v || y == v {
        return invalid(format!("nodes ({x}, {y}, {v}) are not distinct"));
    }
    Ok(m.multiplicity(v, x) != m.multiplicity(v, y))
}

/// A hand-built multigraph, for tests and callers that have multiplicities
/// but no underlying simple graph.
pub fn multigraph_from_multiplicities(node_count: usize, edges: &[(usize, usize, u8)]) -> Result<LoopFreeMultigraph> {
    let mut adjacency = vec![BTreeMap::new(); node_count];
    for &(a, b, c) in edges {
        if a >= node_count || b >= node_count || a == b || c == 0 {
            return invalid(format!("bad multigraph edge ({a}, {b}, {c})"));
        }
        if adjacency[a].insert(b, c).is_some() {
            return invalid(format!("node pair ({a}, {b}) listed twice"));
        }
        adjacency[b].insert(a, c);
    }
    Ok(LoopFreeMultigraph {
        origins: (0..node_count).map(Origin::Vertex).collect(),
        node_of: (0..node_count).collect(),
        adjacency,
    })
}
