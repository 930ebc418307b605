//! Simple undirected graphs over dense vertex ids and the counting vocabulary
//! used throughout the crate: degrees, induced edge counts, degree
//! differences, difference neighbourhoods and clone pairs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub(crate) fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

/// Fixed-size bit mask over vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mask {
    words: Vec<u64>,
}

impl Mask {
    pub(crate) fn empty(n: usize) -> Self {
        Mask { words: vec![0; word_count(n)] }
    }

    pub(crate) fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = Mask::empty(n);
        for v in members {
            mask.insert(v);
        }
        mask
    }

    #[inline]
    pub(crate) fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub(crate) fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored twice: as bit rows for constant-time membership and
/// word-parallel set algebra, and as sorted neighbour lists for iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    neighbours: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated pairs and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::SizeLimit(format!("{n} vertices exceeds u32 ids")));
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return invalid(format!("loop at vertex {u}"));
            }
            if g.has_edge(u, v) {
                return invalid(format!("duplicate edge ({u}, {v})"));
            }
            g.link(u, v);
        }
        g.finish();
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = word_count(n);
        Graph { n, words, rows: vec![0; n * words], neighbours: vec![Vec::new(); n], edge_count: 0 }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        self.neighbours[u].push(v as u32);
        self.neighbours[v].push(u as u32);
        self.edge_count += 1;
    }

    fn finish(&mut self) {
        for list in &mut self.neighbours {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.neighbours[v].iter().map(|&u| u as usize)
    }

    #[inline]
    pub(crate) fn deg(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbours[u].iter().map(|&v| v as usize).filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.deg(v)).collect()
    }

    /// Degree of `v` counted only over neighbours inside `mask`.
    #[inline]
    pub(crate) fn degree_within(&self, v: usize, mask: &Mask) -> usize {
        self.row(v).iter().zip(mask.words()).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Number of vertices other than `x`, `y` and inside `within` (when
    /// given) on which `x` and `y` disagree.
    pub(crate) fn disagreement_count(&self, x: usize, y: usize, within: Option<&Mask>) -> usize {
        let rx = self.row(x);
        let ry = self.row(y);
        let mut count: usize = match within {
            Some(mask) => {
                rx.iter().zip(ry).zip(mask.words()).map(|((a, b), m)| ((a ^ b) & m).count_ones() as usize).sum()
            }
            None => rx.iter().zip(ry).map(|(a, b)| (a ^ b).count_ones() as usize).sum(),
        };
        // x and y themselves show up in the xor exactly when they are adjacent.
        if self.has_edge(x, y) {
            let inside = |v: usize| within.is_none_or(|m| m.contains(v));
            count -= usize::from(inside(x)) + usize::from(inside(y));
        }
        count
    }

    /// The subgraph induced by `keep`, relabelled densely in increasing id
    /// order, together with the new-id to old-id table.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        keep.check_for(self)?;
        let members = keep.members();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = Graph::empty(members.len());
        for (i, &v) in members.iter().enumerate() {
            for u in self.neighbours(v) {
                let j = local[u];
                if j != usize::MAX && j > i {
                    sub.link(i, j);
                }
            }
        }
        sub.finish();
        Ok((sub, members.to_vec()))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return invalid(format!("vertex {v} outside 0..{}", self.n));
        }
        Ok(())
    }
}

/// A set of vertex ids of some graph, kept sorted and duplicate free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    /// Builds a set over a graph with `n` vertices. Repeated or out-of-range
    /// ids are rejected.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("vertex {} listed twice", w[0]));
        }
        if let Some(&last) = members.last() {
            if last >= n {
                return invalid(format!("vertex {last} outside 0..{n}"));
            }
        }
        Ok(VertexSet { members })
    }

    pub fn full(n: usize) -> Self {
        VertexSet { members: (0..n).collect() }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub(crate) fn to_mask(&self, n: usize) -> Mask {
        Mask::from_members(n, self.members.iter().copied())
    }

    pub(crate) fn check_for(&self, g: &Graph) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= g.n() => invalid(format!("vertex {v} outside 0..{}", g.n())),
            _ => Ok(()),
        }
    }
}

pub fn degree(g: &Graph, v: usize) -> Result<usize> {
    g.check_vertex(v)?;
    Ok(g.deg(v))
}

/// `e(U)`: edges with both endpoints in `u`.
pub fn induced_edge_count(g: &Graph, u: &VertexSet) -> Result<usize> {
    u.check_for(g)?;
    let mask = u.to_mask(g.n());
    let twice: usize = u.members().iter().map(|&v| g.degree_within(v, &mask)).sum();
    Ok(twice / 2)
}

/// `d(U)`: sum of degrees, taken in the whole graph, over `u`.
pub fn degree_sum(g: &Graph, u: &VertexSet) -> Result<usize> {
    u.check_for(g)?;
    Ok(u.members().iter().map(|&v| g.deg(v)).sum())
}

/// `e(A, B)` for disjoint `a` and `b`.
pub fn cross_edge_count(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    a.check_for(g)?;
    b.check_for(g)?;
    if !a.is_disjoint(b) {
        return invalid("cross edge count needs disjoint sets");
    }
    let mask = b.to_mask(g.n());
    Ok(a.members().iter().map(|&v| g.degree_within(v, &mask)).sum())
}

fn check_pair(g: &Graph, x: usize, y: usize) -> Result<()> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return invalid(format!("pair ({x}, {y}) is not two distinct vertices"));
    }
    Ok(())
}

/// `δ(x, y) = |d(x) − d(y)|`.
pub fn degree_difference(g: &Graph, x: usize, y: usize) -> Result<usize> {
    check_pair(g, x, y)?;
    Ok(g.deg(x).abs_diff(g.deg(y)))
}

/// `Γ(x, y)`: the vertices other than `x` and `y` adjacent to exactly one of
/// them. Whether `x` and `y` are themselves adjacent plays no part.
pub fn difference_neighbourhood(g: &Graph, x: usize, y: usize) -> Result<VertexSet> {
    check_pair(g, x, y)?;
    let mut out = Vec::new();
    for (w, (a, b)) in g.row(x).iter().zip(g.row(y)).enumerate() {
        let mut bits = a ^ b;
        while bits != 0 {
            let v = w * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if v != x && v != y {
                out.push(v);
            }
        }
    }
    Ok(VertexSet::from_sorted_unchecked(out))
}

/// `Δ(x, y) = |Γ(x, y)|`, without materialising the set.
pub fn difference_count(g: &Graph, x: usize, y: usize) -> Result<usize> {
    check_pair(g, x, y)?;
    Ok(g.disagreement_count(x, y, None))
}

/// Whether `x` and `y` agree on every vertex of `u` other than themselves.
pub fn is_clone_pair(g: &Graph, u: &VertexSet, x: usize, y: usize) -> Result<bool> {
    check_pair(g, x, y)?;
    u.check_for(g)?;
    if !u.contains(x) || !u.contains(y) {
        return invalid(format!("clone pair ({x}, {y}) must lie inside the vertex set"));
    }
    let mask = u.to_mask(g.n());
    Ok(g.disagreement_count(x, y, Some(&mask)) == 0)
}

/// Parses the edge-list text format: a header line `n m` followed by `m`
/// lines `u v`. Errors carry 1-based line numbers.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line `n m`".into()))?;
    let (n, m) = parse_two(header).map_err(|e| parse_err(header_line, format!("header: {e}")))?;
    if n > u32::MAX as usize {
        return Err(parse_err(header_line, format!("vertex count {n} too large")));
    }

    let mut g = Graph::empty(n);
    let mut read = 0;
    for (line, text) in lines {
        if read == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_two(text).map_err(|e| parse_err(line, e))?;
        if u >= n || v >= n {
            return Err(parse_err(line, format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
        }
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(parse_err(line, format!("duplicate edge ({u}, {v})")));
        }
        g.link(u, v);
        read += 1;
    }
    if read < m {
        let last = text.lines().count().max(1);
        return Err(parse_err(last, format!("declared {m} edges but found {read}")));
    }
    g.finish();
    Ok(g)
}

fn parse_two(text: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = text.split_whitespace();
    let mut next = || -> std::result::Result<usize, String> {
        let tok = it.next().ok_or_else(|| "expected two integers".to_string())?;
        tok.parse::<usize>().map_err(|_| format!("`{tok}` is not a non-negative integer"))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err("expected exactly two integers".into());
    }
    Ok((a, b))
}

/// Writes `g` in the edge-list format, edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.edge_count() + 1));
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::new(n, v.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn star3() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn path4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&star3(), 0).unwrap(), 3);
        assert_eq!(degree(&Graph::empty(5), 2).unwrap(), 0);
        assert_eq!(degree(&complete(5), 4).unwrap(), 4);
        assert!(degree(&star3(), 4).is_err());
    }

    #[test]
    fn induced_edge_count_examples() {
        assert_eq!(induced_edge_count(&complete(4), &set(4, &[0, 2, 3])).unwrap(), 3);
        assert_eq!(induced_edge_count(&path4(), &set(4, &[0, 2])).unwrap(), 0);
        assert_eq!(induced_edge_count(&cycle(5), &set(5, &[0, 1, 2])).unwrap(), 2);
        assert!(induced_edge_count(&path4(), &set(9, &[8])).is_err());
    }

    #[test]
    fn degree_sum_examples() {
        assert_eq!(degree_sum(&complete(4), &set(4, &[1, 3])).unwrap(), 6);
        assert_eq!(degree_sum(&Graph::empty(3), &set(3, &[0, 1, 2])).unwrap(), 0);
        assert_eq!(degree_sum(&star3(), &set(4, &[0, 2])).unwrap(), 4);
    }

    #[test]
    fn cross_edge_count_examples() {
        assert_eq!(cross_edge_count(&complete(4), &set(4, &[0, 1]), &set(4, &[2, 3])).unwrap(), 4);
        let triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(cross_edge_count(&triangles, &set(6, &[0, 1, 2]), &set(6, &[3, 4, 5])).unwrap(), 0);
        assert_eq!(cross_edge_count(&cycle(4), &set(4, &[0, 2]), &set(4, &[1, 3])).unwrap(), 4);
        assert!(cross_edge_count(&cycle(4), &set(4, &[0, 2]), &set(4, &[2, 3])).is_err());
    }

    #[test]
    fn degree_difference_examples() {
        assert_eq!(degree_difference(&star3(), 0, 1).unwrap(), 2);
        assert_eq!(degree_difference(&cycle(7), 2, 5).unwrap(), 0);
        let k4_minus = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(degree_difference(&k4_minus, 0, 2).unwrap(), 1);
        assert!(degree_difference(&star3(), 1, 1).is_err());
    }

    #[test]
    fn difference_neighbourhood_examples() {
        let gamma = difference_neighbourhood(&star3(), 0, 1).unwrap();
        assert_eq!(gamma.members(), &[2, 3]);
        assert!(difference_neighbourhood(&complete(6), 1, 4).unwrap().is_empty());
        assert_eq!(difference_neighbourhood(&path4(), 0, 3).unwrap().members(), &[1, 2]);
        assert_eq!(difference_count(&path4(), 0, 3).unwrap(), 2);
        assert!(difference_neighbourhood(&path4(), 2, 2).is_err());
    }

    #[test]
    fn clone_pair_examples() {
        assert!(is_clone_pair(&complete(5), &VertexSet::full(5), 1, 3).unwrap());
        assert!(is_clone_pair(&star3(), &VertexSet::full(4), 1, 2).unwrap());
        assert!(!is_clone_pair(&path4(), &VertexSet::full(4), 0, 1).unwrap());
        assert!(is_clone_pair(&path4(), &set(4, &[0, 1]), 0, 3).is_err());
    }

    #[test]
    fn vertex_set_rejects_bad_members() {
        assert!(VertexSet::new(3, [0, 0]).is_err());
        assert!(VertexSet::new(3, [3]).is_err());
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let (sub, map) = cycle(5).induced_subgraph(&set(5, &[1, 2, 4])).unwrap();
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn edge_list_parse_errors_carry_line_numbers() {
        let err = |text: &str| match parse_edge_list(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("3 2\n0 1\n1 1\n"), 3);
        assert_eq!(err("3 2\n0 1\n1 0\n"), 3);
        assert_eq!(err("3 1\n0 5\n"), 2);
        assert_eq!(err("3 x\n"), 1);
        assert_eq!(err("3 1\n0 1\n1 2\n"), 3);
        assert_eq!(err("3 2\n0 1\n"), 2);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = cycle(6);
        let text = write_edge_list(&g);
        assert!(text.starts_with("6 6\n0 1\n0 5\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }
}
