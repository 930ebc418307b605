//! Exact answers for small graphs: `f(G)` by exhaustive search, two
//! independent splittability deciders, and a minimum-deletion certifier.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest vertex count the exhaustive searches accept by default.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// Largest DP table [`is_splittable_dp`] allocates, in bits.
pub const DP_LIMIT_BITS: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Dp,
    Randomized,
}

/// Two disjoint vertex sets of equal size inducing equally many edges,
/// plus the vertices used by neither.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    pub k: usize,
    pub a: VertexSet,
    pub b: VertexSet,
    pub edges_each: usize,
    pub deleted: VertexSet,
    pub method: Method,
}

/// A splitting of the graph left after removing `deleted`.
pub type Splitting = SplitResult;

impl SplitResult {
    /// Assembles a result over a graph with `n` vertices; everything outside
    /// `a ∪ b` is recorded as deleted.
    pub fn from_sides(g: &Graph, mut a: Vec<usize>, mut b: Vec<usize>, method: Method) -> Result<Self> {
        a.sort_unstable();
        b.sort_unstable();
        let a = VertexSet::new(g.n(), a)?;
        let b = VertexSet::new(g.n(), b)?;
        let mut used = vec![false; g.n()];
        for &v in a.members().iter().chain(b.members()) {
            used[v] = true;
        }
        let deleted = VertexSet::from_sorted_unchecked((0..g.n()).filter(|&v| !used[v]).collect());
        let edges_each = crate::graph::induced_edge_count(g, &a)?;
        Ok(SplitResult { k: a.len(), a, b, edges_each, deleted, method })
    }
}

/// Why a graph has no splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Unsplittable {
    OddOrder,
    NoPartition,
}

impl std::fmt::Display for Unsplittable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Unsplittable::OddOrder => "odd order",
            Unsplittable::NoPartition => "no balanced partition",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Splittable(Splitting),
    NotSplittable(Unsplittable),
}

impl Verdict {
    pub fn is_splittable(&self) -> bool {
        matches!(self, Verdict::Splittable(_))
    }

    pub fn witness(&self) -> Option<&Splitting> {
        match self {
            Verdict::Splittable(s) => Some(s),
            Verdict::NotSplittable(_) => None,
        }
    }
}

fn check_size(g: &Graph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::SizeLimit(format!(
            "{} vertices is beyond the exhaustive limit of {limit}; use the randomized splitter",
            g.n()
        )));
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbours(v).fold(0u32, |m, u| m | 1 << u)).collect()
}

#[inline]
fn edges_inside(adj: &[u32], set: u32) -> u32 {
    let mut twice = 0;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        twice += (adj[v] & set).count_ones();
    }
    twice / 2
}

/// Successive `k`-subsets of `0..n` as bit masks, in increasing order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0u64 } else { (1u64 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(cur as u32)
    })
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

/// `f(G)` with a witness, by exhaustive search (`n ≤ 14`).
pub fn exact_f(g: &Graph) -> Result<SplitResult> {
    exact_f_with_limit(g, EXHAUSTIVE_LIMIT)
}

/// [`exact_f`] with a caller-chosen size limit (at most 30).
///
/// Tries `k = ⌊n/2⌋` downwards. At each `k` all `k`-subsets are bucketed by
/// induced edge count and each bucket is scanned for a disjoint pair.
pub fn exact_f_with_limit(g: &Graph, limit: usize) -> Result<SplitResult> {
    check_size(g, limit.min(30))?;
    let n = g.n();
    let adj = adjacency_masks(g);
    for k in (1..=n / 2).rev() {
        let max_edges = k * (k - 1) / 2;
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_edges + 1];
        for s in subsets(n, k) {
            buckets[edges_inside(&adj, s) as usize].push(s);
        }
        let full = ((1u64 << n) - 1) as u32;
        for bucket in &buckets {
            let found = if 2 * k == n {
                // Disjoint halves are complements; buckets are sorted.
                bucket.iter().find(|&&s| bucket.binary_search(&(full & !s)).is_ok()).map(|&s| (s, full & !s))
            } else {
                bucket
                    .iter()
                    .enumerate()
                    .find_map(|(i, &s)| bucket[i + 1..].iter().find(|&&t| s & t == 0).map(|&t| (s, t)))
            };
            if let Some((s, t)) = found {
                return SplitResult::from_sides(g, members(s), members(t), Method::Exhaustive);
            }
        }
    }
    SplitResult::from_sides(g, Vec::new(), Vec::new(), Method::Exhaustive)
}

/// Decides splittability by trying every balanced partition.
pub fn is_splittable_bruteforce(g: &Graph) -> Result<Verdict> {
    check_size(g, EXHAUSTIVE_LIMIT)?;
    let n = g.n();
    if n % 2 == 1 {
        return Ok(Verdict::NotSplittable(Unsplittable::OddOrder));
    }
    if n == 0 {
        return Ok(Verdict::Splittable(SplitResult::from_sides(g, vec![], vec![], Method::Exhaustive)?));
    }
    let adj = adjacency_masks(g);
    let full = ((1u64 << n) - 1) as u32;
    // Fixing vertex 0 in A visits each unordered partition once.
    for rest in subsets(n - 1, n / 2 - 1) {
        let a = 1 | rest << 1;
        let b = full & !a;
        if edges_inside(&adj, a) == edges_inside(&adj, b) {
            let split = SplitResult::from_sides(g, members(a), members(b), Method::Exhaustive)?;
            return Ok(Verdict::Splittable(split));
        }
    }
    Ok(Verdict::NotSplittable(Unsplittable::NoPartition))
}

/// Decides splittability through degree sums: `e(A) = e(B)` for a
/// partition exactly when `d(A) = d(V)/2`, so it suffices to find `n/2`
/// vertices whose degrees sum to the edge count.
///
/// The table holds, for each prefix of vertices and each subset size, the
/// reachable degree sums as a bit row; the witness is read back from it.
pub fn is_splittable_dp(g: &Graph) -> Result<Verdict> {
    let n = g.n();
    if n % 2 == 1 {
        return Ok(Verdict::NotSplittable(Unsplittable::OddOrder));
    }
    let half = n / 2;
    let target = g.edge_count();
    let words = (target + 1).div_ceil(64);
    let rows = (n + 1) * (half + 1);
    if (rows as u64).saturating_mul(words as u64 * 64) > DP_LIMIT_BITS {
        return Err(Error::SizeLimit(format!("degree-sum table for {n} vertices and {target} edges")));
    }
    let degrees = g.degrees();
    let mut table = vec![0u64; rows * words];
    let idx = |i: usize, c: usize| (i * (half + 1) + c) * words;
    table[idx(0, 0)] = 1;
    for (i, &d) in degrees.iter().enumerate() {
        for c in 0..=half.min(i + 1) {
            let dst = idx(i + 1, c);
            let (head, tail) = table.split_at_mut(dst);
            let out = &mut tail[..words];
            if c <= i {
                let src = idx(i, c);
                out.copy_from_slice(&head[src..src + words]);
            }
            if c >= 1 {
                let src = idx(i, c - 1);
                shl_or_truncated(out, &head[src..src + words], d);
            }
        }
    }
    let has = |row: usize, s: usize| table[row + s / 64] >> (s % 64) & 1 == 1;
    if !has(idx(n, half), target) {
        return Ok(Verdict::NotSplittable(Unsplittable::NoPartition));
    }
    let (mut c, mut s) = (half, target);
    let mut a = Vec::with_capacity(half);
    for i in (0..n).rev() {
        if c <= i && has(idx(i, c), s) {
            continue;
        }
        a.push(i);
        c -= 1;
        s -= degrees[i];
    }
    debug_assert_eq!((c, s), (0, 0));
    let mut in_a = vec![false; n];
    a.iter().for_each(|&v| in_a[v] = true);
    let b = (0..n).filter(|&v| !in_a[v]).collect();
    Ok(Verdict::Splittable(SplitResult::from_sides(g, a, b, Method::Dp)?))
}

/// `dst |= src << shift`, discarding bits shifted past the end.
fn shl_or_truncated(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for i in (ws..dst.len()).rev() {
        let mut w = src[i - ws] << bs;
        if bs != 0 && i > ws {
            w |= src[i - ws - 1] >> (64 - bs);
        }
        dst[i] |= w;
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MinDeletionOptions {
    /// Up to this many vertices every deletion set is tried.
    pub exhaustive_limit: usize,
    /// Deletion sets sampled per deletion count above the limit.
    pub samples_per_size: usize,
    pub seed: u64,
}

impl Default for MinDeletionOptions {
    fn default() -> Self {
        MinDeletionOptions { exhaustive_limit: EXHAUSTIVE_LIMIT, samples_per_size: 64, seed: 0 }
    }
}

/// Smallest number of deletions (up to `budget`) leaving a splittable
/// induced subgraph, with the splitting.
pub fn min_deletion_split(g: &Graph, budget: usize) -> Result<Option<SplitResult>> {
    min_deletion_split_with(g, budget, MinDeletionOptions::default())
}

/// [`min_deletion_split`] with explicit options. Above the exhaustive limit
/// deletion sets are sampled, so absence is not a proof and the result is
/// tagged `randomized`.
pub fn min_deletion_split_with(g: &Graph, budget: usize, opts: MinDeletionOptions) -> Result<Option<SplitResult>> {
    let n = g.n();
    let budget = budget.min(n);
    let exhaustive = n <= opts.exhaustive_limit;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    // The survivors must be even in number.
    for t in (n % 2..=budget).step_by(2) {
        let try_deleting = |deleted: &[usize]| -> Result<Option<SplitResult>> {
            let mut keep = vec![true; n];
            deleted.iter().for_each(|&v| keep[v] = false);
            let kept = VertexSet::from_sorted_unchecked((0..n).filter(|&v| keep[v]).collect());
            let (sub, back) = g.induced_subgraph(&kept)?;
            match is_splittable_dp(&sub)? {
                Verdict::Splittable(s) => {
                    let a = s.a.members().iter().map(|&v| back[v]).collect();
                    let b = s.b.members().iter().map(|&v| back[v]).collect();
                    let method = if exhaustive { Method::Exhaustive } else { Method::Randomized };
                    Ok(Some(SplitResult::from_sides(g, a, b, method)?))
                }
                Verdict::NotSplittable(_) => Ok(None),
            }
        };
        if exhaustive {
            for set in subsets(n, t) {
                if let Some(found) = try_deleting(&members(set))? {
                    return Ok(Some(found));
                }
            }
        } else {
            for _ in 0..opts.samples_per_size.max(1) {
                let mut set = sample(&mut rng, n, t).into_vec();
                set.sort_unstable();
                if let Some(found) = try_deleting(&set)? {
                    return Ok(Some(found));
                }
                if t == 0 {
                    break;
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_split;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn triangle_plus_isolated() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(subsets(5, 2).count(), 10);
        assert_eq!(subsets(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets(3, 3).collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn exact_f_examples() {
        let r = exact_f(&complete(4)).unwrap();
        assert_eq!((r.k, r.edges_each), (2, 1));
        check_split(&complete(4), &r).unwrap();

        let r = exact_f(&triangle_plus_isolated()).unwrap();
        assert_eq!(r.k, 1);
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(exact_f(&star).unwrap().k, 1);
        assert_eq!(exact_f(&Graph::empty(1)).unwrap().k, 0);
        assert!(exact_f(&Graph::empty(15)).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let v = is_splittable_bruteforce(&c4).unwrap();
        check_split(&c4, v.witness().unwrap()).unwrap();
        let opposite = SplitResult::from_sides(&c4, vec![0, 2], vec![1, 3], Method::Exhaustive).unwrap();
        assert_eq!(opposite.edges_each, 0);
        check_split(&c4, &opposite).unwrap();
        assert_eq!(
            is_splittable_bruteforce(&triangle_plus_isolated()).unwrap(),
            Verdict::NotSplittable(Unsplittable::NoPartition)
        );
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(is_splittable_bruteforce(&c5).unwrap(), Verdict::NotSplittable(Unsplittable::OddOrder));
    }

    #[test]
    fn dp_examples() {
        let v = is_splittable_dp(&complete(4)).unwrap();
        check_split(&complete(4), v.witness().unwrap()).unwrap();
        assert_eq!(
            is_splittable_dp(&triangle_plus_isolated()).unwrap(),
            Verdict::NotSplittable(Unsplittable::NoPartition)
        );
        assert_eq!(is_splittable_dp(&Graph::empty(3)).unwrap(), Verdict::NotSplittable(Unsplittable::OddOrder));
    }

    #[test]
    fn min_deletion_examples() {
        let g = triangle_plus_isolated();
        let r = min_deletion_split(&g, 2).unwrap().unwrap();
        assert_eq!(r.deleted.len(), 2);
        assert_eq!(r.k, 1);
        check_split(&g, &r).unwrap();
        assert!(min_deletion_split(&g, 0).unwrap().is_none());

        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(min_deletion_split(&c4, 0).unwrap().unwrap().deleted.len(), 0);
    }

    #[test]
    fn min_deletion_handles_odd_order() {
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let r = min_deletion_split(&c5, 3).unwrap().unwrap();
        assert_eq!(r.deleted.len(), 1);
        check_split(&c5, &r).unwrap();
    }
}
