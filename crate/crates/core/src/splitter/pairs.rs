use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Result};
use crate::graph::{Graph, Mask, VertexSet};

/// `x^k ≥ n`, exactly.
pub(crate) fn reaches_root(x: u64, n: u64, k: u32) -> bool {
    (x as u128).checked_pow(k).is_none_or(|v| v >= n as u128)
}

/// `x^den ≤ n^num`, exactly.
pub(crate) fn within_power(x: u64, n: u64, num: u32, den: u32) -> bool {
    match ((x as u128).checked_pow(den), (n as u128).checked_pow(num)) {
        (Some(a), Some(b)) => a <= b,
        (None, Some(_)) => false,
        (_, None) => (x as f64).powi(den as i32) <= (n as f64).powi(num as i32),
    }
}

/// Smallest `x` with `x^k ≥ n`.
pub(crate) fn ceil_root(n: u64, k: u32) -> u64 {
    let mut x = (n as f64).powf(1.0 / k as f64).floor() as u64;
    while x > 0 && reaches_root(x - 1, n, k) {
        x -= 1;
    }
    while !reaches_root(x, n, k) {
        x += 1;
    }
    x
}

/// A maximal set of disjoint pairs with `δ(x, y) ∈ [n^{1/3}, βn]`.
///
/// Vertices are visited in increasing degree order; each one is matched to
/// the lowest-degree unused vertex inside its window, if any. A vertex left
/// unmatched at its turn has no partner among the vertices still unused,
/// which is what makes the result maximal.
pub fn find_large_pairs(g: &Graph, beta: f64) -> Result<Vec<(usize, usize)>> {
    if !(beta > 0.0 && beta < 1.0) {
        return invalid(format!("beta {beta} outside (0, 1)"));
    }
    let n = g.n();
    let lo = ceil_root(n as u64, 3) as usize;
    let hi = (beta * n as f64).floor() as usize;
    let mut pairs = Vec::new();
    if lo > hi {
        return Ok(pairs);
    }
    let mut unused: BTreeSet<(usize, usize)> = (0..n).map(|v| (g.deg(v), v)).collect();
    while let Some((dx, x)) = unused.pop_first() {
        let partner = unused.range((dx + lo, 0)..).next().copied().filter(|&(dy, _)| dy <= dx + hi);
        if let Some(entry) = partner {
            unused.remove(&entry);
            pairs.push((x, entry.1));
        }
    }
    Ok(pairs)
}

/// A maximal set of disjoint clone pairs within `u`: pairs that agree on
/// every other vertex of `u`.
///
/// Clones within `u` are either non-adjacent with equal neighbourhoods in
/// `u`, or adjacent with equal closed neighbourhoods. No vertex has clones of
/// both kinds, so pairing inside each class leaves at most one vertex per
/// class and no clone pair among the leftovers.
pub fn find_clone_matching(g: &Graph, u: &VertexSet) -> Result<Vec<(usize, usize)>> {
    u.check_for(g)?;
    let mask = u.to_mask(g.n());
    Ok(clone_matching_masked(g, u.members(), &mask))
}

pub(crate) fn clone_matching_masked(g: &Graph, members: &[usize], mask: &Mask) -> Vec<(usize, usize)> {
    let key = |v: usize, closed: bool| -> Vec<u64> {
        let mut row: Vec<u64> = g.row(v).iter().zip(mask.words()).map(|(a, b)| a & b).collect();
        if closed {
            row[v / 64] |= 1 << (v % 64);
        }
        row
    };
    let mut pairs = Vec::new();
    let mut matched = vec![false; g.n()];
    for closed in [false, true] {
        let mut classes: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
        for &v in members.iter().filter(|&&v| !matched[v]) {
            classes.entry(key(v, closed)).or_default().push(v);
        }
        let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        for class in classes {
            for pair in class.chunks_exact(2) {
                matched[pair[0]] = true;
                matched[pair[1]] = true;
                pairs.push((pair[0], pair[1]));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Pairs grouped by `⌊log₂ Δ⌋`; pairs with `Δ = 0` are kept apart.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Boxes {
    pub boxes: Vec<Vec<(usize, usize)>>,
    pub zero: Vec<(usize, usize)>,
}

impl Boxes {
    pub fn sizes(&self) -> Vec<usize> {
        self.boxes.iter().map(Vec::len).collect()
    }
}

/// Number of boxes for `n` vertices: `⌈log₂ n⌉`, at least one.
pub fn box_count(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()).max(1) as usize
}

/// Sorts disjoint pairs into boxes by `⌊log₂ Δ(x, y)⌋`, with `Δ` taken in
/// `g`.
pub fn pigeonhole_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Result<Boxes> {
    let mut used = vec![false; g.n()];
    for &(x, y) in pairs {
        if x >= g.n() || y >= g.n() || x == y {
            return invalid(format!("pair ({x}, {y}) is not two distinct vertices of the graph"));
        }
        if used[x] || used[y] {
            return invalid(format!("pair ({x}, {y}) overlaps another pair"));
        }
        used[x] = true;
        used[y] = true;
    }
    Ok(pigeonhole_by(g.n(), pairs, |x, y| g.disagreement_count(x, y, None)))
}

pub(crate) fn pigeonhole_by(n: usize, pairs: &[(usize, usize)], delta: impl Fn(usize, usize) -> usize) -> Boxes {
    let mut boxes = vec![Vec::new(); box_count(n)];
    let mut zero = Vec::new();
    for &(x, y) in pairs {
        match delta(x, y) {
            0 => zero.push((x, y)),
            d => {
                let i = d.ilog2() as usize;
                if i >= boxes.len() {
                    boxes.resize(i + 1, Vec::new());
                }
                boxes[i].push((x, y));
            }
        }
    }
    Boxes { boxes, zero }
}
