use serde::Serialize;

use crate::balance::{greedy_signs, min_signed_sum};
use crate::error::{invalid, Error, Result};
use crate::graph::{induced_edge_count, Graph, VertexSet};

use super::deletion::GadgetWindows;
use super::pairs::within_power;

/// Disjoint pairs of surviving vertices sorted by the role they play in the
/// balancing, plus the survivors in no pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GadgetInventory {
    pub one_gadgets: Vec<(usize, usize)>,
    pub two_gadgets: Vec<(usize, usize)>,
    pub medium_gadgets: Vec<(usize, usize)>,
    pub large_gadgets: Vec<(usize, usize)>,
    /// Pairs known to have a small degree difference: two vertices of one
    /// clump, or a pair of `𝒬`.
    pub thick_pairs: Vec<(usize, usize)>,
    /// A pair whose degree difference was moved to 1 or 3.
    pub odd_pair: Option<(usize, usize)>,
    pub leftover: Vec<usize>,
}

impl GadgetInventory {
    fn pairs(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.one_gadgets
            .iter()
            .chain(&self.two_gadgets)
            .chain(&self.medium_gadgets)
            .chain(&self.large_gadgets)
            .chain(&self.thick_pairs)
            .chain(self.odd_pair.iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Halving,
    Large,
    Medium,
    Two,
    One,
    Final,
}

/// `|d(A) − d(B)|` after a stage, with the budget it had to meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: Stage,
    pub pairs: usize,
    pub residual: u64,
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    /// The two sides when every stage met its budget.
    pub sides: Option<(Vec<usize>, Vec<usize>)>,
    pub stages: Vec<StageRecord>,
}

/// Largest `x` with `x³ ≤ n²`.
pub(crate) fn medium_budget(n: u64) -> u64 {
    let mut x = (n as f64).powf(2.0 / 3.0).floor() as u64;
    while x > 0 && !within_power(x, n, 2, 3) {
        x -= 1;
    }
    while within_power(x + 1, n, 2, 3) {
        x += 1;
    }
    x
}

/// Most pairs the final exact combination looks at.
const FINAL_PAIRS: usize = 256;

struct Signed {
    high: usize,
    low: usize,
    value: u64,
    sign: i8,
}

/// Splits the vertices of `h` into two halves with equal degree sums.
///
/// Leftover vertices are paired by degree and, with the thick pairs,
/// balanced greedily from the largest difference down. Large, medium, two-
/// and one-gadgets then each get a greedy pass that must bring the running
/// difference within `2βn`, `n^{2/3}`, 2 and 1 respectively. The difference
/// is always even, so after the one-gadgets it is zero. If two-gadgets were
/// the last stage, the signs of the final-stage pairs are re-chosen exactly.
pub fn construct_splitting(h: &Graph, inv: &GadgetInventory, windows: &GadgetWindows) -> Result<Construction> {
    let n = h.n();
    if n % 2 == 1 {
        return invalid(format!("{n} surviving vertices; an even number is needed"));
    }
    let mut seen = vec![false; n];
    for &v in inv.pairs().flat_map(|(x, y)| [x, y]).chain(&inv.leftover) {
        if v >= n || seen[v] {
            return invalid(format!("vertex {v} is outside the graph or listed twice"));
        }
        seen[v] = true;
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return invalid(format!("vertex {v} is in no pair and not leftover"));
    }

    let deg = h.degrees();
    let orient = |&(x, y): &(usize, usize)| {
        let (high, low) = if (deg[x], x) >= (deg[y], y) { (x, y) } else { (y, x) };
        Signed { high, low, value: (deg[high] - deg[low]) as u64, sign: 1 }
    };

    let mut leftover = inv.leftover.clone();
    leftover.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let mut halving: Vec<Signed> =
        leftover.chunks_exact(2).map(|c| orient(&(c[0], c[1]))).chain(inv.thick_pairs.iter().map(orient)).collect();
    halving.sort_by_key(|s| (std::cmp::Reverse(s.value), s.high));

    let mut two: Vec<Signed> = inv.two_gadgets.iter().map(orient).collect();
    two.extend(inv.odd_pair.iter().map(orient));
    let mut stages: Vec<(Stage, Vec<Signed>, Option<u64>)> = vec![
        (Stage::Halving, halving, None),
        (Stage::Large, inv.large_gadgets.iter().map(orient).collect(), Some(windows.large_max)),
        (Stage::Medium, inv.medium_gadgets.iter().map(orient).collect(), Some(medium_budget(windows.n))),
        (Stage::Two, two, Some(2)),
        (Stage::One, inv.one_gadgets.iter().map(orient).collect(), Some(1)),
    ];

    let mut records = Vec::new();
    let mut diff: i64 = 0;
    for (stage, items, budget) in &mut stages {
        if items.is_empty() {
            continue;
        }
        let values: Vec<u64> = items.iter().map(|s| s.value).collect();
        let out = greedy_signs(&values, -diff);
        for (item, &sign) in items.iter_mut().zip(&out.signs) {
            item.sign = sign;
            diff += sign as i64 * item.value as i64;
        }
        records.push(StageRecord { stage: *stage, pairs: items.len(), residual: diff.unsigned_abs(), budget: *budget });
        if budget.is_some_and(|b| diff.unsigned_abs() > b) {
            return Ok(Construction { sides: None, stages: records });
        }
    }

    if diff != 0 {
        // Re-choose the signs of the last small-difference pairs exactly.
        let finals: Vec<&mut Signed> = stages
            .iter_mut()
            .filter(|(stage, _, _)| matches!(stage, Stage::Two | Stage::One))
            .flat_map(|(_, items, _)| items.iter_mut())
            .rev()
            .take(FINAL_PAIRS)
            .collect();
        let rest = diff - finals.iter().map(|s| s.sign as i64 * s.value as i64).sum::<i64>();
        let values: Vec<u64> = finals.iter().map(|s| s.value).collect();
        let exact = min_signed_sum(&values, -rest)?;
        if exact.residual == 0 {
            for (item, sign) in finals.into_iter().zip(exact.signs) {
                item.sign = sign;
            }
            diff = 0;
        }
        records.push(StageRecord {
            stage: Stage::Final,
            pairs: values.len(),
            residual: if diff == 0 { 0 } else { exact.residual },
            budget: Some(0),
        });
        if diff != 0 {
            return Ok(Construction { sides: None, stages: records });
        }
    }

    let (mut a, mut b) = (Vec::with_capacity(n / 2), Vec::with_capacity(n / 2));
    for item in stages.iter().flat_map(|(_, items, _)| items) {
        let (x, y) = if item.sign > 0 { (item.high, item.low) } else { (item.low, item.high) };
        a.push(x);
        b.push(y);
    }
    a.sort_unstable();
    b.sort_unstable();
    let ea = induced_edge_count(h, &VertexSet::new(n, a.iter().copied())?)?;
    let eb = induced_edge_count(h, &VertexSet::new(n, b.iter().copied())?)?;
    if ea != eb {
        return Err(Error::Consistency(format!("balanced degree sums but e(A) = {ea}, e(B) = {eb}")));
    }
    Ok(Construction { sides: Some((a, b)), stages: records })
}
