//! Deterministic balancing tools: signed-sum balancing, value bucketing and
//! the choice of an agreeing pair from a triple.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Mask, VertexSet};

/// One sign per input value and the distance `|target − Σ signᵢ·valueᵢ|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignAssignment {
    pub signs: Vec<i8>,
    pub residual: u64,
}

impl SignAssignment {
    pub fn signed_sum(&self, values: &[u64]) -> i64 {
        self.signs.iter().zip(values).map(|(&s, &v)| s as i64 * v as i64).sum()
    }
}

/// Chooses signs so that `Σ signᵢ·valueᵢ` lands within `hi` of `target`.
///
/// Every value must lie in `[lo, hi]` with `0 ≤ lo ≤ hi`, and
/// `|target| ≤ t·lo` for `t` values. Values are processed in the given
/// order; each sign moves the running sum towards the target.
pub fn sign_balance(values: &[u64], (lo, hi): (u64, u64), target: i64) -> Result<SignAssignment> {
    if lo > hi {
        return invalid(format!("empty interval [{lo}, {hi}]"));
    }
    if let Some(v) = values.iter().find(|&&v| v < lo || v > hi) {
        return invalid(format!("value {v} outside [{lo}, {hi}]"));
    }
    let reach = values.len() as u128 * lo as u128;
    if target.unsigned_abs() as u128 > reach {
        return invalid(format!("target {target} outside [-{reach}, {reach}]"));
    }
    let out = greedy_signs(values, target);
    debug_assert!(out.residual <= hi);
    Ok(out)
}

/// The greedy pass without the interval preconditions. The residual bound
/// only holds when the preconditions of [`sign_balance`] do.
pub fn greedy_signs(values: &[u64], target: i64) -> SignAssignment {
    let mut remaining = target;
    let signs = values
        .iter()
        .map(|&v| {
            if remaining >= 0 {
                remaining -= v as i64;
                1
            } else {
                remaining += v as i64;
                -1
            }
        })
        .collect();
    SignAssignment { signs, residual: remaining.unsigned_abs() }
}

/// Largest subset-sum table [`min_signed_sum`] will allocate, in bits.
pub const EXACT_BALANCE_LIMIT_BITS: u64 = 1 << 28;

/// Signs minimising `|target − Σ signᵢ·valueᵢ|` exactly, by a subset-sum
/// table over the values with witness reconstruction.
pub fn min_signed_sum(values: &[u64], target: i64) -> Result<SignAssignment> {
    let total: u64 = values.iter().sum();
    let width = total + 1;
    let bits = width.saturating_mul(values.len() as u64 + 1);
    if bits > EXACT_BALANCE_LIMIT_BITS {
        return Err(Error::SizeLimit(format!("exact balancing over {} values summing to {total}", values.len())));
    }
    let words = (width as usize).div_ceil(64);
    // reach[i] = subset sums available from the first i values.
    let mut reach = vec![0u64; words * (values.len() + 1)];
    reach[0] = 1;
    for (i, &v) in values.iter().enumerate() {
        let (done, rest) = reach.split_at_mut(words * (i + 1));
        let prev = &done[words * i..];
        let next = &mut rest[..words];
        next.copy_from_slice(prev);
        shl_or(next, prev, v as usize);
    }
    // Positive part P gives signed sum 2P − total; we want it near target.
    let last = &reach[words * values.len()..];
    let has = |row: &[u64], s: u64| row[(s / 64) as usize] >> (s % 64) & 1 == 1;
    let best = (0..=total)
        .filter(|&s| has(last, s))
        .min_by_key(|&s| ((2 * s as i64 - total as i64) - target).unsigned_abs())
        .expect("zero is always reachable");

    let mut signs = vec![-1i8; values.len()];
    let mut s = best;
    for i in (0..values.len()).rev() {
        let prev = &reach[words * i..words * (i + 1)];
        if !has(prev, s) {
            signs[i] = 1;
            s -= values[i];
        }
    }
    debug_assert_eq!(s, 0);
    let residual = ((2 * best as i64 - total as i64) - target).unsigned_abs();
    Ok(SignAssignment { signs, residual })
}

/// `dst |= src << shift` over little-endian word arrays of equal length.
fn shl_or(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for i in (ws..dst.len()).rev() {
        let mut w = src[i - ws] << bs;
        if bs != 0 && i > ws {
            w |= src[i - ws - 1] >> (64 - bs);
        }
        dst[i] |= w;
    }
}

/// Disjoint index groups of equal size whose values lie within a common
/// spread.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueGroups {
    pub groups: Vec<Vec<usize>>,
    pub spread: f64,
}

/// The guaranteed group count `⌊t/N⌋ − ⌈a/b⌉`, floored at zero.
pub fn group_count_bound(t: usize, cap: f64, spread: f64, size: usize) -> usize {
    let guaranteed = (t / size) as f64 - (cap / spread).ceil();
    guaranteed.max(0.0) as usize
}

/// Buckets values in `[0, cap]` into disjoint groups of exactly `size`
/// indices whose values differ by at most `spread`.
///
/// Sweeps the values in sorted order (ties by index), cutting a new segment
/// whenever a value exceeds the segment's first value by more than
/// `spread`; each segment is chopped into consecutive groups and its tail
/// short of `size` is discarded.
pub fn group_by_value(values: &[f64], cap: f64, spread: f64, size: usize) -> Result<ValueGroups> {
    if spread.is_nan() || spread <= 0.0 {
        return invalid(format!("spread {spread} must be positive"));
    }
    if size == 0 {
        return invalid("group size must be positive");
    }
    if let Some(v) = values.iter().find(|&&v| v.is_nan() || v < 0.0 || v > cap) {
        return invalid(format!("value {v} outside [0, {cap}]"));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));

    let mut groups = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let base = values[order[start]];
        let end = start + order[start..].partition_point(|&i| values[i] <= base + spread);
        for chunk in order[start..end].chunks_exact(size) {
            groups.push(chunk.to_vec());
        }
        start = end;
    }
    Ok(ValueGroups { groups, spread })
}

/// Returns the two of `x`, `y`, `z` that disagree on the fewest vertices
/// of `u`, ties broken lexicographically. The count is always at most
/// `2|u|/3`, since each vertex lies in at most two of the three difference
/// neighbourhoods.
pub fn pick_agreeing_pair(g: &Graph, x: usize, y: usize, z: usize, u: &VertexSet) -> Result<(usize, usize)> {
    for v in [x, y, z] {
        if v >= g.n() {
            return invalid(format!("vertex {v} outside 0..{}", g.n()));
        }
    }
    if x == y || y == z || x == z {
        return invalid(format!("triple ({x}, {y}, {z}) is not three distinct vertices"));
    }
    if u.members().last().is_some_and(|&v| v >= g.n()) {
        return invalid("vertex set does not belong to the graph");
    }
    let mask = u.to_mask(g.n());
    Ok(pick_agreeing_pair_masked(g, [x, y, z], &mask).0)
}

pub(crate) fn pick_agreeing_pair_masked(g: &Graph, triple: [usize; 3], mask: &Mask) -> ((usize, usize), usize) {
    let [x, y, z] = triple;
    let mut candidates = [(x.min(y), x.max(y)), (x.min(z), x.max(z)), (y.min(z), y.max(z))];
    candidates.sort_unstable();
    candidates
        .into_iter()
        .map(|(a, b)| ((a, b), g.disagreement_count(a, b, Some(mask))))
        .min_by_key(|&(pair, count)| (count, pair))
        .expect("three candidates")
}
