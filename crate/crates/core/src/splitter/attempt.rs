//! The randomized half of the splitter: one seeded deletion round and the
//! construction on the survivors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Mask, VertexSet};
use crate::oracle::{Method, SplitResult};

use super::analysis::{Case1Plan, Case2Plan, Pair, Plan};
use super::construct::{construct_splitting, GadgetInventory};
use super::deletion::{Conditioning, GadgetKind, GadgetWindows, PairOrigin, Units};
use super::params::SplitParams;
use super::CaseTrace;

/// Deletion rounds drawn before an attempt gives up on the parity event.
const MAX_ROUNDS: usize = 256;

pub(crate) fn from_clone_pairs(g: &Graph, pairs: &[Pair]) -> Result<SplitResult> {
    let a = pairs.iter().map(|p| p.0).collect();
    let b = pairs.iter().map(|p| p.1).collect();
    SplitResult::from_sides(g, a, b, Method::Randomized)
}

pub(crate) fn run(
    g: &Graph,
    plan: &Plan,
    params: &SplitParams,
    attempt: usize,
    trace: &mut CaseTrace,
) -> Result<Option<SplitResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(attempt as u64);
    match plan {
        Plan::Case1(plan) => case1(g, plan, params, &mut rng, trace),
        Plan::Case2(plan) => case2(g, plan, params, &mut rng, trace),
        Plan::Clones(_) | Plan::Unsupported(_) => unreachable!("handled by the caller"),
    }
}

fn rejection_failure() -> Error {
    Error::SolverFailure { attempts: MAX_ROUNDS, reason: "parity event or deletion budget never met".into() }
}

/// Sorts candidate pairs into the inventory by their surviving difference;
/// pairs that miss their window are returned to the pool.
struct Sorter<'a> {
    g: &'a Graph,
    alive: &'a Mask,
    windows: GadgetWindows,
    used: Vec<bool>,
}

impl Sorter<'_> {
    fn delta(&self, (x, y): Pair) -> u64 {
        self.g.degree_within(x, self.alive).abs_diff(self.g.degree_within(y, self.alive)) as u64
    }

    fn take(&mut self, pairs: &[Pair], origin: PairOrigin, want: GadgetKind) -> Vec<Pair> {
        let mut out = Vec::new();
        for &(x, y) in pairs {
            if self.used[x] || self.used[y] || !self.alive.contains(x) || !self.alive.contains(y) {
                continue;
            }
            if self.windows.classify(origin, self.delta((x, y))) == Some(want) {
                self.used[x] = true;
                self.used[y] = true;
                out.push((x, y));
            }
        }
        out
    }
}

fn case1(
    g: &Graph,
    plan: &Case1Plan,
    params: &SplitParams,
    rng: &mut ChaCha8Rng,
    trace: &mut CaseTrace,
) -> Result<Option<SplitResult>> {
    let n = g.n();
    let units = Units::new(vec![true; n], &[])?;
    let budget = params.deletion_budget(n);
    let (deleted, count, rejected) = units
        .draw_conditioned(plan.p, &Conditioning::EvenSurvivors, budget, MAX_ROUNDS, rng)
        .ok_or_else(rejection_failure)?;
    trace.random_deletions = count;
    trace.parity_rejections = rejected;
    let alive = Mask::from_members(n, (0..n).filter(|&v| !deleted[v]));

    let mut sorter = Sorter { g, alive: &alive, windows: GadgetWindows::new(n, params.beta()), used: vec![false; n] };
    let inv = GadgetInventory {
        large_gadgets: sorter.take(&plan.large, PairOrigin::Large, GadgetKind::Large),
        medium_gadgets: sorter.take(&plan.medium, PairOrigin::Medium, GadgetKind::Medium),
        one_gadgets: sorter.take(&plan.ones, PairOrigin::Small, GadgetKind::One),
        leftover: (0..n).filter(|&v| alive.contains(v) && !sorter.used[v]).collect(),
        ..Default::default()
    };
    build(g, &alive, inv, params, trace)
}

fn case2(
    g: &Graph,
    plan: &Case2Plan,
    params: &SplitParams,
    rng: &mut ChaCha8Rng,
    trace: &mut CaseTrace,
) -> Result<Option<SplitResult>> {
    let n = g.n();
    let budget = params.deletion_budget(n);
    let mut alive = plan.f_alive.clone();
    let mut structural = plan.clumps.removed.len();
    let star = plan.clumps.star_clump.expect("set by the analysis");

    if let Some(v) = plan.concentrated {
        let others: Vec<usize> = plan.clumps.f_clumps[star].iter().copied().filter(|&w| w != v).collect();
        if others.is_empty() {
            trace.failure = Some("the star clump has no second vertex".into());
            return Ok(None);
        }
        let w = others[rng.random_range(0..others.len())];
        alive[v] = false;
        alive[w] = false;
        structural += 2;
    }
    trace.structural_deletions = structural;
    if structural > budget {
        trace.failure = Some("structural deletions exceed the budget".into());
        return Ok(None);
    }

    let units = Units::new(alive.clone(), &plan.clumps.q_pairs)?;
    let blocks: Vec<Vec<usize>> = plan.clumps.f_clumps.iter().filter(|c| !c.is_empty()).cloned().collect();
    let (deleted, count, rejected) = units
        .draw_conditioned(plan.p, &Conditioning::EvenPerBlock(blocks), budget - structural, MAX_ROUNDS, rng)
        .ok_or_else(rejection_failure)?;
    trace.random_deletions = count;
    trace.parity_rejections = rejected;
    for v in 0..n {
        alive[v] &= !deleted[v];
    }

    let mut member = vec![false; n];
    for &(x, y) in plan.ones.iter().chain(&plan.twos).chain(&plan.medium) {
        member[x] = true;
        member[y] = true;
    }
    let odd_pair = if plan.twos.is_empty() {
        None
    } else {
        force_odd_pair(g, plan, &mut alive, &member, budget - structural - count)
    };
    if odd_pair.is_some() {
        trace.structural_deletions += 2;
    }
    let alive_mask = Mask::from_members(n, (0..n).filter(|&v| alive[v]));

    let mut sorter =
        Sorter { g, alive: &alive_mask, windows: GadgetWindows::new(n, params.beta()), used: vec![false; n] };
    if let Some((x, y)) = odd_pair {
        sorter.used[x] = true;
        sorter.used[y] = true;
    }
    let medium_gadgets = sorter.take(&plan.medium, PairOrigin::Medium, GadgetKind::Medium);
    let two_gadgets = sorter.take(&plan.twos, PairOrigin::Small, GadgetKind::Two);
    let one_gadgets = sorter.take(&plan.ones, PairOrigin::Small, GadgetKind::One);
    let mut used = sorter.used;

    // Thick pairs: 𝒬-pairs, then each clump's remaining survivors paired
    // by degree.
    let mut thick_pairs = Vec::new();
    for &(x, y) in &plan.clumps.q_pairs {
        if alive[x] && alive[y] {
            used[x] = true;
            used[y] = true;
            thick_pairs.push((x, y));
        }
    }
    let mut leftover = Vec::new();
    for clump in &plan.clumps.f_clumps {
        let mut rest: Vec<usize> = clump.iter().copied().filter(|&v| alive[v] && !used[v]).collect();
        rest.sort_by_key(|&v| (g.degree_within(v, &alive_mask), v));
        let pairs = rest.chunks_exact(2);
        leftover.extend_from_slice(pairs.remainder());
        thick_pairs.extend(pairs.map(|c| (c[0], c[1])));
    }
    let inv = GadgetInventory {
        one_gadgets,
        two_gadgets,
        medium_gadgets,
        thick_pairs,
        odd_pair,
        leftover,
        ..Default::default()
    };
    build(g, &alive_mask, inv, params, trace)
}

/// Finds a surviving two-gadget `(x′, y′)` and, in its clump, a survivor
/// `v` adjacent to exactly one of them and a survivor `u` adjacent to both
/// or neither. Deleting `u` and `v` keeps the clump's parity and moves the
/// pair's difference to 1 or 3.
fn force_odd_pair(g: &Graph, plan: &Case2Plan, alive: &mut [bool], member: &[bool], room: usize) -> Option<Pair> {
    if room < 2 {
        return None;
    }
    let n = g.n();
    let mask = Mask::from_members(n, (0..n).filter(|&v| alive[v]));
    for &(x, y) in &plan.twos {
        if !alive[x] || !alive[y] {
            continue;
        }
        if g.degree_within(x, &mask).abs_diff(g.degree_within(y, &mask)) != 2 {
            continue;
        }
        let clump = &plan.clumps.f_clumps[plan.clump_of[x]];
        let free = |w: &&usize| alive[**w] && !member[**w] && **w != x && **w != y;
        let v = clump.iter().filter(free).find(|&&w| g.has_edge(w, x) != g.has_edge(w, y));
        let u = clump.iter().filter(free).find(|&&w| g.has_edge(w, x) == g.has_edge(w, y));
        if let (Some(&v), Some(&u)) = (v, u) {
            alive[v] = false;
            alive[u] = false;
            return Some((x, y));
        }
    }
    None
}

fn build(
    g: &Graph,
    alive: &Mask,
    inv: GadgetInventory,
    params: &SplitParams,
    trace: &mut CaseTrace,
) -> Result<Option<SplitResult>> {
    let n = g.n();
    trace.gadgets.one = inv.one_gadgets.len();
    trace.gadgets.two = inv.two_gadgets.len();
    trace.gadgets.medium = inv.medium_gadgets.len();
    trace.gadgets.large = inv.large_gadgets.len();
    trace.gadgets.thick = inv.thick_pairs.len();
    trace.gadgets.odd_pair = inv.odd_pair.is_some();

    let survivors = VertexSet::from_sorted_unchecked((0..n).filter(|&v| alive.contains(v)).collect());
    if survivors.len() % 2 == 1 {
        trace.failure = Some("odd number of survivors".into());
        return Ok(None);
    }
    let (h, back) = g.induced_subgraph(&survivors)?;
    let mut local = vec![usize::MAX; n];
    back.iter().enumerate().for_each(|(i, &v)| local[v] = i);
    let map = |pairs: &[Pair]| -> Vec<Pair> { pairs.iter().map(|&(x, y)| (local[x], local[y])).collect() };
    let local_inv = GadgetInventory {
        one_gadgets: map(&inv.one_gadgets),
        two_gadgets: map(&inv.two_gadgets),
        medium_gadgets: map(&inv.medium_gadgets),
        large_gadgets: map(&inv.large_gadgets),
        thick_pairs: map(&inv.thick_pairs),
        odd_pair: inv.odd_pair.map(|(x, y)| (local[x], local[y])),
        leftover: inv.leftover.iter().map(|&v| local[v]).collect(),
    };
    let construction = construct_splitting(&h, &local_inv, &GadgetWindows::new(n, params.beta()))?;
    trace.stages = construction.stages;
    match construction.sides {
        Some((a, b)) => {
            let a = a.into_iter().map(|v| back[v]).collect();
            let b = b.into_iter().map(|v| back[v]).collect();
            Ok(Some(SplitResult::from_sides(g, a, b, Method::Randomized)?))
        }
        None => {
            trace.failure = Some("a balancing stage missed its budget".into());
            Ok(None)
        }
    }
}
