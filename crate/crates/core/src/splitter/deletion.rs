use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::probability::{coin, SHARD_TRIALS};

use super::pairs::{ceil_root, within_power};
use super::params::SplitParams;

/// Where a candidate pair came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairOrigin {
    /// Agreeing pairs from the chosen box; they become one- or two-gadgets.
    Small,
    /// Pairs from the boxes at least `C₂` above the chosen one.
    Medium,
    /// Large pairs.
    Large,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    One,
    Two,
    Medium,
    Large,
}

impl GadgetKind {
    pub fn origin(self) -> PairOrigin {
        match self {
            GadgetKind::One | GadgetKind::Two => PairOrigin::Small,
            GadgetKind::Medium => PairOrigin::Medium,
            GadgetKind::Large => PairOrigin::Large,
        }
    }
}

/// Degree-difference windows for an `n`-vertex graph: medium `[1, n^{2/3}]`,
/// large `[n^{1/9}, 2βn]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GadgetWindows {
    pub n: u64,
    pub large_min: u64,
    pub large_max: u64,
}

impl GadgetWindows {
    pub fn new(n: usize, beta: f64) -> Self {
        GadgetWindows {
            n: n as u64,
            large_min: ceil_root(n as u64, 9),
            large_max: (2.0 * beta * n as f64).floor() as u64,
        }
    }

    pub fn medium_admits(&self, delta: u64) -> bool {
        delta >= 1 && within_power(delta, self.n, 2, 3)
    }

    pub fn admits(&self, kind: GadgetKind, delta: u64) -> bool {
        match kind {
            GadgetKind::One => delta == 1,
            GadgetKind::Two => delta == 2,
            GadgetKind::Medium => self.medium_admits(delta),
            GadgetKind::Large => delta >= self.large_min && delta <= self.large_max,
        }
    }

    pub fn classify(&self, origin: PairOrigin, delta: u64) -> Option<GadgetKind> {
        let kind = match (origin, delta) {
            (PairOrigin::Small, 1) => GadgetKind::One,
            (PairOrigin::Small, 2) => GadgetKind::Two,
            (PairOrigin::Small, _) => return None,
            (PairOrigin::Medium, _) => GadgetKind::Medium,
            (PairOrigin::Large, _) => GadgetKind::Large,
        };
        self.admits(kind, delta).then_some(kind)
    }
}

/// The gadget kind of `pair` once only `survivors` remain, judged against
/// the windows of the original graph `g`.
pub fn classify_gadget(
    g: &Graph,
    survivors: &VertexSet,
    pair: (usize, usize),
    origin: PairOrigin,
    params: &SplitParams,
) -> Result<Option<GadgetKind>> {
    survivors.check_for(g)?;
    let (x, y) = pair;
    if x >= g.n() || y >= g.n() || x == y {
        return invalid(format!("pair ({x}, {y}) is not two distinct vertices of the graph"));
    }
    if !survivors.contains(x) || !survivors.contains(y) {
        return Ok(None);
    }
    let mask = survivors.to_mask(g.n());
    let delta = g.degree_within(x, &mask).abs_diff(g.degree_within(y, &mask)) as u64;
    Ok(GadgetWindows::new(g.n(), params.beta()).classify(origin, delta))
}

/// The event a deletion round is conditioned on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditioning {
    None,
    /// An even number of eligible vertices survive.
    EvenSurvivors,
    /// Every listed block loses an even number of vertices.
    EvenPerBlock(Vec<Vec<usize>>),
}

impl Conditioning {
    pub(crate) fn holds(&self, eligible: usize, deleted: &[bool], deleted_count: usize) -> bool {
        match self {
            Conditioning::None => true,
            Conditioning::EvenSurvivors => (eligible - deleted_count).is_multiple_of(2),
            Conditioning::EvenPerBlock(blocks) => {
                blocks.iter().all(|b| b.iter().filter(|&&v| deleted[v]).count() % 2 == 0)
            }
        }
    }
}

/// Deletion units: each eligible vertex on its own, except that the two ends
/// of an atomic pair go together.
pub(crate) struct Units {
    eligible: Vec<bool>,
    partner: Vec<usize>,
    eligible_count: usize,
}

impl Units {
    pub(crate) fn new(eligible: Vec<bool>, atomic_pairs: &[(usize, usize)]) -> Result<Self> {
        let n = eligible.len();
        let mut partner = vec![usize::MAX; n];
        for &(x, y) in atomic_pairs {
            if x >= n || y >= n || x == y {
                return invalid(format!("atomic pair ({x}, {y}) is not two distinct vertices"));
            }
            if partner[x] != usize::MAX || partner[y] != usize::MAX {
                return invalid(format!("atomic pair ({x}, {y}) overlaps another pair"));
            }
            if !eligible[x] || !eligible[y] {
                return invalid(format!("atomic pair ({x}, {y}) is not eligible for deletion"));
            }
            partner[x] = y;
            partner[y] = x;
        }
        let eligible_count = eligible.iter().filter(|&&e| e).count();
        Ok(Units { eligible, partner, eligible_count })
    }

    /// One coin per unit, in increasing order of the unit's smallest vertex.
    pub(crate) fn draw(&self, p: f64, rng: &mut impl Rng, deleted: &mut [bool]) -> usize {
        deleted.iter_mut().for_each(|d| *d = false);
        let mut count = 0;
        for v in 0..self.eligible.len() {
            if !self.eligible[v] {
                continue;
            }
            let w = self.partner[v];
            if w != usize::MAX && w < v {
                continue;
            }
            if coin(rng, p) {
                deleted[v] = true;
                count += 1;
                if w != usize::MAX {
                    deleted[w] = true;
                    count += 1;
                }
            }
        }
        count
    }

    /// Redraws until `condition` holds and at most `max_deleted` vertices go.
    /// Returns the deletion flags, their count and the number of rejected
    /// rounds, or `None` when `max_rounds` rounds all fail.
    pub(crate) fn draw_conditioned(
        &self,
        p: f64,
        condition: &Conditioning,
        max_deleted: usize,
        max_rounds: usize,
        rng: &mut impl Rng,
    ) -> Option<(Vec<bool>, usize, usize)> {
        let mut deleted = vec![false; self.eligible.len()];
        for round in 0..max_rounds {
            let count = self.draw(p, rng, &mut deleted);
            if count <= max_deleted && condition.holds(self.eligible_count, &deleted, count) {
                return Some((deleted, count, round));
            }
        }
        None
    }
}

/// Deletes every unit independently with probability `p` and returns the
/// survivors. Units are single vertices, except that both ends of an atomic
/// pair are deleted or kept together.
pub fn random_delete(g: &Graph, p: f64, atomic_pairs: &[(usize, usize)], seed: u64) -> Result<VertexSet> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("probability {p} outside [0, 1]"));
    }
    let units = Units::new(vec![true; g.n()], atomic_pairs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deleted = vec![false; g.n()];
    units.draw(p, &mut rng, &mut deleted);
    Ok(VertexSet::from_sorted_unchecked((0..g.n()).filter(|&v| !deleted[v]).collect()))
}

/// What [`estimate_gadget_probability`] measures.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetProbe {
    pub pair: (usize, usize),
    pub origin: PairOrigin,
    pub kind: GadgetKind,
    pub conditioning: Conditioning,
    /// Deletion probability; defaults to `min(ε, 2^{−k})` from the params.
    pub p: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GadgetEstimate {
    pub probability: f64,
    pub std_error: f64,
    /// Three standard errors either side, clipped to `[0, 1]`.
    pub band: [f64; 2],
    pub trials: u64,
    pub rejected_rounds: u64,
}

/// Least number of trials [`estimate_gadget_probability`] accepts.
pub const MIN_GADGET_TRIALS: u64 = 1_000;

const MAX_REJECTIONS_PER_TRIAL: usize = 10_000;

/// Fraction of conditioned deletion rounds after which the probed pair
/// survives with its degree difference inside the kind's window.
///
/// Trials run in shards of 10⁴ on separate random streams, so the estimate
/// depends only on the seed.
pub fn estimate_gadget_probability(
    g: &Graph,
    probe: &GadgetProbe,
    params: &SplitParams,
    trials: u64,
    seed: u64,
) -> Result<GadgetEstimate> {
    if trials < MIN_GADGET_TRIALS {
        return invalid(format!("{trials} trials; at least {MIN_GADGET_TRIALS} needed"));
    }
    if probe.kind.origin() != probe.origin {
        return invalid(format!("a {:?} gadget cannot come from a {:?} pair", probe.kind, probe.origin));
    }
    let (x, y) = probe.pair;
    if x >= g.n() || y >= g.n() || x == y {
        return invalid(format!("pair ({x}, {y}) is not two distinct vertices of the graph"));
    }
    let p = probe.p.unwrap_or_else(|| params.deletion_probability());
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("probability {p} outside [0, 1]"));
    }
    if let Conditioning::EvenPerBlock(blocks) = &probe.conditioning {
        if blocks.iter().flatten().any(|&v| v >= g.n()) {
            return invalid("conditioning block outside the graph");
        }
    }
    let windows = GadgetWindows::new(g.n(), params.beta());
    let units = Units::new(vec![true; g.n()], &[])?;
    let shards = trials.div_ceil(SHARD_TRIALS);
    let counts = (0..shards)
        .into_par_iter()
        .map(|shard| -> Result<(u64, u64)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let count = SHARD_TRIALS.min(trials - shard * SHARD_TRIALS);
            let (mut hits, mut rejected) = (0, 0);
            for _ in 0..count {
                let (deleted, _, rounds) = units
                    .draw_conditioned(p, &probe.conditioning, usize::MAX, MAX_REJECTIONS_PER_TRIAL, &mut rng)
                    .ok_or_else(|| Error::SolverFailure {
                        attempts: MAX_REJECTIONS_PER_TRIAL,
                        reason: "conditioning event never occurred".into(),
                    })?;
                rejected += rounds as u64;
                if deleted[x] || deleted[y] {
                    continue;
                }
                let alive = |v: &usize| !deleted[*v];
                let dx = g.neighbours(x).filter(alive).count();
                let dy = g.neighbours(y).filter(alive).count();
                if windows.admits(probe.kind, dx.abs_diff(dy) as u64) {
                    hits += 1;
                }
            }
            Ok((hits, rejected))
        })
        .collect::<Result<Vec<_>>>()?;
    let hits: u64 = counts.iter().map(|c| c.0).sum();
    let rejected_rounds = counts.iter().map(|c| c.1).sum();
    let probability = hits as f64 / trials as f64;
    let std_error = (probability * (1.0 - probability) / trials as f64).sqrt();
    Ok(GadgetEstimate {
        probability,
        std_error,
        band: [(probability - 3.0 * std_error).max(0.0), (probability + 3.0 * std_error).min(1.0)],
        trials,
        rejected_rounds,
    })
}
