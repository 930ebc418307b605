//! The deterministic half of the splitter: which case applies, and the
//! candidate pairs each case works with.

use crate::balance::{group_by_value, pick_agreeing_pair_masked};
use crate::error::{Error, Result};
use crate::graph::{Graph, Mask, VertexSet};

use super::clumps::{clump_decompose, ClumpDecomposition};
use super::pairs::{clone_matching_masked, find_large_pairs, pigeonhole_by, Boxes};
use super::params::SplitParams;
use super::{Branch, CaseTrace};

pub(crate) type Pair = (usize, usize);

pub(crate) struct Case1Plan {
    pub large: Vec<Pair>,
    pub ones: Vec<Pair>,
    pub medium: Vec<Pair>,
    pub p: f64,
}

pub(crate) struct Case2Plan {
    pub clumps: ClumpDecomposition,
    pub f_alive: Vec<bool>,
    /// Index into `clumps.f_clumps` for vertices of `F ∖ 𝒬`.
    pub clump_of: Vec<usize>,
    pub ones: Vec<Pair>,
    pub twos: Vec<Pair>,
    pub medium: Vec<Pair>,
    /// The vertex of `K*` deleted up front in the concentrated even case.
    pub concentrated: Option<usize>,
    pub p: f64,
}

pub(crate) enum Plan {
    /// Enough clone pairs: split each pair across and delete the rest.
    Clones(Vec<Pair>),
    Case1(Case1Plan),
    Case2(Case2Plan),
    /// A structural precondition failed; the reason is recorded.
    Unsupported(String),
}

const NONE: usize = usize::MAX;

pub(crate) fn analyse(g: &Graph, params: &SplitParams) -> Result<(Plan, CaseTrace)> {
    let n = g.n();
    let budget = params.deletion_budget(n);
    let mut trace = CaseTrace { n, constants: Some(params.constants(1)), ..Default::default() };
    let enough_clones = |pairs: &[Pair]| n - 2 * pairs.len() <= budget;

    let large = find_large_pairs(g, params.beta())?;
    trace.large_pairs = large.len();
    let first_case = large.len() as f64 >= params.c1() * n as f64;
    trace.case = Some(if first_case { 1 } else { 2 });

    let everyone: Vec<usize> = (0..n).collect();
    let clones = clone_matching_masked(g, &everyone, &Mask::from_members(n, 0..n));
    trace.clone_pairs = clones.len();
    if enough_clones(&clones) {
        trace.planned = Some(Branch::TrivialClones);
        trace.branch = Some(Branch::TrivialClones);
        return Ok((Plan::Clones(clones), trace));
    }

    let plan = if first_case { case1(g, params, large, &mut trace)? } else { case2(g, params, &large, &mut trace)? };
    if trace.branch.is_none() {
        trace.branch = trace.planned;
    }
    if let Plan::Clones(_) = plan {
        trace.branch = Some(Branch::TrivialClones);
    }
    Ok((plan, trace))
}

/// The box holding the one-gadget candidates, and whether it is heavy
/// (at least `c₃n` pairs). Heavy boxes win, largest first; otherwise the
/// smallest box with at least `c₃n / log₂ n` pairs.
fn choose_box(boxes: &Boxes, params: &SplitParams, n: usize) -> Option<(usize, bool)> {
    let heavy = params.c3() * n as f64;
    let sizes = boxes.sizes();
    let best = (0..sizes.len()).max_by_key(|&i| (sizes[i], std::cmp::Reverse(i)))?;
    if sizes[best] > 0 && sizes[best] as f64 >= heavy {
        return Some((best, true));
    }
    let light = heavy / (n as f64).log2().max(1.0);
    (0..sizes.len()).find(|&i| sizes[i] > 0 && sizes[i] as f64 >= light).map(|i| (i, false))
}

fn record_box(trace: &mut CaseTrace, boxes: &Boxes, k: usize, params: &SplitParams) -> f64 {
    let params = params.clone().with_box_index(k as u32);
    trace.boxes = boxes.sizes();
    trace.zero_difference_pairs = boxes.zero.len();
    trace.box_index = Some(k as u32);
    let p = params.deletion_probability();
    trace.deletion_probability = Some(p);
    p
}

fn medium_pairs(boxes: &Boxes, k: usize, heavy: bool, params: &SplitParams) -> Vec<Pair> {
    if heavy {
        return Vec::new();
    }
    boxes.boxes.iter().skip(k + params.big_c2() as usize).flatten().copied().collect()
}

fn case1(g: &Graph, params: &SplitParams, large: Vec<Pair>, trace: &mut CaseTrace) -> Result<Plan> {
    let n = g.n();
    let budget = params.deletion_budget(n);
    let mut in_l = vec![false; n];
    for &(x, y) in &large {
        in_l[x] = true;
        in_l[y] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_l[v]).collect();
    let clones = clone_matching_masked(g, &rest, &Mask::from_members(n, rest.iter().copied()));
    trace.clone_pairs = clones.len();
    if n - 2 * clones.len() <= budget {
        trace.planned = Some(Branch::TrivialClones);
        return Ok(Plan::Clones(clones));
    }
    let mut matched = vec![false; n];
    clones.iter().for_each(|&(x, y)| (matched[x], matched[y]) = (true, true));
    let v0: Vec<usize> = rest.into_iter().filter(|&v| !matched[v]).collect();
    trace.v0 = v0.len();

    let degrees: Vec<f64> = v0.iter().map(|&v| g.deg(v) as f64).collect();
    let groups = group_by_value(&degrees, n as f64, params.big_c1(), 3)?;
    let full = Mask::from_members(n, 0..n);
    let candidates: Vec<Pair> = groups
        .groups
        .iter()
        .map(|grp| pick_agreeing_pair_masked(g, [v0[grp[0]], v0[grp[1]], v0[grp[2]]], &full).0)
        .collect();
    trace.candidate_pairs = candidates.len();
    let boxes = pigeonhole_by(n, &candidates, |x, y| g.disagreement_count(x, y, None));
    trace.boxes = boxes.sizes();
    trace.zero_difference_pairs = boxes.zero.len();
    let Some((k, heavy)) = choose_box(&boxes, params, n) else {
        trace.planned = Some(Branch::Case1SmallBox);
        return Ok(Plan::Unsupported("no box holds c3*n/log n agreeing pairs".into()));
    };
    trace.planned = Some(if heavy { Branch::Case1LargeBox } else { Branch::Case1SmallBox });
    let p = record_box(trace, &boxes, k, params);
    Ok(Plan::Case1(Case1Plan {
        large,
        ones: boxes.boxes[k].clone(),
        medium: medium_pairs(&boxes, k, heavy, params),
        p,
    }))
}

fn case2(g: &Graph, params: &SplitParams, large: &[Pair], trace: &mut CaseTrace) -> Result<Plan> {
    let n = g.n();
    let budget = params.deletion_budget(n);
    let lset = VertexSet::new(n, large.iter().flat_map(|&(x, y)| [x, y]))?;
    trace.planned = Some(Branch::Case2Odd);
    let clumps = match clump_decompose(g, &lset, params.beta()) {
        Ok(c) => c,
        Err(Error::Consistency(msg)) => return Ok(Plan::Unsupported(format!("clumps: {msg}"))),
        Err(e) => return Err(e),
    };
    trace.clumps = clumps.f_clumps.iter().map(Vec::len).collect();
    trace.q_pairs = clumps.q_pairs.len();
    trace.structural_deletions = clumps.removed.len();
    if clumps.removed.len() > budget {
        return Ok(Plan::Unsupported(format!(
            "forming F deletes {} vertices, over the budget of {budget}",
            clumps.removed.len()
        )));
    }
    let f_alive = clumps.f_members(n);
    let f_mask = Mask::from_members(n, (0..n).filter(|&v| f_alive[v]));
    let mut clump_of = vec![NONE; n];
    for (i, c) in clumps.f_clumps.iter().enumerate() {
        c.iter().for_each(|&v| clump_of[v] = i);
    }
    let u: Vec<usize> = (0..n).filter(|&v| clump_of[v] != NONE).collect();
    let u_mask = Mask::from_members(n, u.iter().copied());

    let clones = clone_matching_masked(g, &u, &u_mask);
    trace.clone_pairs = clones.len();
    if n - 2 * clones.len() <= budget {
        trace.planned = Some(Branch::TrivialClones);
        return Ok(Plan::Clones(clones));
    }
    let mut matched = vec![false; n];
    clones.iter().for_each(|&(x, y)| (matched[x], matched[y]) = (true, true));
    let v0: Vec<usize> = u.iter().copied().filter(|&v| !matched[v]).collect();
    trace.v0 = v0.len();

    let live_clumps: Vec<usize> = (0..clumps.f_clumps.len()).filter(|&i| !clumps.f_clumps[i].is_empty()).collect();
    let m = live_clumps.len();
    trace.constants = Some(params.constants(m));
    let group_size = params.big_c3(m);
    let deg_f = |v: usize| g.degree_within(v, &f_mask);
    let degrees: Vec<f64> = v0.iter().map(|&v| deg_f(v) as f64).collect();
    let groups = group_by_value(&degrees, n as f64, params.big_c4(m), group_size.min(n.max(1)))?;
    let clump_masks: Vec<Mask> = clumps.f_clumps.iter().map(|c| Mask::from_members(n, c.iter().copied())).collect();
    let agrees_enough = |x: usize, y: usize| {
        clump_of[x] == clump_of[y]
            && live_clumps
                .iter()
                .all(|&i| 3 * g.disagreement_count(x, y, Some(&clump_masks[i])) <= 2 * clumps.f_clumps[i].len())
    };
    let candidates: Vec<Pair> = groups
        .groups
        .iter()
        .filter_map(|grp| {
            let members: Vec<usize> = grp.iter().map(|&i| v0[i]).collect();
            members.iter().enumerate().find_map(|(i, &x)| {
                members[i + 1..].iter().find(|&&y| agrees_enough(x, y)).map(|&y| (x.min(y), x.max(y)))
            })
        })
        .collect();
    trace.candidate_pairs = candidates.len();

    // Differences in F with every 𝒬-pair contracted to one node.
    let contracted_delta = |x: usize, y: usize| {
        let simple = g.disagreement_count(x, y, Some(&u_mask));
        let through_q = clumps
            .q_pairs
            .iter()
            .filter(|&&(a, b)| {
                let mx = g.has_edge(x, a) as u8 + g.has_edge(x, b) as u8;
                let my = g.has_edge(y, a) as u8 + g.has_edge(y, b) as u8;
                mx != my
            })
            .count();
        simple + through_q
    };
    let boxes = pigeonhole_by(n, &candidates, contracted_delta);
    trace.boxes = boxes.sizes();
    trace.zero_difference_pairs = boxes.zero.len();
    let Some((k, heavy)) = choose_box(&boxes, params, n) else {
        return Ok(Plan::Unsupported("no box holds c3*n/log n agreeing pairs".into()));
    };
    let p = record_box(trace, &boxes, k, params);
    let chosen = &boxes.boxes[k];

    let star = live_clumps
        .iter()
        .copied()
        .max_by_key(|&i| {
            let hits = chosen.iter().filter(|&&(x, y)| g.disagreement_count(x, y, Some(&clump_masks[i])) > 0).count();
            (hits, std::cmp::Reverse(i))
        })
        .expect("candidate pairs live in some clump");
    trace.star_clump = Some(star);
    let mut clumps = clumps;
    clumps.star_clump = Some(star);

    let (odd, even): (Vec<Pair>, Vec<Pair>) = chosen.iter().partition(|&&(x, y)| deg_f(x).abs_diff(deg_f(y)) % 2 == 1);
    trace.odd_pairs = odd.len();
    trace.even_pairs = even.len();
    let medium = medium_pairs(&boxes, k, heavy, params);

    let base =
        Case2Plan { clumps, f_alive, clump_of, ones: Vec::new(), twos: Vec::new(), medium, concentrated: None, p };
    if !odd.is_empty() && odd.len() >= even.len() {
        trace.planned = Some(Branch::Case2Odd);
        return Ok(Plan::Case2(Case2Plan { ones: odd, ..base }));
    }

    let disagrees_on = |v: usize, &(x, y): &Pair| v != x && v != y && g.has_edge(v, x) != g.has_edge(v, y);
    let (v, hits) = base.clumps.f_clumps[star]
        .iter()
        .map(|&v| (v, even.iter().filter(|pair| disagrees_on(v, pair)).count()))
        .max_by_key(|&(v, hits)| (hits, std::cmp::Reverse(v)))
        .expect("the star clump is not empty");
    let threshold = params.c5() * n as f64 / (n as f64).log2().max(1.0);
    if hits > 0 && hits as f64 >= threshold {
        trace.planned = Some(Branch::Case2EvenConcentrated);
        let mut ones = odd;
        ones.extend(even.iter().copied().filter(|pair| disagrees_on(v, pair)));
        return Ok(Plan::Case2(Case2Plan { ones, concentrated: Some(v), ..base }));
    }
    trace.planned = Some(Branch::Case2EvenSpread);
    Ok(Plan::Case2(Case2Plan { twos: even, ..base }))
}
