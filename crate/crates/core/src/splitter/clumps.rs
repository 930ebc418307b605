use serde::Serialize;

use crate::balance::group_by_value;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};

use super::pairs::{reaches_root, within_power};

/// The vertices outside the large pairs, split into blocks of similar
/// degree, together with the reduced vertex set `F` the second case works
/// in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClumpDecomposition {
    /// `K₁ … K_m` in increasing degree order, each sorted by id.
    pub clumps: Vec<Vec<usize>>,
    /// Disjoint pairs of large-pair vertices with `δ ≤ n^{1/2}`.
    pub q_pairs: Vec<(usize, usize)>,
    pub star_clump: Option<usize>,
    /// The part of each clump that stays in `F`; empty for deleted clumps,
    /// even-sized otherwise.
    pub f_clumps: Vec<Vec<usize>>,
    /// Vertices removed while forming `F`, sorted.
    pub removed: Vec<usize>,
}

impl ClumpDecomposition {
    pub fn clump_count(&self) -> usize {
        self.clumps.len()
    }

    /// Membership in `F`.
    pub fn f_members(&self, n: usize) -> Vec<bool> {
        let mut keep = vec![true; n];
        self.removed.iter().for_each(|&v| keep[v] = false);
        keep
    }
}

/// Partitions `V ∖ L` into clumps by cutting the degree order at every gap
/// of at least `n^{1/3}`, pairs up `L` into `𝒬`, and assembles `F`.
///
/// If `L` comes from a maximal set of large pairs, degrees inside a clump
/// differ by less than `n^{1/3}` and degrees in different clumps by more
/// than `βn`; anything else is reported as a consistency error.
pub fn clump_decompose(g: &Graph, large: &VertexSet, beta: f64) -> Result<ClumpDecomposition> {
    if !(beta > 0.0 && beta < 1.0) {
        return invalid(format!("beta {beta} outside (0, 1)"));
    }
    large.check_for(g)?;
    let n = g.n();
    let deg = |v: usize| g.deg(v);
    let mut rest: Vec<usize> = (0..n).filter(|&v| !large.contains(v)).collect();
    rest.sort_by_key(|&v| (deg(v), v));

    let mut clumps: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in rest.iter().enumerate() {
        let gap = if i == 0 { None } else { Some((deg(v) - deg(rest[i - 1])) as u64) };
        match gap {
            Some(gap) if !reaches_root(gap, n as u64, 3) => clumps.last_mut().expect("not first").push(v),
            _ => clumps.push(vec![v]),
        }
    }
    for clump in &clumps {
        let spread = (deg(*clump.last().unwrap()) - deg(clump[0])) as u64;
        if reaches_root(spread, n as u64, 3) {
            return Err(Error::Consistency(format!(
                "a clump spans degrees {}..={}, at least n^(1/3) apart",
                deg(clump[0]),
                deg(*clump.last().unwrap())
            )));
        }
    }
    for w in clumps.windows(2) {
        let gap = deg(w[1][0]) - deg(*w[0].last().unwrap());
        if gap as f64 <= beta * n as f64 {
            return Err(Error::Consistency(format!(
                "neighbouring clumps only {gap} apart in degree, not above beta*n"
            )));
        }
    }
    if clumps.len() as f64 > 1.0 / beta {
        return Err(Error::Consistency(format!("{} clumps exceed 1/beta", clumps.len())));
    }

    let l: Vec<usize> = large.members().to_vec();
    let degrees: Vec<f64> = l.iter().map(|&v| deg(v) as f64).collect();
    let grouped = group_by_value(&degrees, n as f64, (n as f64).sqrt(), 2)?;
    let q_pairs: Vec<(usize, usize)> = grouped
        .groups
        .iter()
        .map(|grp| {
            let (x, y) = (l[grp[0]], l[grp[1]]);
            (x.min(y), x.max(y))
        })
        .collect();

    let mut removed = Vec::new();
    let mut in_q = vec![false; n];
    for &(x, y) in &q_pairs {
        in_q[x] = true;
        in_q[y] = true;
    }
    removed.extend(l.iter().copied().filter(|&v| !in_q[v]));
    let mut f_clumps = Vec::with_capacity(clumps.len());
    for clump in &clumps {
        let mut kept = clump.clone();
        if within_power(clump.len() as u64, n as u64, 1, 2) {
            removed.append(&mut kept);
        } else if clump.len() % 2 == 1 {
            // Drop the highest-degree vertex; ties go to the largest id.
            let drop = kept.pop().expect("non-empty");
            removed.push(drop);
        }
        kept.sort_unstable();
        f_clumps.push(kept);
    }
    removed.sort_unstable();
    let clumps = clumps
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    Ok(ClumpDecomposition { clumps, q_pairs, star_clump: None, f_clumps, removed })
}
