//! Independent validation of splitting results, using only the basic graph
//! counts.

use crate::graph::{cross_edge_count, induced_edge_count, Graph, VertexSet};
use crate::oracle::SplitResult;

/// Checks that `result` is a valid splitting of `g`: the sides are disjoint,
/// of size `k`, each induces `edges_each` edges, and `deleted` is exactly the
/// rest of the vertex set.
pub fn check_split(g: &Graph, result: &SplitResult) -> Result<(), String> {
    let n = g.n();
    for (name, set) in [("a", &result.a), ("b", &result.b), ("deleted", &result.deleted)] {
        set.check_for(g).map_err(|e| format!("side {name}: {e}"))?;
    }
    let (a, b) = (&result.a, &result.b);
    if !a.is_disjoint(b) {
        return Err("sides overlap".into());
    }
    if a.len() != result.k || b.len() != result.k {
        return Err(format!("side sizes {} and {} differ from k = {}", a.len(), b.len(), result.k));
    }
    let ea = induced_edge_count(g, a).map_err(|e| e.to_string())?;
    let eb = induced_edge_count(g, b).map_err(|e| e.to_string())?;
    if ea != eb {
        return Err(format!("e(A) = {ea} but e(B) = {eb}"));
    }
    if ea != result.edges_each {
        return Err(format!("reported {} edges per side, found {ea}", result.edges_each));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !a.contains(v) && !b.contains(v)).collect();
    if result.deleted.members() != rest.as_slice() {
        return Err("deleted set is not the complement of A ∪ B".into());
    }
    // Re-derive the balance through the degree identity as a second opinion.
    let union = VertexSet::from_sorted_unchecked({
        let mut u: Vec<usize> = a.members().iter().chain(b.members()).copied().collect();
        u.sort_unstable();
        u
    });
    let (sub, back) = g.induced_subgraph(&union).map_err(|e| e.to_string())?;
    let side: Vec<bool> = back.iter().map(|&v| a.contains(v)).collect();
    let da: usize = (0..sub.n()).filter(|&v| side[v]).map(|v| sub.neighbours(v).count()).sum();
    let cross = cross_edge_count(g, a, b).map_err(|e| e.to_string())?;
    if da != 2 * ea + cross {
        return Err("degree identity fails".into());
    }
    Ok(())
}
