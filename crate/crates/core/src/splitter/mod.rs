//! The randomized splitter: case analysis, random deletion, gadget
//! inventory and staged balancing, with seeded retries.
//!
//! Every attempt draws from its own stream of a ChaCha generator keyed by
//! the master seed, attempts run in parallel, and the lowest-numbered
//! verified success is returned, so results depend only on the graph and
//! the parameters. When the structural preconditions of the construction do
//! not hold (common below a few thousand vertices) the splitter falls back
//! to direct balancing: pair survivors by degree, choose orientations with
//! an exact subset-sum table, and delete seeded vertex pairs while that
//! fails. The trace says which route produced the answer.

mod analysis;
mod attempt;
mod clumps;
mod construct;
mod deletion;
mod fallback;
mod pairs;
mod params;

use std::fmt;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::check_split;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::SplitResult;

pub use clumps::{clump_decompose, ClumpDecomposition};
pub use construct::{construct_splitting, Construction, GadgetInventory, Stage, StageRecord};
pub use deletion::{
    classify_gadget, estimate_gadget_probability, random_delete, Conditioning, GadgetEstimate, GadgetKind, GadgetProbe,
    GadgetWindows, PairOrigin, MIN_GADGET_TRIALS,
};
pub use pairs::{box_count, find_clone_matching, find_large_pairs, pigeonhole_pairs, Boxes};
pub use params::{ramsey_surrogate, DerivedConstants, SplitParams};

/// Stream used by the direct-balancing fallback, apart from every attempt.
const FALLBACK_STREAM: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    #[serde(rename = "trivial-clones")]
    TrivialClones,
    #[serde(rename = "case1-smallbox")]
    Case1SmallBox,
    #[serde(rename = "case1-largebox")]
    Case1LargeBox,
    #[serde(rename = "case2-odd")]
    Case2Odd,
    #[serde(rename = "case2-even-concentrated")]
    Case2EvenConcentrated,
    #[serde(rename = "case2-even-spread")]
    Case2EvenSpread,
    #[serde(rename = "direct-balancing")]
    DirectBalancing,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::TrivialClones => "trivial-clones",
            Branch::Case1SmallBox => "case1-smallbox",
            Branch::Case1LargeBox => "case1-largebox",
            Branch::Case2Odd => "case2-odd",
            Branch::Case2EvenConcentrated => "case2-even-concentrated",
            Branch::Case2EvenSpread => "case2-even-spread",
            Branch::DirectBalancing => "direct-balancing",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GadgetCounts {
    pub one: usize,
    pub two: usize,
    pub medium: usize,
    pub large: usize,
    pub thick: usize,
    pub odd_pair: bool,
}

/// What the splitter saw and did.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CaseTrace {
    /// Route that produced the answer (or was last tried).
    pub branch: Option<Branch>,
    /// Route chosen by the case analysis.
    pub planned: Option<Branch>,
    pub attempt: Option<usize>,
    /// 1 when at least `c₁n` disjoint large pairs exist, else 2.
    pub case: Option<u8>,
    pub n: usize,
    pub constants: Option<DerivedConstants>,
    pub large_pairs: usize,
    pub clone_pairs: usize,
    pub v0: usize,
    pub candidate_pairs: usize,
    pub zero_difference_pairs: usize,
    pub boxes: Vec<usize>,
    pub box_index: Option<u32>,
    pub deletion_probability: Option<f64>,
    pub clumps: Vec<usize>,
    pub q_pairs: usize,
    pub star_clump: Option<usize>,
    pub odd_pairs: usize,
    pub even_pairs: usize,
    pub structural_deletions: usize,
    pub random_deletions: usize,
    pub parity_rejections: usize,
    pub gadgets: GadgetCounts,
    pub stages: Vec<StageRecord>,
    pub failure: Option<String>,
    pub fallback_reason: Option<String>,
    pub fallback_rounds: usize,
    pub deleted: usize,
}

/// The outcome of [`split_with_report`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitReport {
    pub result: Option<SplitResult>,
    pub trace: CaseTrace,
    pub failed_attempts: Vec<CaseTrace>,
}

/// Runs the case analysis only and reports the branch it selects.
pub fn select_case(g: &Graph, params: &SplitParams) -> Result<CaseTrace> {
    check_size(g, params)?;
    Ok(analysis::analyse(g, params)?.1)
}

fn check_size(g: &Graph, params: &SplitParams) -> Result<()> {
    if g.n() < params.min_n {
        return Err(Error::SizeLimit(format!(
            "{} vertices is below the configured minimum of {}",
            g.n(),
            params.min_n
        )));
    }
    Ok(())
}

/// Validity plus the deletion budget.
fn verify(g: &Graph, result: &SplitResult, params: &SplitParams) -> std::result::Result<(), String> {
    check_split(g, result)?;
    let budget = params.deletion_budget(g.n());
    if result.deleted.len() > budget {
        return Err(format!("{} deletions exceed the budget of {budget}", result.deleted.len()));
    }
    Ok(())
}

/// Two disjoint equal halves of an induced subgraph with equally many
/// induced edges, deleting at most `⌊2εn⌋` vertices; `None` in the report's
/// result when every attempt and the fallback failed.
pub fn split_with_report(g: &Graph, params: &SplitParams) -> Result<SplitReport> {
    check_size(g, params)?;
    let (plan, base) = analysis::analyse(g, params)?;
    let mut failed = Vec::new();

    let reason = match &plan {
        analysis::Plan::Clones(pairs) => {
            let result = attempt::from_clone_pairs(g, pairs)?;
            let mut trace = base.clone();
            trace.deleted = result.deleted.len();
            match verify(g, &result, params) {
                Ok(()) => return Ok(SplitReport { result: Some(result), trace, failed_attempts: failed }),
                Err(e) => format!("clone pairs failed verification: {e}"),
            }
        }
        analysis::Plan::Unsupported(reason) => reason.clone(),
        plan => {
            let failures = Mutex::new(Vec::new());
            let found = (0..params.max_attempts).into_par_iter().find_map_first(|i| {
                let mut trace = base.clone();
                trace.attempt = Some(i);
                let outcome = attempt::run(g, plan, params, i, &mut trace).and_then(|r| match r {
                    Some(result) => verify(g, &result, params).map(|_| result).map_err(Error::Consistency),
                    None => Err(Error::SolverFailure { attempts: 1, reason: "construction failed".into() }),
                });
                match outcome {
                    Ok(result) => {
                        trace.deleted = result.deleted.len();
                        Some((result, trace))
                    }
                    Err(e) => {
                        if trace.failure.is_none() {
                            trace.failure = Some(e.to_string());
                        }
                        failures.lock().expect("no poisoning").push(trace);
                        None
                    }
                }
            });
            let mut failures = failures.into_inner().expect("no poisoning");
            failures.sort_by_key(|t| t.attempt);
            if let Some((result, trace)) = found {
                failures.retain(|t| t.attempt < trace.attempt);
                return Ok(SplitReport { result: Some(result), trace, failed_attempts: failures });
            }
            let last = failures.last().and_then(|t| t.failure.clone()).unwrap_or_default();
            failed = failures;
            format!("all {} attempts failed; last: {last}", params.max_attempts)
        }
    };

    let mut trace = base;
    trace.branch = Some(Branch::DirectBalancing);
    trace.fallback_reason = Some(reason);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(FALLBACK_STREAM);
    let outcome = fallback::direct_balance(g, params, &mut rng)?;
    trace.fallback_rounds = outcome.rounds;
    let result = match outcome.result {
        Some(result) => match verify(g, &result, params) {
            Ok(()) => {
                trace.deleted = result.deleted.len();
                Some(result)
            }
            Err(e) => {
                trace.failure = Some(format!("fallback failed verification: {e}"));
                None
            }
        },
        None => {
            trace.failure = Some("direct balancing ran out of deletion budget".into());
            None
        }
    };
    Ok(SplitReport { result, trace, failed_attempts: failed })
}

/// [`split_with_report`] that turns total failure into an error.
pub fn split(g: &Graph, params: &SplitParams) -> Result<SplitResult> {
    let report = split_with_report(g, params)?;
    report.result.ok_or_else(|| Error::SolverFailure {
        attempts: params.max_attempts,
        reason: report.trace.failure.unwrap_or_else(|| "no splitting found".into()),
    })
}
