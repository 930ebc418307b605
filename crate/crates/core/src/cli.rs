//! The `split` command: flag parsing, the six modes and their JSON and CSV
//! records.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::check_split;
use crate::error::{invalid, Error, Result};
use crate::generators::{generate, Family, FamilySpec};
use crate::graph::{parse_edge_list, Graph};
use crate::oracle::{exact_f, is_splittable_dp, min_deletion_split_with, Method, MinDeletionOptions, SplitResult};
use crate::probability::{exact_verdict_for, monte_carlo_verdict, parse_claim, BoundVerdict, ClaimId};
use crate::splitter::{split_with_report, CaseTrace, SplitParams};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "SPLIT_SEED";

/// Largest n a sweep hands to the exact solver.
pub const SWEEP_EXACT_LIMIT: usize = 12;

/// Header of sweep CSV output.
pub const SWEEP_HEADER: [&str; 9] = ["family", "n", "seed", "k", "half_gap", "deletions", "branch", "checker", "ms"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    DpSplit,
    Randomized,
    MinDeletion,
    VerifyClaims,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Command-line flags of `split`.
#[derive(Clone, Debug, Parser)]
#[command(name = "split", version, about = "Find two disjoint equal-size vertex sets inducing equally many edges")]
pub struct Args {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Edge-list file: first line `n m`, then one `u v` per line.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Family spec such as `gnp:n=1000,p=0.5,seed=7`. In sweeps a value may
    /// list alternatives (`n=100|200`) or an integer range (`seed=1..5`).
    #[arg(long)]
    pub family: Vec<String>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Large-pair window; defaults to ε²/64.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 8)]
    pub attempts: usize,
    /// Worker threads; 0 uses every logical core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Defaults to csv for sweeps and json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub trace: bool,
    /// Claim to verify, optionally with parameters: `binparity:n=25,p=0.3`.
    #[arg(long)]
    pub claim: Vec<String>,
    /// Report every wall time as 0 so that output is byte-stable.
    #[arg(long, hide = true)]
    pub no_timing: bool,
}

/// A validated run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub input: Option<PathBuf>,
    pub family: Vec<String>,
    pub epsilon: f64,
    pub beta: Option<f64>,
    pub seed: u64,
    pub trials: u64,
    pub attempts: usize,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub trace: bool,
    pub claim: Vec<String>,
    #[serde(skip)]
    pub timing: bool,
}

impl RunConfig {
    /// Applies defaults and `SPLIT_SEED` (passed in as `env_seed`).
    pub fn from_args(args: Args, env_seed: Option<&str>) -> Result<RunConfig> {
        let seed = match env_seed {
            Some(s) => {
                s.trim().parse().map_err(|_| Error::InvalidArgument(format!("{SEED_ENV}=`{s}` is not a seed")))?
            }
            None => args.seed,
        };
        let format = args.format.unwrap_or(if args.mode == Mode::Sweep { Format::Csv } else { Format::Json });
        let config = RunConfig {
            mode: args.mode,
            input: args.input,
            family: args.family,
            epsilon: args.epsilon,
            beta: args.beta,
            seed,
            trials: args.trials,
            attempts: args.attempts,
            jobs: args.jobs,
            out: args.out,
            format,
            trace: args.trace,
            claim: args.claim,
            timing: !args.no_timing,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let graph_inputs = usize::from(self.input.is_some()) + self.family.len();
        match self.mode {
            Mode::VerifyClaims => {
                if graph_inputs > 0 {
                    return invalid("verify-claims takes --claim, not a graph");
                }
            }
            Mode::Sweep => {
                if self.input.is_some() || self.family.is_empty() {
                    return invalid("sweep needs at least one --family grid");
                }
            }
            _ => {
                if graph_inputs != 1 {
                    return invalid("give exactly one of --input or --family");
                }
            }
        }
        if self.mode != Mode::VerifyClaims && !self.claim.is_empty() {
            return invalid("--claim is only used by verify-claims");
        }
        if matches!(self.mode, Mode::Randomized | Mode::MinDeletion | Mode::Sweep) {
            self.params()?;
        }
        Ok(())
    }

    fn params(&self) -> Result<SplitParams> {
        let mut params = SplitParams::new(self.epsilon)?.with_seed(self.seed).with_attempts(self.attempts)?;
        if let Some(beta) = self.beta {
            params = params.with_beta(beta)?;
        }
        Ok(params)
    }
}

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Failure = 1,
    Usage = 2,
}

impl Status {
    pub fn of(error: &Error) -> Status {
        match error {
            Error::Consistency(_) | Error::SolverFailure { .. } => Status::Failure,
            _ => Status::Usage,
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Checker {
    Pass,
    Fail,
    /// Nothing to check: the answer was "not splittable".
    None,
    /// The solver returned no answer.
    Error,
}

impl Checker {
    fn name(self) -> &'static str {
        match self {
            Checker::Pass => "pass",
            Checker::Fail => "fail",
            Checker::None => "none",
            Checker::Error => "error",
        }
    }
}

/// One solved instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub source: String,
    pub family: Option<String>,
    pub family_seed: Option<u64>,
    pub n: usize,
    pub edges: usize,
    pub k: Option<usize>,
    /// `n/2 − k`.
    pub half_gap: Option<f64>,
    pub deletions: Option<usize>,
    pub method: Option<Method>,
    pub branch: Option<String>,
    pub splittable: Option<bool>,
    pub checker: Checker,
    pub error: Option<String>,
    pub ms: f64,
    pub split: Option<SplitResult>,
    pub trace: Option<CaseTrace>,
}

/// Per `(family, n)` summary of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub family: String,
    pub n: usize,
    pub instances: usize,
    pub failures: usize,
    pub mean_half_gap: Option<f64>,
    pub max_half_gap: Option<f64>,
    pub max_deletions: Option<usize>,
    pub mean_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictRecord {
    /// `exact` or `monte-carlo`.
    pub kind: &'static str,
    #[serde(flatten)]
    pub verdict: BoundVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub config: RunConfig,
    pub results: Vec<InstanceRecord>,
    pub aggregates: Vec<Aggregate>,
    pub verdicts: Vec<VerdictRecord>,
}

impl ExperimentRecord {
    fn status(&self) -> Status {
        let bad_row = self.results.iter().any(|r| matches!(r.checker, Checker::Fail | Checker::Error));
        if bad_row || self.verdicts.iter().any(|v| !v.verdict.holds) {
            Status::Failure
        } else {
            Status::Success
        }
    }

    /// The record in the configured format.
    pub fn render(&self) -> Result<String> {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Consistency(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let opt = |x: Option<String>| x.unwrap_or_default();
        let csv_err = |e: csv::Error| Error::Consistency(e.to_string());
        match self.config.mode {
            Mode::VerifyClaims => {
                w.write_record([
                    "claim",
                    "params",
                    "kind",
                    "probability",
                    "bound",
                    "band_lo",
                    "band_hi",
                    "holds",
                    "trials",
                    "seed",
                ])
                .map_err(csv_err)?;
                for v in &self.verdicts {
                    let b = &v.verdict;
                    let params = serde_json::to_string(&b.params).map_err(|e| Error::Consistency(e.to_string()))?;
                    w.write_record([
                        b.claim.name().to_string(),
                        params,
                        v.kind.to_string(),
                        b.probability.to_string(),
                        b.bound.to_string(),
                        b.band[0].to_string(),
                        b.band[1].to_string(),
                        b.holds.to_string(),
                        b.trials.to_string(),
                        opt(b.seed.map(|s| s.to_string())),
                    ])
                    .map_err(csv_err)?;
                }
            }
            Mode::Sweep => {
                w.write_record(SWEEP_HEADER).map_err(csv_err)?;
                for r in &self.results {
                    w.write_record([
                        opt(r.family.clone()),
                        r.n.to_string(),
                        opt(r.family_seed.map(|s| s.to_string())),
                        opt(r.k.map(|k| k.to_string())),
                        opt(r.half_gap.map(|g| g.to_string())),
                        opt(r.deletions.map(|d| d.to_string())),
                        opt(r.branch.clone()),
                        r.checker.name().to_string(),
                        r.ms.to_string(),
                    ])
                    .map_err(csv_err)?;
                }
            }
            _ => {
                w.write_record([
                    "source",
                    "n",
                    "edges",
                    "k",
                    "half_gap",
                    "deletions",
                    "method",
                    "branch",
                    "splittable",
                    "checker",
                    "ms",
                ])
                .map_err(csv_err)?;
                for r in &self.results {
                    w.write_record([
                        r.source.clone(),
                        r.n.to_string(),
                        r.edges.to_string(),
                        opt(r.k.map(|k| k.to_string())),
                        opt(r.half_gap.map(|g| g.to_string())),
                        opt(r.deletions.map(|d| d.to_string())),
                        opt(r.method.map(|m| method_name(m).to_string())),
                        opt(r.branch.clone()),
                        opt(r.splittable.map(|s| s.to_string())),
                        r.checker.name().to_string(),
                        r.ms.to_string(),
                    ])
                    .map_err(csv_err)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Consistency(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Consistency(e.to_string()))
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Exhaustive => "exhaustive",
        Method::Dp => "dp",
        Method::Randomized => "randomized",
    }
}

/// Expands a family grid: any value may be `a|b|c` or an integer range
/// `lo..hi` (inclusive). The last key varies fastest.
pub fn expand_grid(text: &str) -> Result<Vec<FamilySpec>> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let mut axes: Vec<(String, Vec<String>)> = Vec::new();
    for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let (key, value) =
            item.split_once('=').ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{item}`")))?;
        let values = if value.contains('|') {
            value.split('|').map(|v| v.trim().to_string()).collect()
        } else if let Some((lo, hi)) = value.split_once("..") {
            let bad = || Error::InvalidArgument(format!("bad range `{value}`"));
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            (lo..=hi).map(|v| v.to_string()).collect()
        } else {
            vec![value.trim().to_string()]
        };
        axes.push((key.trim().to_string(), values));
    }
    let mut specs = vec![String::new()];
    for (key, values) in &axes {
        specs =
            specs
                .iter()
                .flat_map(|prefix| {
                    values.iter().map(move |v| {
                        if prefix.is_empty() {
                            format!("{key}={v}")
                        } else {
                            format!("{prefix},{key}={v}")
                        }
                    })
                })
                .collect();
    }
    specs.iter().map(|s| format!("{}:{s}", name.trim()).parse()).collect()
}

fn family_label(spec: &FamilySpec) -> String {
    match (spec.family, spec.p, &spec.sizes) {
        (Family::Gnp, Some(p), _) => format!("gnp(p={p})"),
        (_, _, Some(sizes)) => {
            let list: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            format!("{}(sizes={})", spec.family.name(), list.join(";"))
        }
        (family, _, _) => family.name().to_string(),
    }
}

struct Instance {
    source: String,
    spec: Option<FamilySpec>,
    graph: Graph,
}

impl Instance {
    fn record(&self) -> InstanceRecord {
        InstanceRecord {
            source: self.source.clone(),
            family: self.spec.as_ref().map(family_label),
            family_seed: self.spec.as_ref().map(|s| s.seed),
            n: self.graph.n(),
            edges: self.graph.edge_count(),
            k: None,
            half_gap: None,
            deletions: None,
            method: None,
            branch: None,
            splittable: None,
            checker: Checker::Error,
            error: None,
            ms: 0.0,
            split: None,
            trace: None,
        }
    }
}

fn load(config: &RunConfig) -> Result<Instance> {
    if let Some(path) = &config.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        let graph = parse_edge_list(&text).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
            other => other,
        })?;
        return Ok(Instance { source: path.display().to_string(), spec: None, graph });
    }
    let spec: FamilySpec = config.family[0].parse()?;
    Ok(Instance { source: spec.to_string(), graph: generate(&spec)?, spec: Some(spec) })
}

fn fill(record: &mut InstanceRecord, g: &Graph, result: SplitResult, budget: Option<usize>) {
    let verdict = check_split(g, &result).and_then(|_| match budget {
        Some(b) if result.deleted.len() > b => Err(format!("{} deletions exceed the budget {b}", result.deleted.len())),
        _ => Ok(()),
    });
    record.checker = if verdict.is_ok() { Checker::Pass } else { Checker::Fail };
    record.error = verdict.err();
    record.k = Some(result.k);
    record.half_gap = Some(g.n() as f64 / 2.0 - result.k as f64);
    record.deletions = Some(result.deleted.len());
    record.method = Some(result.method);
    record.split = Some(result);
}

fn solve(mode: Mode, inst: &Instance, config: &RunConfig) -> Result<InstanceRecord> {
    let g = &inst.graph;
    let mut record = inst.record();
    let start = Instant::now();
    match mode {
        Mode::Exact => {
            let result = exact_f(g)?;
            record.branch = Some("exact".into());
            fill(&mut record, g, result, None);
        }
        Mode::DpSplit => {
            let verdict = is_splittable_dp(g)?;
            record.splittable = Some(verdict.is_splittable());
            match verdict.witness() {
                Some(w) => fill(&mut record, g, w.clone(), Some(0)),
                None => record.checker = Checker::None,
            }
        }
        Mode::MinDeletion => {
            let budget = config.params()?.deletion_budget(g.n());
            let opts = MinDeletionOptions { seed: config.seed, ..Default::default() };
            match min_deletion_split_with(g, budget, opts)? {
                Some(result) => fill(&mut record, g, result, Some(budget)),
                None => record.error = Some(format!("no splitting within {budget} deletions")),
            }
        }
        Mode::Randomized => {
            let params = config.params()?;
            let report = split_with_report(g, &params)?;
            record.branch = report.trace.branch.map(|b| b.name().to_string());
            match report.result {
                Some(result) => fill(&mut record, g, result, Some(params.deletion_budget(g.n()))),
                None => record.error = report.trace.failure.clone(),
            }
            if config.trace {
                record.trace = Some(report.trace);
            }
        }
        Mode::VerifyClaims | Mode::Sweep => unreachable!("not a single-instance mode"),
    }
    if config.timing {
        record.ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    }
    Ok(record)
}

fn sweep(config: &RunConfig) -> Result<(Vec<InstanceRecord>, Vec<Aggregate>)> {
    let mut specs = Vec::new();
    for grid in &config.family {
        specs.extend(expand_grid(grid)?);
    }
    let rows: Vec<InstanceRecord> = specs
        .par_iter()
        .map(|spec| {
            let mode = if spec.n <= SWEEP_EXACT_LIMIT { Mode::Exact } else { Mode::Randomized };
            let start = Instant::now();
            let outcome = generate(spec).and_then(|graph| {
                let inst = Instance { source: spec.to_string(), spec: Some(spec.clone()), graph };
                solve(mode, &inst, config)
            });
            outcome.unwrap_or_else(|e| {
                let mut record =
                    Instance { source: spec.to_string(), spec: Some(spec.clone()), graph: Graph::empty(0) }.record();
                record.n = spec.n;
                record.error = Some(e.to_string());
                if config.timing {
                    record.ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
                }
                record
            })
        })
        .collect();

    let mut groups: BTreeMap<(String, usize), Vec<&InstanceRecord>> = BTreeMap::new();
    for r in &rows {
        groups.entry((r.family.clone().unwrap_or_default(), r.n)).or_default().push(r);
    }
    let aggregates = groups
        .into_iter()
        .map(|((family, n), rs)| {
            let gaps: Vec<f64> = rs.iter().filter_map(|r| r.half_gap).collect();
            Aggregate {
                family,
                n,
                instances: rs.len(),
                failures: rs.iter().filter(|r| r.checker != Checker::Pass).count(),
                mean_half_gap: (!gaps.is_empty()).then(|| gaps.iter().sum::<f64>() / gaps.len() as f64),
                max_half_gap: gaps.iter().copied().reduce(f64::max),
                max_deletions: rs.iter().filter_map(|r| r.deletions).max(),
                mean_ms: rs.iter().map(|r| r.ms).sum::<f64>() / rs.len() as f64,
            }
        })
        .collect();
    Ok((rows, aggregates))
}

fn verify_claims(config: &RunConfig) -> Result<Vec<VerdictRecord>> {
    let claims: Vec<String> = if config.claim.is_empty() {
        ClaimId::ALL.iter().map(|c| c.name().to_string()).collect()
    } else {
        config.claim.clone()
    };
    let mut out = Vec::new();
    for text in &claims {
        let (claim, params) = parse_claim(text)?;
        let exact_supported =
            matches!(claim, ClaimId::Binparity | ClaimId::Binsmall | ClaimId::Bernstein | ClaimId::Spacesplit)
                && params.n.is_some_and(|n| n <= crate::probability::EXACT_TRIALS_LIMIT);
        if exact_supported {
            out.push(VerdictRecord { kind: "exact", verdict: exact_verdict_for(claim, params)? });
        }
        out.push(VerdictRecord {
            kind: "monte-carlo",
            verdict: monte_carlo_verdict(claim, params, config.trials, config.seed)?,
        });
    }
    Ok(out)
}

/// Runs a validated configuration and returns its record.
pub fn run(config: &RunConfig) -> Result<ExperimentRecord> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {} workers: {e}", config.jobs)))?;
    pool.install(|| {
        let mut record = ExperimentRecord {
            config: config.clone(),
            results: Vec::new(),
            aggregates: Vec::new(),
            verdicts: Vec::new(),
        };
        match config.mode {
            Mode::VerifyClaims => record.verdicts = verify_claims(config)?,
            Mode::Sweep => (record.results, record.aggregates) = sweep(config)?,
            mode => {
                let inst = load(config)?;
                record.results.push(solve(mode, &inst, config)?);
            }
        }
        Ok(record)
    })
}

/// Parses arguments, runs, writes the record and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage.code() } else { Status::Success.code() };
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    let outcome = RunConfig::from_args(args, env_seed.as_deref()).and_then(|config| {
        let record = run(&config)?;
        let text = record.render()?;
        match &config.out {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(record.status())
    });
    match outcome {
        Ok(status) => {
            if status != Status::Success {
                eprintln!("error: a result failed its check or the solver gave no answer");
            }
            status.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            Status::of(&e).code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_expands_in_key_order() {
        let specs = expand_grid("gnp:n=100|200|400,p=0.5,seed=1..5").unwrap();
        assert_eq!(specs.len(), 15);
        assert_eq!(specs[0].to_string(), "gnp:n=100,p=0.5,seed=1");
        assert_eq!(specs[1].to_string(), "gnp:n=100,p=0.5,seed=2");
        assert_eq!(specs[14].to_string(), "gnp:n=400,p=0.5,seed=5");
        assert!(expand_grid("gnp:n=10,p=0.5,seed=5..1").is_err());
        assert!(expand_grid("gnp:n=10|x,p=0.5").is_err());
    }

    #[test]
    fn env_seed_overrides_flag() {
        let args = Args::try_parse_from(["split", "--mode", "exact", "--family", "path:n=4", "--seed", "3"]).unwrap();
        assert_eq!(RunConfig::from_args(args.clone(), None).unwrap().seed, 3);
        assert_eq!(RunConfig::from_args(args.clone(), Some("11")).unwrap().seed, 11);
        assert!(RunConfig::from_args(args, Some("eleven")).is_err());
    }

    #[test]
    fn mode_inputs_are_checked() {
        let parse = |v: &[&str]| RunConfig::from_args(Args::try_parse_from(v).unwrap(), None);
        assert!(parse(&["split", "--mode", "exact"]).is_err());
        assert!(parse(&["split", "--mode", "sweep"]).is_err());
        assert!(parse(&["split", "--mode", "verify-claims", "--family", "path:n=4"]).is_err());
        assert!(parse(&["split", "--mode", "exact", "--family", "path:n=4", "--claim", "binparity"]).is_err());
        assert!(parse(&["split", "--mode", "randomized", "--family", "path:n=4", "--epsilon", "0.7"]).is_err());
        let sweep = parse(&["split", "--mode", "sweep", "--family", "path:n=4"]).unwrap();
        assert_eq!(sweep.format, Format::Csv);
    }

    #[test]
    fn status_codes() {
        assert_eq!(Status::of(&Error::Parse { line: 3, message: "x".into() }), Status::Usage);
        assert_eq!(Status::of(&Error::SolverFailure { attempts: 1, reason: "x".into() }), Status::Failure);
    }
}
