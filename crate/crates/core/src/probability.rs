//! Binomial probabilities, the closed-form bounds the splitter relies on,
//! and a seeded Monte-Carlo harness that checks each bound empirically.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Error, Result};

/// Trial counts up to this size use exact rational arithmetic.
pub const EXACT_TRIALS_LIMIT: u64 = 64;

/// Minimum number of Monte-Carlo trials accepted by [`monte_carlo_verdict`].
pub const MIN_MONTE_CARLO_TRIALS: u64 = 10_000;

pub(crate) const SHARD_TRIALS: u64 = 10_000;

/// `Bin(N, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinomialSpec {
    pub n: u64,
    pub p: f64,
}

impl BinomialSpec {
    pub fn new(n: u64, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return invalid(format!("probability {p} outside [0, 1]"));
        }
        Ok(BinomialSpec { n, p })
    }

    pub fn mean(&self) -> f64 {
        self.n as f64 * self.p
    }

    pub fn variance(&self) -> f64 {
        self.n as f64 * self.p * (1.0 - self.p)
    }
}

/// All point probabilities of `Bin(N, p)` for `N ≤ 64`, held exactly.
///
/// An `f64` probability is a dyadic rational `a/d`, so every point mass is
/// `C(N,k)·a^k·(d−a)^(N−k) / d^N`: integer numerators over one shared
/// denominator, and tail sums are exact integer sums.
pub struct ExactBinomial {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl ExactBinomial {
    pub fn new(spec: BinomialSpec) -> Result<Self> {
        if spec.n > EXACT_TRIALS_LIMIT {
            return Err(Error::SizeLimit(format!("exact binomial needs N ≤ {EXACT_TRIALS_LIMIT}, got {}", spec.n)));
        }
        let p = BigRational::from_float(spec.p).ok_or_else(|| Error::InvalidArgument("p is not finite".into()))?;
        let (a, d) = (p.numer().clone(), p.denom().clone());
        let b = &d - &a;
        let n = spec.n as usize;

        let mut pow_a = vec![BigInt::one()];
        let mut pow_b = vec![BigInt::one()];
        for i in 0..n {
            pow_a.push(&pow_a[i] * &a);
            pow_b.push(&pow_b[i] * &b);
        }
        let mut choose = BigInt::one();
        let mut numerators = Vec::with_capacity(n + 1);
        for k in 0..=n {
            numerators.push(&choose * &pow_a[k] * &pow_b[n - k]);
            choose = choose * BigInt::from(n - k) / BigInt::from(k + 1);
        }
        let denominator = num_traits::pow(d, n);
        Ok(ExactBinomial { numerators, denominator })
    }

    pub fn pmf(&self, k: u64) -> BigRational {
        match self.numerators.get(k as usize) {
            Some(num) => BigRational::new(num.clone(), self.denominator.clone()),
            None => BigRational::zero(),
        }
    }

    /// `P(X ∈ S)` for `S = {k : keep(k)}`.
    pub fn probability_where(&self, keep: impl Fn(u64) -> bool) -> BigRational {
        let total: BigInt = self.numerators.iter().enumerate().filter(|(k, _)| keep(*k as u64)).map(|(_, v)| v).sum();
        BigRational::new(total, self.denominator.clone())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `C(N,k)·p^k·(1−p)^(N−k)`: exact for `N ≤ 64`, log-domain above.
pub fn binomial_pmf(spec: BinomialSpec, k: u64) -> Result<f64> {
    if k > spec.n {
        return invalid(format!("k = {k} exceeds N = {}", spec.n));
    }
    if spec.n <= EXACT_TRIALS_LIMIT {
        return Ok(to_f64(&ExactBinomial::new(spec)?.pmf(k)));
    }
    Ok(log_pmf(spec, k).exp())
}

fn log_pmf(spec: BinomialSpec, k: u64) -> f64 {
    let (n, p) = (spec.n, spec.p);
    if p == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if p == 1.0 {
        return if k == n { 0.0 } else { f64::NEG_INFINITY };
    }
    let (nf, kf) = (n as f64, k as f64);
    ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0) + kf * p.ln() + (nf - kf) * (-p).ln_1p()
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `P(X even) = ½(1 + (1−2p)^N)`.
pub fn parity_probability(spec: BinomialSpec) -> f64 {
    0.5 * (1.0 + (1.0 - 2.0 * spec.p).powi(spec.n.min(i32::MAX as u64) as i32))
}

/// `exp(−10μ)(μ/k)^k` for `k ≥ 1` and `exp(−10μ)` for `k = 0`: a lower
/// bound on `P(X = k)` when `p ≤ ½`.
pub fn binsmall_lower_bound(spec: BinomialSpec, k: u64) -> Result<f64> {
    if spec.p > 0.5 {
        return invalid(format!("point-mass bound needs p ≤ 1/2, got {}", spec.p));
    }
    let mu = spec.mean();
    let base = (-10.0 * mu).exp();
    if k == 0 {
        return Ok(base);
    }
    Ok(base * (mu / k as f64).powf(k as f64))
}

/// `exp(−t² / (N/2 + 2t/3))`: an upper bound on `P(|X − Np| > t)`.
pub fn bernstein_upper_bound(spec: BinomialSpec, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return invalid(format!("deviation {t} must be positive"));
    }
    Ok((-t * t / (spec.n as f64 / 2.0 + 2.0 * t / 3.0)).exp())
}

/// `p / (2 − p)`: a lower bound on `P(X ≥ E[X]/2)` whenever `X ≤ N` and
/// `E[X] ≥ Np`.
pub fn spacesplit_lower_bound(p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 || p > 1.0 {
        return invalid(format!("p = {p} outside (0, 1]"));
    }
    Ok(p / (2.0 - p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimId {
    Binequal,
    Binclose,
    Binfar,
    Binparity,
    Bernstein,
    Binsmall,
    Spacesplit,
}

impl ClaimId {
    pub const ALL: [ClaimId; 7] = [
        ClaimId::Binequal,
        ClaimId::Binclose,
        ClaimId::Binfar,
        ClaimId::Binparity,
        ClaimId::Bernstein,
        ClaimId::Binsmall,
        ClaimId::Spacesplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Binequal => "binequal",
            ClaimId::Binclose => "binclose",
            ClaimId::Binfar => "binfar",
            ClaimId::Binparity => "binparity",
            ClaimId::Bernstein => "bernstein",
            ClaimId::Binsmall => "binsmall",
            ClaimId::Spacesplit => "spacesplit",
        }
    }

    /// Parameters used when a caller leaves some unset.
    pub fn default_params(self) -> ClaimParams {
        let base = ClaimParams::default();
        match self {
            ClaimId::Binequal => ClaimParams { n: Some(10_000), p: Some(0.3), ..base },
            ClaimId::Binclose => ClaimParams { n1: Some(1_000_000), n2: Some(1_010_000), p: Some(0.9), ..base },
            ClaimId::Binfar => ClaimParams { n1: Some(10_000), n2: Some(10_000), p: Some(0.9), ..base },
            ClaimId::Binparity => ClaimParams { n: Some(25), p: Some(0.3), ..base },
            ClaimId::Bernstein => ClaimParams { n: Some(100), p: Some(0.5), t: Some(10.0), ..base },
            ClaimId::Binsmall => ClaimParams { n: Some(10), p: Some(0.1), k: Some(1), ..base },
            ClaimId::Spacesplit => ClaimParams { n: Some(10), p: Some(0.5), ..base },
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown claim `{s}`")))
    }
}

/// Parameters of a claim check. Which fields matter depends on the claim.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClaimParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl ClaimParams {
    /// Fills unset fields from `defaults`.
    pub fn or(self, defaults: ClaimParams) -> ClaimParams {
        ClaimParams {
            n: self.n.or(defaults.n),
            n1: self.n1.or(defaults.n1),
            n2: self.n2.or(defaults.n2),
            p: self.p.or(defaults.p),
            k: self.k.or(defaults.k),
            t: self.t.or(defaults.t),
        }
    }

    /// Parses `key=value` pairs separated by commas, e.g. `n=100,p=0.3`.
    pub fn parse(text: &str) -> Result<ClaimParams> {
        let mut out = ClaimParams::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{item}`")))?;
            let int = || value.parse::<u64>().map_err(|_| Error::InvalidArgument(format!("bad integer `{value}`")));
            let real = || value.parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad number `{value}`")));
            match key {
                "n" => out.n = Some(int()?),
                "n1" => out.n1 = Some(int()?),
                "n2" => out.n2 = Some(int()?),
                "p" => out.p = Some(real()?),
                "k" => out.k = Some(int()?),
                "t" => out.t = Some(real()?),
                _ => return invalid(format!("unknown claim parameter `{key}`")),
            }
        }
        Ok(out)
    }

    fn need<T>(field: Option<T>, name: &str) -> Result<T> {
        field.ok_or_else(|| Error::InvalidArgument(format!("missing claim parameter `{name}`")))
    }
}

/// Parses `claim` or `claim:key=value,...`.
pub fn parse_claim(text: &str) -> Result<(ClaimId, ClaimParams)> {
    let (name, params) = text.split_once(':').unwrap_or((text, ""));
    let claim: ClaimId = name.trim().parse()?;
    Ok((claim, ClaimParams::parse(params)?.or(claim.default_params())))
}

/// Outcome of checking one claim, exactly or by sampling.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundVerdict {
    pub claim: ClaimId,
    pub params: ClaimParams,
    pub probability: f64,
    pub bound: f64,
    /// Three-standard-error band around an empirical probability; collapses
    /// to the point value for exact checks.
    pub band: [f64; 2],
    pub holds: bool,
    pub trials: u64,
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    /// The claim bounds the probability from above.
    AtMost,
    /// The claim bounds the probability from below.
    AtLeast,
    /// The claim gives the probability exactly.
    Equals,
}

struct ClaimSetup {
    bound: f64,
    direction: Direction,
    event: Box<dyn Fn(&mut ChaCha8Rng) -> bool + Sync>,
}

fn binomial(n: u64, p: f64) -> Result<Binomial> {
    Binomial::new(n, p).map_err(|e| Error::InvalidArgument(format!("Bin({n}, {p}): {e}")))
}

fn setup(claim: ClaimId, params: &ClaimParams) -> Result<ClaimSetup> {
    let p = ClaimParams::need(params.p, "p")?;
    BinomialSpec::new(0, p)?;
    let two_sample = |params: &ClaimParams| -> Result<(u64, u64, Binomial, Binomial)> {
        let n1 = ClaimParams::need(params.n1, "n1")?;
        let n2 = ClaimParams::need(params.n2, "n2")?;
        if p < 0.5 {
            return invalid(format!("{claim} is stated for p ≥ 1/2, got {p}"));
        }
        Ok((n1, n2, binomial(n1, p)?, binomial(n2, p)?))
    };
    Ok(match claim {
        ClaimId::Binequal => {
            let n = ClaimParams::need(params.n, "n")?;
            let spec = BinomialSpec::new(n, p)?;
            // Twice the local-limit value (4πσ²)^(-1/2) of P(X₁ = X₂).
            let bound = (1.0 / (std::f64::consts::PI * spec.variance()).sqrt()).min(1.0);
            let dist = binomial(n, p)?;
            ClaimSetup {
                bound,
                direction: Direction::AtMost,
                event: Box::new(move |rng| dist.sample(rng) == dist.sample(rng)),
            }
        }
        ClaimId::Binclose => {
            let (n1, n2, d1, d2) = two_sample(params)?;
            let gap = (n1.abs_diff(n2) as f64).cbrt();
            ClaimSetup {
                bound: 0.1,
                direction: Direction::AtMost,
                event: Box::new(move |rng| ((d1.sample(rng) as f64) - (d2.sample(rng) as f64)).abs() < gap),
            }
        }
        ClaimId::Binfar => {
            let (n1, n2, d1, d2) = two_sample(params)?;
            let n = n1.max(n2) as f64;
            let reach = n.powf(2.0 / 3.0);
            ClaimSetup {
                bound: (-n.cbrt() / 5.0).exp(),
                direction: Direction::AtMost,
                event: Box::new(move |rng| ((d1.sample(rng) as f64) - (d2.sample(rng) as f64)).abs() > reach),
            }
        }
        ClaimId::Binparity => {
            let n = ClaimParams::need(params.n, "n")?;
            let dist = binomial(n, p)?;
            ClaimSetup {
                bound: parity_probability(BinomialSpec::new(n, p)?),
                direction: Direction::Equals,
                event: Box::new(move |rng| dist.sample(rng) % 2 == 0),
            }
        }
        ClaimId::Bernstein => {
            let n = ClaimParams::need(params.n, "n")?;
            let t = ClaimParams::need(params.t, "t")?;
            let spec = BinomialSpec::new(n, p)?;
            let dist = binomial(n, p)?;
            let mean = spec.mean();
            ClaimSetup {
                bound: bernstein_upper_bound(spec, t)?,
                direction: Direction::AtMost,
                event: Box::new(move |rng| (dist.sample(rng) as f64 - mean).abs() > t),
            }
        }
        ClaimId::Binsmall => {
            let n = ClaimParams::need(params.n, "n")?;
            let k = ClaimParams::need(params.k, "k")?;
            let spec = BinomialSpec::new(n, p)?;
            let dist = binomial(n, p)?;
            ClaimSetup {
                bound: binsmall_lower_bound(spec, k)?,
                direction: Direction::AtLeast,
                event: Box::new(move |rng| dist.sample(rng) == k),
            }
        }
        ClaimId::Spacesplit => {
            let n = ClaimParams::need(params.n, "n")?;
            let bound = spacesplit_lower_bound(p)?;
            let dist = binomial(n, p)?;
            let half_mean = n as f64 * p / 2.0;
            ClaimSetup {
                bound,
                direction: Direction::AtLeast,
                event: Box::new(move |rng| dist.sample(rng) as f64 >= half_mean),
            }
        }
    })
}

/// Samples the claim's random variables `trials` times and compares the
/// empirical probability with the claimed bound.
///
/// Trials are split into shards of 10⁴, shard `i` drawing from a ChaCha
/// stream `i` under `seed`, so the result does not depend on thread count.
/// Upper bounds hold when the lower end of the three-standard-error band is
/// at most the bound, lower bounds when its upper end is at least the bound,
/// and exact formulas when the formula lies inside the band computed from
/// the formula's own variance.
///
/// The asymptotic claims get fixed finite-size thresholds:
/// `binequal` uses `(πσ²)^(-1/2)`, `binclose` uses 0.1 and `binfar` uses
/// `exp(−N^(1/3)/5)` with `N = max(N₁, N₂)`.
pub fn monte_carlo_verdict(claim: ClaimId, params: ClaimParams, trials: u64, seed: u64) -> Result<BoundVerdict> {
    if trials < MIN_MONTE_CARLO_TRIALS {
        return invalid(format!("need at least {MIN_MONTE_CARLO_TRIALS} trials, got {trials}"));
    }
    let setup = setup(claim, &params)?;
    let shards = trials.div_ceil(SHARD_TRIALS);
    let hits: u64 = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let count = SHARD_TRIALS.min(trials - shard * SHARD_TRIALS);
            (0..count).filter(|_| (setup.event)(&mut rng)).count() as u64
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();

    let estimate = hits as f64 / trials as f64;
    let se = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    let band = [(estimate - 3.0 * se).max(0.0), (estimate + 3.0 * se).min(1.0)];
    let holds = match setup.direction {
        Direction::AtMost => band[0] <= setup.bound,
        Direction::AtLeast => band[1] >= setup.bound,
        Direction::Equals => {
            let f = setup.bound;
            let se_f = (f * (1.0 - f) / trials as f64).sqrt();
            (estimate - f).abs() <= 3.0 * se_f
        }
    };
    Ok(BoundVerdict { claim, params, probability: estimate, bound: setup.bound, band, holds, trials, seed: Some(seed) })
}

fn exact_verdict(claim: ClaimId, params: ClaimParams, probability: f64, bound: f64, holds: bool) -> BoundVerdict {
    BoundVerdict { claim, params, probability, bound, band: [probability, probability], holds, trials: 0, seed: None }
}

/// Checks a claim against exact binomial arithmetic (`N ≤ 64`).
///
/// Supported for `binparity` (formula against the summed even point masses,
/// to 1e-12), `binsmall`, `bernstein` and `spacesplit` (with `X ~ Bin(N, p)`).
pub fn exact_verdict_for(claim: ClaimId, params: ClaimParams) -> Result<BoundVerdict> {
    let n = ClaimParams::need(params.n, "n")?;
    let p = ClaimParams::need(params.p, "p")?;
    let spec = BinomialSpec::new(n, p)?;
    let exact = ExactBinomial::new(spec)?;
    Ok(match claim {
        ClaimId::Binparity => {
            let even = to_f64(&exact.probability_where(|k| k % 2 == 0));
            let formula = parity_probability(spec);
            exact_verdict(claim, params, even, formula, (even - formula).abs() <= 1e-12)
        }
        ClaimId::Binsmall => {
            let k = ClaimParams::need(params.k, "k")?;
            if k > n {
                return invalid(format!("k = {k} exceeds N = {n}"));
            }
            let pmf = to_f64(&exact.pmf(k));
            let bound = binsmall_lower_bound(spec, k)?;
            exact_verdict(claim, params, pmf, bound, pmf >= bound)
        }
        ClaimId::Bernstein => {
            let t = ClaimParams::need(params.t, "t")?;
            let bound = bernstein_upper_bound(spec, t)?;
            let mean = BigRational::from_float(p).unwrap() * BigInt::from(n);
            let t_exact = BigRational::from_float(t).unwrap();
            let tail = exact.probability_where(|k| {
                let dev = BigRational::from_integer(BigInt::from(k)) - &mean;
                dev.abs() > t_exact
            });
            let tail = to_f64(&tail);
            exact_verdict(claim, params, tail, bound, tail <= bound)
        }
        ClaimId::Spacesplit => {
            if p == 0.0 {
                return invalid("spacesplit needs p > 0");
            }
            let bound = spacesplit_lower_bound(p)?;
            // E[X] = Np exactly; X ≥ Np/2 compared in exact arithmetic.
            let half_mean = BigRational::from_float(p).unwrap() * BigInt::from(n) / BigInt::from(2);
            let prob = to_f64(&exact.probability_where(|k| BigRational::from_integer(BigInt::from(k)) >= half_mean));
            exact_verdict(claim, params, prob, bound, prob >= bound)
        }
        _ => return invalid(format!("{claim} has no exact check")),
    })
}

/// Checks the first-moment bound on an arbitrary finite distribution given
/// as `(value, probability)` atoms with every value at most `cap` and
/// `E[X] ≥ cap·p`.
pub fn spacesplit_check_distribution(atoms: &[(f64, f64)], cap: f64, p: f64) -> Result<BoundVerdict> {
    let bound = spacesplit_lower_bound(p)?;
    if atoms.iter().any(|&(v, q)| v > cap || !(0.0..=1.0).contains(&q)) {
        return invalid("atoms must lie at or below the cap with probabilities in [0, 1]");
    }
    let mass = compensated_sum(atoms.iter().map(|a| a.1));
    if (mass - 1.0).abs() > 1e-9 {
        return invalid(format!("probabilities sum to {mass}, not 1"));
    }
    let mean = compensated_sum(atoms.iter().map(|&(v, q)| v * q));
    if mean < cap * p * (1.0 - 1e-12) {
        return invalid(format!("mean {mean} below cap·p = {}", cap * p));
    }
    let prob = compensated_sum(atoms.iter().filter(|a| a.0 >= mean / 2.0).map(|a| a.1));
    let params = ClaimParams { p: Some(p), t: Some(cap), ..Default::default() };
    Ok(exact_verdict(ClaimId::Spacesplit, params, prob, bound, prob >= bound * (1.0 - 1e-12)))
}

/// Draws a Bernoulli(p) sample.
pub(crate) fn coin(rng: &mut impl Rng, p: f64) -> bool {
    if p <= 0.0 {
        false
    } else if p >= 1.0 {
        true
    } else {
        rng.random::<f64>() < p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u64, p: f64) -> BinomialSpec {
        BinomialSpec::new(n, p).unwrap()
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(binomial_pmf(spec(1, 0.5), 0).unwrap(), 0.5);
        assert_eq!(binomial_pmf(spec(4, 0.5), 2).unwrap(), 0.375);
        let total = compensated_sum((0..=30).map(|k| binomial_pmf(spec(30, 0.37), k).unwrap()));
        assert!((total - 1.0).abs() < 1e-12);
        assert!(binomial_pmf(spec(3, 0.5), 4).is_err());
    }

    #[test]
    fn log_domain_pmf_normalises() {
        let s = spec(500, 0.37);
        let total = compensated_sum((0..=500).map(|k| binomial_pmf(s, k).unwrap()));
        assert!((total - 1.0).abs() < 1e-10);
        // Matches the exact route at the boundary.
        let exact = binomial_pmf(spec(64, 0.3), 20).unwrap();
        let logd = log_pmf(spec(64, 0.3), 20).exp();
        assert!((exact - logd).abs() < 1e-12);
    }

    #[test]
    fn parity_examples() {
        assert!((parity_probability(spec(1, 0.3)) - 0.7).abs() < 1e-15);
        assert_eq!(parity_probability(spec(9, 0.5)), 0.5);
        assert_eq!(parity_probability(spec(2, 1.0)), 1.0);
    }

    #[test]
    fn binsmall_examples() {
        let b = binsmall_lower_bound(spec(10, 0.1), 1).unwrap();
        assert!((b - (-10f64).exp()).abs() < 1e-18);
        assert!(binomial_pmf(spec(10, 0.1), 1).unwrap() >= b);
        let b0 = binsmall_lower_bound(spec(20, 0.05), 0).unwrap();
        assert!((b0 - (-10f64).exp()).abs() < 1e-18);
        assert!((binomial_pmf(spec(20, 0.05), 0).unwrap() - 0.95f64.powi(20)).abs() < 1e-15);
        assert_eq!(binsmall_lower_bound(spec(10, 0.0), 0).unwrap(), 1.0);
        assert!(binsmall_lower_bound(spec(10, 0.6), 0).is_err());
    }

    #[test]
    fn bernstein_examples() {
        let b = bernstein_upper_bound(spec(100, 0.5), 30.0).unwrap();
        assert!((b - (-900.0f64 / 70.0).exp()).abs() < 1e-18);
        let v = exact_verdict_for(
            ClaimId::Bernstein,
            ClaimParams { n: Some(10), p: Some(0.5), t: Some(10.0), ..Default::default() },
        )
        .unwrap();
        assert_eq!(v.probability, 0.0);
        assert!(v.holds);
        let v = exact_verdict_for(
            ClaimId::Bernstein,
            ClaimParams { n: Some(64), p: Some(0.9), t: Some(16.0), ..Default::default() },
        )
        .unwrap();
        assert!(v.holds);
        assert!(bernstein_upper_bound(spec(5, 0.5), 0.0).is_err());
    }

    #[test]
    fn spacesplit_examples() {
        assert_eq!(spacesplit_lower_bound(1.0).unwrap(), 1.0);
        assert!(spacesplit_lower_bound(0.0).is_err());
        let v = exact_verdict_for(ClaimId::Spacesplit, ClaimParams { n: Some(10), p: Some(0.5), ..Default::default() })
            .unwrap();
        assert!((v.probability - (1.0 - 56.0 / 1024.0)).abs() < 1e-15);
        assert!(v.holds);
        let two_point = spacesplit_check_distribution(&[(0.0, 0.7), (10.0, 0.3)], 10.0, 0.3).unwrap();
        assert!((two_point.probability - 0.3).abs() < 1e-15);
        assert!(two_point.holds);
    }

    #[test]
    fn claim_parsing() {
        let (c, p) = parse_claim("binequal:n=50").unwrap();
        assert_eq!(c, ClaimId::Binequal);
        assert_eq!(p.n, Some(50));
        assert_eq!(p.p, Some(0.3));
        assert!(parse_claim("nope").is_err());
        assert!(parse_claim("binfar:q=1").is_err());
    }

    #[test]
    fn monte_carlo_rejects_small_budgets_and_bad_hypotheses() {
        assert!(monte_carlo_verdict(ClaimId::Binparity, ClaimId::Binparity.default_params(), 100, 1).is_err());
        let low_p = ClaimParams { p: Some(0.2), ..ClaimId::Binclose.default_params() };
        assert!(monte_carlo_verdict(ClaimId::Binclose, low_p, 10_000, 1).is_err());
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let params = ClaimId::Binparity.default_params();
        let a = monte_carlo_verdict(ClaimId::Binparity, params, 20_000, 9).unwrap();
        let b = monte_carlo_verdict(ClaimId::Binparity, params, 20_000, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.holds);
    }
}
