use serde::Serialize;

use crate::error::{invalid, Result};

/// Tunable constants of the randomized splitter.
///
/// Only `ε`, `β` and the free constants are stored; the constants defined
/// in terms of them are computed on demand, so they can never drift from
/// their formulas.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitParams {
    epsilon: f64,
    beta: f64,
    box_gap: u32,
    ramsey: Option<usize>,
    c6: f64,
    box_index: Option<u32>,
    pub seed: u64,
    pub max_attempts: usize,
    pub min_n: usize,
}

/// A snapshot of every constant, for traces.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivedConstants {
    pub epsilon: f64,
    pub beta: f64,
    pub c1: f64,
    pub big_c1: f64,
    pub c2: f64,
    pub big_c2: u32,
    pub c3: f64,
    pub big_c3: usize,
    pub big_c4: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub p: Option<f64>,
}

impl SplitParams {
    /// Defaults: `β = ε²/64`, `C₂ = 10`, `c₆ = 0.05`, 8 attempts.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return invalid(format!("epsilon {epsilon} outside (0, 1/2)"));
        }
        Ok(SplitParams {
            epsilon,
            beta: epsilon * epsilon / 64.0,
            box_gap: 10,
            ramsey: None,
            c6: 0.05,
            box_index: None,
            seed: 0,
            max_attempts: 8,
            min_n: 4,
        })
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return invalid(format!("beta {beta} outside (0, 1)"));
        }
        self.beta = beta;
        Ok(self)
    }

    /// Sets `C₂`, the number of boxes skipped between one-gadget and
    /// medium-gadget candidates.
    pub fn with_box_gap(mut self, gap: u32) -> Result<Self> {
        if gap == 0 || gap > 62 {
            return invalid(format!("box gap {gap} outside 1..=62"));
        }
        self.box_gap = gap;
        Ok(self)
    }

    /// Fixes `C₃` instead of deriving it from the clump count.
    pub fn with_ramsey(mut self, c3: usize) -> Result<Self> {
        if c3 < 3 {
            return invalid(format!("group size {c3} below 3"));
        }
        self.ramsey = Some(c3);
        Ok(self)
    }

    pub fn with_c6(mut self, c6: f64) -> Result<Self> {
        if !(c6 > 0.0 && c6 <= 1.0) {
            return invalid(format!("c6 {c6} outside (0, 1]"));
        }
        self.c6 = c6;
        Ok(self)
    }

    /// Fixes the box index `k`, which sets `p = min(ε, 2^{−k})`.
    pub fn with_box_index(mut self, k: u32) -> Self {
        self.box_index = Some(k);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_attempts(mut self, attempts: usize) -> Result<Self> {
        if attempts == 0 {
            return invalid("at least one attempt is needed");
        }
        self.max_attempts = attempts;
        Ok(self)
    }

    pub fn with_min_n(mut self, min_n: usize) -> Self {
        self.min_n = min_n;
        self
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn c1(&self) -> f64 {
        self.epsilon / 2.0
    }

    pub fn big_c1(&self) -> f64 {
        4.0 / self.epsilon
    }

    pub fn c2(&self) -> f64 {
        self.epsilon / 12.0
    }

    pub fn big_c2(&self) -> u32 {
        self.box_gap
    }

    pub fn c3(&self) -> f64 {
        self.c2() / (3.0 * self.box_gap as f64)
    }

    /// `C₃` for `clumps` clumps: the override if set, else
    /// [`ramsey_surrogate`].
    pub fn big_c3(&self, clumps: usize) -> usize {
        self.ramsey.unwrap_or_else(|| ramsey_surrogate(clumps))
    }

    pub fn big_c4(&self, clumps: usize) -> f64 {
        4.0 * self.big_c3(clumps) as f64 / self.epsilon
    }

    pub fn c4(&self, clumps: usize) -> f64 {
        self.beta / (2.0 * self.big_c4(clumps))
    }

    pub fn c5(&self) -> f64 {
        self.c6 / 4.0
    }

    pub fn c6(&self) -> f64 {
        self.c6
    }

    pub fn box_index(&self) -> Option<u32> {
        self.box_index
    }

    /// `min(ε, 2^{−k})` for the configured box index, or `ε` without one.
    pub fn deletion_probability(&self) -> f64 {
        match self.box_index {
            Some(k) => self.epsilon.min(0.5f64.powi(k as i32)),
            None => self.epsilon,
        }
    }

    /// Most vertices a successful run may delete: `⌊2εn⌋`.
    pub fn deletion_budget(&self, n: usize) -> usize {
        (2.0 * self.epsilon * n as f64).floor() as usize
    }

    pub fn constants(&self, clumps: usize) -> DerivedConstants {
        DerivedConstants {
            epsilon: self.epsilon,
            beta: self.beta,
            c1: self.c1(),
            big_c1: self.big_c1(),
            c2: self.c2(),
            big_c2: self.big_c2(),
            c3: self.c3(),
            big_c3: self.big_c3(clumps),
            big_c4: self.big_c4(clumps),
            c4: self.c4(clumps),
            c5: self.c5(),
            c6: self.c6,
            p: self.box_index.map(|_| self.deletion_probability()),
        }
    }
}

/// An upper bound on the multicolour Ramsey number `R(3; m)`: the smallest
/// group size guaranteed to contain a triangle of a single colour when its
/// pairs are coloured with `m` colours. Exact for `m ≤ 2`, then
/// `⌊e·m!⌋ + 1`, saturating.
pub fn ramsey_surrogate(m: usize) -> usize {
    match m {
        0 | 1 => 3,
        2 => 6,
        _ => {
            let mut factorial = 1f64;
            for i in 2..=m {
                factorial *= i as f64;
            }
            let bound = (std::f64::consts::E * factorial).floor() + 1.0;
            if bound >= usize::MAX as f64 {
                usize::MAX
            } else {
                bound as usize
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants_follow_their_formulas() {
        let p = SplitParams::new(0.1).unwrap();
        assert!((p.beta() - 0.01 / 64.0).abs() < 1e-15);
        assert!((p.c1() - 0.05).abs() < 1e-15);
        assert!((p.big_c1() - 40.0).abs() < 1e-12);
        assert!((p.c3() - 0.1 / 12.0 / 30.0).abs() < 1e-15);
        assert_eq!(p.big_c3(2), 6);
        assert!((p.big_c4(2) - 240.0).abs() < 1e-9);
        assert!((p.c5() - 0.0125).abs() < 1e-15);
        assert_eq!(p.deletion_budget(1000), 200);
    }

    #[test]
    fn deletion_probability_is_capped_by_epsilon() {
        let p = SplitParams::new(0.1).unwrap();
        assert_eq!(p.clone().with_box_index(2).deletion_probability(), 0.1);
        assert_eq!(p.with_box_index(6).deletion_probability(), 1.0 / 64.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SplitParams::new(0.5).is_err());
        assert!(SplitParams::new(0.0).is_err());
        assert!(SplitParams::new(0.1).unwrap().with_beta(0.0).is_err());
        assert!(SplitParams::new(0.1).unwrap().with_attempts(0).is_err());
    }

    #[test]
    fn ramsey_values() {
        assert_eq!(ramsey_surrogate(1), 3);
        assert_eq!(ramsey_surrogate(2), 6);
        assert_eq!(ramsey_surrogate(3), 17);
        assert_eq!(ramsey_surrogate(4), 66);
    }
}
