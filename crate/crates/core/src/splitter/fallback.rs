//! Direct balancing, used when the construction's preconditions fail.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::balance::min_signed_sum;
use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::{Method, SplitResult};

use super::params::SplitParams;

pub(crate) struct Outcome {
    pub result: Option<SplitResult>,
    pub rounds: usize,
}

struct Survivors<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
    count: usize,
}

impl Survivors<'_> {
    fn delete(&mut self, v: usize) {
        self.alive[v] = false;
        self.count -= 1;
        for u in self.g.neighbours(v) {
            if self.alive[u] {
                self.deg[u] -= 1;
            }
        }
    }

    fn members(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }

    /// The survivor whose degree is farthest from the median; ties go to
    /// the smallest id.
    fn outlier(&self) -> usize {
        let members = self.members();
        let mut degrees: Vec<usize> = members.iter().map(|&v| self.deg[v]).collect();
        degrees.sort_unstable();
        let median = degrees[degrees.len() / 2];
        *members
            .iter()
            .max_by_key(|&&v| (self.deg[v].abs_diff(median), std::cmp::Reverse(v)))
            .expect("survivors are non-empty")
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> usize {
        let members = self.members();
        members[rng.random_range(0..members.len())]
    }
}

/// Pairs survivors in degree order and orients the pairs with an exact
/// subset-sum table so that the two sides have equal degree sums. While no
/// orientation balances, deletes two more vertices (on even rounds the
/// degree outlier and a random survivor, otherwise two random survivors),
/// within the `⌊2εn⌋` budget.
pub(crate) fn direct_balance(g: &Graph, params: &SplitParams, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = g.n();
    let budget = params.deletion_budget(n);
    let mut s = Survivors { g, alive: vec![true; n], deg: g.degrees(), count: n };
    if n % 2 == 1 {
        if budget == 0 {
            return Ok(Outcome { result: None, rounds: 0 });
        }
        let v = s.outlier();
        s.delete(v);
    }
    let mut rounds = 0;
    loop {
        let mut order = s.members();
        order.sort_by_key(|&v| (s.deg[v], v));
        let pairs: Vec<(usize, usize)> = order.chunks_exact(2).map(|c| (c[1], c[0])).collect();
        let values: Vec<u64> = pairs.iter().map(|&(hi, lo)| (s.deg[hi] - s.deg[lo]) as u64).collect();
        let signs = min_signed_sum(&values, 0)?;
        if signs.residual == 0 {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (&(hi, lo), &sign) in pairs.iter().zip(&signs.signs) {
                let (x, y) = if sign > 0 { (hi, lo) } else { (lo, hi) };
                a.push(x);
                b.push(y);
            }
            let result = SplitResult::from_sides(g, a, b, Method::Randomized)?;
            return Ok(Outcome { result: Some(result), rounds });
        }
        if n - s.count + 2 > budget || s.count < 2 {
            return Ok(Outcome { result: None, rounds });
        }
        let first = if rounds % 2 == 0 { s.outlier() } else { s.random(rng) };
        s.delete(first);
        let second = s.random(rng);
        s.delete(second);
        rounds += 1;
    }
}
