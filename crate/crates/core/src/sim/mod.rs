//! Finite-sample simulation and maximum-likelihood reconstruction.

mod estimate;
mod experiment;

use rand::Rng;
use serde::Serialize;

use crate::bloch::{JointPovm, Observable, Outcome, QubitState, Sign};
use crate::error::{Error, Result};
use crate::rng::derive_rng;

pub use estimate::{
    estimate_report, fisher_information, log_likelihood, mle_estimate, EstimationReport, MleEstimate,
};
pub use experiment::{
    asymptotic_experiment, split_strategy, ExperimentReport, SplitReport, TrialEstimate, VarianceRatio,
};

/// Counts of the four joint outcomes, in [`Outcome::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    n: u64,
    counts: [u64; 4],
}

impl OutcomeCounts {
    pub fn new(counts: [u64; 4]) -> Self {
        Self { n: counts.iter().sum(), counts }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn counts(&self) -> [u64; 4] {
        self.counts
    }

    pub fn get(&self, outcome: Outcome) -> u64 {
        self.counts[outcome.index()]
    }

    /// `N_α(+)` and `N_α(−)`.
    pub fn marginal(&self, which: Observable) -> MarginalCounts {
        let plus = Outcome::ALL
            .iter()
            .filter(|o| o.reading(which) == Sign::Plus)
            .map(|o| self.get(*o))
            .sum();
        MarginalCounts { plus, minus: self.n - plus }
    }
}

/// Counts of `+` and `−` readings for one observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MarginalCounts {
    pub plus: u64,
    pub minus: u64,
}

impl MarginalCounts {
    pub fn total(&self) -> u64 {
        self.plus + self.minus
    }
}

/// Draws `n` independent outcomes of `povm` on `state`.
pub fn simulate(povm: &JointPovm, state: &QubitState, n: u64, seed: u64) -> Result<OutcomeCounts> {
    simulate_with(povm, state, n, &mut derive_rng(seed, 0))
}

pub fn simulate_with<R: Rng + ?Sized>(
    povm: &JointPovm,
    state: &QubitState,
    n: u64,
    rng: &mut R,
) -> Result<OutcomeCounts> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let q = povm.distribution(state);
    let total: f64 = q.iter().sum();
    let mut cumulative = [0.0; 4];
    let mut acc = 0.0;
    for (c, p) in cumulative.iter_mut().zip(q) {
        acc += p;
        *c = acc;
    }
    let mut counts = [0u64; 4];
    for _ in 0..n {
        let u = rng.random::<f64>() * total;
        let k = cumulative.iter().position(|&c| u < c).unwrap_or(3);
        counts[k] += 1;
    }
    Ok(OutcomeCounts::new(counts))
}
