//! Numerical map of the accessible `(𝒳_A, 𝒳_B)` region.
//!
//! For each target `𝒳_A` on a grid the sweep searches for the largest `𝒳_B`
//! that some valid joint POVM reaches. With `x_A = a·n_A`, `x_B = b·n_B` and
//! `a = √𝒳_A / 2` fixed, a candidate `b` is feasible iff some `x_++` keeps
//! `Σ |x_ij| ≤ 1` (slack allocation never affects feasibility). The outer loop
//! bisects on `b`; the inner loop minimizes `Σ |x_ij|` over `x_++` with
//! multi-start Nelder–Mead. Every reported point comes with the witness POVM
//! that achieves it, so the sweep can undershoot the true frontier but never
//! overshoot it.

use rand::Rng;
use rand_distr::{Distribution, Exp1, UnitBall};
use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::{BlochVector, JointPovm, ObservablePair};
use crate::error::{Error, Result};
use crate::nelder_mead::{minimize, NelderMeadOptions};
use crate::optimal::boundary_curve;
use crate::rng::derive_rng;
use crate::sampler::{assemble, coefficient_vectors};
use crate::tradeoff::AccuracyPair;

/// Rounding allowance on `Σ |x_ij| ≤ 1`. Kept far below the constraint
/// tolerance so a witness never lands outside the true feasible set by more
/// than float noise.
const FEASIBILITY_SLACK: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub grid_size: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { grid_size: 41, restarts: 16, seed: 0 }
    }
}

/// An achieved accuracy pair together with the POVM that achieves it.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPoint {
    pub x_a: f64,
    pub x_b: f64,
    pub achieved_by: Option<JointPovm>,
}

/// One grid point of the sweep, compared with the analytic frontier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub x_a_target: f64,
    pub x_b_achieved: f64,
    pub x_b_boundary: f64,
    /// `x_b_boundary − x_b_achieved`.
    pub gap: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub points: Vec<RegionPoint>,
}

impl SweepResult {
    pub fn max_gap(&self) -> f64 {
        self.rows.iter().map(|r| r.gap.abs()).fold(0.0, f64::max)
    }
}

/// Sweeps `config.grid_size` evenly spaced targets `𝒳_A ∈ [0, 1]`.
pub fn region_sweep(obs: &ObservablePair, config: &SweepConfig) -> Result<SweepResult> {
    if config.grid_size < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid_size must be at least 2, got {}",
            config.grid_size
        )));
    }
    let last = (config.grid_size - 1) as f64;
    let targets: Vec<f64> = (0..config.grid_size).map(|k| k as f64 / last).collect();
    sweep_targets(obs, &targets, config)
}

/// Maximizes `𝒳_B` at each given `𝒳_A`. Point `k` draws from RNG stream `k`
/// of `config.seed`.
pub fn sweep_targets(obs: &ObservablePair, targets: &[f64], config: &SweepConfig) -> Result<SweepResult> {
    if config.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be positive".into()));
    }
    if let Some(t) = targets.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(Error::InvalidArgument(format!("target x_a = {t} is outside [0, 1]")));
    }
    let results: Vec<Result<(SweepRow, RegionPoint)>> = targets
        .par_iter()
        .enumerate()
        .map(|(k, &target)| {
            let mut rng = derive_rng(config.seed, k as u64);
            sweep_point(obs, target, config.restarts, &mut rng)
        })
        .collect();
    let mut rows = Vec::with_capacity(targets.len());
    let mut points = Vec::with_capacity(targets.len());
    for r in results {
        let (row, point) = r?;
        rows.push(row);
        points.push(point);
    }
    Ok(SweepResult { rows, points })
}

fn sweep_point<R: Rng>(obs: &ObservablePair, x_a_target: f64, restarts: usize, rng: &mut R) -> Result<(SweepRow, RegionPoint)> {
    let x_a = obs.n_a() * (0.5 * x_a_target.sqrt());
    let (b, x_pp) = max_feasible_b(obs, x_a, restarts, rng);
    let weights: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let povm = assemble(x_a, obs.n_b() * b, x_pp, weights)?;
    let achieved = AccuracyPair::from_povm(&povm, obs)?;
    let boundary = boundary_curve(obs.theta(), x_a_target)?;
    let row = SweepRow {
        theta: obs.theta(),
        x_a_target,
        x_b_achieved: achieved.x_b,
        x_b_boundary: boundary,
        gap: boundary - achieved.x_b,
    };
    let point = RegionPoint { x_a: achieved.x_a, x_b: achieved.x_b, achieved_by: Some(povm) };
    Ok((row, point))
}

/// Largest `b` (to ~1e-13) for which a feasible `x_++` is found, and that
/// `x_++`.
fn max_feasible_b<R: Rng>(obs: &ObservablePair, x_a: BlochVector, restarts: usize, rng: &mut R) -> (f64, BlochVector) {
    // b = 0 is feasible with x_++ = x_A/2, where Σ|x_ij| = 2|x_A| <= 1.
    let mut lo = 0.0;
    let mut witness = x_a * 0.5;
    let hi_b = 0.5;
    if let Some(w) = find_feasible(x_a, obs.n_b() * hi_b, restarts, rng) {
        return (hi_b, w);
    }
    let mut hi = hi_b;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        match find_feasible(x_a, obs.n_b() * mid, restarts, rng) {
            Some(w) => {
                lo = mid;
                witness = w;
            }
            None => hi = mid,
        }
    }
    (lo, witness)
}

fn norm_sum(x_a: BlochVector, x_b: BlochVector, x_pp: BlochVector) -> f64 {
    coefficient_vectors(x_a, x_b, x_pp).iter().map(|x| x.norm()).sum()
}

/// Multi-start minimization of `Σ |x_ij|` over `x_++`; returns the first
/// minimizer with `Σ |x_ij| ≤ 1` up to rounding ([`FEASIBILITY_SLACK`]).
fn find_feasible<R: Rng>(x_a: BlochVector, x_b: BlochVector, restarts: usize, rng: &mut R) -> Option<BlochVector> {
    let opts = NelderMeadOptions { initial_step: 0.05, max_evals: 3_000, f_tol: 1e-15, x_tol: 1e-14 };
    let objective = |v: &[f64]| norm_sum(x_a, x_b, BlochVector::new(v[0], v[1], v[2]));
    for _ in 0..restarts {
        let [u, v, w]: [f64; 3] = UnitBall.sample(rng);
        let start = [0.5 * u, 0.5 * v, 0.5 * w];
        let m = minimize(objective, &start, &opts);
        if m.value <= 1.0 + FEASIBILITY_SLACK {
            return Some(BlochVector::new(m.x[0], m.x[1], m.x[2]));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tradeoff::tradeoff_check;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn right_angle_frontier_is_the_line() {
        let obs = ObservablePair::with_angle(FRAC_PI_2).unwrap();
        let res = region_sweep(&obs, &SweepConfig { grid_size: 11, ..Default::default() }).unwrap();
        for row in &res.rows {
            assert!((row.x_a_target + row.x_b_achieved - 1.0).abs() < 1e-3, "{row:?}");
            assert!(row.x_b_achieved <= row.x_b_boundary + 1e-9);
        }
        assert_eq!(res.rows[0].x_b_achieved, 1.0);
        assert!(res.rows[10].x_b_achieved < 1e-14, "{:?}", res.rows[10]);
        for p in &res.points {
            let pair = AccuracyPair::new(p.x_a, p.x_b, obs.theta()).unwrap();
            assert!(tradeoff_check(&pair).is_satisfied(), "{:?}", tradeoff_check(&pair));
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let obs = ObservablePair::with_angle(0.6).unwrap();
        let cfg = SweepConfig { grid_size: 5, restarts: 4, seed: 3 };
        let a = region_sweep(&obs, &cfg).unwrap();
        let b = region_sweep(&obs, &cfg).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn rejects_tiny_grid() {
        let obs = ObservablePair::with_angle(0.6).unwrap();
        assert!(region_sweep(&obs, &SweepConfig { grid_size: 1, ..Default::default() }).is_err());
    }
}
