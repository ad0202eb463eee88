//! Random valid nonideal joint POVMs.
//!
//! A joint POVM with prescribed marginal vectors `x_A = a·n_A`, `x_B = b·n_B`
//! has one free vector, `x_++`; the others follow from the marginals and from
//! `Σ x_ij = 0`:
//!
//! ```text
//! x_+- = x_A − x_++,   x_-+ = x_B − x_++,   x_-- = x_++ − x_A − x_B
//! ```
//!
//! Positivity needs `r_ij ≥ |x_ij|` and completeness `Σ r_ij = 1`, so the
//! choice is feasible iff `Σ |x_ij| ≤ 1`. The leftover `1 − Σ |x_ij|` is spread
//! over the four `r_ij` with Dirichlet(1,1,1,1) weights.
//!
//! `Σ |x_ij|` is minimized at `x_++ = (x_A + x_B)/2`, where it equals
//! `|x_A + x_B| + |x_A − x_B|`, and grows by at most `4|δ|` when `x_++` moves
//! by `δ`. Sampling `δ` uniformly in a ball of radius equal to the remaining
//! budget therefore succeeds with probability at least 1/64 per try.

use rand::Rng;
use rand_distr::{Distribution, Exp1, UnitBall};

use crate::bloch::{BlochVector, JointPovm, ObservablePair};
use crate::error::{Error, Result};
use crate::rng::derive_rng;
use crate::TOLERANCE;

pub const MAX_RETRIES: usize = 10_000;

pub const MIN_SAMPLED_MAGNITUDE: f64 = 1e-6;

/// The four `x_ij` (in `++, +-, -+, --` order) for given marginals and `x_++`.
pub fn coefficient_vectors(x_a: BlochVector, x_b: BlochVector, x_pp: BlochVector) -> [BlochVector; 4] {
    [x_pp, x_a - x_pp, x_b - x_pp, x_pp - x_a - x_b]
}

/// Smallest achievable `Σ |x_ij|` for the given marginal vectors.
pub fn minimal_norm_sum(x_a: BlochVector, x_b: BlochVector) -> f64 {
    (x_a + x_b).norm() + (x_a - x_b).norm()
}

/// Assembles a joint POVM from marginal vectors, the free vector `x_++` and
/// nonnegative slack weights (normalized internally; all-zero means equal).
pub fn assemble(
    x_a: BlochVector,
    x_b: BlochVector,
    x_pp: BlochVector,
    slack_weights: [f64; 4],
) -> Result<JointPovm> {
    let xs = coefficient_vectors(x_a, x_b, x_pp);
    let norms = xs.map(BlochVector::norm);
    let total: f64 = norms.iter().sum();
    if total > 1.0 + TOLERANCE {
        return Err(Error::Infeasible(format!("sum of |x_ij| = {total} exceeds 1")));
    }
    let budget = (1.0 - total).max(0.0);
    let wsum: f64 = slack_weights.iter().sum();
    let weights = if wsum > 0.0 { slack_weights.map(|w| w / wsum) } else { [0.25; 4] };
    let mut coefficients = [(0.0, BlochVector::ZERO); 4];
    for k in 0..4 {
        coefficients[k] = (norms[k] + budget * weights[k], xs[k]);
    }
    JointPovm::from_coefficients(coefficients)
}

/// Random valid joint POVM whose marginals are nonideal measurements of `obs`.
///
/// With `magnitudes = Some((a, b))` the marginals are `x_A = a·n_A` and
/// `x_B = b·n_B` (`a, b ≥ 0`). With `None`, signed magnitudes are drawn
/// uniformly from the feasible part of `[-1/2, 1/2]²`, so both orientations
/// of each channel occur. Drawn magnitudes below [`MIN_SAMPLED_MAGNITUDE`]
/// are set to exactly zero: a marginal that short cannot have its direction
/// resolved to the parallelism tolerance after rounding.
pub fn sample_valid_povm(obs: &ObservablePair, seed: u64, magnitudes: Option<(f64, f64)>) -> Result<JointPovm> {
    sample_valid_povm_with(obs, &mut derive_rng(seed, 0), magnitudes)
}

pub fn sample_valid_povm_with<R: Rng + ?Sized>(
    obs: &ObservablePair,
    rng: &mut R,
    magnitudes: Option<(f64, f64)>,
) -> Result<JointPovm> {
    let (a, b) = match magnitudes {
        Some((a, b)) => {
            if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "magnitudes must be finite and nonnegative, got ({a}, {b})"
                )));
            }
            (a, b)
        }
        None => sample_magnitudes(obs, rng)?,
    };
    let x_a = obs.n_a() * a;
    let x_b = obs.n_b() * b;
    let min_sum = minimal_norm_sum(x_a, x_b);
    if min_sum > 1.0 + TOLERANCE {
        return Err(Error::Infeasible(format!(
            "|x_A + x_B| + |x_A - x_B| = {min_sum} > 1 for magnitudes ({a}, {b})"
        )));
    }
    let center = (x_a + x_b) * 0.5;
    let radius = (1.0 - min_sum).max(0.0);
    for _ in 0..MAX_RETRIES {
        let x_pp = if radius > 0.0 {
            let [u, v, w]: [f64; 3] = UnitBall.sample(rng);
            center + BlochVector::new(u, v, w) * radius
        } else {
            center
        };
        let total: f64 = coefficient_vectors(x_a, x_b, x_pp).iter().map(|x| x.norm()).sum();
        if total > 1.0 {
            continue;
        }
        let weights: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
        return assemble(x_a, x_b, x_pp, weights);
    }
    Err(Error::Infeasible(format!(
        "no feasible x_++ found after {MAX_RETRIES} tries for magnitudes ({a}, {b})"
    )))
}

fn sample_magnitudes<R: Rng + ?Sized>(obs: &ObservablePair, rng: &mut R) -> Result<(f64, f64)> {
    for _ in 0..MAX_RETRIES {
        let snap = |v: f64| if v.abs() < MIN_SAMPLED_MAGNITUDE { 0.0 } else { v };
        let a = snap(rng.random_range(-0.5..=0.5));
        let b = snap(rng.random_range(-0.5..=0.5));
        if minimal_norm_sum(obs.n_a() * a, obs.n_b() * b) <= 1.0 {
            return Ok((a, b));
        }
    }
    Err(Error::Infeasible("could not draw feasible marginal magnitudes".into()))
}
