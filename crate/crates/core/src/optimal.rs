//! The joint measurement that saturates the accuracy trade-off with equal
//! accuracies, and the analytic frontier of the accessible region.

use crate::bloch::{JointPovm, ObservablePair, PovmElement};
use crate::error::{Error, Result};

/// Optimal symmetric joint POVM for `obs`.
///
/// Elements are `|x_ij| I + x_ij·σ` with
/// `x_++ = −x_-- = r(n_A + n_B)`, `x_+- = −x_-+ = r(n_A − n_B)` and
/// `r = 1 / (2(|n_A + n_B| + |n_A − n_B|))`. Each element is a multiple of a
/// rank-one projector; the `++` and `+-` directions are orthogonal.
pub fn optimal_povm(obs: &ObservablePair) -> JointPovm {
    let sum = obs.n_a() + obs.n_b();
    let diff = obs.n_a() - obs.n_b();
    let r = 0.5 / (sum.norm() + diff.norm());
    let xs = [sum * r, diff * r, -(diff * r), -(sum * r)];
    let elements = xs.map(|x| PovmElement::new_unchecked(x.norm(), x));
    JointPovm::new(elements).expect("optimal POVM satisfies completeness by construction")
}

/// Common accuracy `𝒳_A = 𝒳_B = 1/(1 + sin θ)` of [`optimal_povm`].
pub fn optimal_accuracy(theta: f64) -> f64 {
    1.0 / (1.0 + theta.sin())
}

/// Largest `𝒳_B` compatible with `𝒳_A = x_a`: `(1 − x_a)/(1 − x_a cos²θ)`.
pub fn boundary_curve(theta: f64, x_a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x_a) {
        return Err(Error::InvalidArgument(format!("x_a = {x_a} is outside [0, 1]")));
    }
    let c2 = theta.cos().powi(2);
    let denom = 1.0 - x_a * c2;
    if denom <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "x_a cos^2(theta) = {} must be < 1",
            x_a * c2
        )));
    }
    Ok(((1.0 - x_a) / denom).clamp(0.0, 1.0))
}
