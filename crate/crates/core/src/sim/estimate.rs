use serde::Serialize;

use super::{MarginalCounts, OutcomeCounts};
use crate::bloch::{JointPovm, Observable, ObservablePair};
use crate::channel::{build_channel, NonidealChannel};
use crate::error::{Error, Result};

/// `Σ_i N(i) ln q(i)` with `q(+) = F_{++} p + F_{+-}(1 − p)`.
///
/// Outcomes with zero count contribute nothing, so the value stays finite
/// where `q = 0` coincides with `N = 0`. A positive count on a `q = 0`
/// outcome gives `−∞`.
pub fn log_likelihood(channel: &NonidealChannel, counts: MarginalCounts, p_plus: f64) -> f64 {
    let [q_plus, q_minus] = channel.apply(p_plus);
    term(counts.plus, q_plus) + term(counts.minus, q_minus)
}

fn term(count: u64, q: f64) -> f64 {
    if count == 0 {
        0.0
    } else if q <= 0.0 {
        f64::NEG_INFINITY
    } else {
        count as f64 * q.ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MleEstimate {
    /// Maximizer of the likelihood on `[0, 1]`.
    pub p_star: f64,
    /// Unconstrained stationary point `(N₊/N − F_{+-}) / (F_{++} − F_{+-})`.
    pub raw: f64,
    /// Whether `raw` fell outside `[0, 1]`.
    pub clipped: bool,
}

/// Maximum-likelihood estimate of `p_α(+)` from marginal counts.
///
/// The likelihood is concave in `p`, so the constrained maximizer is the
/// unconstrained one clipped to `[0, 1]`.
pub fn mle_estimate(channel: &NonidealChannel, counts: MarginalCounts) -> Result<MleEstimate> {
    let n = counts.total();
    if n == 0 {
        return Err(Error::InvalidArgument("no samples to estimate from".into()));
    }
    let det = channel.det();
    if channel.x_norm() == 0.0 || det == 0.0 {
        return Err(Error::InvalidArgument(
            "channel is uninformative (accuracy zero); p cannot be estimated".into(),
        ));
    }
    let f = channel.f();
    let freq = counts.plus as f64 / n as f64;
    let raw = (freq - f[0][1]) / det;
    let p_star = raw.clamp(0.0, 1.0);
    Ok(MleEstimate { p_star, raw, clipped: p_star != raw })
}

/// Per-sample Fisher information `𝒳 / (q(+) q(−))` about `p_α(+)`.
pub fn fisher_information(channel: &NonidealChannel, p_plus: f64) -> Result<f64> {
    let accuracy = channel.accuracy();
    if accuracy == 0.0 {
        return Ok(0.0);
    }
    let [q_plus, q_minus] = channel.apply(p_plus);
    if q_plus <= 0.0 || q_minus <= 0.0 {
        return Err(Error::SingularInformation { q: q_plus });
    }
    Ok(accuracy / (q_plus * q_minus))
}

/// Estimates of both marginal distributions from one batch of counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimationReport {
    pub n: u64,
    pub counts: OutcomeCounts,
    pub p_star_a: f64,
    pub p_star_b: f64,
    pub clipped_a: bool,
    pub clipped_b: bool,
    /// Plug-in Fisher information at `p*`; `None` where it is singular.
    pub fisher_a: Option<f64>,
    pub fisher_b: Option<f64>,
    pub accuracy_a: f64,
    pub accuracy_b: f64,
}

pub fn estimate_report(povm: &JointPovm, obs: &ObservablePair, counts: &OutcomeCounts) -> Result<EstimationReport> {
    let est = |which: Observable| -> Result<(MleEstimate, Option<f64>, f64)> {
        let ch = build_channel(povm, obs, which)?;
        if ch.accuracy() == 0.0 {
            return Err(Error::NoInformation(which));
        }
        let m = mle_estimate(&ch, counts.marginal(which))?;
        Ok((m, fisher_information(&ch, m.p_star).ok(), ch.accuracy()))
    };
    let (a, fa, xa) = est(Observable::A)?;
    let (b, fb, xb) = est(Observable::B)?;
    Ok(EstimationReport {
        n: counts.n(),
        counts: *counts,
        p_star_a: a.p_star,
        p_star_b: b.p_star,
        clipped_a: a.clipped,
        clipped_b: b.clipped,
        fisher_a: fa,
        fisher_b: fb,
        accuracy_a: xa,
        accuracy_b: xb,
    })
}
