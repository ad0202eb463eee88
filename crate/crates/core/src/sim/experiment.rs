use rayon::prelude::*;
use serde::Serialize;

use super::{mle_estimate, simulate_with, fisher_information};
use crate::bloch::{projector_probability, JointPovm, Observable, ObservablePair, PovmElement, QubitState, Sign};
use crate::channel::{build_channel, NonidealChannel};
use crate::error::{Error, Result};
use crate::rng::derive_rng;
use crate::tradeoff::AccuracyPair;
use crate::TOLERANCE;

/// MLE results of one simulated batch. `None` for an observable whose
/// marginal is uninformative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialEstimate {
    pub trial: u64,
    pub p_star_a: Option<f64>,
    pub p_star_b: Option<f64>,
}

/// Spread of `p*` over many trials against the Fisher prediction
/// `Var(p*) ≈ 1 / (n I)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceRatio {
    pub observable: Observable,
    pub p_true: f64,
    pub accuracy: f64,
    pub fisher: f64,
    pub mean_estimate: f64,
    pub empirical_variance: f64,
    pub predicted_variance: f64,
    /// `empirical_variance · n · I`; tends to 1 as `n` grows.
    pub ratio: f64,
    pub clipped_trials: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub n_per_trial: u64,
    pub trials: u64,
    pub seed: u64,
    pub a: Option<VarianceRatio>,
    pub b: Option<VarianceRatio>,
    #[serde(skip)]
    pub per_trial: Vec<TrialEstimate>,
}

struct Target {
    which: Observable,
    channel: NonidealChannel,
    p_true: f64,
}

/// Repeats "simulate `n_per_trial` samples, estimate `p_α(+)`" `trials`
/// times and compares the empirical variance of the estimates with the
/// inverse Fisher information. Trial `k` uses RNG stream `k` of `seed`.
pub fn asymptotic_experiment(
    povm: &JointPovm,
    obs: &ObservablePair,
    state: &QubitState,
    n_per_trial: u64,
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    if n_per_trial == 0 || trials < 2 {
        return Err(Error::InvalidArgument(
            "need n_per_trial >= 1 and at least 2 trials".into(),
        ));
    }
    let mut targets = Vec::new();
    for which in Observable::BOTH {
        let channel = build_channel(povm, obs, which)?;
        if channel.accuracy() == 0.0 {
            continue;
        }
        let p_true = projector_probability(state, obs.direction(which), Sign::Plus)?;
        if p_true <= TOLERANCE || p_true >= 1.0 - TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "p_{which}(+) = {p_true} is on the boundary; asymptotic normality needs an interior value"
            )));
        }
        targets.push(Target { which, channel, p_true });
    }
    if targets.is_empty() {
        return Err(Error::NoInformation(Observable::A));
    }

    let estimates: Vec<Result<(TrialEstimate, [bool; 2])>> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = derive_rng(seed, k);
            let counts = simulate_with(povm, state, n_per_trial, &mut rng)?;
            let mut out = TrialEstimate { trial: k, p_star_a: None, p_star_b: None };
            let mut clipped = [false; 2];
            for t in &targets {
                let m = mle_estimate(&t.channel, counts.marginal(t.which))?;
                match t.which {
                    Observable::A => {
                        out.p_star_a = Some(m.p_star);
                        clipped[0] = m.clipped;
                    }
                    Observable::B => {
                        out.p_star_b = Some(m.p_star);
                        clipped[1] = m.clipped;
                    }
                }
            }
            Ok((out, clipped))
        })
        .collect();
    let mut per_trial = Vec::with_capacity(trials as usize);
    let mut clipped_counts = [0u64; 2];
    for e in estimates {
        let (t, c) = e?;
        per_trial.push(t);
        for k in 0..2 {
            clipped_counts[k] += u64::from(c[k]);
        }
    }

    let mut report = ExperimentReport { n_per_trial, trials, seed, a: None, b: None, per_trial };
    for t in &targets {
        let values: Vec<f64> = report
            .per_trial
            .iter()
            .filter_map(|e| match t.which {
                Observable::A => e.p_star_a,
                Observable::B => e.p_star_b,
            })
            .collect();
        let m = values.len() as f64;
        let mean = values.iter().sum::<f64>() / m;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
        let fisher = fisher_information(&t.channel, t.p_true)?;
        let ratio = VarianceRatio {
            observable: t.which,
            p_true: t.p_true,
            accuracy: t.channel.accuracy(),
            fisher,
            mean_estimate: mean,
            empirical_variance: var,
            predicted_variance: 1.0 / (n_per_trial as f64 * fisher),
            ratio: var * n_per_trial as f64 * fisher,
            clipped_trials: match t.which {
                Observable::A => clipped_counts[0],
                Observable::B => clipped_counts[1],
            },
        };
        match t.which {
            Observable::A => report.a = Some(ratio),
            Observable::B => report.b = Some(ratio),
        }
    }
    Ok(report)
}

/// Sample-splitting baseline: a fraction `xi` of the samples gets a
/// projective measurement of `A`, the rest a projective measurement of `B`.
#[derive(Debug, Clone, Serialize)]
pub struct SplitReport {
    pub xi: f64,
    /// Per-sample Fisher information relative to a projective measurement on
    /// every sample: `(ξ, 1 − ξ)` for projective sub-measurements.
    pub effective: AccuracyPair,
    /// Accuracies of the marginals of `joint_povm`: `(ξ², (1 − ξ)²)`.
    pub relabeled: AccuracyPair,
    #[serde(skip)]
    pub joint_povm: JointPovm,
}

/// Builds the asymptotic POVM `{ξ P_A(±), (1 − ξ) P_B(±)}` and reports its
/// accuracies.
///
/// The four-outcome joint form assigns the unmeasured label by a fair coin:
/// `E(i,j) = ξ P_A(i)/2 + (1 − ξ) P_B(j)/2`.
pub fn split_strategy(obs: &ObservablePair, xi: f64) -> Result<SplitReport> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::InvalidArgument(format!("xi = {xi} must lie in (0, 1)")));
    }
    let sub_a = PovmElement::projector(obs.n_a(), Sign::Plus)?;
    let sub_b = PovmElement::projector(obs.n_b(), Sign::Plus)?;
    let sub_accuracy = |e: &PovmElement| -> Result<f64> {
        Ok(NonidealChannel::from_marginal(e.r(), e.x().norm())?.accuracy())
    };
    let effective = AccuracyPair::new(
        xi * sub_accuracy(&sub_a)?,
        (1.0 - xi) * sub_accuracy(&sub_b)?,
        obs.theta(),
    )?;

    let mut coefficients = [(0.0, crate::bloch::BlochVector::ZERO); 4];
    for (slot, o) in coefficients.iter_mut().zip(crate::bloch::Outcome::ALL) {
        let pa = PovmElement::projector(obs.n_a(), o.i)?;
        let pb = PovmElement::projector(obs.n_b(), o.j)?;
        *slot = (
            0.5 * (xi * pa.r() + (1.0 - xi) * pb.r()),
            (pa.x() * xi + pb.x() * (1.0 - xi)) * 0.5,
        );
    }
    let joint_povm = JointPovm::from_coefficients(coefficients)?;
    let relabeled = AccuracyPair::from_povm(&joint_povm, obs)?;
    Ok(SplitReport { xi, effective, relabeled, joint_povm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::BlochVector;
    use crate::optimal::optimal_povm;
    use crate::tradeoff::Domain;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    #[test]
    fn split_half_is_bounded_by_half() {
        let obs = ObservablePair::with_angle(0.8).unwrap();
        let s = split_strategy(&obs, 0.5).unwrap();
        assert!(s.effective.x_a <= 0.5 + 1e-15 && s.effective.x_b <= 0.5 + 1e-15);
        assert!((s.relabeled.x_a - 0.25).abs() < 1e-15);
        assert_eq!(s.effective.domain(), Domain::P);
    }

    #[test]
    fn split_near_one_starves_b() {
        let obs = ObservablePair::with_angle(0.8).unwrap();
        let s = split_strategy(&obs, 1.0 - 1e-6).unwrap();
        assert!(s.effective.x_b < 1e-5);
        assert!(split_strategy(&obs, 1.0).is_err());
        assert!(split_strategy(&obs, 0.0).is_err());
    }

    #[test]
    fn optimal_joint_measurement_beats_splitting_at_pi_over_six() {
        let obs = ObservablePair::with_angle(FRAC_PI_6).unwrap();
        let opt = AccuracyPair::from_povm(&optimal_povm(&obs), &obs).unwrap();
        assert!(opt.x_a + opt.x_b > 1.0);
        assert_eq!(opt.domain(), Domain::Q);
        for k in 1..100 {
            let s = split_strategy(&obs, k as f64 / 100.0).unwrap();
            assert!(s.effective.x_a + s.effective.x_b <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn split_data_fisher_is_xi_times_projective() {
        // Outcomes (A-group, ±) occur with probabilities ξp and ξ(1-p); the B
        // group carries no information about p_A.
        let (xi, p): (f64, f64) = (0.3, 0.62);
        let info = xi * (1.0 / p + 1.0 / (1.0 - p));
        let projective = 1.0 / (p * (1.0 - p));
        assert!((info / projective - xi).abs() < 1e-15);
    }

    #[test]
    fn boundary_state_rejected() {
        let obs = ObservablePair::with_angle(FRAC_PI_2).unwrap();
        let state = QubitState::pure(obs.n_a()).unwrap();
        let err = asymptotic_experiment(&optimal_povm(&obs), &obs, &state, 100, 10, 1).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn projective_a_variance_matches_binomial() {
        let obs = ObservablePair::with_angle(FRAC_PI_2).unwrap();
        let mut coefficients = [(0.0, BlochVector::ZERO); 4];
        for (slot, o) in coefficients.iter_mut().zip(crate::bloch::Outcome::ALL) {
            *slot = (0.25, obs.n_a() * (0.25 * o.i.value()));
        }
        let povm = JointPovm::from_coefficients(coefficients).unwrap();
        let state = QubitState::new(obs.n_a() * 0.4).unwrap();
        let report = asymptotic_experiment(&povm, &obs, &state, 10_000, 1_000, 42).unwrap();
        assert!(report.b.is_none());
        let a = report.a.unwrap();
        assert!((a.fisher - 1.0 / (0.7 * 0.3)).abs() < 1e-12);
        assert!((0.9..=1.1).contains(&a.ratio), "{a:?}");
    }

    #[test]
    fn small_experiment_is_deterministic() {
        let obs = ObservablePair::with_angle(FRAC_PI_2).unwrap();
        let state = QubitState::new(BlochVector::new(0.1, 0.0, 0.4)).unwrap();
        let povm = optimal_povm(&obs);
        let a = asymptotic_experiment(&povm, &obs, &state, 500, 50, 42).unwrap();
        let b = asymptotic_experiment(&povm, &obs, &state, 500, 50, 42).unwrap();
        assert_eq!(a.per_trial, b.per_trial);
        assert_eq!(a.a, b.a);
    }
}
