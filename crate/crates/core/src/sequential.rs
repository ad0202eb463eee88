//! Measuring `A` and then `B` on the post-measurement state.
//!
//! The first measurement is the square-root instrument of the unsharp effect
//! `(I ± η n_A·σ)/2`, with Kraus operators
//!
//! ```text
//! M_± = a I ± b n_A·σ,   a = (√((1+η)/2) + √((1−η)/2)) / 2,
//!                        b = (√((1+η)/2) − √((1−η)/2)) / 2
//! ```
//!
//! so that `M_±² = (I ± η n_A·σ)/2`. Following it by a projective measurement
//! of `B` gives the joint POVM `E(i,j) = M_i P_B(j) M_i`, whose A-marginal
//! has accuracy `η²` and whose B-marginal measures how much information about
//! `B` survives the first measurement.

use serde::Serialize;

use crate::bloch::{BlochVector, JointPovm, Observable, ObservablePair, Outcome, QubitState, Sign};
use crate::channel::{check_nonideal, Conformity};
use crate::error::{Error, Result};
use crate::tradeoff::{error_product_check, AccuracyPair, ErrorProductVerdict};

/// Bloch-form product `M X M` for `M = m_0 I + m·σ` and `X = c I + v·σ`
/// (both Hermitian):
///
/// ```text
/// scalar: c(m_0² + |m|²) + 2 m_0 (m·v)
/// vector: (m_0² − |m|²) v + 2 c m_0 m + 2 (m·v) m
/// ```
pub fn sandwich(m0: f64, m: BlochVector, c: f64, v: BlochVector) -> (f64, BlochVector) {
    let mm = m.norm_squared();
    let mv = m.dot(v);
    let scalar = c * (m0 * m0 + mm) + 2.0 * m0 * mv;
    let vector = v * (m0 * m0 - mm) + m * (2.0 * c * m0) + m * (2.0 * mv);
    (scalar, vector)
}

/// Lüders instrument for an unsharp spin measurement along `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtInstrument {
    eta: f64,
    axis: BlochVector,
    a: f64,
    b: f64,
}

impl SqrtInstrument {
    pub fn new(eta: f64, axis: BlochVector) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidArgument(format!("sharpness eta = {eta} must lie in [0, 1]")));
        }
        let axis = axis.ensure_unit("instrument axis")?;
        let s_plus = (0.5 * (1.0 + eta)).sqrt();
        let s_minus = (0.5 * (1.0 - eta)).sqrt();
        Ok(Self { eta, axis, a: 0.5 * (s_plus + s_minus), b: 0.5 * (s_plus - s_minus) })
    }

    /// Instrument measuring `A` of `obs`.
    pub fn for_observables(eta: f64, obs: &ObservablePair) -> Result<Self> {
        Self::new(eta, obs.n_a())
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn axis(&self) -> BlochVector {
        self.axis
    }

    /// `(a, b)` with `a² + b² = 1/2`, `a² − b² = √(1 − η²)/2`.
    pub fn coefficients(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Kraus operator `M_sign` as `(scalar, vector)`.
    pub fn kraus(&self, sign: Sign) -> (f64, BlochVector) {
        (self.a, self.axis * (self.b * sign.value()))
    }

    /// Outcome probability and normalized post-measurement state.
    pub fn update(&self, state: &QubitState, outcome: Sign) -> (f64, Option<QubitState>) {
        let (m0, m) = self.kraus(outcome);
        let (s, v) = sandwich(m0, m, 0.5, state.polarization() * 0.5);
        let p = 2.0 * s;
        if p <= 0.0 {
            return (0.0, None);
        }
        // (s I + v·σ)/p = (I + (2v/p)·σ)/2
        (p, QubitState::new(v * (2.0 / p)).ok())
    }

    /// Unnormalized nonselective output `Σ_i M_i ρ M_i` as `(scalar, vector)`;
    /// the trace is twice the scalar.
    pub fn nonselective(&self, state: &QubitState) -> (f64, BlochVector) {
        let mut scalar = 0.0;
        let mut vector = BlochVector::ZERO;
        for sign in Sign::BOTH {
            let (m0, m) = self.kraus(sign);
            let (s, v) = sandwich(m0, m, 0.5, state.polarization() * 0.5);
            scalar += s;
            vector += v;
        }
        (scalar, vector)
    }
}

/// Joint POVM of "instrument on `A`, then projective `B`":
/// `E(i,j) = M_i P_B(j) M_i`.
pub fn sequential_joint_povm(inst: &SqrtInstrument, obs: &ObservablePair) -> Result<JointPovm> {
    let mut coefficients = [(0.0, BlochVector::ZERO); 4];
    for (slot, o) in coefficients.iter_mut().zip(Outcome::ALL) {
        let (m0, m) = inst.kraus(o.i);
        *slot = sandwich(m0, m, 0.5, obs.n_b() * (0.5 * o.j.value()));
    }
    JointPovm::from_coefficients(coefficients)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DisturbanceVerdict {
    /// Both marginals are nonideal measurements, so `ℰ_A 𝒟_B ≥ sin²θ`
    /// applies. `accuracies.x_b` is the accuracy left for `B`.
    Applicable {
        accuracies: AccuracyPair,
        error_a: Option<f64>,
        disturbance_b: Option<f64>,
        verdict: ErrorProductVerdict,
    },
    /// A marginal points off its observable's axis by `deviation` radians.
    NotApplicable { observable: Observable, deviation: f64 },
}

pub fn disturbance_check(inst: &SqrtInstrument, obs: &ObservablePair) -> Result<DisturbanceVerdict> {
    let povm = sequential_joint_povm(inst, obs)?;
    let report = check_nonideal(&povm, obs);
    for which in Observable::BOTH {
        if let Conformity::NonConforming { deviation } = report.get(which) {
            return Ok(DisturbanceVerdict::NotApplicable { observable: which, deviation });
        }
    }
    let accuracies = AccuracyPair::from_povm(&povm, obs)?;
    let finite = |v: f64| v.is_finite().then_some(v);
    Ok(DisturbanceVerdict::Applicable {
        accuracies,
        error_a: finite(accuracies.error_a()),
        disturbance_b: finite(accuracies.error_b()),
        verdict: error_product_check(&accuracies),
    })
}
