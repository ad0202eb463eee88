//! Simultaneous measurement of two noncommuting qubit observables.
//!
//! The crate covers the full pipeline for a pair of spin observables
//! `A = n_A·σ` and `B = n_B·σ`:
//!
//! - [`bloch`]: states, observables and four-outcome joint POVMs in the Bloch
//!   representation, with a dense complex-matrix [`oracle`] for cross-checks.
//! - [`channel`] and [`tradeoff`]: nonideal-measurement detection, the
//!   stochastic smearing matrices `F_α`, accuracies `𝒳_α = (det F_α)²` and the
//!   accuracy/error trade-off inequalities.
//! - [`optimal`], [`sampler`] and [`region`]: the equality-achieving POVM, a
//!   generator of random valid POVMs, and a numerical map of the accessible
//!   accuracy region.
//! - [`sim`]: Monte Carlo sampling, maximum-likelihood reconstruction of the
//!   observables' distributions, Fisher information and the sample-splitting
//!   baseline.
//! - [`sequential`]: "measure A, then B" through a square-root instrument and
//!   the error/back-action inequality.
//!
//! All values are immutable; every stochastic routine is keyed by an explicit
//! seed and is deterministic regardless of thread count.

pub mod bloch;
pub mod channel;
pub mod error;
pub mod io;
pub mod nelder_mead;
pub mod optimal;
pub mod oracle;
pub mod region;
pub mod rng;
pub mod sampler;
pub mod sequential;
pub mod sim;
pub mod tradeoff;

pub use bloch::{
    BlochVector, JointPovm, Observable, ObservablePair, Outcome, PovmElement, QubitState, Sign,
};
pub use channel::{
    build_channel, check_nonideal, classify_marginal, error_param, Conformity, MarginalClass,
    NonidealChannel, NonidealReport,
};
pub use error::{Constraint, Error, Result};
pub use optimal::{boundary_curve, optimal_accuracy, optimal_povm};
pub use region::{region_sweep, sweep_targets, RegionPoint, SweepConfig, SweepResult, SweepRow};
pub use sampler::sample_valid_povm;
pub use sequential::{disturbance_check, sequential_joint_povm, DisturbanceVerdict, SqrtInstrument};
pub use tradeoff::{error_product_check, tradeoff_check, AccuracyPair, ErrorProductVerdict, TradeoffVerdict};

/// Absolute tolerance for constraint checks on sums of a handful of doubles.
pub const TOLERANCE: f64 = 1e-12;

/// Angular tolerance (radians) for "x_α is parallel to n_α".
pub const ANGLE_TOLERANCE: f64 = 1e-9;
