//! Shared fixtures for the benchmarks.

use simulmeas_core::rng::derive_rng;
use simulmeas_core::sampler::sample_valid_povm_with;
use simulmeas_core::{BlochVector, JointPovm, ObservablePair, QubitState};

pub const SEED: u64 = 7;

pub fn observables(theta: f64) -> ObservablePair {
    ObservablePair::with_angle(theta).expect("angle strictly between 0 and pi")
}

pub fn state() -> QubitState {
    QubitState::new(BlochVector::new(0.3, -0.2, 0.4)).expect("inside the Bloch ball")
}

/// `count` random valid POVMs for `obs`.
pub fn povm_corpus(obs: &ObservablePair, count: usize) -> Vec<JointPovm> {
    let mut rng = derive_rng(SEED, 0);
    (0..count)
        .map(|_| sample_valid_povm_with(obs, &mut rng, None).expect("feasible sample"))
        .collect()
}
