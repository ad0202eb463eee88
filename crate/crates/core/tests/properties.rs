use proptest::prelude::*;

use simulmeas_core::bloch::outcome_probability;
use simulmeas_core::rng::derive_rng;
use simulmeas_core::sampler::sample_valid_povm_with;
use simulmeas_core::sim::{fisher_information, mle_estimate, MarginalCounts};
use simulmeas_core::{
    build_channel, error_product_check, io, optimal_povm, sequential_joint_povm, tradeoff_check, AccuracyPair,
    BlochVector, JointPovm, Observable, ObservablePair, PovmElement, QubitState, Sign, SqrtInstrument,
};

fn theta() -> impl Strategy<Value = f64> {
    1e-3..(std::f64::consts::PI - 1e-3)
}

fn state() -> impl Strategy<Value = QubitState> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("inside the Bloch ball", |(x, y, z)| x * x + y * y + z * z <= 1.0)
        .prop_map(|(x, y, z)| QubitState::new(BlochVector::new(x, y, z)).unwrap())
}

fn sampled(theta: f64, seed: u64) -> (ObservablePair, JointPovm) {
    let obs = ObservablePair::with_angle(theta).unwrap();
    let povm = sample_valid_povm_with(&obs, &mut derive_rng(seed, 0), None).unwrap();
    (obs, povm)
}

proptest! {
    #[test]
    fn outcome_probabilities_sum_to_one(t in theta(), seed in any::<u64>(), s in state()) {
        let (_, povm) = sampled(t, seed);
        let total: f64 = povm.distribution(&s).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for p in povm.distribution(&s) {
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn marginals_are_valid_effects(t in theta(), seed in any::<u64>()) {
        let (_, povm) = sampled(t, seed);
        for which in Observable::BOTH {
            let m = povm.marginal(which);
            prop_assert!(PovmElement::new(m.r(), m.x()).is_ok());
            let [lo, hi] = m.eigenvalues();
            prop_assert!(lo >= -1e-12 && hi <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn smearing_matrix_reproduces_marginal_probability(t in theta(), seed in any::<u64>(), s in state()) {
        let (obs, povm) = sampled(t, seed);
        for which in Observable::BOTH {
            let ch = build_channel(&povm, &obs, which).unwrap();
            let p = 0.5 * (1.0 + s.polarization().dot(obs.direction(which)));
            let direct = outcome_probability(&s, &povm.marginal(which));
            prop_assert!((ch.q_plus(p) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn accuracy_is_four_times_squared_marginal_norm(t in theta(), seed in any::<u64>()) {
        let (obs, povm) = sampled(t, seed);
        for which in Observable::BOTH {
            let ch = build_channel(&povm, &obs, which).unwrap();
            let x = povm.marginal(which).x();
            prop_assert!((ch.accuracy() - 4.0 * x.norm_squared()).abs() < 1e-12);
        }
    }

    #[test]
    fn no_joint_povm_is_sharp_for_both(t in theta(), seed in any::<u64>()) {
        let (obs, povm) = sampled(t, seed);
        let pair = AccuracyPair::from_povm(&povm, &obs).unwrap();
        prop_assert!(!(pair.x_a > 1.0 - 1e-9 && pair.x_b > 1.0 - 1e-9));
        prop_assert!(tradeoff_check(&pair).is_satisfied());
    }

    #[test]
    fn both_inequality_forms_agree(x_a in 1e-6..1.0f64, x_b in 1e-6..1.0f64, t in theta()) {
        let pair = AccuracyPair::new(x_a, x_b, t).unwrap();
        let margin = (pair.tradeoff_value() - 1.0).abs();
        prop_assume!(margin > 1e-9);
        prop_assert_eq!(tradeoff_check(&pair).is_satisfied(), error_product_check(&pair).is_satisfied());
    }

    #[test]
    fn instrument_preserves_trace(eta in 0.0..=1.0f64, t in theta(), s in state()) {
        let obs = ObservablePair::with_angle(t).unwrap();
        let inst = SqrtInstrument::for_observables(eta, &obs).unwrap();
        let (scalar, _) = inst.nonselective(&s);
        prop_assert!((2.0 * scalar - 1.0).abs() < 1e-12);
        let total: f64 = Sign::BOTH.iter().map(|&o| inst.update(&s, o).0).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let seq = sequential_joint_povm(&inst, &obs).unwrap();
        let acc_a = build_channel(&seq, &obs, Observable::A).unwrap().accuracy();
        prop_assert!((acc_a - eta * eta).abs() < 1e-12);
    }

    #[test]
    fn mle_lies_in_unit_interval(t in theta(), seed in any::<u64>(), plus in 0u64..500, minus in 0u64..500) {
        prop_assume!(plus + minus > 0);
        let (obs, povm) = sampled(t, seed);
        let ch = build_channel(&povm, &obs, Observable::A).unwrap();
        prop_assume!(ch.accuracy() > 1e-6);
        let est = mle_estimate(&ch, MarginalCounts { plus, minus }).unwrap();
        prop_assert!((0.0..=1.0).contains(&est.p_star));
        prop_assert_eq!(est.clipped, est.raw != est.p_star);
    }

    #[test]
    fn fisher_information_is_at_least_four_times_accuracy(t in theta(), p in 0.01..0.99f64) {
        let obs = ObservablePair::with_angle(t).unwrap();
        let ch = build_channel(&optimal_povm(&obs), &obs, Observable::A).unwrap();
        let info = fisher_information(&ch, p).unwrap();
        // q(+) q(-) <= 1/4
        prop_assert!(info >= 4.0 * ch.accuracy() - 1e-12);
    }

    #[test]
    fn povm_json_round_trip_is_exact(t in theta(), seed in any::<u64>()) {
        let (_, povm) = sampled(t, seed);
        let text = io::to_json_string(&io::PovmDoc::from_povm(&povm));
        prop_assert_eq!(io::parse_povm(&text).unwrap(), povm);
    }
}
