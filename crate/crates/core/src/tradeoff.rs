//! Accuracy trade-off between the two marginals of a joint measurement.
//!
//! For any nonideal joint measurement of `A` and `B` at relative angle `θ`,
//!
//! ```text
//! 𝒳_A + 𝒳_B − 𝒳_A 𝒳_B cos²θ ≤ 1      ⇔      ℰ_A ℰ_B ≥ sin²θ
//! ```
//!
//! where `ℰ = 1/𝒳 − 1`. The same product bound, read with `𝒟_B` in place of
//! `ℰ_B`, is the error/back-action relation for sequential measurements.

use serde::Serialize;

use crate::bloch::{JointPovm, Observable, ObservablePair};
use crate::channel::{build_channel, error_param};
use crate::error::{Error, Result};
use crate::TOLERANCE;

/// Accuracies `(𝒳_A, 𝒳_B)` at relative angle `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AccuracyPair {
    pub x_a: f64,
    pub x_b: f64,
    pub theta: f64,
}

impl AccuracyPair {
    pub fn new(x_a: f64, x_b: f64, theta: f64) -> Result<Self> {
        for (name, v) in [("x_a", x_a), ("x_b", x_b)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidArgument(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("theta = {theta}")));
        }
        Ok(Self { x_a, x_b, theta })
    }

    /// Accuracies of both marginals; fails if either marginal is not a
    /// nonideal measurement of its observable.
    pub fn from_povm(povm: &JointPovm, obs: &ObservablePair) -> Result<Self> {
        let x_a = build_channel(povm, obs, Observable::A)?.accuracy();
        let x_b = build_channel(povm, obs, Observable::B)?.accuracy();
        Ok(Self { x_a, x_b, theta: obs.theta() })
    }

    pub fn error_a(&self) -> f64 {
        error_param(self.x_a)
    }

    pub fn error_b(&self) -> f64 {
        error_param(self.x_b)
    }

    /// `𝒳_A + 𝒳_B − 𝒳_A 𝒳_B cos²θ`.
    pub fn tradeoff_value(&self) -> f64 {
        let c = self.theta.cos();
        self.x_a + self.x_b - self.x_a * self.x_b * c * c
    }

    /// Which part of the accessible region the pair falls in.
    pub fn domain(&self) -> Domain {
        if self.tradeoff_value() > 1.0 + TOLERANCE {
            Domain::Forbidden
        } else if self.x_a + self.x_b <= 1.0 + TOLERANCE {
            Domain::P
        } else {
            Domain::Q
        }
    }
}

/// `P`: reachable by splitting samples between separate measurements
/// (`𝒳_A + 𝒳_B ≤ 1`). `Q`: reachable only by a genuine joint measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Domain {
    P,
    Q,
    Forbidden,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TradeoffVerdict {
    Satisfied { value: f64, slack: f64 },
    Violated { value: f64, excess: f64 },
}

impl TradeoffVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, TradeoffVerdict::Satisfied { .. })
    }
}

pub fn tradeoff_check(pair: &AccuracyPair) -> TradeoffVerdict {
    let value = pair.tradeoff_value();
    if value <= 1.0 + TOLERANCE {
        TradeoffVerdict::Satisfied { value, slack: 1.0 - value }
    } else {
        TradeoffVerdict::Violated { value, excess: value - 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ErrorProductVerdict {
    Satisfied { product: f64, bound: f64 },
    Violated { product: f64, bound: f64 },
    /// One accuracy is zero, so its error is infinite.
    TriviallySatisfied,
}

impl ErrorProductVerdict {
    pub fn is_satisfied(&self) -> bool {
        !matches!(self, ErrorProductVerdict::Violated { .. })
    }
}

/// `ℰ_A ℰ_B ≥ sin²θ`. Also serves the back-action form `ℰ_A 𝒟_B ≥ sin²θ`
/// when `x_b` is the accuracy of the post-measurement `B` readout.
pub fn error_product_check(pair: &AccuracyPair) -> ErrorProductVerdict {
    let (ea, eb) = (pair.error_a(), pair.error_b());
    if ea.is_infinite() || eb.is_infinite() {
        return ErrorProductVerdict::TriviallySatisfied;
    }
    let product = ea * eb;
    let s = pair.theta.sin();
    let bound = s * s;
    if product >= bound - TOLERANCE {
        ErrorProductVerdict::Satisfied { product, bound }
    } else {
        ErrorProductVerdict::Violated { product, bound }
    }
}

/// `|x_A + x_B| + |x_A − x_B|`, which is at most 1 for every valid joint POVM.
pub fn marginal_triangle_sum(povm: &JointPovm) -> f64 {
    let (a, b) = povm.marginals();
    (a.x() + b.x()).norm() + (a.x() - b.x()).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

    fn pair(a: f64, b: f64, t: f64) -> AccuracyPair {
        AccuracyPair::new(a, b, t).unwrap()
    }

    #[test]
    fn one_sided_projective_is_on_the_boundary() {
        for t in [0.3, 1.0, 2.5] {
            match tradeoff_check(&pair(1.0, 0.0, t)) {
                TradeoffVerdict::Satisfied { slack, .. } => assert!(slack.abs() < 1e-15),
                v => panic!("{v:?}"),
            }
        }
    }

    #[test]
    fn optimum_at_pi_over_six_is_tight() {
        match tradeoff_check(&pair(2.0 / 3.0, 2.0 / 3.0, FRAC_PI_6)) {
            TradeoffVerdict::Satisfied { slack, value } => {
                assert!(slack.abs() < 1e-15, "value {value}");
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn double_projective_is_forbidden() {
        match tradeoff_check(&pair(1.0, 1.0, FRAC_PI_3)) {
            TradeoffVerdict::Violated { excess, .. } => assert!((excess - 0.75).abs() < 1e-15),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn error_product_examples() {
        match error_product_check(&pair(0.5, 0.5, FRAC_PI_2)) {
            ErrorProductVerdict::Satisfied { product, bound } => {
                assert!((product - 1.0).abs() < 1e-15 && (bound - 1.0).abs() < 1e-15);
            }
            v => panic!("{v:?}"),
        }
        // ℰ_A = 2 ⇔ 𝒳_A = 1/3; ℰ_B = 1 ⇔ 𝒳_B = 1/2.
        assert!(error_product_check(&pair(1.0 / 3.0, 0.5, FRAC_PI_6)).is_satisfied());
        // ℰ = 0.1 ⇔ 𝒳 = 1/1.1.
        assert!(!error_product_check(&pair(1.0 / 1.1, 1.0 / 1.1, FRAC_PI_2)).is_satisfied());
        assert_eq!(error_product_check(&pair(0.0, 1.0, 1.0)), ErrorProductVerdict::TriviallySatisfied);
    }

    #[test]
    fn domains() {
        assert_eq!(pair(0.5, 0.5, FRAC_PI_6).domain(), Domain::P);
        assert_eq!(pair(2.0 / 3.0, 2.0 / 3.0, FRAC_PI_6).domain(), Domain::Q);
        assert_eq!(pair(0.9, 0.9, FRAC_PI_6).domain(), Domain::Forbidden);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(AccuracyPair::new(1.2, 0.0, 1.0).is_err());
        assert!(AccuracyPair::new(0.2, -0.1, 1.0).is_err());
    }
}
