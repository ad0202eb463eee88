//! Nonideal joint measurements and their classical smearing channels.
//!
//! A joint POVM is a nonideal measurement of `A` when its A-marginal is a
//! mixture of the projectors of `A`, i.e. `E_A(i) = Σ_j F_ij P_A(j)`. On the
//! Bloch side that is exactly "`x_A` is (anti)parallel to `n_A`". The 2×2
//! stochastic matrix `F` then maps the true distribution `p_A` to the observed
//! marginal `q_A`.

use serde::Serialize;

use crate::bloch::{BlochVector, JointPovm, Observable, ObservablePair, PovmElement};
use crate::error::{Error, Result};
use crate::{ANGLE_TOLERANCE, TOLERANCE};

/// How one marginal relates to its target observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Conformity {
    /// `x_α` is parallel (`orientation = 1`) or antiparallel (`-1`) to `n_α`.
    Conforming { orientation: i8 },
    /// `x_α = 0`: conforming, but the marginal carries no information.
    Uninformative,
    /// `x_α` points off-axis by `deviation` radians (folded into `[0, π/2]`).
    NonConforming { deviation: f64 },
}

impl Conformity {
    pub fn of(x: BlochVector, n: BlochVector) -> Self {
        if x.norm() < TOLERANCE {
            return Conformity::Uninformative;
        }
        let angle = x.angle_to(n);
        let deviation = angle.min(std::f64::consts::PI - angle);
        if deviation < ANGLE_TOLERANCE {
            Conformity::Conforming { orientation: if x.dot(n) >= 0.0 { 1 } else { -1 } }
        } else {
            Conformity::NonConforming { deviation }
        }
    }

    pub fn is_conforming(&self) -> bool {
        !matches!(self, Conformity::NonConforming { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonidealReport {
    pub a: Conformity,
    pub b: Conformity,
}

impl NonidealReport {
    pub fn get(&self, which: Observable) -> Conformity {
        match which {
            Observable::A => self.a,
            Observable::B => self.b,
        }
    }

    pub fn both_conforming(&self) -> bool {
        self.a.is_conforming() && self.b.is_conforming()
    }
}

pub fn check_nonideal(povm: &JointPovm, obs: &ObservablePair) -> NonidealReport {
    let (ma, mb) = povm.marginals();
    NonidealReport { a: Conformity::of(ma.x(), obs.n_a()), b: Conformity::of(mb.x(), obs.n_b()) }
}

/// Smearing channel `F` for one observable.
///
/// Rows are indexed by the reported outcome, columns by the true outcome, both
/// in `(+, -)` order:
///
/// ```text
/// F = [[r + s|x|,     r - s|x|    ],
///      [1 - r - s|x|, 1 - r + s|x|]]
/// ```
///
/// with `s = sign(x·n)` (taken as `+1` when `x = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonidealChannel {
    f: [[f64; 2]; 2],
    orientation: i8,
    r_alpha: f64,
    x_norm: f64,
}

impl NonidealChannel {
    /// Channel of the marginal effect `r·I + m·n·σ` where `m` is the signed
    /// length of `x` along the measurement axis.
    pub fn from_marginal(r_alpha: f64, signed_norm: f64) -> Result<Self> {
        let orientation: i8 = if signed_norm < 0.0 { -1 } else { 1 };
        let x_norm = signed_norm.abs();
        // Reuse the effect invariants: |x| <= r, r + |x| <= 1.
        PovmElement::new(r_alpha, BlochVector::new(0.0, 0.0, x_norm))?;
        let sx = f64::from(orientation) * x_norm;
        let f = [[r_alpha + sx, r_alpha - sx], [1.0 - r_alpha - sx, 1.0 - r_alpha + sx]];
        Ok(Self { f, orientation, r_alpha, x_norm })
    }

    pub fn f(&self) -> [[f64; 2]; 2] {
        self.f
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn r_alpha(&self) -> f64 {
        self.r_alpha
    }

    pub fn x_norm(&self) -> f64 {
        self.x_norm
    }

    /// `det F = 2 s |x|`.
    pub fn det(&self) -> f64 {
        self.f[0][0] * self.f[1][1] - self.f[0][1] * self.f[1][0]
    }

    /// `𝒳 = (det F)²`, in `[0, 1]`.
    pub fn accuracy(&self) -> f64 {
        let d = self.det();
        (d * d).clamp(0.0, 1.0)
    }

    /// `ℰ = 1/𝒳 − 1`, infinite for an uninformative channel.
    pub fn error(&self) -> f64 {
        error_param(self.accuracy())
    }

    /// Observed probability of `+` when the true probability is `p_plus`.
    pub fn q_plus(&self, p_plus: f64) -> f64 {
        self.f[0][0] * p_plus + self.f[0][1] * (1.0 - p_plus)
    }

    /// `(q(+), q(-))` for the true distribution `(p_plus, 1 - p_plus)`.
    pub fn apply(&self, p_plus: f64) -> [f64; 2] {
        let p = [p_plus, 1.0 - p_plus];
        [
            self.f[0][0] * p[0] + self.f[0][1] * p[1],
            self.f[1][0] * p[0] + self.f[1][1] * p[1],
        ]
    }

    pub fn report(&self) -> ChannelReport {
        let e = self.error();
        ChannelReport {
            f: self.f,
            accuracy: self.accuracy(),
            error: e.is_finite().then_some(e),
            orientation: self.orientation,
        }
    }
}

/// JSON view of a channel; `error` is `null` when infinite.
#[derive(Debug, Clone, Serialize)]
pub struct ChannelReport {
    pub f: [[f64; 2]; 2],
    pub accuracy: f64,
    pub error: Option<f64>,
    pub orientation: i8,
}

/// Builds `F_α` for a marginal that passes [`check_nonideal`].
pub fn build_channel(povm: &JointPovm, obs: &ObservablePair, which: Observable) -> Result<NonidealChannel> {
    let marginal = povm.marginal(which);
    let n = obs.direction(which);
    match Conformity::of(marginal.x(), n) {
        Conformity::NonConforming { deviation } => {
            Err(Error::NonConforming { observable: which, deviation })
        }
        Conformity::Uninformative => NonidealChannel::from_marginal(marginal.r(), 0.0),
        Conformity::Conforming { orientation } => {
            NonidealChannel::from_marginal(marginal.r(), f64::from(orientation) * marginal.x().norm())
        }
    }
}

/// `ℰ = 1/𝒳 − 1`; `f64::INFINITY` when `accuracy ≤ 0`.
pub fn error_param(accuracy: f64) -> f64 {
    if accuracy <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / accuracy - 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalClass {
    Projective,
    Uninformative,
    Intermediate,
}

pub fn classify_marginal(channel: &NonidealChannel) -> MarginalClass {
    if (channel.accuracy() - 1.0).abs() <= TOLERANCE {
        MarginalClass::Projective
    } else if channel.x_norm() <= TOLERANCE {
        MarginalClass::Uninformative
    } else {
        MarginalClass::Intermediate
    }
}
