//! Qubit states, observables and POVMs in the Bloch representation.
//!
//! Every operator that appears here lives in the real span of `{I, σ}`, so an
//! effect is stored as a pair `(r, x)` meaning `r·I + x·σ`, and a state as its
//! polarization `r` meaning `(I + r·σ)/2`. Probabilities are then
//! `tr(ρ E) = r + x·r_state`.

mod vector;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Constraint, Error, Result};
use crate::TOLERANCE;

pub use vector::BlochVector;

/// A ±1 eigenvalue label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which of the two observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    A,
    B,
}

impl Observable {
    pub const BOTH: [Observable; 2] = [Observable::A, Observable::B];
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observable::A => "A",
            Observable::B => "B",
        })
    }
}

/// Joint outcome `(i, j)`: `i` is the reading for A, `j` for B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome {
    pub i: Sign,
    pub j: Sign,
}

impl Outcome {
    /// Canonical order `++, +-, -+, --` used for all four-element arrays.
    pub const ALL: [Outcome; 4] = [
        Outcome { i: Sign::Plus, j: Sign::Plus },
        Outcome { i: Sign::Plus, j: Sign::Minus },
        Outcome { i: Sign::Minus, j: Sign::Plus },
        Outcome { i: Sign::Minus, j: Sign::Minus },
    ];

    pub const fn new(i: Sign, j: Sign) -> Self {
        Self { i, j }
    }

    pub fn index(self) -> usize {
        match (self.i, self.j) {
            (Sign::Plus, Sign::Plus) => 0,
            (Sign::Plus, Sign::Minus) => 1,
            (Sign::Minus, Sign::Plus) => 2,
            (Sign::Minus, Sign::Minus) => 3,
        }
    }

    /// The label this outcome reports for `which`.
    pub fn reading(self, which: Observable) -> Sign {
        match which {
            Observable::A => self.i,
            Observable::B => self.j,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Qubit density operator `(I + r·σ)/2` with `|r| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    r: BlochVector,
}

impl QubitState {
    pub fn new(r: BlochVector) -> Result<Self> {
        r.ensure_finite("state polarization")?;
        let n = r.norm();
        if n > 1.0 + TOLERANCE {
            return Err(Error::constraint(Constraint::StateNorm, format!("|r| = {n}")));
        }
        Ok(Self { r })
    }

    pub fn maximally_mixed() -> Self {
        Self { r: BlochVector::ZERO }
    }

    /// Pure state polarized along `direction`, which must be a unit vector.
    pub fn pure(direction: BlochVector) -> Result<Self> {
        Ok(Self { r: direction.ensure_unit("state direction")? })
    }

    pub fn polarization(&self) -> BlochVector {
        self.r
    }
}

/// The observable pair `A = n_A·σ`, `B = n_B·σ` with `0 < θ < π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservablePair {
    n_a: BlochVector,
    n_b: BlochVector,
    theta: f64,
}

impl ObservablePair {
    pub fn new(n_a: BlochVector, n_b: BlochVector) -> Result<Self> {
        n_a.ensure_unit("n_a")?;
        n_b.ensure_unit("n_b")?;
        let sin = n_a.cross(n_b).norm();
        if sin <= TOLERANCE {
            return Err(Error::constraint(
                Constraint::CollinearObservables,
                format!("sin(theta) = {sin:e}"),
            ));
        }
        Ok(Self { n_a, n_b, theta: n_a.angle_to(n_b) })
    }

    /// Canonical frame: `n_A = z`, `n_B` in the x–z plane at angle `theta`.
    pub fn with_angle(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::constraint(Constraint::NonFinite, format!("theta = {theta}")));
        }
        Self::new(BlochVector::Z, BlochVector::new(theta.sin(), 0.0, theta.cos()))
    }

    pub fn n_a(&self) -> BlochVector {
        self.n_a
    }

    pub fn n_b(&self) -> BlochVector {
        self.n_b
    }

    pub fn direction(&self, which: Observable) -> BlochVector {
        match which {
            Observable::A => self.n_a,
            Observable::B => self.n_b,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cos_theta(&self) -> f64 {
        self.n_a.dot(self.n_b)
    }

    pub fn sin_theta(&self) -> f64 {
        self.n_a.cross(self.n_b).norm()
    }
}

/// A single effect `r·I + x·σ` with `0 ≤ r·I + x·σ ≤ I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmElement {
    r: f64,
    x: BlochVector,
}

impl PovmElement {
    pub fn new(r: f64, x: BlochVector) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::constraint(Constraint::NonFinite, format!("r = {r}")));
        }
        x.ensure_finite("x")?;
        let norm = x.norm();
        if norm > r + TOLERANCE {
            return Err(Error::constraint(
                Constraint::ElementPositivity,
                format!("|x| = {norm} > r = {r}"),
            ));
        }
        if r + norm > 1.0 + TOLERANCE {
            return Err(Error::constraint(
                Constraint::ElementBound,
                format!("r + |x| = {}", r + norm),
            ));
        }
        Ok(Self { r, x })
    }

    /// Skips validation; only for values that are valid by construction.
    pub(crate) fn new_unchecked(r: f64, x: BlochVector) -> Self {
        Self { r, x }
    }

    /// Projector `(I ± n·σ)/2` onto the `sign` eigenspace of `n·σ`.
    pub fn projector(direction: BlochVector, sign: Sign) -> Result<Self> {
        let n = direction.ensure_unit("projector direction")?;
        Ok(Self { r: 0.5, x: n * (0.5 * sign.value()) })
    }

    pub fn identity_scaled(r: f64) -> Result<Self> {
        Self::new(r, BlochVector::ZERO)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn x(&self) -> BlochVector {
        self.x
    }

    /// `I − E`.
    pub fn complement(&self) -> Self {
        Self { r: 1.0 - self.r, x: -self.x }
    }

    /// Eigenvalues `r ± |x|`, larger first.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let n = self.x.norm();
        [self.r + n, self.r - n]
    }
}

/// `tr(ρ E) = r + x·r_state`, clamped to `[0, 1]`.
pub fn outcome_probability(state: &QubitState, element: &PovmElement) -> f64 {
    (element.r + element.x.dot(state.r)).clamp(0.0, 1.0)
}

/// Born-rule probability `(1 ± n·r)/2` of the projective outcome `sign` of `n·σ`.
pub fn projector_probability(state: &QubitState, direction: BlochVector, sign: Sign) -> Result<f64> {
    let n = direction.ensure_unit("direction")?;
    Ok((0.5 * (1.0 + sign.value() * n.dot(state.r))).clamp(0.0, 1.0))
}

/// Four-outcome joint POVM `{E(i,j)}` with `Σ E(i,j) = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPovm {
    elements: [PovmElement; 4],
}

impl JointPovm {
    /// Elements in [`Outcome::ALL`] order.
    pub fn new(elements: [PovmElement; 4]) -> Result<Self> {
        let r_sum: f64 = elements.iter().map(|e| e.r).sum();
        if (r_sum - 1.0).abs() > TOLERANCE {
            return Err(Error::constraint(Constraint::SumOfR, format!("sum r = {r_sum}")));
        }
        let x_sum: BlochVector = elements.iter().map(|e| e.x).sum();
        if x_sum.norm() > TOLERANCE {
            return Err(Error::constraint(
                Constraint::SumOfX,
                format!("|sum x| = {:e}", x_sum.norm()),
            ));
        }
        Ok(Self { elements })
    }

    /// Builds from labelled elements; each outcome must appear exactly once.
    pub fn from_labelled(items: impl IntoIterator<Item = (Outcome, PovmElement)>) -> Result<Self> {
        let mut slots: [Option<PovmElement>; 4] = [None; 4];
        for (outcome, element) in items {
            let slot = &mut slots[outcome.index()];
            if slot.is_some() {
                return Err(Error::constraint(
                    Constraint::OutcomeLabels,
                    format!("duplicate outcome {outcome}"),
                ));
            }
            *slot = Some(element);
        }
        let mut elements = [PovmElement::new_unchecked(0.0, BlochVector::ZERO); 4];
        for (k, slot) in slots.into_iter().enumerate() {
            elements[k] = slot.ok_or_else(|| {
                Error::constraint(
                    Constraint::OutcomeLabels,
                    format!("missing outcome {}", Outcome::ALL[k]),
                )
            })?;
        }
        Self::new(elements)
    }

    /// Builds from raw `(r, x)` pairs in [`Outcome::ALL`] order.
    pub fn from_coefficients(coefficients: [(f64, BlochVector); 4]) -> Result<Self> {
        let mut elements = [PovmElement::new_unchecked(0.0, BlochVector::ZERO); 4];
        for (slot, (r, x)) in elements.iter_mut().zip(coefficients) {
            *slot = PovmElement::new(r, x)?;
        }
        Self::new(elements)
    }

    /// Four copies of `I/4`: an outcome carrying no information at all.
    pub fn trivial() -> Self {
        Self { elements: [PovmElement::new_unchecked(0.25, BlochVector::ZERO); 4] }
    }

    pub fn elements(&self) -> &[PovmElement; 4] {
        &self.elements
    }

    pub fn element(&self, outcome: Outcome) -> &PovmElement {
        &self.elements[outcome.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, &PovmElement)> {
        Outcome::ALL.into_iter().zip(self.elements.iter())
    }

    /// Marginal effect for reading `+` on `which`: `E_A(+) = E(+,+) + E(+,-)`,
    /// `E_B(+) = E(+,+) + E(-,+)`. The `-` effect is its complement.
    pub fn marginal(&self, which: Observable) -> PovmElement {
        let [pp, pm, mp, _] = self.elements;
        let other = match which {
            Observable::A => pm,
            Observable::B => mp,
        };
        // Valid by the triangle inequality on the summed elements.
        PovmElement::new_unchecked(pp.r + other.r, pp.x + other.x)
    }

    pub fn marginals(&self) -> (PovmElement, PovmElement) {
        (self.marginal(Observable::A), self.marginal(Observable::B))
    }

    /// `q(i,j)` for all four outcomes, in [`Outcome::ALL`] order.
    pub fn distribution(&self, state: &QubitState) -> [f64; 4] {
        self.elements.map(|e| outcome_probability(state, &e))
    }
}
