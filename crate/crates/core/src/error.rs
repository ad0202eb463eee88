use std::fmt;

use thiserror::Error;

use crate::bloch::Observable;

/// Named invariants that inputs can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    NonFinite,
    StateNorm,
    UnitDirection,
    CollinearObservables,
    ElementPositivity,
    ElementBound,
    SumOfR,
    SumOfX,
    OutcomeLabels,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Constraint::NonFinite => "components must be finite",
            Constraint::StateNorm => "state polarization must satisfy |r| <= 1",
            Constraint::UnitDirection => "direction must be a unit vector",
            Constraint::CollinearObservables => {
                "observables must not be collinear (0 < theta < pi)"
            }
            Constraint::ElementPositivity => "element positivity |x| <= r",
            Constraint::ElementBound => "element bounded by identity r + |x| <= 1",
            Constraint::SumOfR => "sum of r coefficients must equal 1",
            Constraint::SumOfX => "sum of x vectors must vanish",
            Constraint::OutcomeLabels => "each outcome pair (i, j) must appear exactly once",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("constraint violated: {constraint} ({detail})")]
    Constraint { constraint: Constraint, detail: String },

    #[error("marginal for observable {observable} is not a nonideal measurement: x deviates {deviation:.3e} rad from the measurement axis")]
    NonConforming { observable: Observable, deviation: f64 },

    #[error("no feasible POVM for the requested marginal magnitudes: {0}")]
    Infeasible(String),

    #[error("measurement carries no information about observable {0} (accuracy is zero)")]
    NoInformation(Observable),

    #[error("Fisher information is singular: outcome probability {q} is on the boundary")]
    SingularInformation { q: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn constraint(constraint: Constraint, detail: impl Into<String>) -> Self {
        Error::Constraint { constraint, detail: detail.into() }
    }

    /// True for errors caused by unreadable or structurally broken input rather
    /// than a violated mathematical condition.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Constraint { constraint: Constraint::OutcomeLabels, .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
