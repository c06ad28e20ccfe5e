use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the formulas are defined.
    #[error("invalid `{field}`: {reason}")]
    Domain { field: &'static str, reason: String },

    /// The quantity is a ratio with a vanishing photon number (vacuum).
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    /// P(β) is not a genuine distribution at this scaled time.
    #[error("P(β) does not exist as a distribution here (existence margin {margin:.6e} < 0)")]
    NonclassicalRegion { margin: f64 },

    /// P(β) collapses to δ(β - A(τ)).
    #[error("P(β) is the delta function centered at {center}")]
    DegenerateDistribution { center: Complex64 },

    #[error("no sign change found below upper bracket {upper}")]
    NoBracket { upper: f64 },

    /// The truncated Fock basis is too small for the state.
    #[error("Fock truncation at dim {dim} leaks population {leakage:.3e} into the top level")]
    Truncation { dim: usize, leakage: f64 },
}

impl Error {
    pub(crate) fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { field, reason: reason.into() }
    }
}
