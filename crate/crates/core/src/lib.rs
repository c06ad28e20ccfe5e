//! Nonclassicality diagnostics for displaced-squeezed thermal states driven
//! by a degenerate parametric amplifier.
//!
//! The closed-form layer ([`coherence`], [`charfunc`], [`prep`],
//! [`criteria`]) evaluates g²(τ), χ(η), P(β) and the Mandel parameter.
//! [`fock`] recomputes the same quantities by brute force in a truncated
//! photon-number basis, and [`cli`] turns them into CSV/JSON curves.

pub mod charfunc;
pub mod cli;
pub mod coherence;
pub mod criteria;
pub mod error;
pub mod figures;
pub mod fock;
pub mod params;
pub mod prep;
pub mod roots;

pub use charfunc::{chi, mandel_q, moments, CharVariable, MomentSet, QuadraticKernel};
pub use coherence::{amplitude_a, g2, g2_asymptote, ingredients, CoherenceIngredients};
pub use criteria::{classify, critical_alpha, evaluate, rc_margin, ClassificationReport, Criterion, CriterionVerdict};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::{hamiltonian_coeffs, validate, GaussianParams, HamiltonianCoeffs, ScaledTime};
pub use prep::{p_coefficients, p_exists_margin, p_threshold, p_value, PCoefficients, PThreshold, PhasePoint};
