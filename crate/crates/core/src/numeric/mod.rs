//! Numerical counterpart of the closed forms.
//!
//! The master equation is assembled as a 16×16 superoperator acting on the
//! column-stacked density matrix in the eigenbasis, propagated with an adaptive
//! embedded Runge–Kutta pair, and its steady state is obtained by projecting the
//! initial state onto the kernel. Concurrence is computed for arbitrary states
//! with Wootters' formula. [`cross_validate`] compares all of it against the
//! [`analytic`](crate::analytic) layer.

mod concurrence;
mod integrator;
mod liouvillian;
mod propagate;
mod steady;
mod validate;

use thiserror::Error;

use crate::analytic::AnalyticError;
use crate::model::ModelError;

pub use concurrence::{wootters_concurrence, WOOTTERS_CLAMP};
pub use integrator::{IntegratorConfig, Method};
pub use liouvillian::{unvectorize, vectorize, Liouvillian, StateVector, SuperOperator};
pub use propagate::{propagate, propagate_samples, DRIFT_TOL};
pub use steady::{steady_state, KERNEL_TOL};
pub use validate::{cross_validate, default_grid, default_times, GridPoint, ValidationReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepSizeUnderflow { t: f64, h: f64 },
    #[error("step budget exhausted at t = {t}")]
    TooManySteps { t: f64 },
    #[error("{quantity} = {value:e} exceeds its bound")]
    InvariantViolation { quantity: &'static str, value: f64 },
    #[error("numerical kernel dimension is ambiguous (singular value {0:e} relative to the largest)")]
    KernelResolutionFailure(f64),
    #[error("density matrix has eigenvalue {0:e} below the clamp threshold")]
    NegativeEigenvalue(f64),
    #[error("expected a density matrix in the bare basis")]
    WrongBasis,
    #[error("empty {0} grid")]
    EmptyGrid(&'static str),
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error("at θ = {theta}, T_m = {t_mean}, ΔT = {t_diff}: {source}")]
    AtGridPoint { theta: f64, t_mean: f64, t_diff: f64, source: Box<NumericError> },
}
