use crate::model::{Basis, DensityMatrix};

use super::integrator::{IntegratorConfig, Stepper};
use super::liouvillian::{unvectorize, vectorize, Liouvillian};
use super::NumericError;
use crate::model::POSITIVITY_FLOOR;

/// Bound on trace and Hermiticity drift accumulated by the integrator.
pub const DRIFT_TOL: f64 = 1e-10;

fn checked(rho: DensityMatrix) -> Result<DensityMatrix, NumericError> {
    let trace = (rho.trace() - 1.0).abs();
    if !(trace < DRIFT_TOL) {
        return Err(NumericError::InvariantViolation { quantity: "trace drift", value: trace });
    }
    let herm = rho.hermiticity_deviation();
    if !(herm < DRIFT_TOL) {
        return Err(NumericError::InvariantViolation { quantity: "hermiticity drift", value: herm });
    }
    let min = rho.min_eigenvalue();
    if !(min > POSITIVITY_FLOOR) {
        return Err(NumericError::InvariantViolation { quantity: "min eigenvalue", value: min });
    }
    Ok(rho)
}

/// Evolves `rho0` to each of `times` (ascending, non-negative) along one
/// trajectory. States are returned in the eigenbasis.
pub fn propagate_samples(
    rho0: &DensityMatrix,
    l: &Liouvillian,
    times: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Vec<DensityMatrix>, NumericError> {
    if let Some(&t) = times.iter().find(|&&t| !(t >= 0.0 && t.is_finite())) {
        return Err(NumericError::NegativeTime(t));
    }
    let start = rho0.to_basis(Basis::Eigen, l.eigensystem());
    let generator = *l.matrix();
    let mut stepper = Stepper::new(move |y| generator * y, vectorize(start.entries()), *cfg)?;
    times
        .iter()
        .map(|&t| {
            stepper.advance_to(t)?;
            checked(DensityMatrix::from_raw(unvectorize(stepper.state()), Basis::Eigen))
        })
        .collect()
}

/// Evolves `rho0` for a time `t`; the result is in the eigenbasis.
pub fn propagate(
    rho0: &DensityMatrix,
    l: &Liouvillian,
    t: f64,
    cfg: &IntegratorConfig,
) -> Result<DensityMatrix, NumericError> {
    Ok(propagate_samples(rho0, l, &[t], cfg)?.remove(0))
}
