//! Time series and steady-state records for one parameter set.

use dimer_core::analytic::{
    bloch_transient, concurrence_transient, steady_concurrence, steady_transfer_probability, transfer_probability,
    AnalyticError, SigmaMoments,
};
use dimer_core::numeric::{propagate_samples, steady_state, wootters_concurrence, IntegratorConfig, Liouvillian};
use dimer_core::{Basis, DensityMatrix, Dimer};

use crate::config::Method;
use crate::error::CliError;

fn donor_excited() -> DensityMatrix {
    DensityMatrix::basis_state(1, Basis::Bare)
}

fn row(t: f64, p: f64, c: f64, s: &SigmaMoments) -> Vec<f64> {
    vec![t, p, c, s.s11, s.s22, s.s33, s.s44, s.s32.re, s.s32.im]
}

/// Closed-form series from |eg⟩. `p` and `c` default to the exact general
/// forms and can be swapped for a limiting form.
pub fn analytic_series(
    dimer: &Dimer,
    times: &[f64],
    p: Option<&dyn Fn(f64) -> Result<f64, AnalyticError>>,
    c: Option<&dyn Fn(f64) -> Result<f64, AnalyticError>>,
) -> Result<Vec<Vec<f64>>, CliError> {
    let init = SigmaMoments::from_density(&donor_excited(), &dimer.eig);
    times
        .iter()
        .map(|&t| {
            let s = bloch_transient(&init, &dimer.rates, &dimer.eig, t)?;
            let pv = match p {
                Some(f) => f(t)?,
                None => transfer_probability(t, dimer)?,
            };
            let cv = match c {
                Some(f) => f(t)?,
                None => concurrence_transient(t, dimer)?,
            };
            Ok(row(t, pv, cv, &s))
        })
        .collect()
}

/// The same columns from adaptive propagation of the Liouvillian.
pub fn numeric_series(dimer: &Dimer, times: &[f64]) -> Result<Vec<Vec<f64>>, CliError> {
    let l = Liouvillian::new(dimer);
    let states = propagate_samples(&donor_excited(), &l, times, &IntegratorConfig::default())?;
    times
        .iter()
        .zip(states)
        .map(|(&t, rho)| {
            let bare = rho.to_basis(Basis::Bare, &dimer.eig);
            let s = SigmaMoments::from_density(&rho, &dimer.eig);
            Ok(row(t, bare.population(2), wootters_concurrence(&bare)?, &s))
        })
        .collect()
}

pub fn series(dimer: &Dimer, times: &[f64], method: Method) -> Result<Vec<Vec<f64>>, CliError> {
    match method {
        Method::Analytic => analytic_series(dimer, times, None, None),
        Method::Numeric => numeric_series(dimer, times),
    }
}

/// `theta, t_mean, t_diff, P_ss, C_ss` for the donor-excited initial state.
pub fn steady_row(dimer: &Dimer, method: Method) -> Result<Vec<f64>, CliError> {
    let (p, c) = match method {
        Method::Analytic => (steady_transfer_probability(dimer), steady_concurrence(dimer)),
        Method::Numeric => {
            let ss = steady_state(&Liouvillian::new(dimer), &donor_excited())?.to_basis(Basis::Bare, &dimer.eig);
            (ss.population(2), wootters_concurrence(&ss)?)
        }
    };
    Ok(vec![dimer.theta(), dimer.params.mean_temperature(), dimer.params.temperature_difference(), p, c])
}
