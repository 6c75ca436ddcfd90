use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::concurrence::wootters_concurrence;
use super::integrator::IntegratorConfig;
use super::liouvillian::Liouvillian;
use super::propagate::{propagate_samples, DRIFT_TOL};
use super::steady::steady_state;
use super::NumericError;
use crate::analytic::{
    bloch_transient, concurrence_transient, steady_concurrence, steady_transfer_probability, transfer_probability,
    SigmaMoments, X_STATE_TOL,
};
use crate::model::{Basis, DensityMatrix, Dimer, DimerParams, POSITIVITY_FLOOR};

/// Where a deviation was observed.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GridPoint {
    pub theta: f64,
    pub t_mean: f64,
    pub t_diff: f64,
}

impl GridPoint {
    fn of(dimer: &Dimer) -> Self {
        Self {
            theta: dimer.theta(),
            t_mean: dimer.params.mean_temperature(),
            t_diff: dimer.params.temperature_difference(),
        }
    }
}

/// Flat summary of an analytic-versus-numeric comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub points: usize,
    pub samples: usize,
    pub tolerance: f64,
    pub max_dev_populations: f64,
    pub max_dev_s32: f64,
    pub max_dev_p: f64,
    pub max_dev_c: f64,
    pub max_dev_p_ss: f64,
    pub max_dev_c_ss: f64,
    pub max_trace_drift: f64,
    pub max_hermiticity_drift: f64,
    pub min_eigenvalue: f64,
    pub max_off_x: f64,
    pub worst_quantity: String,
    pub worst_deviation: f64,
    pub worst_theta: f64,
    pub worst_t_mean: f64,
    pub worst_t_diff: f64,
    pub passed: bool,
}

/// Per-point maxima; merged with [`Partial::merge`], which is order-independent.
#[derive(Debug, Clone, Copy)]
struct Partial {
    dev: [f64; 6],
    trace: f64,
    herm: f64,
    min_eig: f64,
    off_x: f64,
    samples: usize,
    worst: (usize, f64, GridPoint),
}

const QUANTITIES: [&str; 6] = ["populations", "s32", "P", "C", "P_ss", "C_ss"];

impl Partial {
    fn empty() -> Self {
        Self {
            dev: [0.0; 6],
            trace: 0.0,
            herm: 0.0,
            min_eig: f64::INFINITY,
            off_x: 0.0,
            samples: 0,
            worst: (0, 0.0, GridPoint::default()),
        }
    }

    fn record(&mut self, quantity: usize, deviation: f64, at: GridPoint) {
        self.dev[quantity] = self.dev[quantity].max(deviation);
        if deviation > self.worst.1 {
            self.worst = (quantity, deviation, at);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.dev.iter_mut().zip(other.dev) {
            *a = a.max(b);
        }
        self.trace = self.trace.max(other.trace);
        self.herm = self.herm.max(other.herm);
        self.min_eig = self.min_eig.min(other.min_eig);
        self.off_x = self.off_x.max(other.off_x);
        self.samples += other.samples;
        // Ties resolved on the grid coordinates so the result does not depend on
        // the order in which workers finish.
        let key = |w: &(usize, f64, GridPoint)| (w.1, -w.2.theta, -w.2.t_mean, -w.2.t_diff, w.0);
        if key(&other.worst).partial_cmp(&key(&self.worst)) == Some(std::cmp::Ordering::Greater) {
            self.worst = other.worst;
        }
        self
    }
}

fn check_point(params: &DimerParams, times: &[f64], cfg: &IntegratorConfig) -> Result<Partial, NumericError> {
    let dimer = Dimer::new(*params)?;
    let at = GridPoint::of(&dimer);
    let l = Liouvillian::new(&dimer);
    let rho0 = DensityMatrix::basis_state(1, Basis::Bare);
    let init = SigmaMoments::from_density(&rho0, &dimer.eig);
    let mut out = Partial::empty();

    for (&t, rho) in times.iter().zip(propagate_samples(&rho0, &l, times, cfg)?) {
        let got = SigmaMoments::from_density(&rho, &dimer.eig);
        let want = bloch_transient(&init, &dimer.rates, &dimer.eig, t)?;
        let pops = [
            (got.s11 - want.s11).abs(),
            (got.s22 - want.s22).abs(),
            (got.s33 - want.s33).abs(),
            (got.s44 - want.s44).abs(),
        ];
        out.record(0, pops.into_iter().fold(0.0, f64::max), at);
        out.record(1, (got.s32 - want.s32).norm(), at);

        let bare = rho.to_basis(Basis::Bare, &dimer.eig);
        out.record(2, (bare.population(2) - transfer_probability(t, &dimer)?).abs(), at);
        out.record(3, (wootters_concurrence(&bare)? - concurrence_transient(t, &dimer)?).abs(), at);

        out.trace = out.trace.max((rho.trace() - 1.0).abs());
        out.herm = out.herm.max(rho.hermiticity_deviation());
        out.min_eig = out.min_eig.min(rho.min_eigenvalue());
        out.off_x = out.off_x.max(bare.off_x_magnitude());
        out.samples += 1;
    }

    let ss = steady_state(&l, &rho0)?.to_basis(Basis::Bare, &dimer.eig);
    out.record(4, (ss.population(2) - steady_transfer_probability(&dimer)).abs(), at);
    out.record(5, (wootters_concurrence(&ss)? - steady_concurrence(&dimer)).abs(), at);
    Ok(out)
}

/// Compares the closed forms with Liouvillian propagation from |eg⟩ at every
/// grid point and sample time, plus the kernel steady state against P_ss and
/// C_ss. Grid points are processed in parallel.
pub fn cross_validate(
    points: &[DimerParams],
    times: &[f64],
    cfg: &IntegratorConfig,
    tol: f64,
) -> Result<ValidationReport, NumericError> {
    if points.is_empty() {
        return Err(NumericError::EmptyGrid("parameter"));
    }
    if times.is_empty() {
        return Err(NumericError::EmptyGrid("time"));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(NumericError::InvalidConfig(format!("tolerance must be positive, got {tol}")));
    }
    cfg.validate()?;

    let partials: Vec<Partial> = points
        .par_iter()
        .map(|p| {
            check_point(p, times, cfg).map_err(|e| {
                let (theta, t_mean, t_diff) = match Dimer::new(*p) {
                    Ok(d) => (d.theta(), p.mean_temperature(), p.temperature_difference()),
                    Err(_) => (f64::NAN, p.mean_temperature(), p.temperature_difference()),
                };
                NumericError::AtGridPoint { theta, t_mean, t_diff, source: Box::new(e) }
            })
        })
        .collect::<Result<_, _>>()?;
    let total = partials.into_iter().fold(Partial::empty(), Partial::merge);

    let invariants_ok = total.trace < DRIFT_TOL
        && total.herm < DRIFT_TOL
        && total.min_eig > POSITIVITY_FLOOR
        && total.off_x < X_STATE_TOL;
    let (quantity, deviation, at) = total.worst;
    Ok(ValidationReport {
        points: points.len(),
        samples: total.samples,
        tolerance: tol,
        max_dev_populations: total.dev[0],
        max_dev_s32: total.dev[1],
        max_dev_p: total.dev[2],
        max_dev_c: total.dev[3],
        max_dev_p_ss: total.dev[4],
        max_dev_c_ss: total.dev[5],
        max_trace_drift: total.trace,
        max_hermiticity_drift: total.herm,
        min_eigenvalue: total.min_eig,
        max_off_x: total.off_x,
        worst_quantity: QUANTITIES[quantity].to_string(),
        worst_deviation: deviation,
        worst_theta: at.theta,
        worst_t_mean: at.t_mean,
        worst_t_diff: at.t_diff,
        passed: invariants_ok && total.dev.iter().all(|&d| d < tol),
    })
}

/// θ ∈ {0.1π, …, 0.9π} × T_m ∈ {0.1, 1, 10, 100} × ΔT ∈ {0, T_m/2}, ξ = 5, γ = 1.
pub fn default_grid() -> Vec<DimerParams> {
    let mut grid = Vec::new();
    for k in 1..=9 {
        let theta = 0.1 * std::f64::consts::PI * k as f64;
        for tm in [0.1, 1.0, 10.0, 100.0] {
            for dt in [0.0, 0.5 * tm] {
                grid.push(DimerParams::from_theta(theta, 5.0).with_mean_temperature(tm, dt));
            }
        }
    }
    grid
}

/// `n` equally spaced times on [0, t_max].
pub fn default_times(t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect(),
    }
}
