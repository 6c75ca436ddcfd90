//! Dormand–Prince 5(4) with local extrapolation and FSAL, for autonomous linear
//! systems on complex state vectors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::liouvillian::StateVector;
use super::NumericError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DormandPrince45,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub max_steps: usize,
    pub method: Method,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_tol: 1e-11, max_step: 0.5, max_steps: 10_000_000, method: Method::DormandPrince45 }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<(), NumericError> {
        let ok = self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.max_step > 0.0 && self.max_steps > 0;
        if ok && self.rel_tol.is_finite() && self.abs_tol.is_finite() {
            Ok(())
        } else {
            Err(NumericError::InvalidConfig(format!("{self:?}")))
        }
    }
}

// The system is autonomous, so the stage nodes c_i are not needed.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// Fifth-order weights (also row 7 of the tableau).
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fifth minus fourth order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Adaptive integrator that keeps its step size and FSAL stage between calls so
/// a trajectory can be advanced through a sequence of output times.
pub struct Stepper<F> {
    rhs: F,
    cfg: IntegratorConfig,
    t: f64,
    y: StateVector,
    k1: StateVector,
    h: Option<f64>,
    pub stats: Stats,
}

impl<F> Stepper<F>
where
    F: Fn(&StateVector) -> StateVector,
{
    pub fn new(rhs: F, y0: StateVector, cfg: IntegratorConfig) -> Result<Self, NumericError> {
        cfg.validate()?;
        let k1 = rhs(&y0);
        Ok(Self { rhs, cfg, t: 0.0, y: y0, k1, h: None, stats: Stats::default() })
    }

    pub fn state(&self) -> &StateVector {
        &self.y
    }

    fn error_norm(&self, y_new: &StateVector, err: &StateVector) -> f64 {
        let sum: f64 = err
            .iter()
            .zip(self.y.iter().zip(y_new.iter()))
            .map(|(e, (a, b))| {
                let scale = self.cfg.abs_tol + self.cfg.rel_tol * a.norm().max(b.norm());
                (e.norm() / scale).powi(2)
            })
            .sum();
        (sum / err.len() as f64).sqrt()
    }

    /// Initial step from the usual two-derivative estimate.
    fn initial_step(&self) -> f64 {
        let scale = |v: &StateVector| {
            let s: f64 = v
                .iter()
                .zip(self.y.iter())
                .map(|(x, y)| (x.norm() / (self.cfg.abs_tol + self.cfg.rel_tol * y.norm())).powi(2))
                .sum();
            (s / 16.0).sqrt()
        };
        let d0 = scale(&self.y);
        let d1 = scale(&self.k1);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let y1 = self.y + self.k1 * c(h0);
        let k2 = (self.rhs)(&y1);
        let d2 = scale(&(k2 - self.k1)) / h0;
        let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
        (100.0 * h0).min(h1).min(self.cfg.max_step)
    }

    /// Advances the state exactly to `t_end`.
    pub fn advance_to(&mut self, t_end: f64) -> Result<(), NumericError> {
        if t_end < self.t {
            return Err(NumericError::NegativeTime(t_end - self.t));
        }
        if t_end == self.t {
            return Ok(());
        }
        let mut h = self.h.unwrap_or_else(|| self.initial_step());
        while self.t < t_end {
            if self.stats.accepted + self.stats.rejected >= self.cfg.max_steps {
                return Err(NumericError::TooManySteps { t: self.t });
            }
            let remaining = t_end - self.t;
            let last = h >= remaining;
            let step = if last { remaining } else { h.min(self.cfg.max_step) };
            if step < 1e-14 * self.t.abs().max(1.0) && !last {
                return Err(NumericError::StepSizeUnderflow { t: self.t, h: step });
            }
            let (y_new, k7, err) = self.trial(step);
            let norm = self.error_norm(&y_new, &err);
            if norm.is_nan() {
                return Err(NumericError::StepSizeUnderflow { t: self.t, h: step });
            }
            let factor =
                if norm == 0.0 { MAX_FACTOR } else { (SAFETY * norm.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR) };
            if norm <= 1.0 {
                self.t = if last { t_end } else { self.t + step };
                self.y = y_new;
                self.k1 = k7;
                self.stats.accepted += 1;
                // A short final step says nothing about the natural step size.
                if !last || step >= h {
                    h = (step * factor).min(self.cfg.max_step);
                }
            } else {
                self.stats.rejected += 1;
                h = step * factor.min(1.0);
            }
        }
        self.h = Some(h);
        Ok(())
    }

    fn trial(&self, h: f64) -> (StateVector, StateVector, StateVector) {
        let f = &self.rhs;
        let y = &self.y;
        let k1 = &self.k1;
        let k2 = f(&(y + k1 * c(h * A21)));
        let k3 = f(&(y + k1 * c(h * A31) + k2 * c(h * A32)));
        let k4 = f(&(y + k1 * c(h * A41) + k2 * c(h * A42) + k3 * c(h * A43)));
        let k5 = f(&(y + k1 * c(h * A51) + k2 * c(h * A52) + k3 * c(h * A53) + k4 * c(h * A54)));
        let k6 = f(&(y + k1 * c(h * A61) + k2 * c(h * A62) + k3 * c(h * A63) + k4 * c(h * A64) + k5 * c(h * A65)));
        let y_new = y + k1 * c(h * B1) + k3 * c(h * B3) + k4 * c(h * B4) + k5 * c(h * B5) + k6 * c(h * B6);
        let k7 = f(&y_new);
        let err = k1 * c(h * E1) + k3 * c(h * E3) + k4 * c(h * E4) + k5 * c(h * E5) + k6 * c(h * E6) + k7 * c(h * E7);
        (y_new, k7, err)
    }
}
