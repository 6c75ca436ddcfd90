use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::ModelError;

/// How the site asymmetry is specified. Both forms canonicalise to (θ, ε).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detuning {
    /// Δω = ω₁ − ω₂, may be negative.
    DeltaOmega(f64),
    /// Mixing angle θ ∈ (0, π) directly.
    MixingAngle(f64),
}

/// Physical inputs of the dimer, in units of γ.
///
/// Defaults follow the figure conventions: γ₁ = γ₂ = 1, η₁ = η₂ = 0.005 (so that
/// χ_l = 2η_l T_l = 0.01 T_l) and zero temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimerParams {
    pub detuning: Detuning,
    pub xi: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub t1: f64,
    pub t2: f64,
    /// ω_m = (ω₁ + ω₂)/2. Only used to report E₁ and E₄.
    pub mean_frequency: Option<f64>,
}

pub const DEFAULT_ETA: f64 = 0.005;

impl DimerParams {
    fn with_detuning(detuning: Detuning, xi: f64) -> Self {
        Self {
            detuning,
            xi,
            gamma1: 1.0,
            gamma2: 1.0,
            eta1: DEFAULT_ETA,
            eta2: DEFAULT_ETA,
            t1: 0.0,
            t2: 0.0,
            mean_frequency: None,
        }
    }

    pub fn from_detuning(delta_omega: f64, xi: f64) -> Self {
        Self::with_detuning(Detuning::DeltaOmega(delta_omega), xi)
    }

    pub fn from_theta(theta: f64, xi: f64) -> Self {
        Self::with_detuning(Detuning::MixingAngle(theta), xi)
    }

    pub fn resonant(xi: f64) -> Self {
        Self::from_detuning(0.0, xi)
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        self.with_gammas(gamma, gamma)
    }

    pub fn with_gammas(mut self, gamma1: f64, gamma2: f64) -> Self {
        self.gamma1 = gamma1;
        self.gamma2 = gamma2;
        self
    }

    pub fn with_eta(self, eta: f64) -> Self {
        self.with_etas(eta, eta)
    }

    pub fn with_etas(mut self, eta1: f64, eta2: f64) -> Self {
        self.eta1 = eta1;
        self.eta2 = eta2;
        self
    }

    pub fn with_temperatures(mut self, t1: f64, t2: f64) -> Self {
        self.t1 = t1;
        self.t2 = t2;
        self
    }

    /// T₁ = T_m + ΔT/2, T₂ = T_m − ΔT/2.
    pub fn with_mean_temperature(self, t_mean: f64, t_diff: f64) -> Self {
        self.with_temperatures(t_mean + 0.5 * t_diff, t_mean - 0.5 * t_diff)
    }

    pub fn with_mean_frequency(mut self, omega_m: f64) -> Self {
        self.mean_frequency = Some(omega_m);
        self
    }

    pub fn mean_temperature(&self) -> f64 {
        0.5 * (self.t1 + self.t2)
    }

    pub fn temperature_difference(&self) -> f64 {
        self.t1 - self.t2
    }

    /// True when the pair is exactly on resonance. An angle input counts as
    /// resonant when it equals π/2 to within a few ulps.
    pub fn is_resonant(&self) -> bool {
        match self.detuning {
            Detuning::DeltaOmega(dw) => dw == 0.0,
            Detuning::MixingAngle(theta) => (theta - FRAC_PI_2).abs() <= 4.0 * f64::EPSILON,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.xi > 0.0) || !self.xi.is_finite() {
            return Err(ModelError::NonPositiveCoupling(self.xi));
        }
        match self.detuning {
            Detuning::DeltaOmega(dw) if !dw.is_finite() => {
                return Err(ModelError::InvalidParameter { name: "delta_omega", value: dw });
            }
            Detuning::MixingAngle(theta) if !(theta > 0.0 && theta < PI) => {
                return Err(ModelError::MixingAngleOutOfRange(theta));
            }
            _ => {}
        }
        let fields = [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("eta1", self.eta1),
            ("eta2", self.eta2),
            ("t1", self.t1),
            ("t2", self.t2),
        ];
        for (name, value) in fields {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        if let Some(wm) = self.mean_frequency {
            if !wm.is_finite() {
                return Err(ModelError::InvalidParameter { name: "mean_frequency", value: wm });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = DimerParams::resonant(5.0);
        assert_eq!((p.gamma1, p.gamma2), (1.0, 1.0));
        assert_eq!((p.t1, p.t2), (0.0, 0.0));
        assert!(p.is_resonant());
        assert!(p.validate().is_ok());
    }

    #[test]
    fn mean_temperature_roundtrip() {
        let p = DimerParams::resonant(5.0).with_mean_temperature(10.0, 4.0);
        assert_eq!((p.t1, p.t2), (12.0, 8.0));
        assert_eq!(p.mean_temperature(), 10.0);
        assert_eq!(p.temperature_difference(), 4.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let base = DimerParams::from_theta(1.0, 5.0);
        assert!(base.with_temperatures(-1.0, 0.0).validate().is_err());
        assert!(base.with_mean_temperature(1.0, 4.0).validate().is_err());
        assert!(base.with_gammas(1.0, f64::NAN).validate().is_err());
        assert!(base.with_eta(-0.1).validate().is_err());
        assert!(DimerParams::from_theta(0.0, 5.0).validate().is_err());
        assert!(DimerParams::from_theta(PI, 5.0).validate().is_err());
        assert!(DimerParams::from_theta(1.0, 0.0).validate().is_err());
        assert!(DimerParams::from_detuning(f64::INFINITY, 1.0).validate().is_err());
    }

    #[test]
    fn resonance_detection() {
        assert!(DimerParams::from_theta(FRAC_PI_2, 5.0).is_resonant());
        assert!(!DimerParams::from_theta(0.5 * PI + 1e-9, 5.0).is_resonant());
        assert!(!DimerParams::from_detuning(1e-12, 5.0).is_resonant());
    }
}
