use serde::{Deserialize, Serialize};

use super::{DimerParams, Eigensystem, ModelError};

/// Bose–Einstein occupation n̄ = 1/(exp(ω/T) − 1). Zero temperature is an exact
/// branch returning 0.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64, ModelError> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(ModelError::NonPositiveFrequency(omega));
    }
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(ModelError::InvalidParameter { name: "temperature", value: temperature });
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    // exp_m1 overflows to +inf for huge ω/T, which correctly yields 0.
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// Effective dephasing and relaxation rates in the dressed basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSet {
    /// Zero-frequency dephasing strengths χ_l = 2η_l T_l (Ohmic baths).
    pub chi1: f64,
    pub chi2: f64,
    pub pi1: f64,
    pub pi2: f64,
    pub pi3: f64,
    /// Thermal pumping λ₃ → λ₂.
    pub gamma32: f64,
    /// Decay λ₂ → λ₃.
    pub gamma23: f64,
    pub x12: f64,
    pub x13: f64,
    pub x23: f64,
    pub n_eps_1: f64,
    pub n_eps_2: f64,
    /// N(ε) = n̄₁(ε) + n̄₂(ε) + 1.
    pub n_eps: f64,
}

pub fn effective_rates(params: &DimerParams, eig: &Eigensystem) -> Result<RateSet, ModelError> {
    params.validate()?;
    let (c, s) = eig.half_angle();
    let (c2, s2) = (c * c, s * s);
    let sin2 = eig.theta.sin().powi(2);

    let chi1 = 2.0 * params.eta1 * params.t1;
    let chi2 = 2.0 * params.eta2 * params.t2;
    let n1 = thermal_occupation(eig.epsilon, params.t1)?;
    let n2 = thermal_occupation(eig.epsilon, params.t2)?;

    Ok(RateSet {
        chi1,
        chi2,
        pi1: chi1 + chi2,
        pi2: c2 * c2 * chi1 + s2 * s2 * chi2,
        pi3: s2 * s2 * chi1 + c2 * c2 * chi2,
        gamma32: 0.25 * sin2 * (params.gamma1 * n1 + params.gamma2 * n2),
        gamma23: 0.25 * sin2 * (params.gamma1 * (n1 + 1.0) + params.gamma2 * (n2 + 1.0)),
        x12: c2 * chi1 + s2 * chi2,
        x13: s2 * chi1 + c2 * chi2,
        x23: 0.25 * sin2 * (chi1 + chi2),
        n_eps_1: n1,
        n_eps_2: n2,
        n_eps: n1 + n2 + 1.0,
    })
}

impl RateSet {
    /// Γ₂₃ + Γ₃₂; populations relax at twice this rate.
    pub fn relaxation_sum(&self) -> f64 {
        self.gamma23 + self.gamma32
    }

    /// Decay rate of ⟨σ₃₂⟩ written with the rates as they enter the master
    /// equation: Π₂ + Π₃ + Γ₂₃ + Γ₃₂ − 2X₂₃.
    pub fn coherence_decay(&self) -> f64 {
        self.pi2 + self.pi3 + self.relaxation_sum() - 2.0 * self.x23
    }

    /// (Γ₂₃ + Γ₃₂)/(Γ₂₃ − Γ₃₂), the thermal factor that sets the steady-state
    /// contrast. Equals N(ε) when γ₁ = γ₂ and is the γ-weighted average of
    /// 2n̄_l(ε) + 1 otherwise. Falls back to N(ε) without any relaxation.
    pub fn contrast_factor(&self) -> f64 {
        let diff = self.gamma23 - self.gamma32;
        if diff > 0.0 {
            self.relaxation_sum() / diff
        } else {
            self.n_eps
        }
    }

    pub fn all_non_negative(&self) -> bool {
        [
            self.chi1,
            self.chi2,
            self.pi1,
            self.pi2,
            self.pi3,
            self.gamma32,
            self.gamma23,
            self.x12,
            self.x13,
            self.x23,
            self.n_eps_1,
            self.n_eps_2,
        ]
        .iter()
        .all(|&r| r >= 0.0)
    }
}
