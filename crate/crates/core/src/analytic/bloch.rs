use num_complex::Complex64;

use super::{check_time, AnalyticError, SigmaMoments};
use crate::model::{Eigensystem, RateSet};

/// (1 − e^{−2Γt})/Γ, continuous through Γ = 0.
fn relaxed_fraction(gamma_sum: f64, t: f64) -> f64 {
    if gamma_sum > 0.0 {
        -(-2.0 * gamma_sum * t).exp_m1() / gamma_sum
    } else {
        2.0 * t
    }
}

/// Transient solution of the Bloch equations.
///
/// σ₁₁ and σ₄₄ are constants of motion. The single-excitation populations relax
/// at 2(Γ₂₃ + Γ₃₂) towards the detailed-balance split, and the λ₂–λ₃ coherence
/// rotates at ε while decaying at Γ₂₃ + Γ₃₂ + cos²θ Π₁.
pub fn bloch_transient(
    init: &SigmaMoments,
    rates: &RateSet,
    eig: &Eigensystem,
    t: f64,
) -> Result<SigmaMoments, AnalyticError> {
    check_time(t)?;
    init.validate()?;
    let flow = (rates.gamma32 * init.s33 - rates.gamma23 * init.s22) * relaxed_fraction(rates.relaxation_sum(), t);
    let decay = rates.relaxation_sum() + eig.theta.cos().powi(2) * rates.pi1;
    let phase = Complex64::from_polar((-decay * t).exp(), -eig.epsilon * t);
    Ok(SigmaMoments { s11: init.s11, s22: init.s22 + flow, s33: init.s33 - flow, s44: init.s44, s32: init.s32 * phase })
}

/// Steady state reached from `init`.
pub fn bloch_steady(init: &SigmaMoments, rates: &RateSet) -> Result<SigmaMoments, AnalyticError> {
    init.validate()?;
    let total = rates.relaxation_sum();
    if !(total > 0.0) {
        return Err(AnalyticError::DegenerateRelaxation);
    }
    let single = init.s22 + init.s33;
    Ok(SigmaMoments {
        s11: init.s11,
        s22: single * rates.gamma32 / total,
        s33: single * rates.gamma23 / total,
        s44: init.s44,
        s32: Complex64::new(0.0, 0.0),
    })
}
