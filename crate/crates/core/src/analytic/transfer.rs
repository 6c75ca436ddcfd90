//! Probability that the excitation is found on the acceptor, starting from |eg⟩.

use super::moments::half_angle_squares;
use super::{check_time, clamp_unit, mean_gamma, AnalyticError, Regime};
use crate::model::Dimer;

/// P(t) for the donor-excited initial state: a steady term, a cos θ-weighted
/// population relaxation and a damped oscillation at the dressed gap.
pub fn transfer_probability(t: f64, dimer: &Dimer) -> Result<f64, AnalyticError> {
    check_time(t)?;
    let r = &dimer.rates;
    let theta = dimer.theta();
    let (c2, s2) = half_angle_squares(theta);
    let (sin, cos) = theta.sin_cos();
    let sum = r.relaxation_sum();
    let oscillation = 0.5 * sin * sin * (dimer.epsilon() * t).cos() * (-(sum + cos * cos * r.pi1) * t).exp();

    let populations = if sum > 0.0 {
        let steady = (r.gamma32 * s2 + r.gamma23 * c2) / sum;
        let transient = cos * (r.gamma32 * s2 - r.gamma23 * c2) / sum * (-2.0 * sum * t).exp();
        steady + transient
    } else {
        // Without relaxation the eigen-populations stay at cos²(θ/2), sin²(θ/2).
        0.5 * sin * sin
    };
    clamp_unit("P", populations - oscillation)
}

/// The dedicated resonant, high-temperature or low-temperature closed form.
pub fn transfer_probability_limit(regime: Regime, t: f64, dimer: &Dimer) -> Result<f64, AnalyticError> {
    check_time(t)?;
    let gamma = mean_gamma(dimer);
    let n = dimer.rates.n_eps;
    let theta = dimer.theta();
    let (sin, cos) = theta.sin_cos();
    let eps = dimer.epsilon();
    let value = match regime {
        Regime::Resonant => {
            if !dimer.params.is_resonant() {
                return Err(AnalyticError::NotResonant);
            }
            let xi = dimer.params.xi;
            0.5 - 0.5 * (2.0 * xi * t).cos() * (-0.5 * n * gamma * t).exp()
        }
        Regime::HighTemperature => {
            let chi = 0.5 * dimer.rates.pi1;
            let sin2 = sin * sin;
            0.5 - 0.5 * cos * cos * (-sin2 * n * gamma * t).exp()
                - 0.5 * sin2 * (eps * t).cos() * (-(2.0 * cos * cos * chi + 0.5 * sin2 * n * gamma) * t).exp()
        }
        Regime::LowTemperature => {
            let (c2, _) = half_angle_squares(theta);
            let sin2 = sin * sin;
            c2 * (1.0 - cos * (-sin2 * gamma * t).exp())
                - 0.5 * sin2 * (eps * t).cos() * (-0.5 * sin2 * gamma * t).exp()
        }
    };
    clamp_unit("P", value)
}

/// Steady transfer probability ½(1 + cos θ / N(ε)).
///
/// For unequal bath couplings N(ε) is replaced by the γ-weighted contrast
/// factor, which keeps this equal to the t → ∞ limit of [`transfer_probability`].
pub fn steady_transfer_probability(dimer: &Dimer) -> f64 {
    0.5 * (1.0 + dimer.theta().cos() / dimer.rates.contrast_factor())
}

/// High-temperature approximant ½(1 + ε cos θ / (2T_m)). `None` at T_m = 0.
pub fn steady_transfer_probability_high_t(dimer: &Dimer) -> Option<f64> {
    let tm = dimer.params.mean_temperature();
    (tm > 0.0).then(|| 0.5 * (1.0 + dimer.epsilon() * dimer.theta().cos() / (2.0 * tm)))
}
