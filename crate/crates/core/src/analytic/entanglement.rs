//! Bare-basis coherence and donor–acceptor concurrence.

use num_complex::Complex64;

use super::moments::half_angle_squares;
use super::{check_time, clamp_unit, mean_gamma, AnalyticError, Regime, TauMoments};
use crate::model::{Basis, DensityMatrix, Dimer};

/// Largest off-X entry accepted by [`x_state_concurrence`].
pub const X_STATE_TOL: f64 = 1e-10;

/// e^{iεt} cos²(θ/2) − e^{−iεt} sin²(θ/2)
fn split_phase(theta: f64, eps_t: f64) -> Complex64 {
    let (c2, s2) = half_angle_squares(theta);
    Complex64::from_polar(c2, eps_t) - Complex64::from_polar(s2, -eps_t)
}

/// ⟨τ₂₃(t)⟩ as a linear combination of τ₂₂(0), τ₃₃(0), τ₂₃(0) and τ₃₂(0).
///
/// τ₁₁ and τ₄₄ do not feed the single-excitation block.
pub fn tau23_evolution(init: &TauMoments, dimer: &Dimer, t: f64) -> Result<Complex64, AnalyticError> {
    check_time(t)?;
    init.validate()?;
    let r = &dimer.rates;
    let theta = dimer.theta();
    let (c2, s2) = half_angle_squares(theta);
    let (sin, cos) = theta.sin_cos();
    let sum = r.relaxation_sum();
    let eps_t = dimer.epsilon() * t;
    let pop_decay = (-2.0 * sum * t).exp();
    let coh_decay = (-(cos * cos * r.pi1 + sum) * t).exp();
    let phase = split_phase(theta, eps_t);

    // Population-relaxation parts of the τ₂₂(0) and τ₃₃(0) coefficients.
    let (pop22, pop33) = if sum > 0.0 {
        let balance = 0.5 * sin * (r.gamma32 - r.gamma23) / sum;
        (
            balance + sin * (c2 * r.gamma23 - s2 * r.gamma32) / sum * pop_decay,
            balance + sin * (s2 * r.gamma23 - c2 * r.gamma32) / sum * pop_decay,
        )
    } else {
        (0.5 * sin * cos, -0.5 * sin * cos)
    };
    let a22 = pop22 - 0.5 * sin * coh_decay * phase;
    let a33 = pop33 + 0.5 * sin * coh_decay * phase;
    let a23 = (Complex64::from_polar(s2 * s2, -eps_t) + Complex64::from_polar(c2 * c2, eps_t)) * coh_decay
        + 0.5 * sin * sin * pop_decay;
    let a32 = 0.5 * sin * sin * (pop_decay - coh_decay * eps_t.cos());

    Ok(a22 * init.t22 + a33 * init.t33 + a23 * init.t23 + a32 * init.t32())
}

/// Closed-form concurrence of an X-shaped bare-basis state.
pub fn x_state_concurrence(rho: &DensityMatrix) -> Result<f64, AnalyticError> {
    if rho.basis() != Basis::Bare {
        return Err(AnalyticError::WrongBasis);
    }
    let leak = rho.off_x_magnitude();
    if leak > X_STATE_TOL {
        return Err(AnalyticError::NotXState(leak));
    }
    let p = |i: usize| rho.population(i).max(0.0);
    let inner = 2.0 * (rho.get(1, 2).norm() - (p(0) * p(3)).sqrt());
    let outer = 2.0 * (rho.get(0, 3).norm() - (p(1) * p(2)).sqrt());
    clamp_unit("C", inner.max(outer).max(0.0))
}

/// C(t) = 2|⟨τ₂₃(t)⟩| for the donor-excited initial state, exact in the rates.
pub fn concurrence_transient(t: f64, dimer: &Dimer) -> Result<f64, AnalyticError> {
    let tau23 = tau23_evolution(&TauMoments::donor_excited(), dimer, t)?;
    clamp_unit("C", 2.0 * tau23.norm())
}

/// Dedicated limiting closed forms of the concurrence. The resonant one is the
/// usual approximant; [`concurrence_transient`] stays exact.
pub fn concurrence_limit(regime: Regime, t: f64, dimer: &Dimer) -> Result<f64, AnalyticError> {
    check_time(t)?;
    let gamma = mean_gamma(dimer);
    let n = dimer.rates.n_eps;
    let theta = dimer.theta();
    let (sin, cos) = theta.sin_cos();
    let sin2 = sin * sin;
    let eps_t = dimer.epsilon() * t;
    let value = match regime {
        Regime::Resonant => {
            if !dimer.params.is_resonant() {
                return Err(AnalyticError::NotResonant);
            }
            let re = (-(-n * gamma * t).exp_m1()) / n;
            let im = eps_t.sin() * (-0.5 * n * gamma * t).exp();
            Complex64::new(re, im).norm()
        }
        Regime::HighTemperature => {
            let chi = 0.5 * dimer.rates.pi1;
            let first = 0.5 * (2.0 * theta).sin() * (-sin2 * n * gamma * t).exp();
            let damp = (-(2.0 * cos * cos * chi + 0.5 * sin2 * n * gamma) * t).exp();
            (first - sin * damp * split_phase(theta, eps_t)).norm()
        }
        Regime::LowTemperature => {
            let (c2, _) = half_angle_squares(theta);
            let damp = (-0.5 * sin2 * gamma * t).exp();
            let inner = 1.0 - 2.0 * c2 * (-sin2 * gamma * t).exp() + damp * split_phase(theta, eps_t);
            sin * inner.norm()
        }
    };
    clamp_unit("C", value)
}

/// C_ss = sin θ / N(ε), with the γ-weighted contrast factor for unequal
/// couplings so that it stays the t → ∞ limit of [`concurrence_transient`].
pub fn steady_concurrence(dimer: &Dimer) -> f64 {
    dimer.theta().sin() / dimer.rates.contrast_factor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{bloch_transient, long_time, sigma_from_tau, tau_from_sigma};
    use crate::model::{thermal_occupation, DimerParams};
    use nalgebra::{Matrix4, Vector4};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn dimer(theta: f64, tm: f64) -> Dimer {
        Dimer::new(DimerParams::from_theta(theta, 5.0).with_mean_temperature(tm, 0.0)).unwrap()
    }

    fn composed(init: &TauMoments, d: &Dimer, t: f64) -> Complex64 {
        let sigma0 = sigma_from_tau(init, d.theta());
        let sigma_t = bloch_transient(&sigma0, &d.rates, &d.eig, t).unwrap();
        tau_from_sigma(&sigma_t, d.theta()).t23
    }

    #[test]
    fn coefficient_of_donor_population_vanishes_at_zero() {
        for theta in [0.3, FRAC_PI_2, 2.8] {
            let z = tau23_evolution(&TauMoments::donor_excited(), &dimer(theta, 5.0), 0.0).unwrap();
            assert!(z.norm() < 1e-15);
        }
    }

    #[test]
    fn matches_three_step_pipeline() {
        let inits = [
            TauMoments::donor_excited(),
            TauMoments { t11: 0.0, t22: 0.0, t33: 1.0, t44: 0.0, t23: Complex64::new(0.0, 0.0) },
            TauMoments { t11: 0.1, t22: 0.4, t33: 0.3, t44: 0.2, t23: Complex64::new(0.2, -0.15) },
        ];
        for d in [dimer(0.4, 0.0), dimer(2.1, 30.0), dimer(FRAC_PI_2, 1.0)] {
            for init in &inits {
                for t in [0.0, 0.13, 1.7, 8.0] {
                    let lhs = tau23_evolution(init, &d, t).unwrap();
                    assert!((lhs - composed(init, &d, t)).norm() < 1e-12, "t={t}");
                }
            }
        }
    }

    #[test]
    fn resonant_long_time_coherence() {
        let d = dimer(FRAC_PI_2, 10.0);
        let t = long_time(&d).unwrap();
        let z = tau23_evolution(&TauMoments::donor_excited(), &d, t).unwrap();
        let n = 2.0 * thermal_occupation(10.0, 10.0).unwrap() + 1.0;
        assert!((z - Complex64::new(-0.5 / n, 0.0)).norm() < 1e-12);
    }

    fn pure(amps: [f64; 4]) -> DensityMatrix {
        DensityMatrix::from_pure(Vector4::from(amps.map(|a| Complex64::new(a, 0.0))), Basis::Bare).unwrap()
    }

    #[test]
    fn x_state_reference_values() {
        let bell = pure([0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]);
        assert!((x_state_concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
        let product = DensityMatrix::basis_state(1, Basis::Bare);
        assert_eq!(x_state_concurrence(&product).unwrap(), 0.0);
        let phi = pure([FRAC_1_SQRT_2, 0.0, 0.0, -FRAC_1_SQRT_2]);
        assert!((x_state_concurrence(&phi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x_state_rejects_other_shapes() {
        let mut m = Matrix4::identity() * Complex64::new(0.25, 0.0);
        m[(0, 1)] = Complex64::new(0.01, 0.0);
        m[(1, 0)] = Complex64::new(0.01, 0.0);
        let rho = DensityMatrix::new(m, Basis::Bare).unwrap();
        assert!(matches!(x_state_concurrence(&rho), Err(AnalyticError::NotXState(_))));
        let eig_rho = DensityMatrix::basis_state(1, Basis::Eigen);
        assert_eq!(x_state_concurrence(&eig_rho), Err(AnalyticError::WrongBasis));
    }

    #[test]
    fn transient_concurrence_endpoints() {
        for theta in [0.1 * PI, 0.3 * PI, FRAC_PI_2, 0.8 * PI] {
            let d = dimer(theta, 0.0);
            assert!(concurrence_transient(0.0, &d).unwrap() < 1e-15);
            let t = long_time(&d).unwrap();
            assert!((concurrence_transient(t, &d).unwrap() - theta.sin()).abs() < 1e-12);
            assert!((steady_concurrence(&d) - theta.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn resonant_concurrence_matches_approximant() {
        for tm in [0.0, 0.1, 10.0, 100.0] {
            let d = dimer(FRAC_PI_2, tm);
            for k in 0..100 {
                let t = 0.1 * k as f64;
                let exact = concurrence_transient(t, &d).unwrap();
                let approx = concurrence_limit(Regime::Resonant, t, &d).unwrap();
                assert!((exact - approx).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn limit_long_time_values() {
        let hot = dimer(0.3 * PI, 100.0);
        assert!(concurrence_limit(Regime::HighTemperature, 1e3, &hot).unwrap() < 1e-12);
        let cold = dimer(0.3 * PI, 0.0);
        // sin(0.3π) = 0.809016994374947
        let c = concurrence_limit(Regime::LowTemperature, 1e4, &cold).unwrap();
        assert!((c - 0.809_016_994_374_947).abs() < 1e-12);
        assert_eq!(concurrence_limit(Regime::Resonant, 0.0, &dimer(FRAC_PI_2, 1.0)).unwrap(), 0.0);
        assert_eq!(concurrence_limit(Regime::Resonant, 1.0, &cold), Err(AnalyticError::NotResonant));
        assert!(concurrence_limit(Regime::HighTemperature, 0.0, &hot).unwrap() < 1e-15);
        assert!(concurrence_limit(Regime::LowTemperature, 0.0, &cold).unwrap() < 1e-15);
    }

    #[test]
    fn steady_concurrence_warm_resonance() {
        let d = dimer(FRAC_PI_2, 100.0);
        let n = 2.0 * thermal_occupation(10.0, 100.0).unwrap() + 1.0;
        assert!((steady_concurrence(&d) - 1.0 / n).abs() < 1e-15);
        // 1/(2·9.50833194477505 + 1) = 0.04995837495788
        assert!((steady_concurrence(&d) - 0.049_958_374_957_88).abs() < 1e-12);
        assert_eq!(steady_concurrence(&dimer(FRAC_PI_2, 0.0)), 1.0);
    }
}
