use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::AnalyticError;
use crate::model::{Basis, DensityMatrix, Eigensystem};

const TRACE_TOL: f64 = 1e-12;
const POP_SLACK: f64 = 1e-12;
const COHERENCE_SLACK: f64 = 1e-9;

/// Eigenbasis expectation values ⟨σ_mn⟩ = ⟨λ_n|ρ|λ_m⟩ needed by the dynamics.
///
/// `s32` is ⟨σ₃₂⟩ = ⟨λ₂|ρ|λ₃⟩; ⟨σ₂₃⟩ is its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaMoments {
    pub s11: f64,
    pub s22: f64,
    pub s33: f64,
    pub s44: f64,
    pub s32: Complex64,
}

/// Bare-basis expectation values ⟨τ_ij⟩ = ⟨η_j|ρ|η_i⟩.
///
/// `t23` is ⟨τ₂₃⟩ = ⟨ge|ρ|eg⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauMoments {
    pub t11: f64,
    pub t22: f64,
    pub t33: f64,
    pub t44: f64,
    pub t23: Complex64,
}

fn check_block(pops: [f64; 4], middle: (f64, f64), coherence: Complex64) -> Result<(), AnalyticError> {
    let trace: f64 = pops.iter().sum();
    if !((trace - 1.0).abs() <= TRACE_TOL) {
        return Err(AnalyticError::InvalidMoments(format!("trace {trace}")));
    }
    if let Some(p) = pops.iter().find(|&&p| !(-POP_SLACK..=1.0 + POP_SLACK).contains(&p)) {
        return Err(AnalyticError::InvalidMoments(format!("population {p}")));
    }
    if coherence.norm_sqr() > middle.0 * middle.1 + COHERENCE_SLACK {
        return Err(AnalyticError::InvalidMoments(format!("coherence {coherence} too large")));
    }
    Ok(())
}

impl SigmaMoments {
    pub fn s23(&self) -> Complex64 {
        self.s32.conj()
    }

    pub fn trace(&self) -> f64 {
        self.s11 + self.s22 + self.s33 + self.s44
    }

    pub fn validate(&self) -> Result<(), AnalyticError> {
        check_block([self.s11, self.s22, self.s33, self.s44], (self.s22, self.s33), self.s32)
    }

    pub fn from_density(rho: &DensityMatrix, eig: &Eigensystem) -> Self {
        let rho = rho.to_basis(Basis::Eigen, eig);
        Self {
            s11: rho.population(0),
            s22: rho.population(1),
            s33: rho.population(2),
            s44: rho.population(3),
            s32: rho.get(1, 2),
        }
    }

    /// Eigenbasis matrix carrying only these moments.
    pub fn to_matrix(&self) -> Matrix4<Complex64> {
        let mut m = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            self.s11.into(),
            self.s22.into(),
            self.s33.into(),
            self.s44.into(),
        ));
        m[(1, 2)] = self.s32;
        m[(2, 1)] = self.s32.conj();
        m
    }
}

impl TauMoments {
    /// Donor excited, acceptor in its ground state: |eg⟩.
    pub fn donor_excited() -> Self {
        Self { t11: 0.0, t22: 1.0, t33: 0.0, t44: 0.0, t23: Complex64::new(0.0, 0.0) }
    }

    pub fn t32(&self) -> Complex64 {
        self.t23.conj()
    }

    pub fn trace(&self) -> f64 {
        self.t11 + self.t22 + self.t33 + self.t44
    }

    pub fn validate(&self) -> Result<(), AnalyticError> {
        check_block([self.t11, self.t22, self.t33, self.t44], (self.t22, self.t33), self.t23)
    }

    pub fn from_density(rho: &DensityMatrix, eig: &Eigensystem) -> Self {
        let rho = rho.to_basis(Basis::Bare, eig);
        Self {
            t11: rho.population(0),
            t22: rho.population(1),
            t33: rho.population(2),
            t44: rho.population(3),
            t23: rho.get(2, 1),
        }
    }

    /// Bare-basis X-state matrix carrying only these moments.
    pub fn to_matrix(&self) -> Matrix4<Complex64> {
        let mut m = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            self.t11.into(),
            self.t22.into(),
            self.t33.into(),
            self.t44.into(),
        ));
        m[(2, 1)] = self.t23;
        m[(1, 2)] = self.t23.conj();
        m
    }
}

/// Bare → eigen representation for the populations and the λ₂–λ₃ coherence.
pub fn sigma_from_tau(tau: &TauMoments, theta: f64) -> SigmaMoments {
    let (c2, s2) = half_angle_squares(theta);
    let sin = theta.sin();
    let mix = sin * tau.t23.re; // ½ sin θ (τ₂₃ + τ₃₂)
    let s23 = 0.5 * sin * (tau.t33 - tau.t22) + c2 * tau.t23 - s2 * tau.t32();
    SigmaMoments {
        s11: tau.t11,
        s22: c2 * tau.t22 + s2 * tau.t33 + mix,
        s33: s2 * tau.t22 + c2 * tau.t33 - mix,
        s44: tau.t44,
        s32: s23.conj(),
    }
}

/// Eigen → bare representation, inverse of [`sigma_from_tau`].
pub fn tau_from_sigma(sigma: &SigmaMoments, theta: f64) -> TauMoments {
    let (c2, s2) = half_angle_squares(theta);
    let sin = theta.sin();
    let mix = sin * sigma.s32.re; // ½ sin θ (σ₂₃ + σ₃₂)
    TauMoments {
        t11: sigma.s11,
        t22: c2 * sigma.s22 + s2 * sigma.s33 - mix,
        t33: s2 * sigma.s22 + c2 * sigma.s33 + mix,
        t44: sigma.s44,
        t23: -s2 * sigma.s32 + c2 * sigma.s23() + 0.5 * sin * (sigma.s22 - sigma.s33),
    }
}

pub(crate) fn half_angle_squares(theta: f64) -> (f64, f64) {
    let (s, c) = (0.5 * theta).sin_cos();
    (c * c, s * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DimerParams;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn donor_state_decomposition() {
        for theta in [0.2, 1.0, FRAC_PI_2, 2.5] {
            let sigma = sigma_from_tau(&TauMoments::donor_excited(), theta);
            let (c2, s2) = half_angle_squares(theta);
            assert!((sigma.s22 - c2).abs() < 1e-15);
            assert!((sigma.s33 - s2).abs() < 1e-15);
            assert!(close(sigma.s23(), Complex64::new(-0.5 * theta.sin(), 0.0), 1e-15));
        }
    }

    #[test]
    fn symmetric_mixture_is_basis_independent() {
        let tau = TauMoments { t11: 0.0, t22: 0.5, t33: 0.5, t44: 0.0, t23: Complex64::new(0.0, 0.0) };
        let sigma = sigma_from_tau(&tau, FRAC_PI_2);
        assert!((sigma.s22 - 0.5).abs() < 1e-15 && (sigma.s33 - 0.5).abs() < 1e-15);
        assert!(sigma.s32.norm() < 1e-15);
    }

    // The transforms must agree with conjugating the full matrix by the
    // eigenvector matrix.
    #[test]
    fn transforms_match_matrix_rotation() {
        let theta = 0.83;
        let eig = Eigensystem::new(&DimerParams::from_theta(theta, 1.0)).unwrap();
        let tau = TauMoments { t11: 0.1, t22: 0.35, t33: 0.3, t44: 0.25, t23: Complex64::new(0.12, -0.2) };
        let rho = DensityMatrix::new(tau.to_matrix(), Basis::Bare).unwrap();
        let via_matrix = SigmaMoments::from_density(&rho, &eig);
        let via_formula = sigma_from_tau(&tau, theta);
        assert!((via_matrix.s22 - via_formula.s22).abs() < 1e-15);
        assert!((via_matrix.s33 - via_formula.s33).abs() < 1e-15);
        assert!(close(via_matrix.s32, via_formula.s32, 1e-15));
        let back = TauMoments::from_density(&rho, &eig);
        assert!(close(back.t23, tau.t23, 1e-15));
    }

    #[test]
    fn trace_preserved() {
        let tau = TauMoments { t11: 0.2, t22: 0.3, t33: 0.4, t44: 0.1, t23: Complex64::new(0.1, 0.05) };
        let sigma = sigma_from_tau(&tau, 2.2);
        assert!((sigma.trace() - 1.0).abs() < 1e-15);
        assert!((tau_from_sigma(&sigma, 2.2).trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(TauMoments::donor_excited().validate().is_ok());
        let mut bad = TauMoments::donor_excited();
        bad.t22 = 0.9;
        assert!(bad.validate().is_err());
        let too_coherent = TauMoments { t11: 0.0, t22: 0.5, t33: 0.5, t44: 0.0, t23: Complex64::new(0.6, 0.0) };
        assert!(too_coherent.validate().is_err());
    }
}
