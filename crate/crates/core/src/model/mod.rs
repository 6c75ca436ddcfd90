//! Physical parameters of the dimer and everything derived from them without
//! solving any dynamics: the dressed eigensystem, thermal occupations and the
//! effective rates.

mod density;
mod params;
mod rates;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use density::{Basis, DensityMatrix, HERMITICITY_TOL, POSITIVITY_FLOOR, TRACE_TOL};
pub use params::{Detuning, DimerParams, DEFAULT_ETA};
pub use rates::{effective_rates, thermal_occupation, RateSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("coupling strength must be positive, got xi = {0}")]
    NonPositiveCoupling(f64),
    #[error("mixing angle must lie in the open interval (0, pi), got {0}")]
    MixingAngleOutOfRange(f64),
    #[error("parameter `{name}` must be finite and non-negative, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("thermal occupation requires a positive frequency, got {0}")]
    NonPositiveFrequency(f64),
    #[error("density matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("density matrix trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("state vector has zero norm")]
    ZeroNorm,
}

/// Mixing angle θ ∈ (0, π) with tan θ = 2ξ/Δω.
///
/// Positive detuning takes the principal arctangent, negative detuning adds π,
/// and exact resonance gives π/2. The three branches agree with `atan2(2ξ, Δω)`.
pub fn mixing_angle(delta_omega: f64, xi: f64) -> Result<f64, ModelError> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(ModelError::NonPositiveCoupling(xi));
    }
    if !delta_omega.is_finite() {
        return Err(ModelError::InvalidParameter { name: "delta_omega", value: delta_omega });
    }
    let ratio = 2.0 * xi / delta_omega;
    let theta = if delta_omega > 0.0 {
        ratio.atan()
    } else if delta_omega < 0.0 {
        ratio.atan() + std::f64::consts::PI
    } else {
        FRAC_PI_2
    };
    Ok(theta)
}

/// Dressed single-excitation eigensystem of the coupled pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigensystem {
    pub theta: f64,
    /// Gap ε = E₂ − E₃ between the two single-excitation eigenstates.
    pub epsilon: f64,
    /// E₁..E₄, only when a mean frequency ω_m was supplied.
    pub energies: Option<[f64; 4]>,
}

impl Eigensystem {
    pub fn new(params: &DimerParams) -> Result<Self, ModelError> {
        params.validate()?;
        let (theta, epsilon) = match params.detuning {
            Detuning::DeltaOmega(dw) => {
                let theta = mixing_angle(dw, params.xi)?;
                (theta, 2.0 * (0.25 * dw * dw + params.xi * params.xi).sqrt())
            }
            // Δω = 2ξ cot θ, so ε = 2ξ / sin θ.
            Detuning::MixingAngle(theta) => (theta, 2.0 * params.xi / theta.sin()),
        };
        let energies = params.mean_frequency.map(|wm| [wm, 0.5 * epsilon, -0.5 * epsilon, -wm]);
        Ok(Self { theta, epsilon, energies })
    }

    /// Level energies entering the coherent part of the dynamics. Without a
    /// mean frequency the doubly excited and ground levels sit at zero; ω_m
    /// only rotates the ⟨ee|ρ|gg⟩ coherence and never feeds back.
    pub fn levels(&self) -> [f64; 4] {
        self.energies.unwrap_or([0.0, 0.5 * self.epsilon, -0.5 * self.epsilon, 0.0])
    }

    /// (cos θ/2, sin θ/2)
    pub fn half_angle(&self) -> (f64, f64) {
        let half = 0.5 * self.theta;
        (half.cos(), half.sin())
    }

    /// Orthogonal change of basis whose columns are |λ₁⟩..|λ₄⟩ written in the
    /// bare product basis |ee⟩, |eg⟩, |ge⟩, |gg⟩.
    pub fn eigenvectors(&self) -> nalgebra::Matrix4<f64> {
        let (c, s) = self.half_angle();
        #[rustfmt::skip]
        let u = nalgebra::Matrix4::new(
            1.0, 0.0, 0.0, 0.0,
            0.0,   c,  -s, 0.0,
            0.0,   s,   c, 0.0,
            0.0, 0.0, 0.0, 1.0,
        );
        u
    }
}

/// A validated parameter set together with its eigensystem and rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dimer {
    pub params: DimerParams,
    pub eig: Eigensystem,
    pub rates: RateSet,
}

impl Dimer {
    pub fn new(params: DimerParams) -> Result<Self, ModelError> {
        let eig = Eigensystem::new(&params)?;
        let rates = effective_rates(&params, &eig)?;
        Ok(Self { params, eig, rates })
    }

    pub fn theta(&self) -> f64 {
        self.eig.theta
    }

    pub fn epsilon(&self) -> f64 {
        self.eig.epsilon
    }
}
