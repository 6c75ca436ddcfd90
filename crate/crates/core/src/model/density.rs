use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Eigensystem, ModelError};

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue tolerated before a state counts as unphysical.
pub const POSITIVITY_FLOOR: f64 = -1e-9;

/// Which basis the matrix entries are written in.
///
/// Bare order is |ee⟩, |eg⟩, |ge⟩, |gg⟩; eigen order is λ₁..λ₄.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Bare,
    Eigen,
}

/// Two-site density matrix, `entries[(i, j)] = ⟨i|ρ|j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Matrix4<Complex64>,
    basis: Basis,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace. Positivity is not enforced here,
    /// see [`DensityMatrix::min_eigenvalue`].
    pub fn new(entries: Matrix4<Complex64>, basis: Basis) -> Result<Self, ModelError> {
        let rho = Self { entries, basis };
        let scale = rho.entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let herm = rho.hermiticity_deviation();
        if !(herm <= HERMITICITY_TOL * scale) {
            return Err(ModelError::NotHermitian(herm));
        }
        let tr = rho.trace();
        if !((tr - 1.0).abs() <= TRACE_TOL) {
            return Err(ModelError::BadTrace(tr));
        }
        Ok(rho)
    }

    /// Skips validation; callers check drift bounds themselves.
    pub(crate) fn from_raw(entries: Matrix4<Complex64>, basis: Basis) -> Self {
        Self { entries, basis }
    }

    /// |ψ⟩⟨ψ| after normalising `amplitudes`.
    pub fn from_pure(amplitudes: Vector4<Complex64>, basis: Basis) -> Result<Self, ModelError> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(ModelError::ZeroNorm);
        }
        let psi = amplitudes / Complex64::new(norm, 0.0);
        Self::new(psi * psi.adjoint(), basis)
    }

    /// The projector onto the `index`-th basis vector.
    pub fn basis_state(index: usize, basis: Basis) -> Self {
        let mut entries = Matrix4::zeros();
        entries[(index, index)] = Complex64::new(1.0, 0.0);
        Self { entries, basis }
    }

    pub fn maximally_mixed(basis: Basis) -> Self {
        Self { entries: Matrix4::identity() * Complex64::new(0.25, 0.0), basis }
    }

    pub fn entries(&self) -> &Matrix4<Complex64> {
        &self.entries
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn population(&self, index: usize) -> f64 {
        self.entries[(index, index)].re
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        (self.entries - self.entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        let herm = (self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        let ev = herm.symmetric_eigenvalues();
        [ev[0], ev[1], ev[2], ev[3]]
    }

    /// Rewrites the entries in `target` using the exact eigenvector transform.
    pub fn to_basis(&self, target: Basis, eig: &Eigensystem) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let u = eig.eigenvectors().map(|x| Complex64::new(x, 0.0));
        let entries = match target {
            Basis::Bare => u * self.entries * u.transpose(),
            Basis::Eigen => u.transpose() * self.entries * u,
        };
        Self { entries, basis: target }
    }

    /// Largest modulus among entries outside the diagonal and anti-diagonal.
    pub fn off_x_magnitude(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.entries[(i, j)].norm());
                }
            }
        }
        worst
    }
}
