use nalgebra::Matrix4;
use num_complex::Complex64;

use super::NumericError;
use crate::analytic::CLAMP_SLACK;
use crate::model::{Basis, DensityMatrix};

/// Eigenvalues of ρ above −WOOTTERS_CLAMP are treated as rounding noise.
pub const WOOTTERS_CLAMP: f64 = 1e-9;

/// σʸ ⊗ σʸ in bare order |ee⟩, |eg⟩, |ge⟩, |gg⟩.
fn spin_flip() -> Matrix4<Complex64> {
    let mut y = Matrix4::zeros();
    for (i, sign) in [(0, -1.0), (1, 1.0), (2, 1.0), (3, -1.0)] {
        y[(i, 3 - i)] = Complex64::new(sign, 0.0);
    }
    y
}

/// Positive square root of a Hermitian positive semidefinite matrix.
fn sqrt_psd(rho: &DensityMatrix) -> Result<Matrix4<Complex64>, NumericError> {
    let herm = (rho.entries() + rho.entries().adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    if let Some(&low) = eig.eigenvalues.iter().find(|&&x| x < -WOOTTERS_CLAMP) {
        return Err(NumericError::NegativeEigenvalue(low));
    }
    let roots = eig.eigenvalues.map(|x| Complex64::new(x.max(0.0).sqrt(), 0.0));
    let v = eig.eigenvectors;
    Ok(v * Matrix4::from_diagonal(&roots) * v.adjoint())
}

/// Wootters concurrence of an arbitrary two-qubit state in the bare basis.
///
/// The square roots of the eigenvalues of ρρ̃, ρ̃ = (σʸ⊗σʸ)ρ*(σʸ⊗σʸ), are the
/// singular values of √ρ·√ρ̃ with √ρ̃ = (σʸ⊗σʸ)(√ρ)*(σʸ⊗σʸ); taking them directly
/// avoids squaring and re-rooting small eigenvalues.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64, NumericError> {
    if rho.basis() != Basis::Bare {
        return Err(NumericError::WrongBasis);
    }
    let root = sqrt_psd(rho)?;
    let y = spin_flip();
    let flipped = y * root.conjugate() * y;
    let mut lambda: Vec<f64> = (root * flipped).singular_values().iter().copied().collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    let c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    if c > 1.0 + CLAMP_SLACK {
        return Err(NumericError::InvariantViolation { quantity: "concurrence", value: c });
    }
    Ok(c.clamp(0.0, 1.0))
}
