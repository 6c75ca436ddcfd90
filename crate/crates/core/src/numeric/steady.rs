use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;

use super::liouvillian::{unvectorize, vectorize, Liouvillian, StateVector};
use super::NumericError;
use crate::model::{Basis, DensityMatrix};

/// Singular values below this fraction of the largest span the kernel.
pub const KERNEL_TOL: f64 = 1e-8;
/// Singular values in this relative window make the kernel dimension ambiguous.
const AMBIGUOUS: (f64, f64) = (1e-9, 1e-7);
const RESIDUAL_TOL: f64 = 1e-10;

/// Steady state reached from `rho0`, in the eigenbasis.
///
/// σ₁₁ and σ₄₄ are conserved, so the kernel of L has dimension at least three
/// and the steady state depends on the initial state. It is obtained with the
/// spectral projector onto the kernel, P₀ = R (W†R)⁻¹ W†, built from the right
/// and left null vectors of L.
pub fn steady_state(l: &Liouvillian, rho0: &DensityMatrix) -> Result<DensityMatrix, NumericError> {
    let start = vectorize(rho0.to_basis(Basis::Eigen, l.eigensystem()).entries());
    let svd = l.matrix().svd(true, true);
    let (u, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let sigma = svd.singular_values;
    let scale = sigma.max();
    if !(scale > 0.0) {
        // L = 0: everything is stationary.
        return Ok(rho0.to_basis(Basis::Eigen, l.eigensystem()));
    }
    if let Some(s) = sigma.iter().map(|s| s / scale).find(|s| *s > AMBIGUOUS.0 && *s < AMBIGUOUS.1) {
        return Err(NumericError::KernelResolutionFailure(s));
    }
    // The singular values come back unsorted; pick kernel indices explicitly.
    let kernel: Vec<usize> = (0..16).filter(|&k| sigma[k] < KERNEL_TOL * scale).collect();
    if kernel.is_empty() {
        return Err(NumericError::KernelResolutionFailure(sigma.min() / scale));
    }
    let right = DMatrix::from_fn(16, kernel.len(), |i, k| v_t[(kernel[k], i)].conj());
    let left = DMatrix::from_fn(16, kernel.len(), |i, k| u[(i, kernel[k])]);
    let overlap = left.adjoint() * &right;
    let inverse = overlap.try_inverse().ok_or(NumericError::KernelResolutionFailure(0.0))?;
    let start = DMatrix::from_column_slice(16, 1, start.as_slice());
    let projected = right * (inverse * (left.adjoint() * start));
    let ss = StateVector::from_column_slice(projected.as_slice());

    let residual = (l.matrix() * ss).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(residual < RESIDUAL_TOL) {
        return Err(NumericError::InvariantViolation { quantity: "steady-state residual", value: residual });
    }
    Ok(DensityMatrix::from_raw(symmetrize(unvectorize(&ss)), Basis::Eigen))
}

/// Removes the rounding-level anti-Hermitian part left by the projection.
fn symmetrize(m: SMatrix<Complex64, 4, 4>) -> SMatrix<Complex64, 4, 4> {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{bloch_steady, SigmaMoments};
    use crate::model::{Dimer, DimerParams};

    fn dimer(theta: f64, tm: f64) -> Dimer {
        Dimer::new(DimerParams::from_theta(theta, 5.0).with_mean_temperature(tm, 0.0)).unwrap()
    }

    #[test]
    fn donor_excited_relaxes_to_detailed_balance() {
        for tm in [0.1, 1.0, 10.0, 100.0] {
            let d = dimer(1.1, tm);
            let r = d.rates;
            let rho0 = DensityMatrix::basis_state(1, Basis::Bare);
            let ss = steady_state(&Liouvillian::new(&d), &rho0).unwrap();
            let sum = r.gamma23 + r.gamma32;
            let expected = [0.0, r.gamma32 / sum, r.gamma23 / sum, 0.0];
            for (i, &diag) in expected.iter().enumerate() {
                for j in 0..4 {
                    let want = if i == j { diag } else { 0.0 };
                    assert!((ss.get(i, j) - Complex64::new(want, 0.0)).norm() < 1e-12, "T_m={tm} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn zero_temperature_is_pure_lower_level() {
        let d = dimer(0.8, 0.0);
        let ss = steady_state(&Liouvillian::new(&d), &DensityMatrix::basis_state(1, Basis::Bare)).unwrap();
        let target = DensityMatrix::basis_state(2, Basis::Eigen);
        assert!((ss.entries() - target.entries()).norm() < 1e-12);
    }

    #[test]
    fn doubly_excited_state_is_stationary() {
        let d = dimer(2.0, 4.0);
        let rho0 = DensityMatrix::basis_state(0, Basis::Eigen);
        let ss = steady_state(&Liouvillian::new(&d), &rho0).unwrap();
        assert!((ss.entries() - rho0.entries()).norm() < 1e-12);
    }

    #[test]
    fn conserved_charges_carried_over() {
        let d = dimer(0.6, 2.0);
        let rho0 = DensityMatrix::maximally_mixed(Basis::Eigen);
        let ss = steady_state(&Liouvillian::new(&d), &rho0).unwrap();
        let got = SigmaMoments::from_density(&ss, &d.eig);
        let want = bloch_steady(&SigmaMoments::from_density(&rho0, &d.eig), &d.rates).unwrap();
        assert!((got.s11 - 0.25).abs() < 1e-12 && (got.s44 - 0.25).abs() < 1e-12);
        assert!((got.s22 - want.s22).abs() < 1e-12 && (got.s33 - want.s33).abs() < 1e-12);
    }

    #[test]
    fn kernel_contains_conserved_projectors() {
        let l = Liouvillian::new(&dimer(1.3, 5.0));
        for n in [0, 3] {
            let p = DensityMatrix::basis_state(n, Basis::Eigen);
            assert!((l.matrix() * vectorize(p.entries())).norm() < 1e-12);
        }
    }
}
