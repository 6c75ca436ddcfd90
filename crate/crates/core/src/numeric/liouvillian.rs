use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;

use crate::model::{Dimer, Eigensystem, RateSet};

pub type SuperOperator = SMatrix<Complex64, 16, 16>;
/// Column-stacked 4×4 matrix: element (i, j) sits at index i + 4j.
pub type StateVector = SVector<Complex64, 16>;

pub fn vectorize(rho: &Matrix4<Complex64>) -> StateVector {
    StateVector::from_column_slice(rho.as_slice())
}

pub fn unvectorize(v: &StateVector) -> Matrix4<Complex64> {
    Matrix4::from_column_slice(v.as_slice())
}

/// Superoperator of ρ ↦ AρB, i.e. Bᵀ ⊗ A on column-stacked vectors.
fn sandwich(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> SuperOperator {
    let mut out = SuperOperator::zeros();
    for j in 0..4 {
        for l in 0..4 {
            let blj = b[(l, j)];
            if blj == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..4 {
                for k in 0..4 {
                    out[(i + 4 * j, k + 4 * l)] += a[(i, k)] * blj;
                }
            }
        }
    }
    out
}

/// |λ_n⟩⟨λ_m| with 1-based labels.
fn transition(n: usize, m: usize) -> Matrix4<Complex64> {
    let mut op = Matrix4::zeros();
    op[(n - 1, m - 1)] = Complex64::new(1.0, 0.0);
    op
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Generator of the reduced dynamics in the eigenbasis, dρ/dt = L ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    matrix: SuperOperator,
    rates: RateSet,
    eig: Eigensystem,
}

impl Liouvillian {
    /// Assembles the master equation line by line: the coherent part, the Π_n
    /// dephasing, thermal pumping and decay between λ₂ and λ₃, and the three
    /// cross-dephasing terms. No Lamb shifts.
    pub fn new(dimer: &Dimer) -> Self {
        let r = &dimer.rates;
        let id = Matrix4::<Complex64>::identity();
        let levels = dimer.eig.levels();
        let h = Matrix4::from_diagonal(&nalgebra::Vector4::from(levels.map(real)));
        let i = Complex64::new(0.0, 1.0);

        // i[ρ, H]
        let mut l = sandwich(&id, &h) * i - sandwich(&h, &id) * i;

        for (n, pi) in [(1, r.pi1), (2, r.pi2), (3, r.pi3)] {
            let p = transition(n, n);
            l += (sandwich(&p, &p) * real(2.0) - sandwich(&p, &id) - sandwich(&id, &p)) * real(pi);
        }

        let (s22, s33) = (transition(2, 2), transition(3, 3));
        let (s23, s32) = (transition(2, 3), transition(3, 2));
        l += (sandwich(&s23, &s32) * real(2.0) - sandwich(&s33, &id) - sandwich(&id, &s33)) * real(r.gamma32);
        l += (sandwich(&s32, &s23) * real(2.0) - sandwich(&s22, &id) - sandwich(&id, &s22)) * real(r.gamma23);

        let s11 = transition(1, 1);
        for (a, b, x) in [(&s11, &s22, r.x12), (&s11, &s33, r.x13), (&s33, &s22, r.x23)] {
            l += (sandwich(a, b) + sandwich(b, a)) * real(2.0 * x);
        }

        Self { matrix: l, rates: *r, eig: dimer.eig }
    }

    pub fn matrix(&self) -> &SuperOperator {
        &self.matrix
    }

    pub fn rates(&self) -> &RateSet {
        &self.rates
    }

    pub fn eigensystem(&self) -> &Eigensystem {
        &self.eig
    }

    pub fn apply(&self, rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
        unvectorize(&(self.matrix * vectorize(rho)))
    }

    /// Largest entry of vec(I)ᵀ L; zero for a trace-preserving generator.
    pub fn trace_residual(&self) -> f64 {
        let id = vectorize(&Matrix4::identity());
        (id.transpose() * self.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Complex eigenvalues of the superoperator.
    pub fn spectrum(&self) -> Vec<Complex64> {
        self.matrix.schur().eigenvalues().map(|ev| ev.iter().copied().collect()).unwrap_or_default()
    }
}
