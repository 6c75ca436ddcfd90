//! Single-excitation energy transfer and entanglement dynamics of a donor–acceptor
//! dimer, each site coupled diagonally to its own thermal bath.
//!
//! The crate is split in three layers:
//! - [`model`]: physical parameters, the dressed eigensystem, thermal occupations,
//!   the effective dephasing/relaxation rates, and a validated 4×4 density matrix.
//! - [`analytic`]: closed-form Bloch solutions, the transfer probability and the
//!   concurrence, including their resonant, high- and low-temperature limits.
//! - [`numeric`]: a 16×16 Liouvillian assembled term by term from the master
//!   equation, an adaptive Dormand–Prince propagator, kernel-projected steady
//!   states and the general Wootters concurrence. It is used as an independent
//!   oracle for everything in [`analytic`].
//!
//! All quantities are in natural units (ħ = k_B = 1); frequencies, rates and
//! temperatures are usually quoted in units of the bath coupling γ.

// Validation guards are written as `!(x <= bound)` on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod model;
pub mod numeric;

pub use model::{Basis, DensityMatrix, Dimer, DimerParams, Eigensystem, ModelError, RateSet};

pub use analytic::{AnalyticError, Regime, SigmaMoments, TauMoments};
pub use numeric::{IntegratorConfig, Liouvillian, NumericError, ValidationReport};
