//! Closed-form dynamics of the dimer.
//!
//! Everything here is evaluated directly from the effective rates: the Bloch
//! solutions in the eigenbasis, the change of representation to the bare
//! product basis, and from those the transfer probability P(t) and the
//! concurrence C(t) for a donor-excited initial state, together with their
//! resonant, high-temperature and low-temperature limiting forms.

mod bloch;
mod entanglement;
mod moments;
mod transfer;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Dimer, ModelError};

pub use bloch::{bloch_steady, bloch_transient};
pub use entanglement::{
    concurrence_limit, concurrence_transient, steady_concurrence, tau23_evolution, x_state_concurrence, X_STATE_TOL,
};
pub use moments::{sigma_from_tau, tau_from_sigma, SigmaMoments, TauMoments};
pub use transfer::{
    steady_transfer_probability, steady_transfer_probability_high_t, transfer_probability, transfer_probability_limit,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("no relaxation: Γ23 + Γ32 = 0, the steady state is not unique")]
    DegenerateRelaxation,
    #[error("resonant closed form requires zero detuning")]
    NotResonant,
    #[error("state is not X-shaped (off-X entry {0:e}); use the general Wootters concurrence")]
    NotXState(f64),
    #[error("expected a density matrix in the bare basis")]
    WrongBasis,
    #[error("invalid moments: {0}")]
    InvalidMoments(String),
    #[error("{quantity} = {value} lies outside [0, 1]")]
    OutOfRange { quantity: &'static str, value: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Limiting regimes with dedicated closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Resonant,
    HighTemperature,
    LowTemperature,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::Resonant => "res",
            Regime::HighTemperature => "htl",
            Regime::LowTemperature => "ltl",
        }
    }
}

pub(crate) const CLAMP_SLACK: f64 = 1e-12;

/// Snaps rounding noise just outside [0, 1] back inside; anything further out
/// is an error.
pub(crate) fn clamp_unit(quantity: &'static str, value: f64) -> Result<f64, AnalyticError> {
    if (-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&value) {
        Ok(value.clamp(0.0, 1.0))
    } else {
        Err(AnalyticError::OutOfRange { quantity, value })
    }
}

pub(crate) fn check_time(t: f64) -> Result<(), AnalyticError> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(AnalyticError::NegativeTime(t))
    }
}

/// A time by which every closed-form transient has decayed: 10³ over the
/// slowest non-zero exponential rate. `None` if nothing decays.
pub fn long_time(dimer: &Dimer) -> Option<f64> {
    let r = &dimer.rates;
    let populations = 2.0 * r.relaxation_sum();
    let coherence = r.relaxation_sum() + dimer.theta().cos().powi(2) * r.pi1;
    [populations, coherence].into_iter().filter(|&k| k > 0.0).min_by(f64::total_cmp).map(|k| 1e3 / k)
}

/// Mean bath coupling used by the limiting forms, which assume γ₁ = γ₂.
pub(crate) fn mean_gamma(dimer: &Dimer) -> f64 {
    0.5 * (dimer.params.gamma1 + dimer.params.gamma2)
}
