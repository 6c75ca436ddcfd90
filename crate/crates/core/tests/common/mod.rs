//! Parameter strategies shared by the property suites.
#![allow(dead_code)]

use std::f64::consts::PI;

use dimer_core::{Dimer, DimerParams};
use proptest::prelude::*;

/// θ away from the degenerate endpoints, ξ, T_m, ΔT/(2T_m), γ₁, γ₂, η₁, η₂.
pub fn params() -> impl Strategy<Value = DimerParams> {
    (
        0.02 * PI..0.98 * PI,
        0.5f64..20.0,
        0.0f64..200.0,
        -1.0f64..1.0,
        (0.1f64..3.0, 0.1f64..3.0),
        (0.0005f64..0.05, 0.0005f64..0.05),
    )
        .prop_map(|(theta, xi, tm, frac, (g1, g2), (e1, e2))| {
            DimerParams::from_theta(theta, xi)
                .with_mean_temperature(tm, 2.0 * tm * frac)
                .with_gammas(g1, g2)
                .with_etas(e1, e2)
        })
}

/// Equal couplings and the default η, as in all figures.
pub fn symmetric_params() -> impl Strategy<Value = DimerParams> {
    (0.02 * PI..0.98 * PI, 0.5f64..20.0, 0.0f64..200.0, -1.0f64..1.0)
        .prop_map(|(theta, xi, tm, frac)| DimerParams::from_theta(theta, xi).with_mean_temperature(tm, 2.0 * tm * frac))
}

pub fn dimer(params: DimerParams) -> Dimer {
    Dimer::new(params).expect("strategy yields valid parameters")
}
