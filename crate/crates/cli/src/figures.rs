//! Datasets behind each figure, with the caption parameters baked in:
//! γ = 1, ξ = 5, ΔT = 0 and η = 0.005 (χ = 0.01 T_m) throughout.

use std::f64::consts::{FRAC_PI_2, PI};

use dimer_core::analytic::{
    concurrence_limit, concurrence_transient, long_time, transfer_probability, transfer_probability_limit,
    AnalyticError, Regime,
};
use dimer_core::model::DEFAULT_ETA;
use dimer_core::{Dimer, DimerParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Method;
use crate::error::{config, CliError};
use crate::output::{config_hash, format_number, Table, SERIES_COLUMNS, STEADY_COLUMNS};
use crate::series::{analytic_series, steady_row};

pub const FIGURE_IDS: std::ops::RangeInclusive<u32> = 2..=11;
pub const DYNAMICS_POINTS: usize = 501;
pub const DYNAMICS_T_MAX: f64 = 10.0;
pub const STEADY_POINTS: usize = 201;
pub const STEADY_T_MAX: f64 = 100.0;
pub const STEADY_THETA: (f64, f64) = (0.1 * PI, 0.9 * PI);

const XI: f64 = 5.0;
const GAMMA: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Quantity {
    P,
    C,
}

/// Which closed form fills the figure's column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Form {
    General,
    Limit(Regime),
}

#[derive(Debug, Clone, Serialize)]
enum Layout {
    Dynamics { quantity: Quantity, form: Form, curves: Vec<(String, f64, f64)> },
    SteadyVsTemperature { curves: Vec<(String, f64)> },
    SteadyVsAngle { curves: Vec<(String, f64)> },
}

struct Blueprint {
    title: &'static str,
    layout: Layout,
    notes: Vec<&'static str>,
}

/// One curve: a table ready to render and, for dynamics, the value of the
/// plotted form once every transient has decayed.
#[derive(Debug, Clone)]
pub struct Curve {
    pub label: String,
    pub table: Table,
    pub long_time_value: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub id: u32,
    pub title: &'static str,
    pub curves: Vec<Curve>,
}

fn pi_label(k: f64) -> (String, f64) {
    (format!("theta_{k}pi"), k * PI)
}

fn tm_label(tm: f64) -> String {
    format!("tm_{tm}")
}

fn blueprint(id: u32) -> Result<Blueprint, CliError> {
    let dyn_tm = |quantity, regime| Layout::Dynamics {
        quantity,
        form: Form::Limit(regime),
        curves: [0.1, 10.0, 100.0].iter().map(|&tm| (tm_label(tm), FRAC_PI_2, tm)).collect(),
    };
    let dyn_theta = |quantity, form, ks: &[f64], tm: f64| Layout::Dynamics {
        quantity,
        form,
        curves: ks
            .iter()
            .map(|&k| {
                let (label, theta) = pi_label(k);
                (label, theta, tm)
            })
            .collect(),
    };
    let radian_note = "caption lists this angle without a factor of pi; reproduced as radians";
    let high_t_note = "chi_1 = chi_2 = 0.01 T_m realised as eta = 0.005";
    Ok(match id {
        2 => {
            Blueprint { title: "P_res vs t at resonance", layout: dyn_tm(Quantity::P, Regime::Resonant), notes: vec![] }
        }
        3 => Blueprint {
            title: "P_htl vs t, T_m = 100",
            layout: dyn_theta(Quantity::P, Form::Limit(Regime::HighTemperature), &[0.6, 0.8, 0.9], 100.0),
            notes: vec![high_t_note, "negative-detuning angles as captioned; the form is symmetric in cos^2, sin^2"],
        },
        4 => Blueprint {
            title: "P vs t at the low temperature T_m = 1",
            layout: dyn_theta(Quantity::P, Form::General, &[0.1, 0.4, 0.6, 0.9], 1.0),
            notes: vec![
                "caption calls T_m = 1 the low temperature limit while P_ltl assumes T = 0; \
                 the P column uses the general formula at T_m = 1, P_ltl long-time value given for comparison",
            ],
        },
        5 => Blueprint {
            title: "P_ss vs T_m",
            layout: Layout::SteadyVsTemperature {
                curves: vec![pi_label(0.1), ("theta_0.5rad".into(), 0.5), pi_label(0.9)],
            },
            notes: vec![radian_note],
        },
        6 => Blueprint {
            title: "P_ss vs theta",
            layout: Layout::SteadyVsAngle { curves: [0.1, 10.0, 100.0].iter().map(|&t| (tm_label(t), t)).collect() },
            notes: vec![],
        },
        7 => {
            Blueprint { title: "C_res vs t at resonance", layout: dyn_tm(Quantity::C, Regime::Resonant), notes: vec![] }
        }
        8 => Blueprint {
            title: "C_htl vs t, T_m = 100",
            layout: dyn_theta(Quantity::C, Form::Limit(Regime::HighTemperature), &[0.1, 0.3, 0.5], 100.0),
            notes: vec![high_t_note],
        },
        9 => Blueprint {
            title: "C_ltl vs t, T_m = 0.01",
            layout: dyn_theta(Quantity::C, Form::Limit(Regime::LowTemperature), &[0.1, 0.3, 0.5], 0.01),
            notes: vec![],
        },
        10 => Blueprint {
            title: "C_ss vs T_m",
            layout: Layout::SteadyVsTemperature {
                curves: vec![pi_label(0.1), ("theta_0.3rad".into(), 0.3), pi_label(0.5)],
            },
            notes: vec![radian_note],
        },
        11 => Blueprint {
            title: "C_ss vs theta",
            layout: Layout::SteadyVsAngle { curves: [0.1, 10.0, 100.0].iter().map(|&t| (tm_label(t), t)).collect() },
            notes: vec![],
        },
        _ => {
            return Err(config(format!("unknown figure id {id}; expected {}–{}", FIGURE_IDS.start(), FIGURE_IDS.end())))
        }
    })
}

fn dimer(theta: f64, tm: f64) -> Result<Dimer, CliError> {
    Ok(Dimer::new(DimerParams::from_theta(theta, XI).with_gamma(GAMMA).with_mean_temperature(tm, 0.0))?)
}

fn form_name(quantity: Quantity, form: Form) -> String {
    let q = match quantity {
        Quantity::P => "P",
        Quantity::C => "C",
    };
    match form {
        Form::General => format!("{q} (general closed form)"),
        Form::Limit(r) => format!("{q}_{} (limiting closed form)", r.tag()),
    }
}

fn evaluate(quantity: Quantity, form: Form, t: f64, d: &Dimer) -> Result<f64, AnalyticError> {
    match (quantity, form) {
        (Quantity::P, Form::General) => transfer_probability(t, d),
        (Quantity::C, Form::General) => concurrence_transient(t, d),
        (Quantity::P, Form::Limit(r)) => transfer_probability_limit(r, t, d),
        (Quantity::C, Form::Limit(r)) => concurrence_limit(r, t, d),
    }
}

#[derive(Serialize)]
struct CurveConfig<'a> {
    figure: u32,
    label: &'a str,
    layout: &'a str,
    quantity: String,
    theta: Option<f64>,
    t_mean: Option<f64>,
    xi: f64,
    gamma: f64,
    eta: f64,
    t_max: f64,
    n_points: usize,
}

fn header(table: &mut Table, id: u32, title: &str, label: &str, notes: &[&str]) {
    table.push_meta("figure", id);
    table.push_meta("title", title);
    table.push_meta("curve", label);
    table.push_meta("xi", format_number(XI));
    table.push_meta("gamma", format_number(GAMMA));
    table.push_meta("eta", format_number(DEFAULT_ETA));
    table.push_meta("t_diff", "0");
    for note in notes {
        table.push_meta("note", note);
    }
}

fn dynamics_curve(
    id: u32,
    blueprint: &Blueprint,
    (quantity, form): (Quantity, Form),
    (label, theta, tm): &(String, f64, f64),
) -> Result<Curve, CliError> {
    let d = dimer(*theta, *tm)?;
    let times = dimer_core::numeric::default_times(DYNAMICS_T_MAX, DYNAMICS_POINTS);
    let f = |t: f64| evaluate(quantity, form, t, &d);
    let rows = match quantity {
        Quantity::P => analytic_series(&d, &times, Some(&f), None)?,
        Quantity::C => analytic_series(&d, &times, None, Some(&f))?,
    };
    let long_time_value = long_time(&d).map(|t| evaluate(quantity, form, t, &d)).transpose()?;

    let mut table = Table::new(&SERIES_COLUMNS);
    let cfg = CurveConfig {
        figure: id,
        label,
        layout: "dynamics",
        quantity: form_name(quantity, form),
        theta: Some(*theta),
        t_mean: Some(*tm),
        xi: XI,
        gamma: GAMMA,
        eta: DEFAULT_ETA,
        t_max: DYNAMICS_T_MAX,
        n_points: DYNAMICS_POINTS,
    };
    table.push_meta("config_hash", config_hash(&cfg));
    header(&mut table, id, blueprint.title, label, &blueprint.notes);
    table.push_meta("theta", format_number(*theta));
    table.push_meta("t_mean", format_number(*tm));
    table.push_meta("plotted_column", form_name(quantity, form));
    if let Some(v) = long_time_value {
        table.push_meta("long_time_value", format_number(v));
    }
    if id == 4 {
        let ltl = long_time(&d).map(|t| transfer_probability_limit(Regime::LowTemperature, t, &d)).transpose()?;
        if let Some(v) = ltl {
            table.push_meta("P_ltl_long_time_value", format_number(v));
        }
    }
    table.rows = rows;
    Ok(Curve { label: label.clone(), table, long_time_value })
}

fn steady_curve(
    id: u32,
    blueprint: &Blueprint,
    label: &str,
    points: Vec<(f64, f64)>,
    fixed: (&str, f64),
) -> Result<Curve, CliError> {
    let mut table = Table::new(&STEADY_COLUMNS);
    let cfg = CurveConfig {
        figure: id,
        label,
        layout: if fixed.0 == "theta" { "steady_vs_t_mean" } else { "steady_vs_theta" },
        quantity: "P_ss, C_ss".into(),
        theta: (fixed.0 == "theta").then_some(fixed.1),
        t_mean: (fixed.0 == "t_mean").then_some(fixed.1),
        xi: XI,
        gamma: GAMMA,
        eta: DEFAULT_ETA,
        t_max: 0.0,
        n_points: points.len(),
    };
    table.push_meta("config_hash", config_hash(&cfg));
    header(&mut table, id, blueprint.title, label, &blueprint.notes);
    table.push_meta(fixed.0, format_number(fixed.1));
    table.rows = points
        .into_iter()
        .map(|(theta, tm)| steady_row(&dimer(theta, tm)?, Method::Analytic))
        .collect::<Result<_, _>>()?;
    Ok(Curve { label: label.to_string(), table, long_time_value: None })
}

fn axis(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

/// Builds every curve of figure `id`; curves are evaluated in parallel and
/// returned in caption order.
pub fn figure(id: u32) -> Result<Figure, CliError> {
    let blueprint = blueprint(id)?;
    let curves = match &blueprint.layout {
        Layout::Dynamics { quantity, form, curves } => curves
            .par_iter()
            .map(|c| dynamics_curve(id, &blueprint, (*quantity, *form), c))
            .collect::<Result<Vec<_>, _>>()?,
        Layout::SteadyVsTemperature { curves } => curves
            .par_iter()
            .map(|(label, theta)| {
                let pts = axis(0.0, STEADY_T_MAX, STEADY_POINTS).into_iter().map(|tm| (*theta, tm)).collect();
                steady_curve(id, &blueprint, label, pts, ("theta", *theta))
            })
            .collect::<Result<Vec<_>, _>>()?,
        Layout::SteadyVsAngle { curves } => curves
            .par_iter()
            .map(|(label, tm)| {
                let pts = axis(STEADY_THETA.0, STEADY_THETA.1, STEADY_POINTS).into_iter().map(|th| (th, *tm)).collect();
                steady_curve(id, &blueprint, label, pts, ("t_mean", *tm))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(Figure { id, title: blueprint.title, curves })
}
