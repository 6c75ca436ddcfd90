//! Flags, the optional `key = value` config file, and the validated run
//! configuration they are merged into. Flags always win over the file.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dimer_core::model::DEFAULT_ETA;
use dimer_core::DimerParams;
use serde::Serialize;

use crate::error::{config, CliError};

#[derive(Debug, Parser)]
#[command(name = "dimer", version, about = "Energy transfer and entanglement in a dissipative donor–acceptor dimer")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of P(t), C(t) and the eigenbasis moments from |eg⟩.
    Evolve(RunArgs),
    /// Steady transfer probability and concurrence for one parameter set.
    Steady(RunArgs),
    /// Regenerate the dataset of one figure (ids 2–11), one file per curve.
    Figure(FigureArgs),
    /// Cross-check closed forms against Liouvillian propagation on the default grid.
    Validate(ValidateArgs),
    /// Cartesian sweep of P_ss and C_ss over θ, T_m and ΔT axes.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// How the dynamics are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed-form solutions.
    #[default]
    Analytic,
    /// Adaptive propagation of the Liouvillian, kernel projection for steady states.
    Numeric,
}

/// Angle in radians; a trailing `pi` or `π` multiplies by π (`0.3pi`, `pi/2` is not accepted).
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (number, scale) = match s.strip_suffix("pi").or_else(|| s.strip_suffix('π')) {
        Some(head) => (head.trim_end_matches('*').trim(), PI),
        None => (s, 1.0),
    };
    let value =
        if number.is_empty() { 1.0 } else { number.parse::<f64>().map_err(|_| format!("not an angle: {s:?}"))? };
    Ok(value * scale)
}

#[derive(Debug, Clone, Default, Args)]
pub struct PhysicsArgs {
    /// Mixing angle θ in radians (`0.3pi` accepted).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Detuning Δω = ω₁ − ω₂; the mixing angle follows from ξ.
    #[arg(long, allow_hyphen_values = true)]
    pub delta_omega: Option<f64>,
    /// Dipole–dipole coupling ξ.
    #[arg(long)]
    pub xi: Option<f64>,
    /// Bath coupling γ, the same for both sites.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Ohmic coefficient of the donor bath.
    #[arg(long)]
    pub eta1: Option<f64>,
    /// Ohmic coefficient of the acceptor bath.
    #[arg(long)]
    pub eta2: Option<f64>,
    /// Mean bath temperature T_m = (T₁ + T₂)/2.
    #[arg(long)]
    pub tm: Option<f64>,
    /// Temperature difference ΔT = T₁ − T₂.
    #[arg(long, allow_hyphen_values = true)]
    pub dt_bath: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (directory for `figure`); standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// End of the time grid.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of time samples, including t = 0 and t_max.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Figure number, 2–11.
    #[arg(long)]
    pub id: u32,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Directory receiving one file per curve.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    /// Largest accepted analytic–numeric deviation.
    #[arg(long)]
    pub tol: Option<f64>,
    /// End of the validation time grid.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of time samples per grid point.
    #[arg(long)]
    pub points: Option<usize>,
    /// Also validate T_m = 0 at every grid angle.
    #[arg(long)]
    pub with_zero_temperature: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// θ axis: `start:stop:count` or a comma list (`pi` suffix accepted).
    #[arg(long)]
    pub sweep_theta: Option<String>,
    /// T_m axis: `start:stop:count` or a comma list.
    #[arg(long)]
    pub sweep_tm: Option<String>,
    /// ΔT axis: `start:stop:count` or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub sweep_dt: Option<String>,
    /// Attach a time series to each record (JSON only).
    #[arg(long)]
    pub series: bool,
    /// End of each series time grid (with `--series`).
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of time samples per series (with `--series`).
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses a flat `key = value` file. Blank lines and `#` comments are skipped;
/// dashes in keys are read as underscores.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| config(format!("config line {}: expected key = value", n + 1)))?;
        let key = key.trim().replace('-', "_");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(config(format!("config line {}: unknown key {key:?}", n + 1)));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(config(format!("config line {}: duplicate key {key:?}", n + 1)));
        }
    }
    Ok(map)
}

const KNOWN_KEYS: &[&str] = &[
    "theta",
    "delta_omega",
    "xi",
    "gamma",
    "eta1",
    "eta2",
    "tm",
    "dt_bath",
    "t_max",
    "points",
    "method",
    "format",
    "out",
    "tol",
    "sweep_theta",
    "sweep_tm",
    "sweep_dt",
];

/// Config file entries, consumed key by key when filling unset flags.
#[derive(Debug, Default)]
pub struct FileValues(BTreeMap<String, String>);

impl FileValues {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| config(format!("cannot read config {}: {e}", p.display())))?;
                Ok(Self(parse_config_file(&text)?))
            }
        }
    }

    fn fill<T: FromStr>(&self, slot: &mut Option<T>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.0.get(key) {
                *slot = Some(raw.parse().map_err(|_| config(format!("config key {key}: cannot parse {raw:?}")))?);
            }
        }
        Ok(())
    }

    fn fill_angle(&self, slot: &mut Option<f64>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.0.get(key) {
                *slot = Some(parse_angle(raw).map_err(|e| config(format!("config key {key}: {e}")))?);
            }
        }
        Ok(())
    }

    fn fill_enum<T: ValueEnum>(&self, slot: &mut Option<T>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.0.get(key) {
                *slot = Some(T::from_str(raw, true).map_err(|e| config(format!("config key {key}: {e}")))?);
            }
        }
        Ok(())
    }

    pub fn fill_physics(&self, p: &mut PhysicsArgs) -> Result<(), CliError> {
        // Only consult the file for the detuning when no flag chose one.
        if p.theta.is_none() && p.delta_omega.is_none() {
            self.fill_angle(&mut p.theta, "theta")?;
            self.fill(&mut p.delta_omega, "delta_omega")?;
        }
        self.fill(&mut p.xi, "xi")?;
        self.fill(&mut p.gamma, "gamma")?;
        self.fill(&mut p.eta1, "eta1")?;
        self.fill(&mut p.eta2, "eta2")?;
        self.fill(&mut p.tm, "tm")?;
        self.fill(&mut p.dt_bath, "dt_bath")
    }

    pub fn fill_output(&self, o: &mut OutputArgs) -> Result<(), CliError> {
        self.fill_enum(&mut o.format, "format")?;
        self.fill(&mut o.out, "out")
    }

    pub fn fill_time(&self, t_max: &mut Option<f64>, points: &mut Option<usize>) -> Result<(), CliError> {
        self.fill(t_max, "t_max")?;
        self.fill(points, "points")
    }

    pub fn fill_method(&self, m: &mut Option<Method>) -> Result<(), CliError> {
        self.fill_enum(m, "method")
    }

    pub fn fill_tol(&self, tol: &mut Option<f64>) -> Result<(), CliError> {
        self.fill(tol, "tol")
    }

    pub fn fill_axes(&self, s: &mut SweepArgs) -> Result<(), CliError> {
        self.fill(&mut s.sweep_theta, "sweep_theta")?;
        self.fill(&mut s.sweep_tm, "sweep_tm")?;
        self.fill(&mut s.sweep_dt, "sweep_dt")
    }
}

/// Physical inputs after defaults; serialised into the config hash.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Physics {
    pub theta: Option<f64>,
    pub delta_omega: Option<f64>,
    pub xi: f64,
    pub gamma: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub t_mean: f64,
    pub t_diff: f64,
}

impl Physics {
    /// Applies defaults (ξ = 5, γ = 1, η = 0.005, T_m = ΔT = 0). A detuning is
    /// only required when `need_detuning` is set.
    pub fn resolve(p: &PhysicsArgs, need_detuning: bool) -> Result<Self, CliError> {
        if p.theta.is_some() && p.delta_omega.is_some() {
            return Err(config("give exactly one of --theta and --delta-omega"));
        }
        if need_detuning && p.theta.is_none() && p.delta_omega.is_none() {
            return Err(config("one of --theta or --delta-omega is required"));
        }
        Ok(Self {
            theta: p.theta,
            delta_omega: p.delta_omega,
            xi: p.xi.unwrap_or(5.0),
            gamma: p.gamma.unwrap_or(1.0),
            eta1: p.eta1.unwrap_or(DEFAULT_ETA),
            eta2: p.eta2.unwrap_or(DEFAULT_ETA),
            t_mean: p.tm.unwrap_or(0.0),
            t_diff: p.dt_bath.unwrap_or(0.0),
        })
    }

    pub fn params(&self) -> Result<DimerParams, CliError> {
        let base = match (self.theta, self.delta_omega) {
            (Some(theta), None) => DimerParams::from_theta(theta, self.xi),
            (None, Some(dw)) => DimerParams::from_detuning(dw, self.xi),
            _ => return Err(config("give exactly one of --theta and --delta-omega")),
        };
        let params =
            base.with_gamma(self.gamma).with_etas(self.eta1, self.eta2).with_mean_temperature(self.t_mean, self.t_diff);
        params.validate()?;
        Ok(params)
    }

    pub fn with_point(&self, theta: Option<f64>, t_mean: Option<f64>, t_diff: Option<f64>) -> Self {
        let mut p = self.clone();
        if let Some(theta) = theta {
            p.theta = Some(theta);
            p.delta_omega = None;
        }
        p.t_mean = t_mean.unwrap_or(p.t_mean);
        p.t_diff = t_diff.unwrap_or(p.t_diff);
        p
    }
}

/// Equally spaced time grid; at least two points and a positive end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub n_points: usize,
}

impl TimeGrid {
    pub fn resolve(t_max: Option<f64>, points: Option<usize>, default_points: usize) -> Result<Self, CliError> {
        let grid = Self { t_max: t_max.unwrap_or(10.0), n_points: points.unwrap_or(default_points) };
        if !(grid.t_max > 0.0 && grid.t_max.is_finite()) {
            return Err(config(format!("--t-max must be positive, got {}", grid.t_max)));
        }
        if grid.n_points < 2 {
            return Err(config(format!("--points must be at least 2, got {}", grid.n_points)));
        }
        Ok(grid)
    }

    pub fn times(&self) -> Vec<f64> {
        dimer_core::numeric::default_times(self.t_max, self.n_points)
    }
}

/// One sweep axis: `start:stop:count` (inclusive, count ≥ 1) or a comma list.
pub fn parse_axis(name: &str, spec: &str, angle: bool) -> Result<Vec<f64>, CliError> {
    let value = |s: &str| -> Result<f64, CliError> {
        let v = if angle {
            parse_angle(s).map_err(|e| config(format!("{name}: {e}")))?
        } else {
            s.trim().parse::<f64>().map_err(|_| config(format!("{name}: not a number: {s:?}")))?
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(config(format!("{name}: non-finite value")))
        }
    };
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(config(format!("{name}: empty axis")));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(value).collect(),
        [start, stop, count] => {
            let n: usize = count.trim().parse().map_err(|_| config(format!("{name}: bad point count {count:?}")))?;
            let (a, b) = (value(start)?, value(stop)?);
            match n {
                0 => Err(config(format!("{name}: empty axis"))),
                1 => Ok(vec![a]),
                _ => Ok((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()),
            }
        }
        _ => Err(config(format!("{name}: expected start:stop:count or a comma list, got {spec:?}"))),
    }
}
