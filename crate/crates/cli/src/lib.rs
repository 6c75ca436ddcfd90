//! Command-line front end: per-figure datasets, parameter sweeps, single runs
//! and the analytic-versus-numeric validation gate. Everything is emitted as
//! CSV or JSON; plotting is left to external tools.

pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod series;

use std::path::{Path, PathBuf};

use dimer_core::numeric::{cross_validate, default_grid, IntegratorConfig};
use dimer_core::{Dimer, DimerParams};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use config::{
    parse_axis, Command, FigureArgs, FileValues, Format, Method, Physics, RunArgs, SweepArgs, TimeGrid, ValidateArgs,
};
use error::{config as config_error, CliError};
use output::{config_hash, emit, format_number, Table, SERIES_COLUMNS, STEADY_COLUMNS};

pub use error::{EXIT_CONFIG, EXIT_OK, EXIT_VALIDATION};

type Row = Vec<f64>;

/// Runs one command and returns the process exit status.
pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Evolve(args) => run_evolve(args),
        Command::Steady(args) => run_steady(args),
        Command::Figure(args) => run_figure(args).map(|_| ()),
        Command::Validate(args) => run_validate(args),
        Command::Sweep(args) => run_sweep(args),
    }
}

#[derive(Serialize)]
struct RunConfig<'a> {
    scenario: &'a str,
    physics: &'a Physics,
    time: Option<TimeGrid>,
    method: Method,
    format: Format,
}

fn physics_meta(table: &mut Table, physics: &Physics, dimer: &Dimer) {
    table.push_meta("theta", format_number(dimer.theta()));
    if let Some(dw) = physics.delta_omega {
        table.push_meta("delta_omega", format_number(dw));
    }
    table.push_meta("xi", format_number(physics.xi));
    table.push_meta("gamma", format_number(physics.gamma));
    table.push_meta("eta1", format_number(physics.eta1));
    table.push_meta("eta2", format_number(physics.eta2));
    table.push_meta("t_mean", format_number(physics.t_mean));
    table.push_meta("t_diff", format_number(physics.t_diff));
}

fn prepare(
    mut args: RunArgs,
    default_points: usize,
) -> Result<(Physics, TimeGrid, Method, Format, Option<PathBuf>), CliError> {
    let file = FileValues::load(args.output.config.as_deref())?;
    file.fill_physics(&mut args.physics)?;
    file.fill_time(&mut args.t_max, &mut args.points)?;
    file.fill_method(&mut args.method)?;
    file.fill_output(&mut args.output)?;
    let physics = Physics::resolve(&args.physics, true)?;
    let grid = TimeGrid::resolve(args.t_max, args.points, default_points)?;
    Ok((physics, grid, args.method.unwrap_or_default(), args.output.format.unwrap_or_default(), args.output.out))
}

pub fn run_evolve(args: RunArgs) -> Result<(), CliError> {
    let (physics, grid, method, format, out) = prepare(args, figures::DYNAMICS_POINTS)?;
    let dimer = Dimer::new(physics.params()?)?;
    let mut table = Table::new(&SERIES_COLUMNS);
    let cfg = RunConfig { scenario: "evolve", physics: &physics, time: Some(grid), method, format };
    table.push_meta("config_hash", config_hash(&cfg));
    table.push_meta("scenario", "evolve");
    table.push_meta("method", format!("{method:?}").to_lowercase());
    physics_meta(&mut table, &physics, &dimer);
    table.rows = series::series(&dimer, &grid.times(), method)?;
    emit(&table.render(format), out.as_deref())
}

pub fn run_steady(args: RunArgs) -> Result<(), CliError> {
    let (physics, _, method, format, out) = prepare(args, 2)?;
    let dimer = Dimer::new(physics.params()?)?;
    let mut table = Table::new(&STEADY_COLUMNS);
    let cfg = RunConfig { scenario: "steady", physics: &physics, time: None, method, format };
    table.push_meta("config_hash", config_hash(&cfg));
    table.push_meta("scenario", "steady");
    table.push_meta("method", format!("{method:?}").to_lowercase());
    physics_meta(&mut table, &physics, &dimer);
    table.rows.push(series::steady_row(&dimer, method)?);
    emit(&table.render(format), out.as_deref())
}

/// Writes `fig{id}_{curve}.{csv|json}` into `--out` (default `figures/`) and
/// returns the written paths.
pub fn run_figure(args: FigureArgs) -> Result<Vec<PathBuf>, CliError> {
    let fig = figures::figure(args.id)?;
    let format = args.format.unwrap_or_default();
    let dir = args.out.unwrap_or_else(|| PathBuf::from("figures"));
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut written = Vec::new();
    for curve in &fig.curves {
        let path = dir.join(format!("fig{}_{}.{ext}", fig.id, curve.label));
        emit(&curve.table.render(format), Some(&path))?;
        written.push(path);
    }
    Ok(written)
}

pub fn run_validate(mut args: ValidateArgs) -> Result<(), CliError> {
    let file = FileValues::load(args.output.config.as_deref())?;
    file.fill_tol(&mut args.tol)?;
    file.fill_time(&mut args.t_max, &mut args.points)?;
    file.fill_output(&mut args.output)?;
    let tol = args.tol.unwrap_or(1e-6);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(config_error(format!("--tol must be positive, got {tol}")));
    }
    let grid = TimeGrid::resolve(args.t_max, args.points, 101)?;
    let mut points = default_grid();
    if args.with_zero_temperature {
        points.extend((1..=9).map(|k| DimerParams::from_theta(0.1 * std::f64::consts::PI * k as f64, 5.0)));
    }
    let report = match cross_validate(&points, &grid.times(), &IntegratorConfig::default(), tol) {
        Ok(r) => r,
        Err(e) => return Err(CliError::Validation(e.to_string())),
    };
    let format = args.output.format.unwrap_or_default();
    let value = serde_json::to_value(&report).expect("report serialises");
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("report serialises");
            s.push('\n');
            s
        }
        Format::Csv => flat_csv(&value),
    };
    emit(&text, args.output.out.as_deref())?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "worst offender {} = {:e} at theta = {}, T_m = {}, dT = {} (tolerance {:e})",
            report.worst_quantity,
            report.worst_deviation,
            report.worst_theta,
            report.worst_t_mean,
            report.worst_t_diff,
            report.tolerance
        )))
    }
}

/// `key,value` lines for a flat JSON object.
fn flat_csv(value: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = value {
        for (k, v) in map {
            let cell = match v {
                Value::Number(n) => n.as_f64().map(format_number).unwrap_or_else(|| n.to_string()),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k},{cell}\n"));
        }
    }
    out
}

#[derive(Serialize)]
struct SweepConfig<'a> {
    scenario: &'a str,
    physics: &'a Physics,
    theta: &'a Option<Vec<f64>>,
    t_mean: &'a Option<Vec<f64>>,
    t_diff: &'a Option<Vec<f64>>,
    series: Option<TimeGrid>,
    method: Method,
    format: Format,
}

pub fn run_sweep(mut args: SweepArgs) -> Result<(), CliError> {
    let file = FileValues::load(args.output.config.as_deref())?;
    file.fill_physics(&mut args.physics)?;
    file.fill_axes(&mut args)?;
    file.fill_time(&mut args.t_max, &mut args.points)?;
    file.fill_method(&mut args.method)?;
    file.fill_output(&mut args.output)?;

    let thetas = args.sweep_theta.as_deref().map(|s| parse_axis("--sweep-theta", s, true)).transpose()?;
    let tms = args.sweep_tm.as_deref().map(|s| parse_axis("--sweep-tm", s, false)).transpose()?;
    let dts = args.sweep_dt.as_deref().map(|s| parse_axis("--sweep-dt", s, false)).transpose()?;
    if thetas.is_none() && tms.is_none() && dts.is_none() {
        return Err(config_error("empty axis list: give at least one of --sweep-theta, --sweep-tm, --sweep-dt"));
    }
    if thetas.is_some() && args.physics.delta_omega.is_some() {
        return Err(config_error("--sweep-theta cannot be combined with --delta-omega"));
    }
    let physics = Physics::resolve(&args.physics, thetas.is_none())?;
    let format = args.output.format.unwrap_or_default();
    let method = args.method.unwrap_or_default();
    let grid = if args.series {
        if format == Format::Csv {
            return Err(config_error("--series needs --format json"));
        }
        Some(TimeGrid::resolve(args.t_max, args.points, figures::DYNAMICS_POINTS)?)
    } else {
        None
    };

    let axis = |a: &Option<Vec<f64>>| a.clone().map(|v| v.into_iter().map(Some).collect()).unwrap_or(vec![None]);
    let mut points = Vec::new();
    for &theta in &axis(&thetas) {
        for &tm in &axis(&tms) {
            for &dt in &axis(&dts) {
                points.push(physics.with_point(theta, tm, dt));
            }
        }
    }

    let records: Vec<(Row, Option<Vec<Row>>)> = points
        .par_iter()
        .map(|p| {
            let dimer = Dimer::new(p.params()?)?;
            let series = grid.map(|g| series::series(&dimer, &g.times(), method)).transpose()?;
            Ok((series::steady_row(&dimer, method)?, series))
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = Table::new(&STEADY_COLUMNS);
    let cfg = SweepConfig {
        scenario: "sweep",
        physics: &physics,
        theta: &thetas,
        t_mean: &tms,
        t_diff: &dts,
        series: grid,
        method,
        format,
    };
    table.push_meta("config_hash", config_hash(&cfg));
    table.push_meta("scenario", "sweep");
    table.push_meta("method", format!("{method:?}").to_lowercase());
    table.push_meta("points", points.len());
    table.rows = records.iter().map(|(r, _)| r.clone()).collect();

    let text = match grid {
        None => table.render(format),
        Some(_) => {
            let series_table = Table::new(&SERIES_COLUMNS);
            let mut doc = table.to_json();
            let rows: Vec<Value> = records
                .iter()
                .map(|(row, series)| {
                    let mut rec = table.record(row);
                    let s: Vec<Value> =
                        series.as_ref().map(|s| s.iter().map(|r| series_table.record(r)).collect()).unwrap_or_default();
                    rec["series"] = json!(s);
                    rec
                })
                .collect();
            doc["rows"] = json!(rows);
            let mut s = serde_json::to_string_pretty(&doc).expect("finite values");
            s.push('\n');
            s
        }
    };
    emit(&text, args.output.out.as_deref())
}

/// Reads a dataset written by this tool back into its metadata and rows.
pub fn read_csv(path: &Path) -> Result<Table, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut meta = Vec::new();
    let mut lines = text.lines();
    let mut header = None;
    for line in lines.by_ref() {
        match line.strip_prefix("# ") {
            Some(m) => {
                let (k, v) = m.split_once(": ").ok_or("bad metadata line")?;
                meta.push((k.to_string(), v.to_string()));
            }
            None => {
                header = Some(line);
                break;
            }
        }
    }
    let header = header.ok_or("missing header")?;
    let columns: Vec<&'static str> = header
        .split(',')
        .map(|c| {
            SERIES_COLUMNS
                .iter()
                .chain(STEADY_COLUMNS.iter())
                .find(|k| **k == c)
                .copied()
                .ok_or_else(|| format!("unknown column {c}"))
        })
        .collect::<Result<_, _>>()?;
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse::<f64>().map_err(|e| e.to_string())).collect())
        .collect::<Result<_, _>>()?;
    Ok(Table { columns, rows, meta })
}
