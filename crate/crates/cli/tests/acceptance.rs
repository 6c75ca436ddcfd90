//! Acceptance suite: one PASS/FAIL line per criterion at its pinned tolerance.
//!
//! Run with `cargo test -p dimer-cli --test acceptance`. The process exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dimer_cli::config::Format;
use dimer_cli::figures::{figure, Figure, FIGURE_IDS};
use dimer_core::analytic::{
    long_time, steady_concurrence, steady_transfer_probability, tau23_evolution, x_state_concurrence,
};
use dimer_core::numeric::{
    cross_validate, default_grid, default_times, steady_state, wootters_concurrence, IntegratorConfig,
};
use dimer_core::{Basis, DensityMatrix, Dimer, DimerParams, Liouvillian, TauMoments};

/// Name, check and optional runtime budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn dimer(theta: f64, t_mean: f64, t_diff: f64) -> Dimer {
    Dimer::new(DimerParams::from_theta(theta, 5.0).with_mean_temperature(t_mean, t_diff)).unwrap()
}

fn thetas() -> impl Iterator<Item = f64> {
    (1..=9).map(|k| 0.1 * PI * k as f64)
}

fn rate_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let theta = rng.gen_range(0.02 * PI..0.98 * PI);
        let t_mean = rng.gen_range(0.0..200.0);
        let t_diff = rng.gen_range(-1.0..1.0) * t_mean;
        let p = DimerParams::from_theta(theta, rng.gen_range(0.5..20.0))
            .with_gamma(rng.gen_range(0.1..3.0))
            .with_etas(rng.gen_range(0.0005..0.05), rng.gen_range(0.0005..0.05))
            .with_mean_temperature(t_mean, t_diff);
        let d = Dimer::new(p).unwrap();
        let r = &d.rates;
        let lhs = r.pi2 + r.pi3 - 2.0 * r.x23;
        worst = worst.max((lhs - theta.cos().powi(2) * r.pi1).abs());
    }
    check(worst < 1e-13, format!("max |Π₂+Π₃−2X₂₃ − cos²θ·Π₁| = {worst:.2e} over 1000 draws (tol 1e-13)"))
}

fn resonant_steady_transfer() -> Outcome {
    let worst = [0.0, 0.1, 10.0, 100.0]
        .iter()
        .map(|&tm| (steady_transfer_probability(&dimer(0.5 * PI, tm, 0.0)) - 0.5).abs())
        .fold(0.0, f64::max);
    check(worst < 1e-12, format!("max |P_ss − 1/2| = {worst:.2e} for T_m ∈ {{0, 0.1, 10, 100}} (tol 1e-12)"))
}

fn low_temperature_steady_transfer() -> Outcome {
    let worst = thetas()
        .map(|th| (steady_transfer_probability(&dimer(th, 0.0, 0.0)) - (0.5 * th).cos().powi(2)).abs())
        .fold(0.0, f64::max);
    check(worst < 1e-12, format!("max |P_ss − cos²(θ/2)| = {worst:.2e} at T = 0, θ = 0.1π..0.9π (tol 1e-12)"))
}

fn steady_concurrence_agreement() -> Outcome {
    let (mut transient, mut kernel) = (0.0f64, 0.0f64);
    let rho0 = DensityMatrix::basis_state(1, Basis::Bare);
    for theta in thetas() {
        for tm in [0.1, 1.0, 10.0, 100.0] {
            let d = dimer(theta, tm, 0.0);
            let c = steady_concurrence(&d);
            let t = long_time(&d).unwrap();
            let tau = tau23_evolution(&TauMoments::donor_excited(), &d, t).unwrap();
            transient = transient.max((2.0 * tau.norm() - c).abs());
            let ss = steady_state(&Liouvillian::new(&d), &rho0).unwrap().to_basis(Basis::Bare, &d.eig);
            kernel = kernel.max((wootters_concurrence(&ss).unwrap() - c).abs());
        }
    }
    check(
        transient < 1e-7 && kernel < 1e-7,
        format!(
            "max |2|τ₂₃(∞)| − C_ss| = {transient:.2e}, max |C_W(kernel) − C_ss| = {kernel:.2e} on 9×4 grid (tol 1e-7)"
        ),
    )
}

fn analytic_numeric_equivalence() -> Outcome {
    let report = cross_validate(&default_grid(), &default_times(10.0, 101), &IntegratorConfig::default(), 1e-6)
        .expect("validation grid runs");
    let worst = [report.max_dev_populations, report.max_dev_s32, report.max_dev_p, report.max_dev_c]
        .into_iter()
        .fold(0.0, f64::max);
    check(
        worst < 1e-6,
        format!(
            "{} points × {} samples: populations {:.2e}, s32 {:.2e}, P {:.2e}, C {:.2e} (tol 1e-6)",
            report.points,
            report.samples / report.points,
            report.max_dev_populations,
            report.max_dev_s32,
            report.max_dev_p,
            report.max_dev_c
        ),
    )
}

fn propagation_invariants() -> Outcome {
    let mut grid = default_grid();
    grid.extend(thetas().map(|th| DimerParams::from_theta(th, 5.0)));
    let r = cross_validate(&grid, &default_times(10.0, 101), &IntegratorConfig::default(), 1e-6)
        .expect("validation grid runs");
    check(
        r.max_trace_drift < 1e-10 && r.max_hermiticity_drift < 1e-10 && r.min_eigenvalue > -1e-9 && r.max_off_x < 1e-9,
        format!(
            "trace drift {:.2e}, Hermiticity drift {:.2e}, min eigenvalue {:.2e}, off-X leakage {:.2e} over {} points",
            r.max_trace_drift, r.max_hermiticity_drift, r.min_eigenvalue, r.max_off_x, r.points
        ),
    )
}

fn bath_difference_insensitivity() -> Outcome {
    let spread = |tm: f64| {
        (steady_transfer_probability(&dimer(0.3 * PI, tm, tm)) - steady_transfer_probability(&dimer(0.3 * PI, tm, 0.0)))
            .abs()
    };
    let (hot, cold) = (spread(100.0), spread(0.01));
    check(
        hot < 1e-3 && cold < 1e-6,
        format!("|ΔP_ss| = {hot:.2e} at T_m = 100 (tol 1e-3), {cold:.2e} at T_m = 0.01 (tol 1e-6)"),
    )
}

fn rendered(fig: &Figure) -> Vec<String> {
    fig.curves.iter().flat_map(|c| [c.table.render(Format::Csv), c.table.render(Format::Json)]).collect()
}

fn figure_regeneration() -> Outcome {
    let first: Vec<Figure> = FIGURE_IDS.map(|id| figure(id).unwrap()).collect();
    let deterministic = first.iter().all(|f| rendered(f) == rendered(&figure(f.id).unwrap()));
    let curves: usize = first.iter().map(|f| f.curves.len()).sum();
    let by_id = |id: u32| first.iter().find(|f| f.id == id).unwrap();

    let fig2 = by_id(2).curves.iter().map(|c| (c.long_time_value.unwrap() - 0.5).abs()).fold(0.0, f64::max);

    let hot = by_id(6).curves.iter().find(|c| c.label == "tm_100").unwrap();
    let (theta_col, p_col) = (hot.table.column("theta").unwrap(), hot.table.column("P_ss").unwrap());
    let (mut fig6, mut fig6_central) = (0.0f64, 0.0f64);
    for (theta, p) in theta_col.iter().zip(&p_col) {
        let dev = (p - 0.5).abs();
        fig6 = fig6.max(dev);
        if (0.4 * PI..=0.6 * PI).contains(theta) {
            fig6_central = fig6_central.max(dev);
        }
    }

    let fig9 = by_id(9)
        .curves
        .iter()
        .map(|c| {
            let theta: f64 = c.table.meta.iter().find(|(k, _)| k == "theta").unwrap().1.parse().unwrap();
            (c.long_time_value.unwrap() - theta.sin()).abs()
        })
        .fold(0.0, f64::max);

    let sub = |ok: bool| if ok { "ok" } else { "FAIL" };
    check(
        deterministic && fig2 < 1e-2 && fig6 < 1e-2 && fig9 < 1e-2,
        format!(
            "{} figures / {curves} curves deterministic: {}; Fig 2 max |P(∞) − 1/2| = {fig2:.2e} {}; \
             Fig 6 (T_m = 100) max |P_ss − 1/2| = {fig6:.2e} {} (θ ∈ [0.4π, 0.6π]: {fig6_central:.2e}); \
             Fig 9 max |C(∞) − sinθ| = {fig9:.2e} {} (tol 1e-2)",
            first.len(),
            sub(deterministic),
            sub(fig2 < 1e-2),
            sub(fig6 < 1e-2),
            sub(fig9 < 1e-2),
        ),
    )
}

/// Random X-state: Dirichlet-like populations and coherences inside the
/// positivity bounds |ρ₂₃|² ≤ ρ₂₂ρ₃₃, |ρ₁₄|² ≤ ρ₁₁ρ₄₄.
fn random_x_state(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let w: Vec<f64> = (0..4).map(|_| -rng.gen_range(1e-12f64..1.0).ln()).collect();
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / total).collect();
    let mut m = Matrix4::from_diagonal(&Vector4::from_fn(|i, _| Complex64::new(p[i], 0.0)));
    let inner = Complex64::from_polar(rng.gen_range(0.0..1.0) * (p[1] * p[2]).sqrt(), rng.gen_range(-PI..PI));
    let outer = Complex64::from_polar(rng.gen_range(0.0..1.0) * (p[0] * p[3]).sqrt(), rng.gen_range(-PI..PI));
    m[(1, 2)] = inner;
    m[(2, 1)] = inner.conj();
    m[(0, 3)] = outer;
    m[(3, 0)] = outer.conj();
    DensityMatrix::new(m, Basis::Bare).unwrap()
}

fn wootters_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let rho = random_x_state(&mut rng);
        worst = worst.max((wootters_concurrence(&rho).unwrap() - x_state_concurrence(&rho).unwrap()).abs());
    }
    check(worst < 1e-10, format!("max |C_Wootters − C_X| = {worst:.2e} over 10⁴ X-states (tol 1e-10)"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("rate identity", rate_identity, Some(Duration::from_secs(1))),
        ("resonant steady transfer", resonant_steady_transfer, None),
        ("low-temperature steady transfer", low_temperature_steady_transfer, None),
        ("steady concurrence", steady_concurrence_agreement, Some(Duration::from_secs(10))),
        ("analytic-numeric equivalence", analytic_numeric_equivalence, Some(Duration::from_secs(60))),
        ("propagation invariants", propagation_invariants, None),
        ("bath-difference insensitivity", bath_difference_insensitivity, None),
        ("figure regeneration", figure_regeneration, None),
        ("Wootters vs X-state formula", wootters_oracle, None),
    ];
    let mut failures = 0;
    for (n, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_budget = budget.is_none_or(|b| elapsed < b);
        let passed = outcome.passed && in_budget;
        failures += usize::from(!passed);
        let budget = budget.map(|b| format!(" (budget {} s)", b.as_secs())).unwrap_or_default();
        println!(
            "{} {}. {name}: {}; {:.3} s{budget}",
            if passed { "PASS" } else { "FAIL" },
            n + 1,
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
