use std::fs::File;
use std::io::{self, BufWriter, Write};

use dirac_coulomb::model::decay_rate;
use dirac_coulomb::oracle::{default_grid, find_eigenvalues, quadrature_norm, residual_check};
use dirac_coulomb::spectrum::sector_outcomes;
use dirac_coulomb::{
    bound_levels, build_bound_state, classify_regime, effective_kappa, gamma_exponent, quantization_residual,
    sector_level, BoundState, Level, PotentialConfig, QuantumNumbers, Region, Rejection, Sector, ShootingConfig,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{RunSpec, VerifyArgs, WavefunctionArgs};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Report, Table};

pub const QUANTIZATION_TOL: f64 = 1e-9;
pub const ODE_TOL: f64 = 1e-8;
pub const NORM_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-7;

const SPECTRUM_HEADER: &[&str] =
    &["k", "two_k", "n_f", "sector", "energy", "epsilon", "lambda", "gamma", "xi", "boundary", "status", "reason"];
const REGIME_HEADER: &[&str] = &[
    "k",
    "two_k",
    "n_f",
    "gamma",
    "xi",
    "intercept",
    "critical",
    "sectors",
    "region",
    "boundary_flag",
    "status",
    "reason",
];
const FIGURE_HEADER: &[&str] =
    &["k", "two_k", "n_f", "sector", "energy", "continuum_gap", "edge", "region", "status", "reason"];
const WAVEFUNCTION_HEADER: &[&str] = &["rho", "rho_tilde", "g", "f", "density", "status", "reason"];
const VERIFY_HEADER: &[&str] = &[
    "k",
    "two_k",
    "n_f",
    "sector",
    "energy",
    "quantization_residual",
    "ode_residual",
    "norm_error",
    "oracle_energy",
    "oracle_delta",
    "status",
    "reason",
];

const SECTORS: [Sector; 2] = [Sector::Particle, Sector::Antiparticle];

fn key_cells(q: &QuantumNumbers) -> [Cell; 3] {
    [Cell::text(q.label()), Cell::Int(q.two_k().into()), Cell::Int(q.n_f.into())]
}

fn gamma_xi(cfg: &PotentialConfig, q: &QuantumNumbers) -> Result<(f64, f64), Rejection> {
    let gamma = gamma_exponent(effective_kappa(q, cfg), cfg)?;
    Ok((gamma, q.n_f as f64 + gamma))
}

/// Rows for every pair, computed in parallel and kept in sweep order.
fn sweep(run: &RunSpec, rows_for: impl Fn(&QuantumNumbers) -> Vec<Vec<Cell>> + Sync + Send) -> Vec<Vec<Cell>> {
    let pairs = run.pairs();
    let chunks: Vec<Vec<Vec<Cell>>> = pairs.par_iter().map(&rows_for).collect();
    chunks.into_iter().flatten().collect()
}

fn report(run: &RunSpec, header: &'static [&'static str], rows: Vec<Vec<Cell>>) -> Report {
    let mut table = Table::new(header);
    for row in rows {
        table.push(row);
    }
    Report { config: run.config_json(), mode: run.mode_name(), table, extra: Vec::new() }
}

pub fn spectrum(run: &RunSpec) -> Report {
    let cfg = run.config;
    let rows = sweep(run, |q| {
        let gx = gamma_xi(&cfg, q);
        let outcomes = sector_outcomes(&cfg, q);
        SECTORS
            .iter()
            .enumerate()
            .map(|(i, &sector)| {
                let outcome = match &outcomes {
                    Ok(o) => o[i].1,
                    Err(r) => Err(*r),
                };
                let (gamma, xi) = gx.map_or((None, None), |(g, x)| (Some(g), Some(x)));
                let [k, two_k, n] = key_cells(q);
                let mut row = vec![k, two_k, n, Cell::text(sector.name())];
                match outcome {
                    Ok(l) => row.extend([
                        l.energy.into(),
                        (l.energy * run.mass).into(),
                        decay_rate(l.energy, cfg.bbar()).into(),
                        gamma.into(),
                        xi.into(),
                        Cell::Flag(l.boundary),
                        Cell::text("Bound"),
                        Cell::text(""),
                    ]),
                    Err(r) => row.extend([
                        Cell::Real(None),
                        Cell::Real(None),
                        Cell::Real(None),
                        gamma.into(),
                        xi.into(),
                        Cell::Flag(false),
                        Cell::text(r.code()),
                        Cell::text(r.describe()),
                    ]),
                }
                row
            })
            .collect()
    });
    report(run, SPECTRUM_HEADER, rows)
}

fn intercept_note(region: Region) -> &'static str {
    match region {
        Region::InterceptUndefined => {
            "intercept undefined for alpha_delta + alpha_sigma = 0; sectors from the root filter"
        }
        Region::BeyondCritical => "intercept beyond the critical value; no sector binds",
        _ => "",
    }
}

pub fn regime(run: &RunSpec) -> Report {
    let cfg = run.config;
    let rows = sweep(run, |q| {
        let [k, two_k, n] = key_cells(q);
        let mut row = vec![k, two_k, n];
        match gamma_xi(&cfg, q) {
            Ok((gamma, xi)) => {
                let rep = classify_regime(&cfg, effective_kappa(q, &cfg), xi);
                row.extend([
                    gamma.into(),
                    xi.into(),
                    rep.intercept.into(),
                    rep.critical.into(),
                    Cell::text(rep.sectors.name()),
                    Cell::text(rep.region.name()),
                    Cell::Flag(rep.boundary_flag),
                    Cell::text("ok"),
                    Cell::text(intercept_note(rep.region)),
                ]);
            }
            Err(r) => row.extend([
                Cell::Real(None),
                Cell::Real(None),
                Cell::Real(None),
                Cell::Real(None),
                Cell::text(""),
                Cell::text(""),
                Cell::Flag(false),
                Cell::text(r.code()),
                Cell::text(r.describe()),
            ]),
        }
        vec![row]
    });
    report(run, REGIME_HEADER, rows)
}

pub fn figure_data(run: &RunSpec) -> Report {
    let cfg = run.config;
    let edge = cfg.continuum_edge();
    let rows = sweep(run, |q| {
        let Ok((_, xi)) = gamma_xi(&cfg, q) else {
            return Vec::new();
        };
        let region = classify_regime(&cfg, effective_kappa(q, &cfg), xi).region;
        bound_levels(&cfg, q)
            .unwrap_or_default()
            .into_iter()
            .map(|l| {
                let gap = match l.sector {
                    Sector::Particle => edge - l.energy,
                    Sector::Antiparticle => l.energy + edge,
                };
                let [k, two_k, n] = key_cells(q);
                vec![
                    k,
                    two_k,
                    n,
                    Cell::text(l.sector.name()),
                    l.energy.into(),
                    gap.into(),
                    edge.into(),
                    Cell::text(region.name()),
                    Cell::text("Bound"),
                    Cell::text(""),
                ]
            })
            .collect()
    });
    report(run, FIGURE_HEADER, rows)
}

pub fn wavefunction(run: &RunSpec, args: &WavefunctionArgs) -> CliResult<Report> {
    let [base] = run.k_list.as_slice() else {
        return Err(CliError::config("wavefunction needs exactly one k"));
    };
    if args.points < 2 {
        return Err(CliError::config("--points must be at least 2"));
    }
    let q = base.with_n_f(args.nf);
    let state = build_bound_state(&run.config, &q, args.sector.into())
        .map_err(|r| CliError::config(format!("{}: {}", r.code(), r.describe())))?;
    let lambda = state.scaled.lambda;
    let rho_max = args.rho_max.unwrap_or(state.coeff.radius_cap() / (2.0 * lambda));
    if !(rho_max.is_finite() && rho_max > 0.0) {
        return Err(CliError::config(format!("--rho-max must be positive, got {rho_max}")));
    }
    let mut table = Table::new(WAVEFUNCTION_HEADER);
    for i in 0..args.points {
        let m_rho = rho_max * i as f64 / (args.points - 1) as f64;
        let rho_tilde = state.rho_tilde(m_rho);
        let (g, f) = (state.g(rho_tilde), state.f(rho_tilde));
        table.push(vec![
            (m_rho / run.mass).into(),
            rho_tilde.into(),
            g.into(),
            f.into(),
            (g * g + f * f).into(),
            Cell::text("ok"),
            Cell::text(""),
        ]);
    }
    let info = json!({
        "k": q.label(),
        "two_k": q.two_k(),
        "n_f": q.n_f,
        "sector": state.sector().name(),
        "energy": state.energy(),
        "lambda": lambda,
        "gamma": state.coeff.gamma,
        "xi": state.scaled.xi,
        "boundary": state.level.boundary,
        "normalization": "integral of g^2 + f^2 over rho_tilde equals 2 lambda",
    });
    Ok(Report { config: run.config_json(), mode: run.mode_name(), table, extra: vec![("state", info)] })
}

/// λ below which the shooting search stops on the side `sector` accumulates
/// against: halfway between the last requested level and the next one.
fn lambda_cut(cfg: &PotentialConfig, q: &QuantumNumbers, n_f_max: u32, sector: Sector) -> f64 {
    let lambda_of =
        |n: u32| sector_level(cfg, &q.with_n_f(n), sector).ok().and_then(|l| decay_rate(l.energy, cfg.bbar()));
    let Some(low) = (0..=n_f_max).filter_map(lambda_of).reduce(f64::min) else {
        return 0.05 * cfg.continuum_edge();
    };
    match (n_f_max + 1..=n_f_max + 40).filter_map(lambda_of).filter(|l| *l < low).reduce(f64::max) {
        Some(next) => 0.5 * (low + next),
        None => 0.5 * low,
    }
}

struct Checked {
    q: QuantumNumbers,
    level: Level,
    energy: f64,
    quantization: f64,
    ode: f64,
    norm: f64,
    oracle: Option<f64>,
    problems: Vec<String>,
}

/// Shooting roots for one k, or why they could not be compared.
fn oracle_roots(cfg: &PotentialConfig, base: &QuantumNumbers, n_f_max: u32) -> Result<Vec<f64>, String> {
    let edge = cfg.continuum_edge();
    let top = lambda_cut(cfg, base, n_f_max, Sector::Particle);
    let bottom = lambda_cut(cfg, base, n_f_max, Sector::Antiparticle);
    let bracket = (-(edge * edge - bottom * bottom).sqrt(), (edge * edge - top * top).sqrt());
    let expected = (0..=n_f_max + 40)
        .flat_map(|n| bound_levels(cfg, &base.with_n_f(n)).unwrap_or_default())
        .filter(|l| l.energy > bracket.0 && l.energy < bracket.1)
        .count();
    let found = find_eigenvalues(cfg, effective_kappa(base, cfg), &ShootingConfig::new(bracket), usize::MAX)
        .map_err(|e| format!("shooting failed: {e}"))?;
    if found.len() != expected {
        return Err(format!(
            "shooting found {} eigenvalues in [{:.6}, {:.6}], closed form has {expected}",
            found.len(),
            bracket.0,
            bracket.1
        ));
    }
    Ok(found)
}

fn check_k(cfg: &PotentialConfig, base: &QuantumNumbers, n_f_max: u32, shift: f64) -> Vec<Checked> {
    let states: Vec<BoundState> = (0..=n_f_max)
        .flat_map(|n| SECTORS.iter().filter_map(move |&s| build_bound_state(cfg, &base.with_n_f(n), s).ok()))
        .collect();
    if states.is_empty() {
        return Vec::new();
    }
    let roots = oracle_roots(cfg, base, n_f_max);
    states
        .into_iter()
        .map(|s| {
            let energy = s.energy() + shift;
            let quantization = quantization_residual(energy, cfg, &s.quantum);
            let ode = residual_check(&s, &default_grid(&s));
            let norm = (quadrature_norm(&s) - 2.0 * s.scaled.lambda).abs();
            let mut problems = Vec::new();
            if !(quantization.abs() < QUANTIZATION_TOL) {
                problems.push(format!("quantization residual {quantization:.3e}"));
            }
            if !(ode < ODE_TOL) {
                problems.push(format!("ODE residual {ode:.3e}"));
            }
            if !(norm < NORM_TOL) {
                problems.push(format!("normalization error {norm:.3e}"));
            }
            let oracle = match &roots {
                Ok(r) => r.iter().copied().min_by(|a, b| (a - energy).abs().total_cmp(&(b - energy).abs())),
                Err(msg) => {
                    problems.push(msg.clone());
                    None
                }
            };
            if let Some(o) = oracle {
                if !((o - energy).abs() < ORACLE_TOL) {
                    problems.push(format!("oracle differs by {:.3e}", (o - energy).abs()));
                }
            }
            Checked { q: s.quantum, level: s.level, energy, quantization, ode, norm, oracle, problems }
        })
        .collect()
}

/// Verification report and whether every check passed.
pub fn verify(run: &RunSpec, args: &VerifyArgs) -> (Report, bool) {
    let cfg = run.config;
    let shift = args.corrupt_energy.unwrap_or(0.0);
    let checked: Vec<Checked> =
        run.k_list.par_iter().map(|q| check_k(&cfg, q, run.n_f_max, shift)).flatten_iter().collect();
    let mut table = Table::new(VERIFY_HEADER);
    let mut worst = [0.0f64; 4];
    let mut failures = 0;
    for c in &checked {
        let delta = c.oracle.map(|o| (o - c.energy).abs());
        for (w, v) in worst.iter_mut().zip([c.quantization.abs(), c.ode, c.norm, delta.unwrap_or(0.0)]) {
            *w = w.max(if v.is_nan() { f64::INFINITY } else { v });
        }
        let pass = c.problems.is_empty();
        failures += usize::from(!pass);
        let [k, two_k, n] = key_cells(&c.q);
        table.push(vec![
            k,
            two_k,
            n,
            Cell::text(c.level.sector.name()),
            c.energy.into(),
            c.quantization.into(),
            c.ode.into(),
            c.norm.into(),
            c.oracle.into(),
            delta.into(),
            Cell::text(if pass { "pass" } else { "fail" }),
            Cell::text(c.problems.join("; ")),
        ]);
    }
    let note = if checked.is_empty() { "no states: nothing to verify" } else { "" };
    let summary = json!({
        "states": checked.len(),
        "failures": failures,
        "worst_quantization_residual": worst[0],
        "worst_ode_residual": worst[1],
        "worst_norm_error": worst[2],
        "worst_oracle_delta": worst[3],
        "note": note,
    });
    let report = Report { config: run.config_json(), mode: run.mode_name(), table, extra: vec![("summary", summary)] };
    (report, failures == 0)
}

/// Human-readable verification summary for standard error.
pub fn verify_summary(report: &Report) -> String {
    let s: &Value = &report.extra[0].1;
    if s["states"] == 0 {
        return "verify: no states in the requested sweep; nothing to check".into();
    }
    format!(
        "verify: {} states, {} failed; worst quantization residual {:.3e}, ODE residual {:.3e}, normalization error {:.3e}, oracle |dE| {:.3e}",
        s["states"],
        s["failures"],
        s["worst_quantization_residual"].as_f64().unwrap_or(f64::INFINITY),
        s["worst_ode_residual"].as_f64().unwrap_or(f64::INFINITY),
        s["worst_norm_error"].as_f64().unwrap_or(f64::INFINITY),
        s["worst_oracle_delta"].as_f64().unwrap_or(f64::INFINITY),
    )
}

pub fn emit(run: &RunSpec, report: &Report) -> CliResult<()> {
    match &run.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(format!("creating {}", path.display()), e))?;
            let mut out = BufWriter::new(file);
            report.write(run.format, &mut out)?;
            out.flush().map_err(|e| CliError::io(format!("writing {}", path.display()), e))
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            report.write(run.format, &mut out)?;
            out.flush().map_err(|e| CliError::io("writing standard output", e))
        }
    }
}
