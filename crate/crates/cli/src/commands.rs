use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use gswwe_core::pipeline::{
    build_ansatz, expand_ode, extract_system, homogeneous_balance, numeric_root_oracle, verify_solution_set,
    OracleConfig, OracleParams, OracleReport, VerificationReport,
};
use gswwe_core::solutions::{Phi, SolutionError};
use gswwe_core::verifier::{linspace, ode_residual, pde_residual, ResidualReport};
use gswwe_core::{CoefficientSystem, ReducedOde, SetId, SolutionSet};
use serde::Serialize;

use crate::config::{ConfigError, RunConfig};

/// Distance in max-norm within which an oracle root corroborates a set.
pub const ORACLE_MATCH_TOL: f64 = 1e-8;

/// Samples of the reduced-ODE residual line.
const ODE_SAMPLES: usize = 2001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

pub fn derive_system() -> Result<CoefficientSystem> {
    let ode = ReducedOde::gswwe();
    let n = homogeneous_balance(&ode)?;
    let expanded = expand_ode(&build_ansatz(n)?, &ode);
    Ok(extract_system(&expanded)?)
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn balance(out: &mut dyn Write) -> Result<Status> {
    let n = homogeneous_balance(&ReducedOde::gswwe())?;
    writeln!(out, "N = {n}")?;
    Ok(Status::Pass)
}

pub fn system(out: &mut dyn Write) -> Result<Status> {
    write!(out, "{}", derive_system()?)?;
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct VerifyDump<'a> {
    system_source: String,
    proportional_to_derived: bool,
    sets: &'a [VerificationReport],
    oracle: Option<&'a OracleReport>,
    oracle_error: Option<String>,
    corroborated: Vec<(SetId, bool)>,
    passed: bool,
}

pub fn verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status> {
    let derived = derive_system()?;
    let (system, source) = match &cfg.system_file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("cannot read system file {}: {e}", path.display())))?;
            let sys: CoefficientSystem = text
                .parse()
                .map_err(|e| ConfigError(format!("system file {}: {e}", path.display())))?;
            (sys, path.display().to_string())
        }
        None => (derived.clone(), "derived".to_string()),
    };
    let proportional = system.is_proportional_to(&derived);
    writeln!(out, "system: {source}")?;
    writeln!(out, "proportional to derived system: {}", if proportional { "yes" } else { "no" })?;

    let reports: Vec<VerificationReport> = [SolutionSet::set1(), SolutionSet::set2()]
        .iter()
        .map(|s| verify_solution_set(&system, s))
        .collect();
    for r in &reports {
        writeln!(out, "{}: {}", r.set, Status::from_bool(r.passed).label())?;
        for e in &r.equations {
            writeln!(out, "  Y^{}: {}", e.power, e.remainder)?;
        }
    }

    let params = OracleParams {
        alpha: cfg.model.alpha,
        beta: cfg.model.beta,
        b: cfg.expansion.b,
        c: cfg.expansion.c,
    };
    let mut oracle_cfg = OracleConfig::default();
    if let Some(seed) = cfg.oracle_seed {
        oracle_cfg.seed = seed;
    }
    writeln!(
        out,
        "oracle at alpha={}, beta={}, B={}, C={}:",
        params.alpha, params.beta, params.b, params.c
    )?;
    let (oracle, oracle_error) = match numeric_root_oracle(&system, params, &oracle_cfg) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut corroborated = Vec::new();
    match (&oracle, &oracle_error) {
        (Some(rep), _) => {
            writeln!(
                out,
                "  {} starts, {} converged, {} on the trivial family, {} on the constant family",
                rep.starts, rep.converged, rep.trivial_hits, rep.constant_hits
            )?;
            for root in &rep.roots {
                let [eta, a0, a1, a2] = root.values;
                writeln!(
                    out,
                    "  root eta={eta:.12} a0={a0:.12} a1={a1:.12} a2={a2:.12} |F|={:.1e}",
                    root.residual
                )?;
            }
            for set in [SolutionSet::set1(), SolutionSet::set2()] {
                let target = set.evaluate(params.alpha, params.beta, params.b, params.c);
                let found = rep.find(&target, ORACLE_MATCH_TOL).is_some();
                writeln!(out, "  {} corroborated: {}", set.id, if found { "yes" } else { "no" })?;
                corroborated.push((set.id, found));
            }
        }
        (None, Some(e)) => writeln!(out, "  {e}")?,
        (None, None) => unreachable!(),
    }

    let passed = proportional && reports.iter().all(|r| r.passed);
    writeln!(out, "verify: {}", Status::from_bool(passed).label())?;
    if let Some(dir) = &cfg.out_dir {
        let dump = VerifyDump {
            system_source: source,
            proportional_to_derived: proportional,
            sets: &reports,
            oracle: oracle.as_ref(),
            oracle_error,
            corroborated,
            passed,
        };
        write_json(dir, "verify.json", &dump)?;
    }
    Ok(Status::from_bool(passed))
}

fn fmt_phi(p: Phi) -> String {
    match p {
        Phi::Value(v) => format!("{v:.16e}"),
        Phi::Pole => "pole".into(),
    }
}

fn fmt_u(u: Result<f64, SolutionError>) -> String {
    match u {
        Ok(v) => format!("{v:.16e}"),
        Err(e) => format!("undefined ({e})"),
    }
}

pub fn eval(cfg: &RunConfig, x: f64, t: f64, out: &mut dyn Write) -> Result<Status> {
    let w = cfg.wave();
    let [eta, a0, a1, a2] = w.coefficients;
    let zeta = w.frame.zeta(x, 0.0, t);
    writeln!(out, "set = {}", w.set_id)?;
    writeln!(out, "eta = {eta:.16e}")?;
    writeln!(out, "a0 = {a0:.16e}")?;
    writeln!(out, "a1 = {a1:.16e}")?;
    writeln!(out, "a2 = {a2:.16e}")?;
    writeln!(out, "omega = {:.16e}", w.omega())?;
    writeln!(out, "zeta = {zeta:.16e}")?;
    writeln!(out, "phi = {}", fmt_phi(w.phi(zeta)))?;
    writeln!(out, "u = v(x, t) = {}", fmt_u(w.v(x, t)))?;
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct ResidualDump<'a> {
    tolerance: f64,
    ode: Option<&'a ResidualReport>,
    ode_relative: Option<f64>,
    pde: Option<&'a ResidualReport>,
    pde_relative: Option<f64>,
    passed: bool,
}

fn describe(out: &mut dyn Write, label: &str, r: &Result<ResidualReport, impl std::fmt::Display>) -> Result<bool> {
    match r {
        Ok(r) => {
            writeln!(
                out,
                "{label}: points={} masked={} max_abs={:.3e} mean_abs={:.3e} scale={:.3e} relative={:.3e}",
                r.points,
                r.masked,
                r.max_abs,
                r.mean_abs,
                r.relative_scale,
                r.relative_max()
            )?;
            Ok(true)
        }
        Err(e) => {
            writeln!(out, "{label}: {e}")?;
            Ok(false)
        }
    }
}

pub fn residual(cfg: &RunConfig, tolerance: f64, out: &mut dyn Write) -> Result<Status> {
    let w = cfg.wave();
    let (lo, hi) = cfg.plot.zeta;
    let ode = ode_residual(&w, &linspace(lo, hi, ODE_SAMPLES));
    let pde = pde_residual(&w, &cfg.grid);
    let ode_ok = describe(out, "ode", &ode)?;
    let pde_ok = describe(out, "pde", &pde)?;
    let rel = |r: &Result<ResidualReport, _>| r.as_ref().ok().map(ResidualReport::relative_max);
    let within = |v: Option<f64>| v.is_some_and(|v| v <= tolerance);
    let passed = ode_ok && pde_ok && within(rel(&ode)) && within(rel(&pde));
    writeln!(out, "residual (tolerance {tolerance:e}): {}", Status::from_bool(passed).label())?;
    if let Some(dir) = &cfg.out_dir {
        let dump = ResidualDump {
            tolerance,
            ode: ode.as_ref().ok(),
            ode_relative: rel(&ode),
            pde: pde.as_ref().ok(),
            pde_relative: rel(&pde),
            passed,
        };
        write_json(dir, "residual.json", &dump)?;
    }
    Ok(Status::from_bool(passed))
}
