//! Multi-start damped Gauss-Newton search for numeric roots of the
//! coefficient system, used to corroborate the symbolic solution sets.

use nalgebra::{SMatrix, SVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CoefficientSystem, SYSTEM_SIZE};
use crate::expr::{Rational, Symbol, SymPoly, NUM_SYMBOLS};

/// Unknown order of every root vector.
pub const UNKNOWNS: [Symbol; 4] = [Symbol::Eta, Symbol::A0, Symbol::A1, Symbol::A2];

type Vec4 = SVector<f64, 4>;
type Vec5 = SVector<f64, SYSTEM_SIZE>;
type Jac = SMatrix<f64, SYSTEM_SIZE, 4>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleParams {
    pub alpha: f64,
    pub beta: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    pub starts: usize,
    /// Starts are drawn uniformly from `[-half_width, half_width]^4`.
    pub half_width: f64,
    pub max_iterations: usize,
    pub max_halvings: u32,
    /// Residual 2-norm at which an iteration is declared converged.
    pub converge_tol: f64,
    /// Residual 2-norm a converged point must have to be reported.
    pub report_tol: f64,
    /// Relative per-component tolerance for merging roots.
    pub dedup_tol: f64,
    /// Roots with `|a1|, |a2|` below this have constant `Phi`; with `|a0|`
    /// below it as well they are the trivial family.
    pub trivial_tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            starts: 200,
            half_width: 5.0,
            max_iterations: 200,
            max_halvings: 60,
            converge_tol: 1e-12,
            report_tol: 1e-10,
            dedup_tol: 1e-6,
            trivial_tol: 1e-8,
            seed: 0x5e_ed0f_5717,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root {
    /// `(eta, a0, a1, a2)`.
    pub values: [f64; 4],
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub params: OracleParams,
    pub starts: usize,
    pub converged: usize,
    /// Distinct roots with nonconstant `Phi`, sorted lexicographically.
    pub roots: Vec<Root>,
    /// Converged starts that landed on `a0 = a1 = a2 = 0`.
    pub trivial_hits: usize,
    /// Converged starts that landed on the constant family
    /// `a1 = a2 = 0, a0 = -2 eta / (alpha + beta)`.
    pub constant_hits: usize,
}

impl OracleReport {
    /// Closest reported root within `tol` (max-norm) of `target`.
    pub fn find(&self, target: &[f64; 4], tol: f64) -> Option<&Root> {
        self.roots
            .iter()
            .map(|r| (r, max_dist(&r.values, target)))
            .filter(|(_, d)| *d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(r, _)| r)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("alpha + beta must be nonzero")]
    DegenerateParameters,
    #[error("none of {starts} starts converged")]
    NoConvergence { starts: usize },
}

fn max_dist(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

struct NumericSystem {
    equations: Vec<SymPoly>,
    jacobian: Vec<[SymPoly; 4]>,
    base: [f64; NUM_SYMBOLS],
}

impl NumericSystem {
    fn new(sys: &CoefficientSystem, p: &OracleParams) -> Self {
        let mut base = [0.0; NUM_SYMBOLS];
        base[Symbol::Alpha.index()] = p.alpha;
        base[Symbol::Beta.index()] = p.beta;
        base[Symbol::B.index()] = p.b;
        base[Symbol::C.index()] = p.c;
        NumericSystem {
            equations: sys.equations.to_vec(),
            jacobian: sys
                .equations
                .iter()
                .map(|e| UNKNOWNS.map(|u| e.partial(u)))
                .collect(),
            base,
        }
    }

    fn point(&self, x: &Vec4) -> [f64; NUM_SYMBOLS] {
        let mut v = self.base;
        for (u, xi) in UNKNOWNS.iter().zip(x.iter()) {
            v[u.index()] = *xi;
        }
        v
    }

    fn residual(&self, x: &Vec4) -> Vec5 {
        let v = self.point(x);
        Vec5::from_fn(|i, _| self.equations[i].eval(&v))
    }

    fn jacobian(&self, x: &Vec4) -> Jac {
        let v = self.point(x);
        Jac::from_fn(|i, j| self.jacobian[i][j].eval(&v))
    }

    /// Damped Gauss-Newton from `x0`; returns the final point and residual norm.
    fn solve(&self, x0: Vec4, cfg: &OracleConfig) -> (Vec4, f64) {
        let mut x = x0;
        let mut r = self.residual(&x);
        let mut norm = r.norm();
        for _ in 0..cfg.max_iterations {
            if norm < cfg.converge_tol {
                break;
            }
            let j = self.jacobian(&x);
            let Ok(step) = j.svd(true, true).solve(&(-r), 1e-14) else {
                break;
            };
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..=cfg.max_halvings {
                let trial = x + step * t;
                let rt = self.residual(&trial);
                let nt = rt.norm();
                if nt.is_finite() && nt < norm {
                    x = trial;
                    r = rt;
                    norm = nt;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        (x, norm)
    }
}

/// Runs `cfg.starts` Gauss-Newton solves from seeded random starts and
/// returns the distinct roots with nonconstant `Phi`.
pub fn numeric_root_oracle(
    sys: &CoefficientSystem,
    params: OracleParams,
    cfg: &OracleConfig,
) -> Result<OracleReport, OracleError> {
    if params.alpha + params.beta == 0.0 {
        return Err(OracleError::DegenerateParameters);
    }
    let ns = NumericSystem::new(sys, &params);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut converged = 0;
    let mut trivial_hits = 0;
    let mut constant_hits = 0;
    let mut found: Vec<Root> = Vec::new();
    for _ in 0..cfg.starts {
        let x0 = Vec4::from_fn(|_, _| rng.gen_range(-cfg.half_width..=cfg.half_width));
        let (x, norm) = ns.solve(x0, cfg);
        if !(norm < cfg.report_tol) {
            continue;
        }
        converged += 1;
        let values = [x[0], x[1], x[2], x[3]];
        if values[2..].iter().all(|a| a.abs() < cfg.trivial_tol) {
            if values[1].abs() < cfg.trivial_tol {
                trivial_hits += 1;
            } else {
                constant_hits += 1;
            }
        } else {
            found.push(Root { values, residual: norm });
        }
    }
    if converged == 0 {
        return Err(OracleError::NoConvergence { starts: cfg.starts });
    }
    found.sort_by(|a, b| {
        a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut roots: Vec<Root> = Vec::new();
    for r in found {
        let dup = roots.iter_mut().find(|q| {
            q.values
                .iter()
                .zip(&r.values)
                .all(|(a, b)| (a - b).abs() <= cfg.dedup_tol * a.abs().max(b.abs()).max(1.0))
        });
        match dup {
            Some(q) if r.residual < q.residual => *q = r,
            Some(_) => {}
            None => roots.push(r),
        }
    }
    Ok(OracleReport {
        params,
        starts: cfg.starts,
        converged,
        roots,
        trivial_hits,
        constant_hits,
    })
}

/// Exact check that `(eta, 0, 0, 0)` annihilates every equation.
pub fn zero_family_residual_is_exact(sys: &CoefficientSystem, params: &OracleParams, eta: f64) -> bool {
    let q = |x: f64| Rational::from_float(x).expect("finite parameter");
    let mut v: [Rational; NUM_SYMBOLS] = Default::default();
    v[Symbol::Alpha.index()] = q(params.alpha);
    v[Symbol::Beta.index()] = q(params.beta);
    v[Symbol::B.index()] = q(params.b);
    v[Symbol::C.index()] = q(params.c);
    v[Symbol::Eta.index()] = q(eta);
    sys.equations
        .iter()
        .all(|e| num_traits::Zero::is_zero(&e.eval_exact(&v)))
}
