use std::f64::consts::PI;

use super::{slode_solution, Case, ExpansionParams, ModelParams, SlodeSolution, SolutionError, TravelFrame};
use crate::pipeline::{SetId, SolutionSet};
use crate::quadrature::{adaptive_simpson, SimpsonOptions};

/// Relative pole threshold: a point is a pole when
/// `|den| < POLE_EPS * (|num| + 1)`.
pub const POLE_EPS: f64 = 1e-8;

/// Value of `Phi` (or of the bracket ratio) at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Phi {
    Value(f64),
    Pole,
}

impl Phi {
    pub fn value(self) -> Option<f64> {
        match self {
            Phi::Value(v) => Some(v),
            Phi::Pole => None,
        }
    }

    pub fn is_pole(self) -> bool {
        matches!(self, Phi::Pole)
    }
}

/// The bracketed ratio of the closed-form solutions.
///
/// `Omega > 0`:
/// `[k2 (B - s) e^{s z} + k1 (B + s)] / [k2 (B - s - 2) e^{s z} + k1 (B + s - 2)]`,
/// `s = sqrt(Omega)`.
///
/// `Omega < 0`, with `psi = z s / 2`, `s = sqrt(-Omega)`:
/// `[k1 (B cos psi + s sin psi) + k2 (B sin psi - s cos psi)]
///  / [k1 ((B - 2) cos psi + s sin psi) + k2 ((B - 2) sin psi - s cos psi)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BracketRatio {
    pub case: Case,
    b: f64,
    k1: f64,
    k2: f64,
    s: f64,
}

impl BracketRatio {
    pub fn new(p: &ExpansionParams) -> Result<Self, SolutionError> {
        let case = p.case()?;
        Ok(BracketRatio {
            case,
            b: p.b,
            k1: p.k1,
            k2: p.k2,
            s: p.omega().abs().sqrt(),
        })
    }

    /// Numerator and denominator at `zeta`. For `Omega > 0` and `zeta > 0`
    /// both are scaled by `e^{-s zeta}` to stay finite.
    pub fn parts(&self, zeta: f64) -> (f64, f64) {
        let (b, s, k1, k2) = (self.b, self.s, self.k1, self.k2);
        match self.case {
            Case::OmegaPositive => {
                let x = s * zeta;
                let (e2, e1) = if x > 0.0 { (1.0, (-x).exp()) } else { (x.exp(), 1.0) };
                (
                    k2 * (b - s) * e2 + k1 * (b + s) * e1,
                    k2 * (b - s - 2.0) * e2 + k1 * (b + s - 2.0) * e1,
                )
            }
            Case::OmegaNegative => {
                let (sn, cs) = (0.5 * s * zeta).sin_cos();
                (
                    k1 * (b * cs + s * sn) + k2 * (b * sn - s * cs),
                    k1 * ((b - 2.0) * cs + s * sn) + k2 * ((b - 2.0) * sn - s * cs),
                )
            }
        }
    }

    pub fn eval(&self, zeta: f64) -> Phi {
        let (num, den) = self.parts(zeta);
        if den.abs() < POLE_EPS * (num.abs() + 1.0) {
            Phi::Pole
        } else {
            Phi::Value(num / den)
        }
    }

    /// Exact zeros of the denominator in `[lo, hi]`, ascending.
    pub fn poles_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let (b, s, k1, k2) = (self.b, self.s, self.k1, self.k2);
        match self.case {
            Case::OmegaPositive => {
                let p = k2 * (b - s - 2.0);
                let q = k1 * (b + s - 2.0);
                if p == 0.0 {
                    return Vec::new();
                }
                let ratio = -q / p;
                if ratio <= 0.0 {
                    return Vec::new();
                }
                let z = ratio.ln() / s;
                if (lo..=hi).contains(&z) {
                    vec![z]
                } else {
                    Vec::new()
                }
            }
            Case::OmegaNegative => {
                // den = a cos psi + bb sin psi = rho cos(psi - phase)
                let a = k1 * (b - 2.0) - k2 * s;
                let bb = k1 * s + k2 * (b - 2.0);
                if a == 0.0 && bb == 0.0 {
                    return Vec::new();
                }
                let phase = bb.atan2(a);
                let first = phase + 0.5 * PI;
                let to_zeta = 2.0 / s;
                let n_lo = ((lo / to_zeta - first) / PI).ceil() as i64;
                let n_hi = ((hi / to_zeta - first) / PI).floor() as i64;
                (n_lo..=n_hi)
                    .map(|n| (first + n as f64 * PI) * to_zeta)
                    .filter(|z| (lo..=hi).contains(z))
                    .collect()
            }
        }
    }

    /// Period in `zeta` for `Omega < 0`: `R(psi + pi) = R(psi)`.
    pub fn period(&self) -> Option<f64> {
        match self.case {
            Case::OmegaNegative => Some(2.0 * PI / self.s),
            Case::OmegaPositive => None,
        }
    }
}

/// Fully parameterized closed-form traveling wave.
#[derive(Clone, Debug, PartialEq)]
pub struct TravelingWave {
    pub set_id: SetId,
    pub case: Case,
    pub model: ModelParams,
    pub expansion: ExpansionParams,
    pub frame: TravelFrame,
    /// `(eta, a0, a1, a2)` evaluated from the solution set.
    pub coefficients: [f64; 4],
    ratio: BracketRatio,
}

impl TravelingWave {
    pub fn new(
        set_id: SetId,
        model: ModelParams,
        expansion: ExpansionParams,
    ) -> Result<Self, SolutionError> {
        let model = ModelParams::new(model.alpha, model.beta, model.gamma)?;
        let ratio = BracketRatio::new(&expansion)?;
        let coefficients = SolutionSet::by_id(set_id).evaluate(
            model.alpha,
            model.beta,
            expansion.b,
            expansion.c,
        );
        let frame = TravelFrame::from_eta(model.gamma, coefficients[0])?;
        Ok(TravelingWave {
            set_id,
            case: ratio.case,
            model,
            expansion,
            frame,
            coefficients,
            ratio,
        })
    }

    /// Same wave with `(a0, a1, a2)` overridden; `eta` and the frame are kept.
    /// Produces non-solutions, for probing the residual operators.
    pub fn with_ansatz_coefficients(mut self, a: [f64; 3]) -> Self {
        self.coefficients[1..].copy_from_slice(&a);
        self
    }

    pub fn ratio(&self) -> &BracketRatio {
        &self.ratio
    }

    pub fn slode(&self) -> SlodeSolution {
        slode_solution(&self.expansion).expect("case validated at construction")
    }

    pub fn eta(&self) -> f64 {
        self.coefficients[0]
    }

    pub fn omega(&self) -> f64 {
        self.frame.omega
    }

    /// `(alpha + beta) / 2`, the coefficient of `Phi^2` in the reduced ODE.
    pub fn nonlinear_coefficient(&self) -> f64 {
        0.5 * (self.model.alpha + self.model.beta)
    }

    /// `Phi = a0 + a1 R + a2 R^2`.
    pub fn phi(&self, zeta: f64) -> Phi {
        let [_, a0, a1, a2] = self.coefficients;
        match self.ratio.eval(zeta) {
            Phi::Value(r) => Phi::Value(a0 + r * (a1 + r * a2)),
            Phi::Pole => Phi::Pole,
        }
    }

    /// `u(zeta) = integral_0^zeta Phi`, adaptive Simpson at `abs_tol = 1e-9`.
    pub fn u(&self, zeta: f64) -> Result<f64, SolutionError> {
        self.u_with(zeta, SimpsonOptions::default())
    }

    pub fn u_with(&self, zeta: f64, opts: SimpsonOptions) -> Result<f64, SolutionError> {
        let (lo, hi) = if zeta < 0.0 { (zeta, 0.0) } else { (0.0, zeta) };
        if let Some(&at) = self.ratio.poles_in(lo, hi).first() {
            return Err(SolutionError::PoleOnPath { at });
        }
        adaptive_simpson(|z| self.phi(z).value().unwrap_or(f64::NAN), 0.0, zeta, opts)
            .map(|r| r.value)
            .map_err(|e| SolutionError::PoleOnPath { at: e.at })
    }

    /// `v(x, t) = u(x - omega t)`.
    pub fn v(&self, x: f64, t: f64) -> Result<f64, SolutionError> {
        self.u(self.frame.zeta(x, 0.0, t))
    }

    /// Pole-free interval around `zeta = 0` clipped to `[lo, hi]`.
    pub fn pole_free_span(&self, lo: f64, hi: f64) -> (f64, f64) {
        let poles = self.ratio.poles_in(lo.min(0.0), hi.max(0.0));
        let left = poles.iter().copied().filter(|&p| p < 0.0).fold(lo, f64::max);
        let right = poles.iter().copied().filter(|&p| p >= 0.0).fold(hi, f64::min);
        (left, right)
    }
}

/// Integral of `Phi` over `[a, b]` with `opts.abs_tol` scaled by the largest
/// `|Phi|` among the endpoints and midpoint (at least 1).
fn integrate_scaled(
    wave: &TravelingWave,
    a: f64,
    b: f64,
    opts: SimpsonOptions,
) -> Result<f64, crate::quadrature::NonFiniteIntegrand> {
    let f = |z: f64| wave.phi(z).value().unwrap_or(f64::NAN);
    let scale = [a, 0.5 * (a + b), b]
        .iter()
        .map(|&z| f(z).abs())
        .fold(1.0f64, f64::max);
    let opts = SimpsonOptions { abs_tol: opts.abs_tol * scale, ..opts };
    adaptive_simpson(f, a, b, opts).map(|r| r.value)
}

/// Tabulated antiderivative of `Phi` with nodes at `k * cell` (so `u(0) = 0`
/// exactly), giving accurate `u` at many points with little work.
#[derive(Clone, Debug)]
pub struct PrimitiveTable {
    wave: TravelingWave,
    cell: f64,
    first: i64,
    values: Vec<f64>,
    lo: f64,
    hi: f64,
    opts: SimpsonOptions,
}

impl PrimitiveTable {
    /// Covers the pole-free part of `[lo, hi]` (widened to reach zero) that
    /// contains zero. Nodes lie strictly inside that span.
    pub fn build(wave: &TravelingWave, lo: f64, hi: f64, cell: f64) -> Self {
        let opts = SimpsonOptions { abs_tol: 1e-15, max_depth: 30 };
        let (lo, hi) = wave.pole_free_span(lo.min(0.0), hi.max(0.0));
        let mut first = (lo / cell).ceil() as i64;
        if first as f64 * cell <= lo {
            first += 1;
        }
        let mut last = (hi / cell).floor() as i64;
        if last as f64 * cell >= hi {
            last -= 1;
        }
        let first = first.min(0);
        let last = last.max(0);
        let n = (last - first + 1) as usize;
        let mut values = vec![f64::NAN; n];
        let zero = (-first) as usize;
        values[zero] = 0.0;
        let piece = |k: i64| {
            let a = k as f64 * cell;
            integrate_scaled(wave, a, a + cell, opts).unwrap_or(f64::NAN)
        };
        for i in zero + 1..n {
            let k = first + i as i64 - 1;
            values[i] = values[i - 1] + piece(k);
        }
        for i in (0..zero).rev() {
            let k = first + i as i64;
            values[i] = values[i + 1] - piece(k);
        }
        PrimitiveTable {
            wave: wave.clone(),
            cell,
            first,
            values,
            lo,
            hi,
            opts,
        }
    }

    pub fn span(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn u(&self, zeta: f64) -> Result<f64, SolutionError> {
        if !(self.lo < zeta && zeta < self.hi) {
            let at = if zeta <= self.lo { self.lo } else { self.hi };
            return Err(SolutionError::PoleOnPath { at });
        }
        let last = self.first + self.values.len() as i64 - 1;
        let k = ((zeta / self.cell).round() as i64).clamp(self.first, last);
        let base = self.values[(k - self.first) as usize];
        let start = k as f64 * self.cell;
        let local = integrate_scaled(&self.wave, start, zeta, self.opts)
            .map_err(|e| SolutionError::PoleOnPath { at: e.at })?;
        let u = base + local;
        if u.is_finite() {
            Ok(u)
        } else {
            Err(SolutionError::PoleOnPath { at: zeta })
        }
    }
}
