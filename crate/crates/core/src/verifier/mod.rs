//! Finite-difference residuals of the reduced ODE and of the full PDE,
//! with pole masking.

mod stencil;

use serde::Serialize;

use crate::solutions::{ModelParams, Phi, PrimitiveTable, TravelingWave};
pub use stencil::{central_d1, central_d2, central_d3};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifierError {
    #[error("every sample is masked by a pole")]
    AllMasked,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// Uniform space-time grid, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub nx: usize,
    pub nt: usize,
}

impl Grid2D {
    pub fn new(
        x_min: f64,
        x_max: f64,
        t_min: f64,
        t_max: f64,
        nx: usize,
        nt: usize,
    ) -> Result<Self, VerifierError> {
        if nx < 9 || nt < 9 {
            return Err(VerifierError::InvalidGrid(format!(
                "need at least 9 points per axis, got {nx}x{nt}"
            )));
        }
        if !(x_max > x_min) || !(t_max > t_min) {
            return Err(VerifierError::InvalidGrid("empty or reversed range".into()));
        }
        Ok(Grid2D { x_min, x_max, t_min, t_max, nx, nt })
    }

    /// 201 x 201 on `[-5, 5]^2`.
    pub fn default_residual() -> Self {
        Grid2D::new(-5.0, 5.0, -5.0, 5.0, 201, 201).expect("valid")
    }

    /// Square grid of `n x n` points centred on `(xc, tc)` with spacing `h`.
    pub fn centred(xc: f64, tc: f64, h: f64, n: usize) -> Result<Self, VerifierError> {
        let half = 0.5 * h * (n - 1) as f64;
        Grid2D::new(xc - half, xc + half, tc - half, tc + half, n, n)
    }

    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn ht(&self) -> f64 {
        (self.t_max - self.t_min) / (self.nt - 1) as f64
    }

    pub fn x(&self, i: isize) -> f64 {
        self.x_min + i as f64 * self.hx()
    }

    pub fn t(&self, j: isize) -> f64 {
        self.t_min + j as f64 * self.ht()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Layout {
    /// One residual per `zeta` sample.
    Line { zeta: Vec<f64> },
    /// Row-major over `t` then `x`: index `j * nx + i`.
    Grid(Grid2D),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    #[serde(skip)]
    pub layout: Layout,
    /// Residual per point; masked points hold 0.
    #[serde(skip)]
    pub residual: Vec<f64>,
    #[serde(skip)]
    pub pole_mask: Vec<bool>,
    pub points: usize,
    pub masked: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    /// Largest magnitude of any single term of the equation over unmasked points.
    pub relative_scale: f64,
}

impl ResidualReport {
    fn assemble(
        layout: Layout,
        entries: Vec<Option<(f64, f64)>>,
    ) -> Result<ResidualReport, VerifierError> {
        let mut residual = Vec::with_capacity(entries.len());
        let mut pole_mask = Vec::with_capacity(entries.len());
        let (mut max_abs, mut sum, mut scale, mut count) = (0.0f64, 0.0, 0.0f64, 0usize);
        for e in &entries {
            match *e {
                Some((r, s)) => {
                    residual.push(r);
                    pole_mask.push(false);
                    max_abs = max_abs.max(r.abs());
                    sum += r.abs();
                    scale = scale.max(s);
                    count += 1;
                }
                None => {
                    residual.push(0.0);
                    pole_mask.push(true);
                }
            }
        }
        if count == 0 {
            return Err(VerifierError::AllMasked);
        }
        Ok(ResidualReport {
            layout,
            points: entries.len(),
            masked: entries.len() - count,
            residual,
            pole_mask,
            max_abs,
            mean_abs: sum / count as f64,
            relative_scale: scale,
        })
    }

    pub fn masked_fraction(&self) -> f64 {
        self.masked as f64 / self.points as f64
    }

    /// `max_abs / relative_scale`; zero when the scale is zero.
    pub fn relative_max(&self) -> f64 {
        if self.relative_scale == 0.0 {
            if self.max_abs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.max_abs / self.relative_scale
        }
    }
}

/// Step used for `Phi''` in the reduced-ODE residual.
pub const ODE_STEP: f64 = 1e-3;

/// Coefficients of `Phi'' + nonlinear Phi^2 + linear Phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeCoefficients {
    pub nonlinear: f64,
    pub linear: f64,
}

impl OdeCoefficients {
    pub fn of(w: &TravelingWave) -> Self {
        OdeCoefficients {
            nonlinear: w.nonlinear_coefficient(),
            linear: w.eta(),
        }
    }
}

/// Residual of `Phi'' + k_nl Phi^2 + k_lin Phi` with a 5-point `Phi''`.
///
/// A sample is masked when any stencil value is a [`Phi::Pole`] or when
/// `pole_between(z - 2h, z + 2h)` reports a pole inside the stencil span.
pub fn ode_residual_of(
    phi: impl Fn(f64) -> Phi,
    pole_between: impl Fn(f64, f64) -> bool,
    coeffs: OdeCoefficients,
    zetas: &[f64],
    h: f64,
) -> Result<ResidualReport, VerifierError> {
    let entries = zetas
        .iter()
        .map(|&z| {
            if pole_between(z - 2.0 * h, z + 2.0 * h) {
                return None;
            }
            let mut f = [0.0; 5];
            for (k, slot) in f.iter_mut().enumerate() {
                *slot = phi(z + (k as f64 - 2.0) * h).value()?;
            }
            let d2 = central_d2(&f, h);
            let p = f[2];
            let terms = [d2, coeffs.nonlinear * p * p, coeffs.linear * p];
            let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
            Some((terms.iter().sum(), scale))
        })
        .collect();
    ResidualReport::assemble(Layout::Line { zeta: zetas.to_vec() }, entries)
}

pub fn ode_residual(w: &TravelingWave, zetas: &[f64]) -> Result<ResidualReport, VerifierError> {
    ode_residual_with_guard(w, zetas, 0.0)
}

/// As [`ode_residual`], additionally masking samples whose stencil comes
/// within `guard` of a pole.
pub fn ode_residual_with_guard(
    w: &TravelingWave,
    zetas: &[f64],
    guard: f64,
) -> Result<ResidualReport, VerifierError> {
    ode_residual_of(
        |z| w.phi(z),
        |lo, hi| !w.ratio().poles_in(lo - guard, hi + guard).is_empty(),
        OdeCoefficients::of(w),
        zetas,
        ODE_STEP,
    )
}

/// `n` evenly spaced samples on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Individual terms of the PDE at one point:
/// `[v_xxxt, alpha v_x v_xt, beta v_t v_xx, -gamma v_xx, -v_xt]`.
pub fn pde_terms(m: &ModelParams, d: &Derivatives) -> [f64; 5] {
    [
        d.v_xxxt,
        m.alpha * d.v_x * d.v_xt,
        m.beta * d.v_t * d.v_xx,
        -m.gamma * d.v_xx,
        -d.v_xt,
    ]
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Derivatives {
    pub v_x: f64,
    pub v_t: f64,
    pub v_xx: f64,
    pub v_xt: f64,
    pub v_xxxt: f64,
}

// Patch offsets: x in -3..=3, t in -2..=2.
const PX: usize = 7;
const PT: usize = 5;

/// Fourth-order central differences from a 7 x 5 patch `patch[ix][jt]`
/// centred at `[3][2]`.
fn derivatives(patch: &[[f64; PT]; PX], hx: f64, ht: f64) -> Derivatives {
    let row_x = |j: usize| -> [f64; 7] { std::array::from_fn(|i| patch[i][j]) };
    let mid = row_x(2);
    let col_t = |i: usize| -> [f64; 5] { patch[i] };
    let dx_at = |j: usize| central_d1(&row_x(j)[1..6], hx);
    let dxxx_at = |j: usize| central_d3(&row_x(j), hx);
    let t_samples = |f: &dyn Fn(usize) -> f64| -> [f64; 5] { std::array::from_fn(f) };
    Derivatives {
        v_x: central_d1(&mid[1..6], hx),
        v_xx: central_d2(&mid[1..6], hx),
        v_t: central_d1(&col_t(3), ht),
        v_xt: central_d1(&t_samples(&dx_at), ht),
        v_xxxt: central_d1(&t_samples(&dxxx_at), ht),
    }
}

/// PDE residual of an arbitrary field `v` on `grid` using the grid spacing
/// as the stencil step. `v` returns `None` at poles.
pub fn pde_residual_of(
    v: impl Fn(f64, f64) -> Option<f64>,
    model: &ModelParams,
    grid: &Grid2D,
) -> Result<ResidualReport, VerifierError> {
    let (hx, ht) = (grid.hx(), grid.ht());
    let ex = grid.nx + 6;
    let et = grid.nt + 4;
    // extended lattice: index (i + 3, j + 2) holds v(x_i, t_j)
    let mut lattice = vec![None; ex * et];
    for j in 0..et {
        let t = grid.t(j as isize - 2);
        for i in 0..ex {
            lattice[j * ex + i] = v(grid.x(i as isize - 3), t);
        }
    }
    let mut entries = Vec::with_capacity(grid.nx * grid.nt);
    for j in 0..grid.nt {
        for i in 0..grid.nx {
            let mut patch = [[0.0; PT]; PX];
            let mut ok = true;
            'fill: for (a, col) in patch.iter_mut().enumerate() {
                for (b, slot) in col.iter_mut().enumerate() {
                    match lattice[(j + b) * ex + i + a] {
                        Some(val) => *slot = val,
                        None => {
                            ok = false;
                            break 'fill;
                        }
                    }
                }
            }
            entries.push(ok.then(|| {
                let terms = pde_terms(model, &derivatives(&patch, hx, ht));
                let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
                (terms.iter().sum::<f64>(), scale)
            }));
        }
    }
    ResidualReport::assemble(Layout::Grid(*grid), entries)
}

/// Antiderivative table wide enough for every stencil point of `grid`.
pub fn primitive_for_grid(w: &TravelingWave, grid: &Grid2D) -> PrimitiveTable {
    let om = w.omega();
    let xs = [grid.x(-3), grid.x(grid.nx as isize + 2)];
    let ts = [grid.t(-2), grid.t(grid.nt as isize + 1)];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in xs {
        for t in ts {
            let z = w.frame.zeta(x, 0.0, t);
            lo = lo.min(z);
            hi = hi.max(z);
        }
    }
    let cell = grid.hx().min(grid.ht() * om.abs().max(1e-12)).min(0.05);
    PrimitiveTable::build(w, lo - 1.0, hi + 1.0, cell)
}

/// PDE residual of `v(x, t) = u(x - omega t)` for a closed-form wave.
pub fn pde_residual(w: &TravelingWave, grid: &Grid2D) -> Result<ResidualReport, VerifierError> {
    let table = primitive_for_grid(w, grid);
    let frame = w.frame;
    pde_residual_of(|x, t| table.u(frame.zeta(x, 0.0, t)).ok(), &w.model, grid)
}

/// Least-squares slope of `ln r` against `ln h`.
pub fn log_log_slope(hs: &[f64], rs: &[f64]) -> f64 {
    let n = hs.len() as f64;
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Observed convergence order of the PDE residual for an exact solution:
/// max residual over small grids centred at `centres`, for each step in `hs`.
pub fn pde_convergence_order(
    w: &TravelingWave,
    centres: &[(f64, f64)],
    hs: &[f64],
) -> Result<(Vec<f64>, f64), VerifierError> {
    let mut maxima = Vec::with_capacity(hs.len());
    for &h in hs {
        let mut m = 0.0f64;
        for &(xc, tc) in centres {
            let g = Grid2D::centred(xc, tc, h, 9)?;
            m = m.max(pde_residual(w, &g)?.max_abs);
        }
        maxima.push(m);
    }
    let slope = log_log_slope(hs, &maxima);
    Ok((maxima, slope))
}

/// The PDE written in the traveling coordinate:
/// `-omega u'''' - (alpha + beta) omega u' u'' + (omega - gamma) u''`
/// with `u' = Phi`, evaluated by central differences of `Phi` with step `h`.
pub fn traveling_form_residual(
    phi: impl Fn(f64) -> Phi,
    model: &ModelParams,
    omega: f64,
    zeta: f64,
    h: f64,
) -> Option<f64> {
    let mut f = [0.0; 7];
    for (k, slot) in f.iter_mut().enumerate() {
        *slot = phi(zeta + (k as f64 - 3.0) * h).value()?;
    }
    let u1 = f[3];
    let u2 = central_d1(&f[1..6], h);
    let u4 = central_d3(&f, h);
    Some(-omega * u4 - (model.alpha + model.beta) * omega * u1 * u2 + (omega - model.gamma) * u2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_poles(_: f64, _: f64) -> bool {
        false
    }

    #[test]
    fn grid_validation() {
        assert!(Grid2D::new(0.0, 1.0, 0.0, 1.0, 8, 9).is_err());
        assert!(Grid2D::new(1.0, 1.0, 0.0, 1.0, 9, 9).is_err());
        let g = Grid2D::default_residual();
        assert!((g.hx() - 0.05).abs() < 1e-15);
        assert_eq!(g.x(200), 5.0);
    }

    #[test]
    fn zero_and_constant_phi() {
        let zs = linspace(-1.0, 1.0, 11);
        // alpha = beta = 1, eta = 0
        let c = OdeCoefficients { nonlinear: 0.5 * (1.0 + 1.0), linear: 0.0 };
        let r = ode_residual_of(|_| Phi::Value(0.0), no_poles, c, &zs, ODE_STEP).unwrap();
        assert_eq!(r.max_abs, 0.0);
        let r = ode_residual_of(|_| Phi::Value(1.0), no_poles, c, &zs, ODE_STEP).unwrap();
        assert!(r.residual.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn all_masked_is_an_error() {
        let c = OdeCoefficients { nonlinear: 1.0, linear: 0.0 };
        assert_eq!(
            ode_residual_of(|_| Phi::Pole, no_poles, c, &[0.0, 1.0], ODE_STEP),
            Err(VerifierError::AllMasked)
        );
    }

    #[test]
    fn masking_only_hits_pole_neighbourhood() {
        let c = OdeCoefficients { nonlinear: 1.0, linear: 0.0 };
        let phi = |z: f64| if z.abs() < 1e-9 { Phi::Pole } else { Phi::Value(1.0) };
        let zs = linspace(-0.01, 0.01, 21);
        let r = ode_residual_of(phi, no_poles, c, &zs, ODE_STEP).unwrap();
        // samples at -0.002..=0.002 have a stencil point on zero
        assert_eq!(r.masked, 5);
        assert!(r.pole_mask[10]);
        assert!(!r.pole_mask[0]);
    }

    #[test]
    fn pde_constant_and_quadratic() {
        let g = Grid2D::new(-1.0, 1.0, -1.0, 1.0, 11, 11).unwrap();
        let m = ModelParams::new(1.0, 2.0, 3.0).unwrap();
        let r = pde_residual_of(|_, _| Some(4.2), &m, &g).unwrap();
        assert_eq!(r.max_abs, 0.0);
        let r = pde_residual_of(|x, _| Some(x * x), &m, &g).unwrap();
        for v in &r.residual {
            assert!((v + 6.0).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn slope_of_power_law() {
        let hs = [0.4, 0.2, 0.1];
        let rs: Vec<f64> = hs.iter().map(|h: &f64| 3.0 * h.powi(4)).collect();
        assert!((log_log_slope(&hs, &rs) - 4.0).abs() < 1e-12);
    }
}
