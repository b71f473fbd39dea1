//! CSV plot data: a `t = 0` slice over `zeta` and an `(x, t)` surface.
//!
//! Numbers are written with 17 significant digits. `pole` is true when `Phi`
//! is singular at the sample or a pole lies within half a sample spacing of
//! it. `u` is left empty and `u_blocked` set when the integral from
//! `zeta = 0` would cross a pole.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use gswwe_core::solutions::{Phi, PrimitiveTable, TravelingWave};
use gswwe_core::verifier::linspace;

use crate::config::PlotConfig;

/// Antiderivative cell width used for plot tables.
const TABLE_CELL: f64 = 0.05;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

struct Sampler<'a> {
    wave: &'a TravelingWave,
    table: PrimitiveTable,
    poles: Vec<f64>,
}

impl<'a> Sampler<'a> {
    fn new(wave: &'a TravelingWave, lo: f64, hi: f64) -> Self {
        Sampler {
            wave,
            table: PrimitiveTable::build(wave, lo - 1.0, hi + 1.0, TABLE_CELL),
            poles: wave.ratio().poles_in(lo - 1.0, hi + 1.0),
        }
    }

    /// `[phi, u, pole, u_blocked]`.
    fn fields(&self, zeta: f64, half_step: f64) -> [String; 4] {
        let phi = self.wave.phi(zeta);
        let near = self.poles.iter().any(|p| (p - zeta).abs() <= half_step);
        let u = self.table.u(zeta).ok();
        [
            match phi {
                Phi::Value(v) => num(v),
                Phi::Pole => String::new(),
            },
            u.map(num).unwrap_or_default(),
            flag(phi.is_pole() || near).into(),
            flag(u.is_none()).into(),
        ]
    }
}

pub struct PlotSummary {
    pub slice: PathBuf,
    pub surface: PathBuf,
    pub slice_poles: usize,
    pub surface_poles: usize,
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<usize> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    let pole_col = header.iter().position(|h| *h == "pole").expect("pole column");
    let mut poles = 0;
    for r in rows {
        poles += usize::from(r[pole_col] == "true");
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(poles)
}

pub fn plotdata(wave: &TravelingWave, plot: &PlotConfig, dir: &Path) -> Result<PlotSummary> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;

    let (lo, hi) = plot.zeta;
    let zetas = linspace(lo, hi, plot.samples);
    let half = 0.5 * (hi - lo) / (plot.samples - 1) as f64;
    let sampler = Sampler::new(wave, lo, hi);
    let slice_rows: Vec<Vec<String>> = zetas
        .iter()
        .map(|&z| {
            let mut row = vec![num(z)];
            row.extend(sampler.fields(z, half));
            row
        })
        .collect();
    let slice = dir.join(format!("{}_slice.csv", plot.name));
    let slice_poles = write_csv(&slice, &["zeta", "phi", "u", "pole", "u_blocked"], &slice_rows)?;

    let g = &plot.surface;
    let frame = wave.frame;
    let corners = [
        frame.zeta(g.x_min, 0.0, g.t_min),
        frame.zeta(g.x_min, 0.0, g.t_max),
        frame.zeta(g.x_max, 0.0, g.t_min),
        frame.zeta(g.x_max, 0.0, g.t_max),
    ];
    let zlo = corners.iter().copied().fold(f64::INFINITY, f64::min);
    let zhi = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let half = 0.5 * g.hx().max(frame.omega.abs() * g.ht());
    let sampler = Sampler::new(wave, zlo, zhi);
    let mut surface_rows = Vec::with_capacity(g.nx * g.nt);
    for j in 0..g.nt as isize {
        let t = g.t(j);
        for i in 0..g.nx as isize {
            let x = g.x(i);
            let z = frame.zeta(x, 0.0, t);
            let mut row = vec![num(x), num(t), num(z)];
            row.extend(sampler.fields(z, half));
            surface_rows.push(row);
        }
    }
    let surface = dir.join(format!("{}_surface.csv", plot.name));
    let surface_poles = write_csv(
        &surface,
        &["x", "t", "zeta", "phi", "u", "pole", "u_blocked"],
        &surface_rows,
    )?;
    Ok(PlotSummary { slice, surface, slice_poles, surface_poles })
}

pub fn report(s: &PlotSummary, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "wrote {} ({} pole rows)", s.slice.display(), s.slice_poles)?;
    writeln!(out, "wrote {} ({} pole rows)", s.surface.display(), s.surface_poles)?;
    Ok(())
}
