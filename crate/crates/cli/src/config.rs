//! Run configuration: TOML file, figure presets and command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gswwe_core::solutions::{ExpansionParams, ModelParams, TravelingWave};
use gswwe_core::verifier::Grid2D;
use gswwe_core::SetId;
use serde::Deserialize;

/// A configuration problem; the CLI exits with status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
        }
    }

    /// `(set, B, C, k1, k2)`; all presets use `alpha = beta = gamma = 1`, `A = 0`.
    fn preset(self) -> (SetId, f64, f64, f64, f64) {
        match self {
            Figure::Fig1 => (SetId::Set1, 1.0, 0.1, 1.0, 1.0),
            Figure::Fig2 => (SetId::Set1, 1.0, 1.1, 1.0, 1.0),
            Figure::Fig3 => (SetId::Set2, 1.0, 0.1, 1.0, 1.0),
            Figure::Fig4 => (SetId::Set2, 1.0, 1.1, 1.5, 1.0),
        }
    }
}

impl FromStr for Figure {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            _ => Err(invalid(format!("unknown figure `{s}` (expected fig1..fig4)"))),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    model: RawModel,
    #[serde(default)]
    expansion: RawExpansion,
    #[serde(default)]
    solution: RawSolution,
    #[serde(default)]
    grid: RawGrid,
    #[serde(default)]
    plot: RawPlot,
    #[serde(default)]
    output: RawOutput,
    #[serde(default)]
    verify: RawVerify,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawModel {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl Default for RawModel {
    fn default() -> Self {
        RawModel { alpha: 1.0, beta: 1.0, gamma: 1.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawExpansion {
    #[serde(rename = "A", alias = "a")]
    a: f64,
    #[serde(rename = "B", alias = "b")]
    b: f64,
    #[serde(rename = "C", alias = "c")]
    c: f64,
    k1: f64,
    k2: f64,
}

impl Default for RawExpansion {
    fn default() -> Self {
        let (_, b, c, k1, k2) = Figure::Fig1.preset();
        RawExpansion { a: 0.0, b, c, k1, k2 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawSolution {
    set: SetId,
}

impl Default for RawSolution {
    fn default() -> Self {
        RawSolution { set: SetId::Set1 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawGrid {
    x_min: f64,
    x_max: f64,
    t_min: f64,
    t_max: f64,
    nx: usize,
    nt: usize,
}

impl Default for RawGrid {
    fn default() -> Self {
        let g = Grid2D::default_residual();
        RawGrid { x_min: g.x_min, x_max: g.x_max, t_min: g.t_min, t_max: g.t_max, nx: g.nx, nt: g.nt }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawPlot {
    name: String,
    zeta_min: f64,
    zeta_max: f64,
    samples: usize,
    x_min: f64,
    x_max: f64,
    t_min: f64,
    t_max: f64,
    surface_samples: usize,
}

impl Default for RawPlot {
    fn default() -> Self {
        RawPlot {
            name: "custom".into(),
            zeta_min: -10.0,
            zeta_max: 10.0,
            samples: 401,
            x_min: -10.0,
            x_max: 10.0,
            t_min: -10.0,
            t_max: 10.0,
            surface_samples: 101,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    system_file: Option<PathBuf>,
    seed: Option<u64>,
}

/// Settings of the `plotdata` command.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotConfig {
    pub name: String,
    pub zeta: (f64, f64),
    pub samples: usize,
    pub surface: Grid2D,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: ModelParams,
    pub expansion: ExpansionParams,
    pub set_id: SetId,
    pub grid: Grid2D,
    pub plot: PlotConfig,
    pub out_dir: Option<PathBuf>,
    pub system_file: Option<PathBuf>,
    pub oracle_seed: Option<u64>,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub figure: Option<Figure>,
    pub out: Option<PathBuf>,
    pub grid: Option<(usize, usize)>,
}

/// Parses `NX,NT`.
pub fn parse_grid_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected NX,NT")?;
    let nx = a.trim().parse().map_err(|e| format!("NX: {e}"))?;
    let nt = b.trim().parse().map_err(|e| format!("NT: {e}"))?;
    Ok((nx, nt))
}

impl RunConfig {
    pub fn load(path: Option<&Path>, ov: &Overrides) -> Result<Self, ConfigError> {
        let raw = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| invalid(format!("cannot read {}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| invalid(format!("{}: {e}", p.display())))?
            }
            None => RawConfig::default(),
        };
        let base = path.and_then(Path::parent).unwrap_or(Path::new(""));
        RunConfig::from_raw(raw, base, ov)
    }

    #[cfg(test)]
    fn from_toml(text: &str, ov: &Overrides) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        RunConfig::from_raw(raw, Path::new(""), ov)
    }

    fn from_raw(mut raw: RawConfig, base: &Path, ov: &Overrides) -> Result<Self, ConfigError> {
        if let Some(fig) = ov.figure {
            let (set, b, c, k1, k2) = fig.preset();
            raw.model = RawModel::default();
            raw.expansion = RawExpansion { a: 0.0, b, c, k1, k2 };
            raw.solution.set = set;
            raw.plot.name = fig.name().into();
        }
        if let Some((nx, nt)) = ov.grid {
            raw.grid.nx = nx;
            raw.grid.nt = nt;
        }
        let m = &raw.model;
        let model = ModelParams::new(m.alpha, m.beta, m.gamma).map_err(|e| invalid(format!("[model] {e}")))?;
        let e = &raw.expansion;
        let expansion =
            ExpansionParams::new(e.a, e.b, e.c, e.k1, e.k2).map_err(|e| invalid(format!("[expansion] {e}")))?;
        // Surfaces the remaining invariants (nonzero discriminant, finite speed).
        TravelingWave::new(raw.solution.set, model, expansion).map_err(|e| invalid(format!("[expansion] {e}")))?;
        let g = &raw.grid;
        let grid = Grid2D::new(g.x_min, g.x_max, g.t_min, g.t_max, g.nx, g.nt)
            .map_err(|e| invalid(format!("[grid] {e}")))?;
        let p = &raw.plot;
        if p.name.is_empty() || p.name.contains(['/', '\\']) {
            return Err(invalid(format!("[plot] name `{}` is not a plain file stem", p.name)));
        }
        if !(p.zeta_max > p.zeta_min) || p.samples < 2 {
            return Err(invalid("[plot] need zeta_min < zeta_max and at least 2 samples"));
        }
        let (sx, st) = ov.grid.unwrap_or((p.surface_samples, p.surface_samples));
        let surface = Grid2D::new(p.x_min, p.x_max, p.t_min, p.t_max, sx, st)
            .map_err(|e| invalid(format!("[plot] surface: {e}")))?;
        let plot = PlotConfig {
            name: p.name.clone(),
            zeta: (p.zeta_min, p.zeta_max),
            samples: p.samples,
            surface,
        };
        let out_dir = ov.out.clone().or(raw.output.dir);
        let system_file = raw.verify.system_file.map(|f| if f.is_absolute() { f } else { base.join(f) });
        Ok(RunConfig {
            model,
            expansion,
            set_id: raw.solution.set,
            grid,
            plot,
            out_dir,
            system_file,
            oracle_seed: raw.verify.seed,
        })
    }

    pub fn wave(&self) -> TravelingWave {
        TravelingWave::new(self.set_id, self.model, self.expansion).expect("validated at load")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_fig1() {
        let a = RunConfig::from_toml("", &Overrides::default()).unwrap();
        let b = RunConfig::from_toml("", &Overrides { figure: Some(Figure::Fig1), ..Default::default() }).unwrap();
        assert_eq!(a.expansion, b.expansion);
        assert_eq!(a.set_id, SetId::Set1);
        assert_eq!(a.plot.name, "custom");
        assert_eq!(b.plot.name, "fig1");
        assert_eq!(a.plot.samples, 401);
        assert_eq!(a.plot.surface.nx, 101);
    }

    #[test]
    fn invariants_are_named() {
        let cases = [
            ("[model]\nalpha = 0.0\nbeta = 1.0\ngamma = 1.0", "alpha"),
            ("[model]\nalpha = 1.0\nbeta = -1.0\ngamma = 1.0", "alpha + beta"),
            ("[expansion]\nB = 2.0\nC = 1.0\nk1 = 1.0\nk2 = 1.0", "discriminant"),
            ("[expansion]\nB = 1.0\nC = 0.1\nk1 = 0.0\nk2 = 0.0", "k1 and k2"),
            ("[grid]\nx_min = 0.0\nx_max = 1.0\nt_min = 0.0\nt_max = 1.0\nnx = 3\nnt = 9", "9 points"),
            ("[solution]\nset = \"SET3\"", "SET3"),
            ("[bogus]\nx = 1", "bogus"),
        ];
        for (text, needle) in cases {
            let err = RunConfig::from_toml(text, &Overrides::default()).unwrap_err();
            assert!(err.to_string().contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn overrides_win() {
        let text = "[expansion]\nB = 3.0\nC = 1.0\nk1 = 1.0\nk2 = 0.5\n[output]\ndir = \"a\"";
        let ov = Overrides { figure: Some(Figure::Fig4), out: Some("b".into()), grid: Some((21, 11)) };
        let c = RunConfig::from_toml(text, &ov).unwrap();
        assert_eq!((c.expansion.k1, c.expansion.c), (1.5, 1.1));
        assert_eq!(c.set_id, SetId::Set2);
        assert_eq!(c.out_dir, Some(PathBuf::from("b")));
        assert_eq!((c.grid.nx, c.grid.nt), (21, 11));
    }

    #[test]
    fn grid_dims() {
        assert_eq!(parse_grid_dims("201,101"), Ok((201, 101)));
        assert!(parse_grid_dims("201").is_err());
        assert!(parse_grid_dims("a,1").is_err());
    }
}
