//! `gswwe`: derive, verify and sample traveling-wave solutions of the
//! generalized shallow water wave equation.
//!
//! Exit status: 0 on success, 1 when a verification or residual check fails,
//! 2 on configuration or usage errors.

mod commands;
mod config;
mod plot;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Status;
use config::{parse_grid_dims, ConfigError, Figure, Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "gswwe", version, about)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Figure preset (fig1..fig4) replacing model, expansion and set.
    #[arg(long, global = true, value_name = "NAME")]
    figure: Option<Figure>,
    /// Output directory for data files and JSON reports.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Grid size: residual grid for `residual`, surface grid for `plotdata`.
    #[arg(long, global = true, value_name = "NX,NT", value_parser = parse_grid_dims)]
    grid: Option<(usize, usize)>,
    /// Relative residual tolerance for `residual`.
    #[arg(long, global = true, value_name = "T", default_value_t = 1e-3)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the homogeneous-balance degree N.
    Balance,
    /// Print the canonical coefficient system.
    System,
    /// Verify both solution sets exactly and corroborate them numerically.
    Verify,
    /// Evaluate Phi, u and v at one space-time point.
    Eval {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// Finite-difference residuals of the reduced ODE and of the PDE.
    Residual,
    /// Write slice and surface CSV files for a figure preset or the configured wave.
    Plotdata {
        /// fig1..fig4; omitted means `--figure` or the configured (custom) wave.
        #[arg(value_name = "FIGURE")]
        preset: Option<Figure>,
    },
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let figure = match &cli.command {
        Command::Plotdata { preset: Some(f) } => Some(*f),
        _ => cli.figure,
    };
    let ov = Overrides { figure, out: cli.out.clone(), grid: cli.grid };
    let needs_config = !matches!(cli.command, Command::Balance | Command::System);
    let cfg = if needs_config {
        Some(RunConfig::load(cli.config.as_deref(), &ov)?)
    } else {
        None
    };
    if !(cli.tolerance > 0.0) {
        return Err(ConfigError(format!("tolerance must be positive, got {}", cli.tolerance)).into());
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = match (&cli.command, cfg) {
        (Command::Balance, _) => commands::balance(&mut out)?,
        (Command::System, _) => commands::system(&mut out)?,
        (Command::Verify, Some(cfg)) => commands::verify(&cfg, &mut out)?,
        (Command::Eval { x, t }, Some(cfg)) => commands::eval(&cfg, *x, *t, &mut out)?,
        (Command::Residual, Some(cfg)) => commands::residual(&cfg, cli.tolerance, &mut out)?,
        (Command::Plotdata { .. }, Some(cfg)) => {
            let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            let summary = plot::plotdata(&cfg.wave(), &cfg.plot, &dir)?;
            plot::report(&summary, &mut out)?;
            Status::Pass
        }
        (_, None) => unreachable!("configuration loaded for every other command"),
    };
    out.flush()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
