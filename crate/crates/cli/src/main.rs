use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logeuler::config::Scenario;
use logeuler::experiments::inflate::{cmd_inflate, InflateConfig};
use logeuler::experiments::kernels::{certify, kernel_table, read_points};
use logeuler::experiments::lld::{cmd_lld, LldConfig};
use logeuler::experiments::patch::{cmd_patch, PatchConfig};
use logeuler::experiments::report::summarize;
use logeuler::experiments::sweep::{cmd_sweep, SweepConfig};
use logeuler::output::{read_record_csv, write_json, write_text};
use logeuler::{execute_scenario, CliError};
use logeuler_core::kernels::QuadratureBudget;
use logeuler_core::{Gamma, RegKind};
use serde::de::DeserializeOwned;

#[derive(Parser)]
#[command(name = "logeuler", version, about = "Log-regularized 2D Euler experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single scenario.
    Simulate(Io),
    /// Kernel evaluation and certification.
    Kernels {
        #[command(subcommand)]
        action: KernelAction,
    },
    /// Deformation growth over a list of A.
    Lld(Io),
    /// Ḣ¹ inflation study.
    Inflate(Io),
    /// Blob interaction decay.
    Patch(Io),
    /// Cartesian sweep over a base scenario.
    Sweep(Io),
    /// Summarize a record CSV.
    Report {
        #[arg(long)]
        input: PathBuf,
        /// Value of the functional G for the Gronwall table.
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    LogLaplacian,
    LogGradient,
}

impl From<KindArg> for RegKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::LogLaplacian => RegKind::LogLaplacian,
            KindArg::LogGradient => RegKind::LogGradient,
        }
    }
}

#[derive(Subcommand)]
enum KernelAction {
    /// Strain kernel at the points of a file, as CSV.
    Table {
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lower-bound certificate and L¹ mass.
    Certify {
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn base_dir(config: &Path) -> PathBuf {
    config.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn out_dir(io: &Io, configured: Option<&PathBuf>, name: &str) -> PathBuf {
    io.out
        .clone()
        .or_else(|| configured.cloned())
        .unwrap_or_else(|| PathBuf::from("out").join(name))
}

fn emit<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(io) => {
            let s = Scenario::load(&io.config)?;
            let out = out_dir(&io, s.output.as_ref(), &s.name);
            let record = execute_scenario(&s, &base_dir(&io.config), &out)?;
            eprintln!("{}: {} rows written to {}", s.name, record.rows.len(), out.display());
        }
        Command::Kernels { action } => {
            let budget = QuadratureBudget::default();
            match action {
                KernelAction::Table {
                    gamma,
                    kind,
                    points,
                    out,
                } => {
                    let pts = read_points(&points)?;
                    let csv = kernel_table(Gamma::new(gamma)?, kind.into(), &pts, &budget)?;
                    write_text(&out, &csv)?;
                }
                KernelAction::Certify { gamma, kind, out } => {
                    let summary = certify(Gamma::new(gamma)?, kind.into(), &budget)?;
                    emit(&summary, out.as_deref())?;
                }
            }
        }
        Command::Lld(io) => {
            let cfg: LldConfig = load(&io.config)?;
            let out = out_dir(&io, cfg.output.as_ref(), &cfg.name);
            let (report, _) = cmd_lld(&cfg, &base_dir(&io.config), Some(&out))?;
            emit(&report, None)?;
        }
        Command::Inflate(io) => {
            let cfg: InflateConfig = load(&io.config)?;
            let out = out_dir(&io, cfg.output.as_ref(), &cfg.name);
            let report = cmd_inflate(&cfg, &base_dir(&io.config), Some(&out))?;
            for s in &report.settings {
                eprintln!(
                    "T = {}: t0 = {}, L = {:.6}, ratio = {:.9}",
                    s.horizon, s.peak.t, s.peak.norm, s.report.ratio
                );
            }
        }
        Command::Patch(io) => {
            let cfg: PatchConfig = load(&io.config)?;
            let out = out_dir(&io, cfg.output.as_ref(), &cfg.name);
            let report = cmd_patch(&cfg, &base_dir(&io.config), Some(&out))?;
            eprintln!(
                "L2 exponent {:.4}, H2 exponent {:.4}",
                report.l2_fit.exponent, report.h2_fit.exponent
            );
        }
        Command::Sweep(io) => {
            let cfg: SweepConfig = load(&io.config)?;
            let name = cfg
                .base
                .get("name")
                .and_then(|v| v.as_str())
                .unwrap_or("sweep")
                .to_string();
            let out = out_dir(&io, None, &name);
            let index = cmd_sweep(&cfg, &base_dir(&io.config), &out)?;
            eprintln!("{} points, {} failed", index.points.len(), index.failures);
        }
        Command::Report { input, g, out } => {
            let record = read_record_csv(&input)?;
            emit(&summarize(&record, g)?, out.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
