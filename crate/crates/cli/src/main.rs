//! `parahoric`: batch front end for the affine Weyl group, sequence, point
//! count, `SL_2` and bitorsor computations.
//!
//! Every subcommand writes one report (JSON by default, CSV with
//! `--format csv`) and exits 0 exactly when all embedded checks pass, 1 when
//! a check fails and 2 on invalid input.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{Report, Sl2Options};
use config::{Format, JobArgs, JobConfig};

#[derive(Debug, Parser)]
#[command(name = "parahoric", version, about = "Affine Weyl group pieces and their finite-field checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ball of radius --length with per-length counts.
    Ball(JobArgs),
    /// Sequences for (J, delta) up to --length, with piece descriptors.
    Sequences(JobArgs),
    /// Check the sequence/limit bijection on the length-bounded truncation.
    Bijection(JobArgs),
    /// Point-count polynomials per piece, evaluated at each --q.
    Pointcount(JobArgs),
    /// SL2 lattice census, piece matching and optional orbit counts.
    Sl2 {
        #[command(flatten)]
        job: JobArgs,
        /// Also count orbits and compare with twisted classes.
        #[arg(long)]
        orbits: bool,
        /// Largest eps-precision tried by the orbit count.
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Bitorsor suite on the built-in examples and an optional group file.
    Bitorsor {
        #[command(flatten)]
        job: JobArgs,
        /// JSON file with extra bitorsors.
        #[arg(long)]
        group_file: Option<PathBuf>,
        /// Skip the built-in examples.
        #[arg(long)]
        no_builtins: bool,
    },
}

fn render(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&report.json())?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.header)?;
            for row in &report.table.rows {
                w.write_record(row)?;
            }
            Ok(w.into_inner().context("flushing csv")?)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let (job, report) = match &cli.command {
        Command::Ball(a) => {
            let c = JobConfig::load(a)?;
            let r = commands::ball(&c)?;
            (c, r)
        }
        Command::Sequences(a) => {
            let c = JobConfig::load(a)?;
            let r = commands::sequences(&c)?;
            (c, r)
        }
        Command::Bijection(a) => {
            let c = JobConfig::load(a)?;
            let r = commands::bijection(&c)?;
            (c, r)
        }
        Command::Pointcount(a) => {
            let c = JobConfig::load(a)?;
            let r = commands::pointcount(&c)?;
            (c, r)
        }
        Command::Sl2 { job, orbits, precision } => {
            let c = JobConfig::load(job)?;
            let opts = Sl2Options {
                orbits: *orbits || c.file.orbits.unwrap_or(false),
                precision: precision.or(c.file.precision).unwrap_or(4),
            };
            let r = commands::sl2(&c, &opts)?;
            (c, r)
        }
        Command::Bitorsor { job, group_file, no_builtins } => {
            let c = JobConfig::load(job)?;
            let file = group_file.clone().or_else(|| c.file.group_file.clone());
            let r = commands::bitorsor(file.as_deref(), !no_builtins)?;
            (c, r)
        }
    };
    let bytes = render(&report, job.format)?;
    match &job.out {
        Some(p) => std::fs::write(p, &bytes).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("parahoric: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("parahoric: {e:#}");
            ExitCode::from(2)
        }
    }
}
