//! `gorlab`: command-line access to the semigroup, presentation, grading,
//! series, Lie and monomial computations, plus the `verify-all` pipeline.

mod checks;
mod commands;
mod config;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::{Format, PipelineConfig};

#[derive(Parser, Debug)]
#[command(name = "gorlab", version, about = "Semigroup rings, Poincaré series and Lie superalgebra computations")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Degree cap for the Lie engine
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// key=value settings file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Numerical semigroups
    #[command(subcommand)]
    Semigroup(commands::SemigroupCmd),
    /// Binomial presentations of semigroup rings
    #[command(subcommand)]
    Presentation(commands::PresentationCmd),
    /// Positive gradings making a relation list homogeneous
    Grade(commands::GradeArgs),
    /// Power series and the Poincaré series assembly
    #[command(subcommand)]
    Series(commands::SeriesCmd),
    /// Finitely presented Lie superalgebras
    #[command(subcommand)]
    Lie(commands::LieCmd),
    /// Monomial algebras
    #[command(subcommand)]
    Monomial(commands::MonomialCmd),
    /// Run every check and report PASS/FAIL per check
    VerifyAll {
        /// Run independent checks on several threads
        #[arg(long)]
        parallel: bool,
        /// Lie computations over the prime field 2^31 - 1
        #[arg(long)]
        prime: bool,
    },
}

fn settings(cli: &Cli) -> Result<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    let env: BTreeMap<String, String> = std::env::vars().filter(|(k, _)| k.starts_with("GORLAB_")).collect();
    cfg.apply_env(&env)?;
    if cli.json {
        cfg.format = Format::Json;
    }
    if let Some(d) = cli.max_degree {
        cfg.lie_max_degree = d;
    }
    if let Command::VerifyAll { parallel, prime } = cli.command {
        cfg.parallel |= parallel;
        cfg.prime_field |= prime;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = settings(&cli)?;
    let out = match cli.command {
        Command::Semigroup(c) => commands::semigroup(c)?,
        Command::Presentation(c) => commands::presentation(c)?,
        Command::Grade(a) => commands::grade(a)?,
        Command::Series(c) => commands::series(c, &cfg)?,
        Command::Lie(c) => commands::lie(c, &cfg)?,
        Command::Monomial(c) => commands::monomial(c)?,
        Command::VerifyAll { .. } => {
            let report = checks::verify_all(&cfg);
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Text => print!("{}", report.text()),
            }
            return Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    };
    match cfg.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json)?),
        Format::Text => print!("{}", out.text),
    }
    Ok(if out.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
