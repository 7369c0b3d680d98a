//! zetacorr: Drinfeld modules with level structure and zeta-correspondence
//! membership from the command line.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 config error,
//! 3 precondition error.

mod commands;
mod config;
mod error;
mod examples;
mod report;
mod transform;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_a_polys, ConfigFile, Format, Session, SessionConfig};
use error::CliError;
use report::Report;

#[derive(Parser)]
#[command(name = "zetacorr", version, about = "Drinfeld modules, level structures and zeta-correspondence checks")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

/// Each flag mirrors a config-file key and overrides it.
#[derive(Args)]
struct Opts {
    /// JSON config file
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Size of the constant field F_q
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Characteristic (with --m, instead of --q)
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Degree of F_q over F_p
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Ambient degree over F_q, or "auto" for the smallest sufficient one
    #[arg(long = "ambient", alias = "M", global = true, value_name = "M|auto")]
    ambient: Option<String>,
    /// Rank of the Drinfeld module
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Divisor D as "a1:r1,a2:r2,..."
    #[arg(long, global = true, value_name = "LIST")]
    divisor: Option<String>,
    /// Characteristic θ: auto, gen:E, random:K, fq:N or coords:c0,c1,...
    #[arg(long, global = true, value_name = "SPEC")]
    theta: Option<String>,
    /// Seed for random θ
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Coefficients a_j as polynomials in θ: "1,1;2" means a_1 = 1 + θ, a_2 = 2
    #[arg(long, global = true, value_name = "POLYS")]
    a: Option<String>,
    /// Largest group order a scan may enumerate
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Largest ambient degree tried by the "auto" search
    #[arg(long = "ambient-cap", global = true)]
    ambient_cap: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<String>,
    /// JSON report (default)
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Human-readable table
    #[arg(long, global = true)]
    table: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion jet bases at each point of D
    Torsion,
    /// Level data (Δ(t), Δ_∞)
    Level,
    /// Companion matrix and the τ^n matrix A·t + B
    TauMatrix,
    /// Solutions of the ∞-level equation and the canonical ν
    NuSolve,
    /// Membership of the pair (g·F^i(x), x)
    ZetaCheck {
        /// Transform "g,i": g in id, F, h_{poly}, c_{k}, @file.json
        #[arg(long)]
        transform: String,
        /// Expected verdict; a mismatch exits with status 1
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Rank one: theta membership of the quotient against zeta membership
    ThetaCheck {
        #[arg(long)]
        transform: String,
    },
    /// Census of the graphs g·F^i over the group modulo scalars
    Scan {
        /// Largest Frobenius power (default n·(d-1))
        #[arg(long)]
        i_max: Option<usize>,
        /// List members only
        #[arg(long)]
        members_only: bool,
    },
    /// Worked examples 1 to 4
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        number: u8,
    },
}

impl Opts {
    fn file_config(&self) -> Result<ConfigFile, CliError> {
        let base = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let mut flags = ConfigFile {
            q: self.q,
            p: self.p,
            m: self.m,
            rank: self.rank,
            divisor: self.divisor.clone(),
            theta: self.theta.clone(),
            seed: self.seed,
            cap: self.cap,
            ambient_cap: self.ambient_cap,
            output: self.output.clone(),
            format: match (self.json, self.table) {
                (true, _) => Some(Format::Json),
                (_, true) => Some(Format::Table),
                _ => None,
            },
            ..Default::default()
        };
        if let Some(a) = &self.a {
            flags.a = Some(parse_a_polys(a)?);
        }
        if let Some(m) = &self.ambient {
            flags.set_ambient(m)?;
        }
        Ok(base.merge(flags))
    }
}

fn execute(cli: &Cli) -> Result<(Report, Format, Option<String>), CliError> {
    let file = cli.opts.file_config()?;
    let format = file.format.unwrap_or_default();
    let output = file.output.clone();
    let report = match &cli.command {
        Command::Example { number } => examples::run(*number, &file)?,
        cmd => {
            let session = Session::build(SessionConfig::resolve(&file)?)?;
            match cmd {
                Command::Torsion => commands::torsion(&session)?,
                Command::Level => commands::level(&session)?,
                Command::TauMatrix => commands::tau_matrix(&session)?,
                Command::NuSolve => commands::nu_solve(&session)?,
                Command::ZetaCheck { transform, expect } => commands::zeta_check(&session, transform, *expect)?,
                Command::ThetaCheck { transform } => commands::theta_check(&session, transform)?,
                Command::Scan { i_max, members_only } => commands::scan(&session, *i_max, *members_only)?,
                Command::Example { .. } => unreachable!("handled above"),
            }
        }
    };
    Ok((report, format, output))
}

fn emit(report: &Report, format: Format, output: Option<&str>) -> Result<(), CliError> {
    let mut text = match format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON values serialize"),
        Format::Table => report.table.clone(),
    };
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(report, format, output)| {
        emit(&report, format, output.as_deref())?;
        Ok(report.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("zetacorr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
