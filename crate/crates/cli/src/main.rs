//! `crossdef` command-line front end.

mod commands;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "crossdef", version, about = "Hochschild cohomology and deformations of Klein crossed products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Preset name: klein-dt or klein-trivial.
    #[arg(long, default_value = "klein-dt")]
    pub preset: String,

    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Params {
    #[arg(long)]
    pub q1: Option<String>,
    #[arg(long)]
    pub q2: Option<String>,
    #[arg(long)]
    pub q3: Option<String>,
    #[arg(long)]
    pub p1: Option<String>,
    #[arg(long)]
    pub p2: Option<String>,
    #[arg(long)]
    pub p3: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded HH^n(R,A) and HH^n(A) tables for n = 0..3.
    Hh {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        dmax: u32,
    },
    /// Evaluate the infinitesimal deformation on two elements.
    Mu1 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: Params,
        u: String,
        v: String,
    },
    /// Check the comparison maps commute with the differentials.
    ChainmapCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        dmax: u32,
    },
    /// Bialgebra axioms, deformation formulas and module-algebra checks.
    HopfVerify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
    },
    /// Star product of two elements.
    DeformMul {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: Params,
        /// Active copies of H_1, e.g. "1,2,3". Defaults to all for klein-dt and "1" otherwise.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
        u: String,
        v: String,
    },
    /// The relation satisfied by w in the deformed center.
    Center {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        i: u32,
        #[arg(long, default_value_t = 0)]
        j: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Common factor s in q1 = s y^2j, q2 = s x^2i, q3 = s z^2k.
        #[arg(long, default_value = "1")]
        scaling: String,
    },
    /// Run every suite in order and report unexpected verdicts.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        /// Seed for the randomized spot checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Bad input from the user; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// What a command produced: the rendered report and whether every check met expectations.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn run(cli: Cli) -> Result<(Outcome, Common)> {
    Ok(match cli.command {
        Command::Hh { common, dmax } => (commands::hh(&common, dmax)?, common),
        Command::Mu1 { common, params, u, v } => (commands::mu1(&common, &params, &u, &v)?, common),
        Command::ChainmapCheck { common, dmax } => (commands::chainmap_check(&common, dmax)?, common),
        Command::HopfVerify { common, params, dmax } => (commands::hopf_verify(&common, &params, dmax)?, common),
        Command::DeformMul {
            common,
            params,
            indices,
            u,
            v,
        } => (commands::deform_mul(&common, &params, indices, &u, &v)?, common),
        Command::Center { common, i, j, k, scaling } => (commands::center(&common, i, j, k, &scaling)?, common),
        Command::Verify {
            common,
            params,
            dmax,
            seed,
        } => (verify::run(&common, &params, dmax, seed)?, common),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, common)) => {
            let written = match &common.out {
                Some(path) => std::fs::write(path, &outcome.text),
                None => match writeln!(std::io::stdout().lock(), "{}", outcome.text) {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    r => r,
                },
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
