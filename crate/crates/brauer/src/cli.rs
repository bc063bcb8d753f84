//! Subcommands of the `brauer` binary.
//!
//! Exit codes: 0 success, 2 input error, 3 identity failure, 4 resource cap.

use std::fs;
use std::path::{Path, PathBuf};

use brauer_core::{OneCocycle, Tower};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;
use crate::json::{self, CocycleJson};
use crate::literal::parse_literal;
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "brauer", version, about = "Residues and integral models of twisted matrix algebras over F_p((t))")]
pub struct Cli {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Theorem1,
    Reference,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the tower F_{p^n}(t) / F_p(t) with its defining polynomial.
    Tower {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
    },
    /// Print the cyclic symbol cocycle T_a for a in F_p(t).
    Symbol {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Rational function in t, e.g. "t", "2*t^2+1", "(t+1)/t".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Residue of a cocycle by the determinant formula, the factor-set route, or both.
    Residue {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Build the crossed product of the coboundary and check its identities.
    VerifyProp1 { file: PathBuf },
    /// Search for a vertex fixed by the twisted Galois action.
    FixedVertex {
        file: PathBuf,
        /// Search radius; defaults to the valuation spread of the lifts.
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Residues, fixed vertex, integral form and Azumaya certification.
    FindOrder {
        file: PathBuf,
        #[arg(long)]
        radius: Option<u32>,
        /// Search even when the residue is nonzero.
        #[arg(long)]
        force_search: bool,
        /// Include per-stage wall-clock times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Run the property suite on a generated corpus.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[arg(long)]
        timings: bool,
    },
}

fn emit(out: Option<&Path>, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{}", text),
    }
    Ok(())
}

pub fn read_cocycle(path: &Path) -> Result<OneCocycle, CliError> {
    let text = fs::read_to_string(path)?;
    let j: CocycleJson = serde_json::from_str(&text)?;
    json::decode_cocycle(&j)
}

fn identity(e: brauer_core::Error) -> CliError {
    match e {
        brauer_core::Error::ScaleCap { .. } => CliError::Cap(e.to_string()),
        other => CliError::Identity(other.to_string()),
    }
}

/// Runs one subcommand and returns its exit code; hard errors come back as `Err`.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Tower { p, n } => {
            let tw = Tower::new(*p, *n)?;
            emit(out, &json::encode_tower(&tw))?;
            Ok(0)
        }
        Command::Symbol { p, n, a } => {
            let tw = Tower::new(*p, *n)?;
            let a = parse_literal(&tw, a)?;
            let c = OneCocycle::symbol(&tw, &a)?;
            emit(out, &json::encode_cocycle(&c))?;
            Ok(0)
        }
        Command::Residue { file, method } => {
            let c = read_cocycle(file)?;
            match method {
                Method::Both => {
                    let r = report::residue_both(&c).map_err(identity)?;
                    emit(out, &r)?;
                    Ok(if r.agree { 0 } else { 3 })
                }
                m => {
                    let r = report::residue_single(&c, *m == Method::Theorem1).map_err(identity)?;
                    emit(out, &r)?;
                    Ok(0)
                }
            }
        }
        Command::VerifyProp1 { file } => {
            let c = read_cocycle(file)?;
            let r = report::verify_prop1(&c);
            emit(out, &r)?;
            if let Some(f) = &r.failure {
                eprintln!("identity failure: {} at {:?}", f.identity, f.indices);
            }
            Ok(if r.pass { 0 } else { 3 })
        }
        Command::FixedVertex { file, radius } => {
            let c = read_cocycle(file)?;
            let s = report::fixed_vertex(&c, *radius).map_err(identity)?;
            emit(out, &json::encode_search(c.tower(), &s))?;
            Ok(0)
        }
        Command::FindOrder { file, radius, force_search, timings } => {
            let c = read_cocycle(file)?;
            let r = report::find_order(&c, *radius, *force_search, *timings).map_err(identity)?;
            emit(out, &r.report)?;
            if r.capped {
                eprintln!("search stopped at a resource cap");
                return Ok(4);
            }
            Ok(if r.report.consistent() { 0 } else { 3 })
        }
        Command::Selftest { seed, iters, timings } => {
            let s = report::selftest(*seed, *iters, *timings);
            emit(out, &s)?;
            Ok(if s.pass { 0 } else { 3 })
        }
    }
}
