//! `simpgrp`: homology, verification suites, pairings and filtrations from the command line.
//!
//! Reports go to stdout (or `--out`) as JSON, a short summary to stderr.
//! Exit status: 0 when every check passed, 1 when a check failed, 2 on errors.

mod commands;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "simpgrp", version, about = "Group homology through free simplicial resolutions")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    E,
    Bar,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingArg {
    Int,
    Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cube,
    Moore,
    Retraction,
    Filtration,
    Barseq,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral or rational group homology.
    Homology {
        /// cyclic:m[,m2..], sym:k, free:r, trivial, presentation:<path>
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Method::E)]
        method: Method,
        #[arg(long, value_enum, default_value_t = RingArg::Int)]
        ring: RingArg,
    },
    /// Seeded property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Break one structure map first; the run must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Pair cocycles from a file with a basis of the free part of homology.
    Pairing {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cocycles: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Also pair this many random coboundaries with the basis.
        #[arg(long, default_value_t = 0)]
        coboundary_trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The filtration of `H_*(F(-1); Q)` by iterated connecting maps.
    Filtration {
        /// staircase[:top], constant:r[:top], cech:b11,b12;b21,..[:top], random:seed
        #[arg(long)]
        functor: String,
        /// Defaults to every degree where `F(-1)` is nonzero.
        #[arg(long)]
        degree: Option<i64>,
        /// Defaults to the top level minus one.
        #[arg(long)]
        kmax: Option<usize>,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    seconds: Option<f64>,
    result: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let out = match &cli.command {
        Command::Homology { group, max_degree, method, ring } => commands::homology(group, *max_degree, *method, *ring),
        Command::Verify { suite, seed, trials, inject_fault } => commands::verify(*suite, *seed, *trials, *inject_fault),
        Command::Pairing { group, cocycles, degree, coboundary_trials, seed } => {
            commands::pairing_cmd(group, cocycles, *degree, *coboundary_trials, *seed)
        }
        Command::Filtration { functor, degree, kmax } => commands::filtration(functor, *degree, *kmax),
    };
    let outcome = match out {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport {
        command: std::env::args().skip(1).collect(),
        ok: outcome.ok,
        seconds: cli.timings.then(|| start.elapsed().as_secs_f64()),
        result: outcome.result,
    };
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    eprintln!("{} ({:.1} s)", if outcome.ok { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
