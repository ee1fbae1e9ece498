use std::collections::BTreeSet;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gencluster_cli::config::{ConfigError, SeedConfig};
use gencluster_cli::dilog::{evaluate, parse_params, render, DilogCmdError, Point};
use gencluster_cli::mutate::{interactive, run_steps};
use gencluster_cli::verify::{run, RunOptions, CHECK_NAMES};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "gencluster", version, about = "Seed mutations and dilogarithm identities for generalized cluster algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on a configuration file or builtin fixture.
    Verify {
        /// JSON file, or one of: involution, a2, b2, g2, b2-truncated.
        config: String,
        /// Checks to skip (comma separated).
        #[arg(long, value_delimiter = ',')]
        skip: Vec<String>,
        /// Random points per numerical check.
        #[arg(long)]
        trials: Option<usize>,
        /// Seed of the random point generator.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-check wall-clock times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Print the seed after each mutation.
    Mutate {
        /// JSON file or builtin fixture name.
        config: String,
        /// 1-based directions, comma separated; defaults to the configured sequence.
        #[arg(long)]
        steps: Option<String>,
        /// Read directions from standard input, one per line.
        #[arg(long, conflicts_with = "steps")]
        interactive: bool,
    },
    /// Evaluate the dilogarithm of degree d with coefficients z.
    Dilog {
        #[arg(long)]
        d: u32,
        /// z_0,...,z_d as integers or p/q.
        #[arg(long, value_delimiter = ',', required = true)]
        z: Vec<String>,
        #[arg(long, required_unless_present = "inf", conflicts_with = "inf", allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long)]
        inf: bool,
    },
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn parse_steps(text: &str, rank: usize) -> Result<Vec<usize>, ConfigError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(t, s)| match s.parse::<usize>() {
            Ok(k) if (1..=rank).contains(&k) => Ok(k - 1),
            _ => Err(ConfigError::Invalid {
                location: format!("--steps[{t}]"),
                message: format!("{s} is not in 1..={rank}"),
            }),
        })
        .collect()
}

fn verify(
    config: &str,
    skip: Vec<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    timings: bool,
) -> ExitCode {
    let mut cfg = match SeedConfig::load(config) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    if let Some(t) = trials {
        cfg.options.trials = t;
    }
    if let Some(s) = seed {
        cfg.options.seed = s;
    }
    if let Some(bad) = skip.iter().find(|s| !CHECK_NAMES.contains(&s.as_str())) {
        return input_error(format!("--skip: unknown check {bad}; known: {}", CHECK_NAMES.join(", ")));
    }
    let prepared = match cfg.prepare() {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let opts = RunOptions {
        skip: skip.into_iter().collect::<BTreeSet<_>>(),
        timings,
    };
    let report = match run(&prepared, &opts) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    print!("{}", report.summary());
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            return input_error(format!("cannot write {}: {e}", path.display()));
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn mutate(config: &str, steps: Option<String>, interactive_mode: bool) -> ExitCode {
    let prepared = match SeedConfig::load(config).and_then(|c| c.prepare()) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if interactive_mode {
        let stdin = io::stdin();
        if let Err(e) = interactive(prepared.seed, stdin.lock(), &mut out) {
            return input_error(e);
        }
        return ExitCode::SUCCESS;
    }
    let ks = match steps {
        Some(text) => match parse_steps(&text, prepared.seed.rank()) {
            Ok(ks) => ks,
            Err(e) => return input_error(e),
        },
        None => prepared.ks,
    };
    match run_steps(prepared.seed, &ks, &mut out) {
        Ok(Ok(())) => {
            let _ = out.flush();
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => input_error(e),
        Err(e) => input_error(e),
    }
}

fn dilog(d: u32, z: &[String], x: Option<f64>, inf: bool) -> ExitCode {
    let at = match (x, inf) {
        (_, true) => Point::Infinity,
        (Some(x), false) => Point::At(x),
        (None, false) => return input_error("one of --x or --inf is required"),
    };
    let result = parse_params(d, z).and_then(|p| evaluate(&p, at));
    match result {
        Ok(values) => {
            print!("{}", render(&values));
            ExitCode::SUCCESS
        }
        Err(DilogCmdError::Dilog(e @ gencluster::dilog::DilogError::ToleranceNotReached { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(e) => input_error(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            config,
            skip,
            trials,
            seed,
            out,
            timings,
        } => verify(&config, skip, trials, seed, out, timings),
        Command::Mutate {
            config,
            steps,
            interactive,
        } => mutate(&config, steps, interactive),
        Command::Dilog { d, z, x, inf } => dilog(d, &z, x, inf),
    }
}
