use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use plumbsw::{cmd_analyze, cmd_ehrhart_fit, cmd_sw, cmd_verify, commands::has_mismatch, load, CliError, Method, Options};
use plumbsw_core::series::DEFAULT_BUDGET;

/// Seiberg–Witten invariants, periodic constants and Ehrhart data of
/// negative-definite plumbing trees.
#[derive(Parser)]
#[command(name = "plumbsw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print plain-text tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Term budget for series expansions and point enumeration.
    #[arg(long, global = true, env = "PLUMBSW_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Extra padding added to every coordinate of the oracle truncation point.
    #[arg(long, global = true, default_value_t = 0)]
    bound: i128,
    /// Include wall-clock timings (makes the output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice data, r_h, s_h, sw and pc for every class.
    Analyze { file: String },
    /// sw for every class (or the listed ones) by closed form, oracle or both.
    Sw {
        file: String,
        /// Comma list of residue tuples, e.g. `(0,1),(1,1)`, or `0,2` for cyclic H.
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
    },
    /// Count lattice points of P^(λw) for λ = 0..max and fit quasipolynomials.
    EhrhartFit {
        file: String,
        /// `+`-separated terms `[k*]node:<vertex id>`, each meaning k·E*_v.
        #[arg(long)]
        ray: Option<String>,
        #[arg(long, default_value_t = 12)]
        max: usize,
        #[arg(long)]
        class: Option<String>,
    },
    /// Cross-validate closed forms, oracle, reciprocity and the K² identity.
    Verify {
        file: String,
        /// Largest dilation used for the reciprocity check.
        #[arg(long)]
        max: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<plumbsw::Report, CliError> {
    let opts = Options { budget: cli.budget, padding: cli.bound, timing: cli.timing };
    match &cli.command {
        Command::Analyze { file } => cmd_analyze(&load(file)?, &opts),
        Command::Sw { file, class, method } => {
            let m = match method {
                MethodArg::Closed => Method::Closed,
                MethodArg::Oracle => Method::Oracle,
                MethodArg::Both => Method::Both,
            };
            cmd_sw(&load(file)?, class.as_deref(), m, &opts)
        }
        Command::EhrhartFit { file, ray, max, class } => {
            cmd_ehrhart_fit(&load(file)?, ray.as_deref(), *max, class.as_deref(), &opts)
        }
        Command::Verify { file, max } => cmd_verify(&load(file)?, *max, &opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.pretty {
                print!("{}", report.to_pretty());
            } else {
                println!("{}", report.to_json());
            }
            if has_mismatch(&report) {
                eprintln!("plumbsw: verification mismatch");
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("plumbsw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
