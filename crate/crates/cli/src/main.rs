//! `maass`: exact q-expansions, Poincaré coefficients and verification runs.

mod cache;
mod config;
mod poincare;
mod qexp;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CMaxArg, CliConfig, Threads};

#[derive(Parser, Debug)]
#[command(name = "maass", version, about = "Fourier coefficients of Poincaré and Maass–Poincaré series")]
struct Cli {
    /// Working precision in bits (at least 53).
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    /// Target absolute error used by `--c-max auto`.
    #[arg(long, global = true, default_value_t = 5.421010862427522e-20)]
    target_abs_error: f64,
    /// Cutoff for the Kloosterman sums: an integer, or `auto`. Defaults to 150·N.
    #[arg(long, global = true)]
    c_max: Option<CMaxArg>,
    #[arg(long, global = true, env = "MAASS_CACHE_DIR", default_value = ".maass-cache")]
    cache_dir: PathBuf,
    /// Worker threads: an integer, or `auto`.
    #[arg(long, global = true, default_value = "auto")]
    threads: Threads,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact q-expansions.
    Qexp(qexp::QexpArgs),
    /// Coefficient tables of Poincaré series.
    Poincare(poincare::PoincareArgs),
    /// Verification runs; exits nonzero if any check fails.
    Verify(verify::VerifyArgs),
    /// Inspect cache and series files.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// List cache files.
    List,
    /// Parse a cache or series file and print it back.
    Show { path: PathBuf },
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cfg = CliConfig::new(cli.precision_bits, cli.target_abs_error, cli.c_max, cli.cache_dir, cli.threads)?;
    cfg.install_thread_pool()?;
    match cli.command {
        Command::Qexp(args) => qexp::run(&args),
        Command::Poincare(args) => poincare::run(&args, &cfg),
        Command::Verify(args) => verify::run(&args, &cfg),
        Command::Cache { action } => {
            match action {
                CacheAction::List => {
                    for p in cache::Cache::new(&cfg.cache_dir).list()? {
                        println!("{}", p.display());
                    }
                }
                CacheAction::Show { path } => print!("{}", cache::read_any(&path)?.serialize()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
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
