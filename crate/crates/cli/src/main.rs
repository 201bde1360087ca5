//! Command-line front end to the `fredholm` library: determinants, convergence
//! studies and random-matrix distributions as CSV or JSON tables.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fredholm::Error;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "fredholm", version, about = "Numerical evaluation of Fredholm determinants")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write the table to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores). FREDHOLM_THREADS takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Nodes and weights of a quadrature rule.
    Quad(commands::QuadArgs),
    /// Airy functions or the error function on a grid.
    Specfun(commands::SpecfunArgs),
    /// Nyström approximation of det(I + zA) for a registered kernel.
    Det(commands::DetArgs),
    /// Nyström determinants over a list of m with errors.
    Study(commands::StudyArgs),
    /// Convergence of the methods for the Green's kernel determinant sin(1).
    GreenBench(commands::GreenBenchArgs),
    /// Gap probability E2(0; s) of the sine kernel.
    E2(commands::E2Args),
    /// Tracy-Widom distribution F2(s).
    F2(commands::F2Args),
    /// Truncation error bound for F2 on (s, T).
    TruncBound(commands::TruncBoundArgs),
    /// Joint distribution of the Airy2 or Airy1 process at two times.
    Joint(commands::JointArgs),
    /// Two-point covariance of the Airy2 or Airy1 process.
    Cov(commands::CovArgs),
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, Error> {
    match std::env::var("FREDHOLM_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Error::Config(format!("FREDHOLM_THREADS must be a positive integer, got '{v}'"))),
        Err(_) => match flag {
            Some(0) => Err(Error::Config("--threads must be positive".into())),
            other => Ok(other),
        },
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Domain(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads(cli.threads)? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let table = pool.install(|| commands::dispatch(&cli.command))?;
    let io_err = |e: io::Error| Error::Config(format!("cannot write output: {e}"));
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
            table.write(cli.format, &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(cli.format, &mut w).map_err(io_err)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fredholm: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
