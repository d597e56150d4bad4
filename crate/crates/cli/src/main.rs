mod bench;
mod gen;
mod solve;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bincover::Error;

/// Bin covering solvers, instance generators and a ratio benchmark.
///
/// Exit codes: 0 success, 1 internal error, 2 invalid input or parameters,
/// 3 refused (size cap or budget exceeded).
#[derive(Parser)]
#[command(name = "bincover", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file and print the solution as JSON.
    Solve(solve::SolveArgs),
    /// Write a generated instance file.
    Gen(gen::GenArgs),
    /// Run algorithms over a parameter grid and write a ratio CSV.
    Bench(bench::BenchArgs),
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn context(self, instance: &str, alg: &str) -> Failure {
        Failure {
            code: self.code,
            message: format!("{instance} ({alg}): {}", self.message),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Refused(_) => 3,
            Error::Internal(_) | Error::Infeasible | Error::Unbounded | Error::Contract(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

/// Oracle caps, overridable through `BINCOVER_ORACLE_CAP=N` or `N,M`.
pub fn oracle_caps() -> Result<bincover::exact::OracleCaps, Failure> {
    match std::env::var("BINCOVER_ORACLE_CAP") {
        Ok(v) => bincover::exact::OracleCaps::parse(&v).map_err(Failure::from),
        Err(_) => Ok(Default::default()),
    }
}

pub fn write_output(path: Option<&std::path::Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve::run(a),
        Command::Gen(a) => gen::run(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bincover: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
