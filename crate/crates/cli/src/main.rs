//! `fgprim`: reproducible experiments on primitive elements of free groups.
//!
//! Subcommands: `is-primitive`, `count`, `growth`, `geodesics`. Exit codes:
//! 0 success / true verdict, 1 false verdict, 2 parse or usage error,
//! 3 guardrail refusal, 4 domain error.

use std::process::ExitCode;

use fgprim_core::error::Error;

mod commands;
mod config;

use config::{CliError, RunConfig};

const USAGE: &str = "\
usage: fgprim <command> [flags]

commands:
  is-primitive <word>   decide primitivity; prints the descent trace
  count                 per-length counts for a word set
  growth                growth-rate report (JSON) for a word set
  geodesics             simple-geodesic census on a punctured torus

flags:
  --rank <p>            free-group rank, 2..=8 (default 2)
  --max-length <n>      cutoff length (required for count/growth/geodesics)
  --set <s>             all | primitive | cyc-primitive (default primitive)
  --method <m>          convolution | bruteforce | both (default convolution)
  --structure <s>       modular | traces (default modular)
  --traces <x,y>        generator traces for --structure traces
  --format <f>          csv | json (default csv; growth always emits JSON)
  --threads <k|auto>    worker threads for brute-force scans (default auto)
  --force               override the brute-force size guardrail

word syntax: lowercase letters are generators (a, b, ...), the matching
uppercase letter is the inverse, the empty string is the identity.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprint!("{USAGE}");
            ExitCode::from(2)
        }
        Err(CliError::Guardrail(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                _ => 4,
            })
        }
    }
}

fn run(args: &[String]) -> Result<u8, CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::Usage("missing command".into()));
    };
    let config = RunConfig::parse(command, &args[1..])?;
    match command.as_str() {
        "is-primitive" => commands::is_primitive(&config),
        "count" => commands::count(&config),
        "growth" => commands::growth(&config),
        "geodesics" => commands::geodesics(&config),
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}
