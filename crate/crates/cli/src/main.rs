use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use darmon_cli::{parse_config, run_batch, run_single, Overrides, EXIT_ERROR};

/// Decide whether Gartner's or Greenberg's Darmon-point construction applies
/// to an elliptic curve of conductor N over a totally real field, relative to
/// a quadratic extension K.
#[derive(Parser, Debug)]
#[command(name = "darmon", version)]
#[command(group(ArgGroup::new("mode").required(true).args(["input", "batch"])))]
struct Args {
    /// JSON config for a single case.
    #[arg(long)]
    input: Option<PathBuf>,
    /// JSON array of configs.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Report file (single mode, default stdout) or output directory (batch mode).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check selector output against exhaustive enumeration.
    #[arg(long)]
    oracle: bool,
    /// Let Gartner's construction leave inert primes of N out of the ramification.
    #[arg(long)]
    allow_drop_b4: bool,
    /// Initial root-isolation precision in bits.
    #[arg(long)]
    precision_bits: Option<u32>,
    /// Print the human trace to stderr (default on).
    #[arg(long, overrides_with = "no_trace")]
    trace: bool,
    #[arg(long, overrides_with = "trace")]
    no_trace: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let overrides = Overrides {
        oracle_check: args.oracle,
        allow_drop_b4: args.allow_drop_b4,
        precision_bits: args.precision_bits,
    };
    let code = if let Some(corpus) = &args.batch {
        let out = args.out.clone().unwrap_or_else(|| PathBuf::from("reports"));
        match run_batch(corpus, &out, overrides) {
            Ok(summary) => {
                print!("{}", summary.table());
                summary.exit_code()
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        }
    } else {
        single(&args, overrides)
    };
    ExitCode::from(code as u8)
}

fn single(args: &Args, overrides: Overrides) -> i32 {
    let path = args.input.as_ref().expect("clap enforces a mode");
    let config = match fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))
        .and_then(|text| parse_config(&text).map_err(|e| e.to_string()))
    {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error [MalformedConfig]: {e}");
            return EXIT_ERROR;
        }
    };
    let outcome = run_single(&config, overrides);
    if !args.no_trace {
        eprint!("{}", outcome.trace);
    }
    if let Some(doc) = &outcome.document {
        let json = doc.to_json();
        match &args.out {
            Some(out) => {
                if let Err(e) = fs::write(out, json) {
                    eprintln!("error: {}: {e}", out.display());
                    return EXIT_ERROR;
                }
            }
            None => println!("{json}"),
        }
    }
    outcome.exit_code
}
