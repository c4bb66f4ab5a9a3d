use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use diffchar::cli::{run, Flags, COMMANDS};

/// Characteristic sets of characterizable differential ideals.
#[derive(Parser)]
#[command(name = "diffchar", version, about)]
struct Args {
    /// One of: canonical, canonical-from-gens, decompose, member, equal,
    /// invert, gb, coherent
    command: String,

    /// Problem file (ring / ranking / system / probe / second / bound blocks)
    file: PathBuf,

    /// Emit machine-readable JSON
    #[arg(long)]
    json: bool,

    /// Run the invariant battery and report a verdict
    #[arg(long)]
    check: bool,

    /// Skip the characterizability prechecks
    #[arg(long)]
    no_precheck: bool,

    /// Remove redundant components after a decomposition
    #[arg(long)]
    prune: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if !COMMANDS.contains(&args.command.as_str()) {
        eprintln!(
            "unknown command `{}`; expected one of: {}",
            args.command,
            COMMANDS.join(", ")
        );
        return ExitCode::from(2);
    }
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let max_steps = std::env::var("DIFFCHAR_MAX_STEPS")
        .ok()
        .and_then(|s| s.parse::<u64>().ok());
    let flags = Flags {
        json: args.json,
        check: args.check,
        no_precheck: args.no_precheck,
        prune: args.prune,
        max_steps,
    };
    let outcome = run(&args.command, &text, &flags);
    if outcome.exit_code == 0 {
        println!("{}", outcome.output);
    } else {
        eprintln!("{}", outcome.output);
    }
    ExitCode::from(outcome.exit_code as u8)
}
