use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{ArgAction, Parser, Subcommand};

use dp1_lattice::real_forms::ClassId;
use dp1_lattice::report::{execute, ClassSelector, Command, Format, RunConfig, TableName};

/// Exact lattice computations for real del Pezzo surfaces of degree 1.
#[derive(Parser, Debug)]
#[command(name = "dp1", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format: json, csv or md.
    #[arg(long, global = true, default_value = "md")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print progress to standard error.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// List the eleven deformation classes.
    Classes {
        #[arg(long, default_value = "all")]
        class: ClassSelector,
        /// List the seven Bertini pairs instead.
        #[arg(long)]
        pairs: bool,
    },
    /// List the classes -2K - v of one stratum.
    Enumerate {
        #[arg(long, default_value = "all")]
        class: ClassSelector,
        #[arg(long, default_value = "2",
              value_parser = PossibleValuesParser::new(["0", "2", "4"]).map(|s| s.parse::<u8>().unwrap()))]
        stratum: u8,
    },
    /// Regenerate a table: roots, b2, b4, e7-b4, summary, delta (or 2..7).
    Tables { name: TableName },
    /// Run every check and report; exits 1 if any fails.
    Verify {
        #[arg(long, default_value = "all")]
        class: ClassSelector,
        #[arg(long, hide = true)]
        corrupt_embedding: Option<ClassId>,
    },
    /// Wall-crossing checks over every vanishing root.
    Wallcross {
        #[arg(long, default_value = "all")]
        class: ClassSelector,
    },
}

fn config(cli: Cli) -> RunConfig {
    let (command, class, stratum, corrupt) = match cli.command {
        Cmd::Classes { class, pairs } => (Command::Classes { pairs }, class, None, None),
        Cmd::Enumerate { class, stratum } => (Command::Enumerate, class, Some(stratum), None),
        Cmd::Tables { name } => (Command::Tables { name }, ClassSelector::All, None, None),
        Cmd::Verify {
            class,
            corrupt_embedding,
        } => (Command::Verify, class, None, corrupt_embedding),
        Cmd::Wallcross { class } => (Command::Wallcross, class, None, None),
    };
    RunConfig {
        command,
        class,
        stratum,
        format: cli.format,
        out: cli.out,
        verbosity: cli.verbose,
        corrupt_embedding: corrupt,
    }
}

fn main() -> ExitCode {
    let cfg = config(Cli::parse());
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(outcome.text.as_bytes()).and_then(|_| out.flush()) {
                Ok(()) => {}
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() == ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    return ExitCode::from(1);
                }
            }
        }
    }
    ExitCode::from(outcome.exit_code() as u8)
}
