//! Command-line interface: reads triangulation and cochain files, hands the
//! work to the dualspin library, prints the JSON payload (and a human
//! summary on stderr), and exits with the status code of the outcome.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dualspin::runner::{self, CommandResult, Status};

#[derive(Parser)]
#[command(
    name = "dualspin",
    about = "Exact spin and spin-c structures on triangulated closed manifolds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// print only the JSON payload, no summary on stderr
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a triangulation document
    Validate { file: PathBuf },
    /// Orientability, ω₁, ω₂, H¹(Z₂), H²(Z), spin count, spin-c existence
    Invariants { file: PathBuf },
    /// Solve for all spin structures
    Spin {
        file: PathBuf,
        /// list every class representative
        #[arg(long)]
        enumerate: bool,
        /// act on the base structure by a GF(2) 1-cocycle (JSON map
        /// facet-class id → bit)
        #[arg(long, value_name = "COCYCLE_FILE")]
        act: Option<PathBuf>,
    },
    /// Find a spin-c structure, or check a given integral 2-cocycle β
    Spinc {
        file: PathBuf,
        /// integral 2-cochain (JSON map codim-2 class id → integer)
        #[arg(long, value_name = "COCHAIN_FILE")]
        beta: Option<PathBuf>,
    },
    /// Built-in example complexes
    Corpus {
        name: String,
        /// print the triangulation document instead of invariants
        #[arg(long)]
        export: bool,
    },
    /// Orders and order histograms of the binary covering groups
    Groups {
        /// verify the quaternion models against the Clifford enumerations
        #[arg(long)]
        model_check: bool,
    },
}

fn read(path: &PathBuf) -> Result<String, CommandResult> {
    std::fs::read_to_string(path).map_err(|e| CommandResult {
        status: Status::ValidationError,
        payload: serde_json::json!({ "error": format!("cannot read {}: {e}", path.display()) }),
        summary: format!("cannot read {}: {e}", path.display()),
        raw_output: None,
    })
}

fn run(cli: &Cli) -> CommandResult {
    match &cli.command {
        Command::Validate { file } => match read(file) {
            Err(r) => r,
            Ok(doc) => runner::validate(&doc),
        },
        Command::Invariants { file } => match read(file) {
            Err(r) => r,
            Ok(doc) => runner::invariants(&doc),
        },
        Command::Spin { file, enumerate, act } => {
            let doc = match read(file) {
                Err(r) => return r,
                Ok(d) => d,
            };
            let act_text = match act.as_ref().map(read).transpose() {
                Err(r) => return r,
                Ok(t) => t,
            };
            runner::spin(&doc, *enumerate, act_text.as_deref())
        }
        Command::Spinc { file, beta } => {
            let doc = match read(file) {
                Err(r) => return r,
                Ok(d) => d,
            };
            let beta_text = match beta.as_ref().map(read).transpose() {
                Err(r) => return r,
                Ok(t) => t,
            };
            runner::spinc(&doc, beta_text.as_deref())
        }
        Command::Corpus { name, export } => runner::corpus_cmd(name, *export),
        Command::Groups { model_check } => runner::groups(*model_check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match &result.raw_output {
        Some(text) => println!("{text}"),
        None => println!("{}", result.to_json()),
    }
    if !cli.quiet {
        eprintln!("{}", result.summary);
    }
    ExitCode::from(u8::try_from(result.status.exit_code()).unwrap_or(5))
}
