//! The `curb` command line: a thin shell over the harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use curb::harness::{
    self, load_config, parse_domain, trace_diff, HarnessError, TraceDiff,
};

#[derive(Parser)]
#[command(name = "curb", version, about = "Run, validate, and adapt rule-driven entity networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured system and write its trace (and lineage, if an
    /// adaptation schedule is set).
    Run {
        config: PathBuf,
        /// Override the trace output path (default: config with .trace).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Override the lineage output path (default: config with .lineage).
        #[arg(long)]
        lineage: Option<PathBuf>,
    },
    /// Check a rule file against a domain and milieu size.
    Validate {
        rulefile: PathBuf,
        /// State domain: `bool` or `int <lo> <hi>`.
        #[arg(long)]
        domain: String,
        /// Milieu size constant indices are checked against.
        #[arg(long)]
        milieu: usize,
    },
    /// Adapt a configured system without running it; emits the child rule
    /// file and the lineage log.
    Adapt {
        config: PathBuf,
        /// Number of adaptation events.
        #[arg(long)]
        events: u64,
        /// Override the child rule output path (default: config with .child.curb).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the lineage output path (default: config with .lineage).
        #[arg(long)]
        lineage: Option<PathBuf>,
    },
    /// Compare two trace or lineage files line by line.
    TraceDiff { a: PathBuf, b: PathBuf },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("curb: {error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, HarnessError> {
    match command {
        Command::Run {
            config,
            trace,
            lineage,
        } => {
            let mut spec = load_config(&config)?;
            if let Some(trace) = trace {
                spec.trace_path = trace;
            }
            if let Some(lineage) = lineage {
                spec.lineage_path = lineage;
            }
            let summary = harness::run_spec(&spec)?;
            println!(
                "wrote {} ({} rows)",
                summary.trace_path.display(),
                summary.trace_rows
            );
            if let Some(lineage_path) = summary.lineage_path {
                println!(
                    "wrote {} ({} adaptations)",
                    lineage_path.display(),
                    summary.adaptations
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate {
            rulefile,
            domain,
            milieu,
        } => {
            let domain = parse_domain(&domain)
                .map_err(|message| HarnessError::ConfigSemantic { message })?;
            let program = harness::validate_rule_file(&rulefile, &domain, milieu)?;
            println!(
                "valid: {} ({} statements, {} nodes)",
                rulefile.display(),
                program.ast().statements.len(),
                program.node_count()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Adapt {
            config,
            events,
            out,
            lineage,
        } => {
            let mut spec = load_config(&config)?;
            if let Some(out) = out {
                spec.child_rule_path = out;
            }
            if let Some(lineage) = lineage {
                spec.lineage_path = lineage;
            }
            let summary = harness::adapt_spec(&spec, events)?;
            println!(
                "wrote {} after {} adaptations",
                summary.child_rule_path.display(),
                summary.adaptations
            );
            println!("wrote {}", summary.lineage_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::TraceDiff { a, b } => match trace_diff(&a, &b)? {
            TraceDiff::Identical => {
                println!("identical");
                Ok(ExitCode::SUCCESS)
            }
            TraceDiff::Differs { line, left, right } => {
                println!("line {line} differs:");
                println!("a: {}", left.as_deref().unwrap_or("<end of file>"));
                println!("b: {}", right.as_deref().unwrap_or("<end of file>"));
                Ok(ExitCode::FAILURE)
            }
        },
    }
}
