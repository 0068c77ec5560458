use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use refscore::Registry;
use refscore_cli::{EXIT_ERROR, EXIT_GATE_FAILED, EXIT_OK};

#[derive(Parser)]
#[command(name = "refscore", version, about = "Score generated outputs against references")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one candidate against one reference.
    Calc {
        metric: String,
        /// File path or literal value.
        candidate: String,
        /// File path or literal value.
        reference: String,
    },
    /// Run a manifest and write report.csv plus SVG charts.
    Compare {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Exit 0 even when some cell is below its threshold.
        #[arg(long)]
        no_gate: bool,
    },
    /// Plan-coherence and modality-quality evaluation of a pipeline bundle.
    Casestudy {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the registered metrics.
    ListMetrics,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let registry = Registry::with_builtins();
    match cli.command {
        Command::Calc {
            metric,
            candidate,
            reference,
        } => {
            let score = refscore_cli::cmd_calc(&registry, &metric, &candidate, &reference)?;
            println!("{score:.6}");
            Ok(EXIT_OK)
        }
        Command::Compare { manifest, out, no_gate } => {
            let matrix = refscore_cli::cmd_compare(&registry, &manifest, &out)?;
            print!("{}", refscore_cli::format_table(&matrix));
            if matrix.all_pass() || no_gate {
                Ok(EXIT_OK)
            } else {
                eprintln!("some cells are below their thresholds (marked *)");
                Ok(EXIT_GATE_FAILED)
            }
        }
        Command::Casestudy { bundle, out } => {
            let study = refscore_cli::cmd_casestudy(&registry, &bundle, &out)?;
            println!("plan coherence");
            print!("{}", refscore_cli::format_table(&study.plan_coherence));
            println!("\nmodality quality");
            print!("{}", refscore_cli::format_table(&study.modality_quality));
            Ok(EXIT_OK)
        }
        Command::ListMetrics => {
            print!("{}", refscore_cli::list_metrics(&registry));
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
