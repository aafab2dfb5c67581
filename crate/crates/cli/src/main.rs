use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tropopt_cli::commands::{self, GridRequest, Output};
use tropopt_cli::{CliError, EXIT_INPUT};
use tropopt_core::SemifieldKind;

/// Closed-form tropical optimization and minimax location.
#[derive(Parser)]
#[command(name = "tropopt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON)
    file: PathBuf,
    /// Semifield, overriding the one named in the file
    #[arg(long, value_name = "TAG")]
    semifield: Option<SemifieldKind>,
    /// Comparison tolerance; defaults to 0 for max/min-plus and 1e-9 relative for max/min-times
    #[arg(long, env = "TROPOPT_EPSILON")]
    epsilon: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the problem and print a JSON report
    Solve(Common),
    /// Check the solver against exhaustive grid search (n ≤ 3)
    Verify {
        #[command(flatten)]
        common: Common,
        /// Grid spacing
        #[arg(long)]
        grid_step: Option<f64>,
        /// Lower grid corner, one value or one per coordinate
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid_lo: Option<Vec<f64>>,
        /// Upper grid corner, one value or one per coordinate
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid_hi: Option<Vec<f64>>,
    },
    /// Draw a two-dimensional problem as SVG
    Plot(Common),
}

fn run(command: Command) -> Result<(Output, Option<PathBuf>), CliError> {
    let (common, action): (Common, Box<dyn FnOnce(&_, _) -> _>) = match command {
        Command::Solve(c) => (c, Box::new(commands::solve)),
        Command::Plot(c) => (c, Box::new(commands::plot)),
        Command::Verify {
            common,
            grid_step,
            grid_lo,
            grid_hi,
        } => {
            let req = GridRequest {
                step: grid_step,
                lower: grid_lo,
                upper: grid_hi,
            };
            (common, Box::new(move |f, t| commands::verify(f, t, &req)))
        }
    };
    let tol = commands::tolerance(common.epsilon)?;
    let file = commands::load(&common.file, common.semifield)?;
    Ok((action(&file, tol)?, common.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((output, out)) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &output.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_INPUT as u8);
                }
            } else {
                print!("{}", output.text);
            }
            ExitCode::from(output.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
