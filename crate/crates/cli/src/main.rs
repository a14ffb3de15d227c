mod census;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "hermsurf", version, about = "Rational points on intersections with Hermitian surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Square root of the field order: computations run over F_{q^2}.
    #[arg(long, global = true)]
    pub q: Option<u32>,

    /// Degree of the forms.
    #[arg(long, global = true)]
    pub d: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,

    /// Number of draws in random and structured modes.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: u64,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Report path; the report goes to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Include point and line lists in intersection reports.
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check point, line, plane and book counts of the canonical surface.
    VerifyCounts,
    /// Maximize the number of surface points on degree-d hypersurfaces.
    Search,
    /// Product of d tangent planes through a common secant.
    Extremal,
    /// The degree q+1 form alpha(x0^{q+1}+x1^{q+1})+x2^{q+1}+x3^{q+1}.
    Grid {
        /// Element index of alpha in F_{q^2}; must lie in F_q \ {0, 1}.
        #[arg(long)]
        alpha: Option<u16>,
    },
    /// Parameters of the evaluation code of degree-d forms.
    Code {
        /// Write the full weight distribution as CSV.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Intersection statistics and bound verdicts for a form read from JSON.
    Check {
        form_file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Falsified) => {
            eprintln!("falsification event: see the report for the witness");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
