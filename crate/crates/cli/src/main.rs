use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::CliError;

/// Joint measurement of two qubit observables: validation, accuracy
/// trade-offs, optimal POVMs, simulation and estimation.
#[derive(Debug, Parser)]
#[command(name = "simulmeas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format. Defaults to csv for `sweep`, json elsewhere.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct PovmInput {
    /// Joint POVM document (JSON).
    #[arg(long)]
    povm: PathBuf,
    /// Observables document (JSON). Read from the POVM document if omitted.
    #[arg(long)]
    obs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Angle {
    /// Angle between the observables' axes, in radians.
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    /// Read --theta in degrees.
    #[arg(long)]
    degrees: bool,
}

impl Angle {
    fn radians(&self) -> f64 {
        if self.degrees {
            self.theta.to_radians()
        } else {
            self.theta
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a POVM's constraints and whether its marginals are nonideal
    /// measurements of the observables.
    Validate(PovmInput),
    /// Smearing matrices, accuracies and errors of both marginals.
    Accuracy(PovmInput),
    /// Check the accuracy trade-off for a POVM or for given accuracies.
    Tradeoff {
        #[arg(long)]
        povm: Option<PathBuf>,
        #[arg(long)]
        obs: Option<PathBuf>,
        #[arg(long)]
        x_a: Option<f64>,
        #[arg(long)]
        x_b: Option<f64>,
        /// Angle in radians (with --x-a/--x-b).
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        degrees: bool,
    },
    /// The equality-achieving joint POVM for the canonical pair at --theta.
    Optimal(Angle),
    /// Numerically map the largest reachable accuracy of B for each accuracy of A.
    Sweep {
        #[command(flatten)]
        angle: Angle,
        #[arg(long, default_value_t = 41)]
        grid: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
        /// Include witness POVMs in JSON output.
        #[arg(long)]
        witnesses: bool,
    },
    /// Draw outcome counts of a POVM on a state.
    Simulate {
        #[command(flatten)]
        input: PovmInput,
        /// Bloch vector of the state, `x,y,z`.
        #[arg(long, value_parser = output::parse_vector, allow_hyphen_values = true)]
        state: [f64; 3],
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Simulate and reconstruct p_A(+), p_B(+); with --trials > 1, compare the
    /// spread of estimates with the inverse Fisher information.
    Estimate {
        #[command(flatten)]
        input: PovmInput,
        #[arg(long, value_parser = output::parse_vector, allow_hyphen_values = true)]
        state: [f64; 3],
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Also write per-trial rows (trial, p_star_a, p_star_b) to this CSV file.
        #[arg(long)]
        trials_csv: Option<PathBuf>,
    },
    /// Unsharp square-root measurement of A followed by a sharp B.
    Sequential {
        #[arg(long)]
        eta: f64,
        #[command(flatten)]
        angle: Angle,
    },
    /// Split the samples: a fraction --xi measures A, the rest B.
    Split {
        #[arg(long)]
        xi: f64,
        #[command(flatten)]
        angle: Angle,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = |default: Format| cli.format.unwrap_or(default);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Validate(input) => commands::validate(&input, format(Format::Json), out),
        Command::Accuracy(input) => commands::accuracy(&input, format(Format::Json), out),
        Command::Tradeoff { povm, obs, x_a, x_b, theta, degrees } => {
            let theta = theta.map(|t| if degrees { t.to_radians() } else { t });
            commands::tradeoff(povm.as_deref(), obs.as_deref(), x_a, x_b, theta, format(Format::Json), out)
        }
        Command::Optimal(angle) => commands::optimal(angle.radians(), format(Format::Json), out),
        Command::Sweep { angle, grid, restarts, seed, witnesses } => {
            commands::sweep(angle.radians(), grid, restarts, seed, witnesses, format(Format::Csv), out)
        }
        Command::Simulate { input, state, n, seed } => commands::simulate(&input, state, n, seed, format(Format::Json), out),
        Command::Estimate { input, state, n, seed, trials, trials_csv } => {
            commands::estimate(&input, state, n, seed, trials, trials_csv.as_deref(), format(Format::Json), out)
        }
        Command::Sequential { eta, angle } => commands::sequential(eta, angle.radians(), format(Format::Json), out),
        Command::Split { xi, angle } => commands::split(xi, angle.radians(), format(Format::Json), out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
