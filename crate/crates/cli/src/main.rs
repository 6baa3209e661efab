use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod render;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "rectcircuit", version, about = "Exact rectangle tilings through electrical networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON file; standard input when omitted.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,

    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Pixels per unit length for `render`.
    #[arg(long, global = true, default_value_t = 200.0)]
    scale: f64,

    /// Seed for `walk`.
    #[arg(long, global = true, default_value_t = commands::DEFAULT_SEED)]
    seed: u64,

    /// Monte Carlo trials for `walk`.
    #[arg(long, global = true, default_value_t = 100_000)]
    trials: u64,

    /// Reject polynomials of higher degree.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Network with "voltages" -> vertex voltages and edge currents.
    Solve,
    /// Network -> response matrix.
    Response,
    /// Two-terminal network -> conductance.
    Conductance,
    /// Polynomial -> can a square be tiled by ratios c and 1/c.
    DecideSquare,
    /// Polynomial in c^2 -> can a c x 1 rectangle be tiled by ratios c and 1/c.
    DecideSelfSimilar,
    /// Polynomial (and "kind") or verdict -> witness tiling.
    Tile,
    /// Planar network with "voltages" -> tiling.
    Net2tile,
    /// Tiling -> planar network with boundary data.
    Tile2net,
    /// Tiling -> exact validity report.
    Validate,
    /// Rational matrix -> circular-minor report.
    OmegaCheck,
    /// Complex 2x2 or 3x3 response -> realizing network.
    RealizeB3,
    /// Two-terminal rational network -> escape probability, exact and sampled.
    Walk,
    /// Tiling or network -> SVG.
    Render,
}

pub struct Options {
    pub scale: f64,
    pub seed: u64,
    pub trials: u64,
    pub max_degree: Option<usize>,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Malformed(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Malformed(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        scale: cli.scale,
        seed: cli.seed,
        trials: cli.trials,
        max_degree: cli.max_degree,
    };
    let result = read_input(&cli.input).and_then(|text| commands::run(cli.command, &text, &opts));
    let (out, code) = match result {
        Ok(out) => (Some(out), 0),
        Err(CliError::Failed { output, message }) => {
            eprintln!("error: {message}");
            (output, 1)
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            (None, 1)
        }
        Err(CliError::Malformed(message)) => {
            eprintln!("malformed input: {message}");
            (None, 2)
        }
    };
    if let Some(text) = out {
        if let Err(e) = write_output(&cli.output, &text) {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
