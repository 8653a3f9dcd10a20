use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, ValueEnum};
use orbihodge::io::{emit, load_polytope, parse_weights, Command, Format};
use orbihodge::{Analysis, Error, Polytope};

/// Orbifold cohomology, Hodge numbers, spectrum and polarization data of
/// simplicial lattice polytopes and weighted projective spaces.
#[derive(Debug, Parser)]
#[command(name = "orbihodge", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "text")]
    format: Fmt,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Comma-separated weights, e.g. 1,2,2,3,3,3.
    #[arg(long)]
    weights: Option<String>,
    /// JSON polytope document.
    #[arg(long)]
    polytope: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cmd {
    Sectors,
    Hodge,
    Spectrum,
    Jordan,
    Polarize,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fmt {
    Text,
    Json,
    Latex,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Sectors => Command::Sectors,
            Cmd::Hodge => Command::Hodge,
            Cmd::Spectrum => Command::Spectrum,
            Cmd::Jordan => Command::Jordan,
            Cmd::Polarize => Command::Polarize,
            Cmd::Check => Command::Check,
        }
    }
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Text => Format::Text,
            Fmt::Json => Format::Json,
            Fmt::Latex => Format::Latex,
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 3,
        _ => 4,
    }
}

fn load(input: &Input) -> Result<Polytope, Error> {
    match (&input.weights, &input.polytope) {
        (Some(w), _) => Polytope::from_weights(&parse_weights(w)?),
        (None, Some(path)) => load_polytope(path),
        (None, None) => unreachable!("clap enforces one input"),
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let analysis = Analysis::new(load(&cli.input)?)?;
    let out = emit(&analysis, cli.command.into(), cli.format.into())?;
    match &cli.output {
        Some(path) => std::fs::write(path, &out.body).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => print!("{}", out.body),
    }
    Ok(out.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
