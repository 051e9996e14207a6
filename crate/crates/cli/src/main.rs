//! `qgidem`: batch driver for the idempotent-state pipeline.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser)]
#[command(name = "qgidem", version, about = "Idempotent states on finite quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf and Haar axioms.
    Validate(Common),
    /// Search for idempotent states.
    Idempotents(Common),
    /// Classify every idempotent found as Haar or non-Haar.
    Classify(Common),
    /// Order the idempotents found and print the Hasse diagram.
    Lattice(Common),
    /// Build the quotient quantum group of a Haar idempotent.
    Quotient {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        state: String,
    },
    /// Cesàro averages of the convolution powers of a state.
    Walk {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Write the structure constants as JSON.
    Export(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Options shared by every command.
#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Built-in spec such as `fn:S3`, `ga:D4`, `dual:fn:Z4`, or a JSON file.
    pub input: String,
    #[arg(long, default_value_t = qgidem::tol::VALIDATION)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub starts: usize,
    #[arg(long, env = "QGIDEM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Compare against the subgroup oracle of a built-in group.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `--state` forms.
#[derive(Clone, Debug, PartialEq)]
pub enum StateArg {
    /// Position in the sorted solver output.
    Index(usize),
    /// Subgroup of a built-in group, as element indices.
    Subgroup(Vec<usize>),
    /// Real coefficients in the dual basis.
    Coeffs(Vec<f64>),
    /// A state JSON document.
    File(PathBuf),
}

impl StateArg {
    pub fn parse(s: &str) -> Result<Self, qgidem::Error> {
        let list = |body: &str| -> Result<Vec<String>, qgidem::Error> {
            let parts: Vec<String> = body.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect();
            if parts.is_empty() {
                return Err(qgidem::Error::Parse(format!("`{s}`: empty list")));
            }
            Ok(parts)
        };
        let bad = |e: &dyn std::fmt::Display| qgidem::Error::Parse(format!("`{s}`: {e}"));
        if let Some(body) = s.strip_prefix("subgroup:") {
            let v = list(body)?.iter().map(|p| p.parse::<usize>().map_err(|e| bad(&e))).collect::<Result<_, _>>()?;
            return Ok(StateArg::Subgroup(v));
        }
        if let Some(body) = s.strip_prefix("coeffs:") {
            let v = list(body)?.iter().map(|p| p.parse::<f64>().map_err(|e| bad(&e))).collect::<Result<_, _>>()?;
            return Ok(StateArg::Coeffs(v));
        }
        if let Ok(i) = s.parse::<usize>() {
            return Ok(StateArg::Index(i));
        }
        Ok(StateArg::File(PathBuf::from(s)))
    }
}

fn run(cli: Cli) -> Result<(Report, Common), qgidem::Error> {
    Ok(match cli.command {
        Command::Validate(c) => (commands::validate(&c)?, c),
        Command::Idempotents(c) => (commands::idempotents(&c)?, c),
        Command::Classify(c) => (commands::classify(&c)?, c),
        Command::Lattice(c) => (commands::lattice(&c)?, c),
        Command::Quotient { common, state } => (commands::quotient(&common, &StateArg::parse(&state)?)?, common),
        Command::Walk { common, state, steps } => (commands::walk(&common, &StateArg::parse(&state)?, steps)?, common),
        Command::Export(c) => (commands::export(&c)?, c),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, common) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = report.render(common.format);
    match &common.out {
        Some(path) if report.command != "export" => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        _ => print!("{rendered}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
