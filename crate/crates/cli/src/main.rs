mod commands;
mod table;

use std::io::{IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "two-rep", version, about = "Representations of finite 2-groups on measurable categories")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Problem description; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock milliseconds to the report (breaks byte-for-byte determinism).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Reps,
    Intertwiners,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Irreducible,
    Irretractable,
    Indecomposable,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Verb {
    /// Check the crossed module, every representation and every intertwiner.
    Validate,
    /// List equivalence classes of representations or transitive intertwiners.
    Classify {
        #[arg(long, value_enum, default_value_t = Level::Reps)]
        level: Level,
        #[arg(long, value_enum, default_value_t = Criterion::Indecomposable)]
        criterion: Criterion,
    },
    /// Compose named intertwiners, outermost first: `compose psi phi` is ψ∘φ.
    Compose {
        #[arg(required = true)]
        chain: Vec<String>,
    },
    /// Dimension and basis of the 2-intertwiners between two named intertwiners.
    HomDim { source: String, target: String },
    /// Run the randomized law suites.
    CheckLaws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Reduce the crossed module to its skeletal form.
    Skeletize,
    /// Run the commands listed in the problem description.
    Run,
}

impl Verb {
    fn needs_input(&self) -> bool {
        !matches!(self, Verb::CheckLaws { .. })
    }
}

fn read_input(cli: &Cli) -> Result<Option<String>, CliError> {
    if let Some(path) = &cli.input {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())));
    }
    if !cli.verb.needs_input() {
        return Ok(None);
    }
    let mut stdin = std::io::stdin();
    if stdin.is_terminal() {
        return Err(CliError::Usage("no --input given and standard input is a terminal".into()));
    }
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
    Ok(Some(text))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let input = read_input(cli)?;
    let start = Instant::now();
    let mut report = commands::execute(&cli.verb, input.as_deref())?;
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Table => table::render(&report),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("two-rep: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
