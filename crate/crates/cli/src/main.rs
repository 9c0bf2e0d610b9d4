use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use colorlie::cohomology::DegreeFilter;
use colorlie::file::Problem;
use colorlie::report::Violation;
use colorlie::Error;

mod commands;

#[derive(Debug, Parser)]
#[command(
    name = "colorlie",
    version,
    about = "Exact computations with color Lie algebras and their twisted enveloping algebras"
)]
struct Cli {
    /// Print a short summary with timings to stderr.
    #[arg(long, global = true)]
    verbose: bool,
    /// Build the enveloping algebra without validating the input first.
    #[arg(long, global = true)]
    force: bool,
    /// Rewriting step budget when --force is given.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Algebra description (JSON).
    file: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the grading, bracket, cocycles and modules.
    Check(Input),
    /// Resolve every overlap of the straightening rules.
    Overlaps(Input),
    /// Normal form of a word, e.g. --word "p q".
    Nf {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        word: String,
    },
    /// Product of two words in normal form.
    Mul {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// PBW counts against the eps-symmetric algebra, per degree.
    Dims {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Scalar second cohomology per degree block.
    H2(Input),
    /// Whether two cocycles differ by a coboundary.
    Cohomologous {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "omega")]
        first: String,
        #[arg(long, default_value = "zero")]
        second: String,
    },
    /// Filtered isomorphism between the two enveloping algebras.
    Iso {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value = "omega")]
        first: String,
        #[arg(long, default_value = "zero")]
        second: String,
    },
    /// Cochain complex with coefficients in a module.
    Cohomology {
        #[command(flatten)]
        input: Input,
        /// "trivial", "adjoint:N" or a module named in the file.
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value = "identity")]
        degree: DegreeFilter,
    },
    /// d o d = 0 on the free resolution and Koszul exactness.
    ResolutionCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        deg_max: usize,
    },
    /// H^n against adjoint truncations.
    Hochschild {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        truncations: Vec<usize>,
    },
    /// Hopf axioms on U(L) and the obstruction table for omega.
    HopfCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Overlaps(_) => "overlaps",
            Command::Nf { .. } => "nf",
            Command::Mul { .. } => "mul",
            Command::Dims { .. } => "dims",
            Command::H2(_) => "h2",
            Command::Cohomologous { .. } => "cohomologous",
            Command::Iso { .. } => "iso",
            Command::Cohomology { .. } => "cohomology",
            Command::ResolutionCheck { .. } => "resolution-check",
            Command::Hochschild { .. } => "hochschild",
            Command::HopfCheck { .. } => "hopf-check",
        }
    }

    fn input(&self) -> &Input {
        match self {
            Command::Check(i) | Command::Overlaps(i) | Command::H2(i) => i,
            Command::Nf { input, .. }
            | Command::Mul { input, .. }
            | Command::Dims { input, .. }
            | Command::Cohomologous { input, .. }
            | Command::Iso { input, .. }
            | Command::Cohomology { input, .. }
            | Command::ResolutionCheck { input, .. }
            | Command::Hochschild { input, .. }
            | Command::HopfCheck { input, .. } => input,
        }
    }
}

/// What a command found.
pub struct Outcome {
    pub results: serde_json::Value,
    pub violations: Vec<Violation>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    inputs_digest: String,
    results: serde_json::Value,
    violations: Vec<Violation>,
}

/// Options shared by every command.
pub struct Settings {
    pub force: bool,
    pub budget: Option<usize>,
}

fn digest(file: &[u8], args: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(file);
    for a in args {
        h.update([0u8]);
        h.update(a.as_bytes());
    }
    hex::encode(h.finalize())
}

fn run(cmd: &Command, problem: &Problem, settings: &Settings) -> colorlie::Result<Outcome> {
    match cmd {
        Command::Check(_) => Ok(commands::check(problem)),
        Command::Overlaps(_) => commands::overlaps(problem, settings),
        Command::Nf { word, .. } => commands::nf(problem, settings, word),
        Command::Mul { left, right, .. } => commands::mul(problem, settings, left, right),
        Command::Dims { max_degree, .. } => commands::dims(problem, settings, *max_degree),
        Command::H2(_) => Ok(commands::h2(problem)),
        Command::Cohomologous { first, second, .. } => {
            commands::cohomologous(problem, first, second)
        }
        Command::Iso {
            max_degree,
            first,
            second,
            ..
        } => commands::iso(problem, settings, first, second, *max_degree),
        Command::Cohomology {
            module,
            n_max,
            degree,
            ..
        } => commands::cohomology(problem, settings, module, *n_max, *degree),
        Command::ResolutionCheck { n_max, deg_max, .. } => {
            commands::resolution(problem, settings, *n_max, *deg_max)
        }
        Command::Hochschild { n, truncations, .. } => {
            commands::hochschild(problem, settings, *n, truncations)
        }
        Command::HopfCheck { max_degree, .. } => commands::hopf(problem, settings, *max_degree),
    }
}

/// Errors in the input map to exit code 2; anything else a computation
/// refuses is a mathematical failure.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Input(_)
            | Error::Literal { .. }
            | Error::LengthMismatch { .. }
            | Error::OrderMismatch(..)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let path = &cli.command.input().file;
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let problem = match std::str::from_utf8(&bytes)
        .map_err(|e| Error::Input(e.to_string()))
        .and_then(Problem::load)
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let settings = Settings {
        force: cli.force,
        budget: cli.budget,
    };
    let outcome = match run(&cli.command, &problem, &settings) {
        Ok(o) => o,
        Err(e) if is_input_error(&e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => Outcome {
            results: serde_json::Value::Null,
            violations: vec![Violation::new("refused", vec![], e.to_string())],
        },
    };
    // The file enters through its bytes; other arguments verbatim, minus
    // the verbosity switch.
    let file_arg = path.to_string_lossy();
    let args: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| a != "--verbose" && *a != file_arg)
        .collect();
    let failed = !outcome.violations.is_empty();
    let report = RunReport {
        command: cli.command.name(),
        inputs_digest: digest(&bytes, &args),
        results: outcome.results,
        violations: outcome.violations,
    };
    // A closed pipe downstream is not worth a panic.
    let _ = writeln!(
        std::io::stdout().lock(),
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    if cli.verbose {
        eprintln!(
            "{} on {}: {} violation(s), {:.3}s",
            report.command,
            problem.name,
            report.violations.len(),
            start.elapsed().as_secs_f64()
        );
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
