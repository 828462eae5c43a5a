use std::path::{Path, PathBuf};
use std::process::ExitCode;

use affine_torus::report::{
    self, exit_code_for_error, AffineInput, ConjugacyOptions, InputSpec, ReportDocument, SimulateOptions,
};
use affine_torus::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact analysis of affine maps on tori.
///
/// Exit codes: 0 success or isomorphic, 1 malformed input, 2 out of regime,
/// 3 not isomorphic, 4 undecided, 5 internal failure.
#[derive(Parser, Debug)]
#[command(name = "affine-torus", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transitivity verdict and, for n <= 3, K-theory.
    Analyze(FileArgs),
    /// K-groups, unit class and structural flags.
    Ktheory(FileArgs),
    /// Decide whether two maps give isomorphic algebras.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generators and relations of the algebra.
    Presentation(FileArgs),
    /// Grid-covering simulation cross-checked against the exact verdict.
    Simulate {
        input: PathBuf,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Conjugacy of g(t) = d·t + shift + amplitude·sin(2πt) to z^d.
    Conjugacy {
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
        amplitude: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        shift: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 60)]
        max_iter: usize,
        /// Include the sampled conjugacy in the report.
        #[arg(long)]
        emit_samples: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct FileArgs {
    input: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Text,
}

fn load(path: &Path) -> Result<AffineInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    InputSpec::parse(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn run(cli: Cli) -> Result<(ReportDocument, OutputArgs)> {
    Ok(match cli.command {
        Command::Analyze(a) => (report::analyze(&load(&a.input)?)?, a.out),
        Command::Ktheory(a) => (report::ktheory(&load(&a.input)?)?, a.out),
        Command::Presentation(a) => (report::presentation(&load(&a.input)?)?, a.out),
        Command::Compare { first, second, out } => (report::compare(&load(&first)?, &load(&second)?)?, out),
        Command::Simulate { input, resolution, max_steps, out } => {
            (report::simulate(&load(&input)?, SimulateOptions { resolution, max_steps })?, out)
        }
        Command::Conjugacy { degree, amplitude, shift, samples, tol, max_iter, emit_samples, out } => {
            let opts = ConjugacyOptions {
                degree,
                shift,
                amplitude,
                samples,
                tolerance: tol,
                max_iterations: max_iter,
                emit_samples,
            };
            (report::conjugacy(opts)?, out)
        }
    })
}

fn emit(doc: &ReportDocument, out: &OutputArgs) -> Result<()> {
    let text = match out.format {
        Format::Json => doc.to_json(),
        Format::Text => report::render_text(doc),
    };
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Argument(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { report::EXIT_PARSE as u8 } else { 0 });
        }
    };
    let result = run(cli).and_then(|(doc, out)| emit(&doc, &out).map(|_| doc.exit_code()));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for_error(&e) as u8)
        }
    }
}
