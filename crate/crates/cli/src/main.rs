use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use prelie2_cli::{
    cmd_construct, cmd_cybe_check, cmd_report, cmd_roundtrip, cmd_verify, corpus, Outcome, ReportFormat, EXIT_SCHEMA,
    EXIT_VIOLATION,
};

/// Exact verification and constructions for pre-Lie 2-algebras, Lie
/// 2-algebras, crossed modules, O-operators and graded CYBE solutions.
///
/// Exit codes: 0 valid, 1 mathematical violation, 2 I/O or schema error.
/// Set PRELIE2_THREADS to cap the worker threads.
#[derive(Parser)]
#[command(name = "prelie2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file against the axioms of its kind.
    Verify {
        file: PathBuf,
        /// Require an o_operator file and also validate its induced pre-Lie 2-algebra.
        #[arg(long)]
        o_operator: bool,
    },
    /// Build a derived structure; the output is re-verified before it is written.
    Construct {
        /// One of: lie2, crossed-module, strict, cybe-solution, skeletal-from-form, end, semidirect, lift, o-operator.
        target: String,
        input: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Which invariant form to use for skeletal-from-form.
        #[arg(long, default_value_t = 0)]
        form: usize,
    },
    /// Check an r-matrix file: skewness, CYBE and closedness.
    CybeCheck {
        rmatrix: PathBuf,
        /// A lie2 or prelie file replacing the algebra stored in the r-matrix file.
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check S(T(A)) = A and the natural isomorphism alpha for a prelie2 file.
    Roundtrip { file: PathBuf },
    /// Print a full validation report.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include the induced pre-Lie 2-algebra of an o_operator file.
        #[arg(long)]
        o_operator: bool,
    },
    /// Regenerate the fixture corpus with its manifest and transcript.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("PRELIE2_THREADS") {
        let n: usize = v.parse().with_context(|| format!("PRELIE2_THREADS={v:?} is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { file, o_operator } => cmd_verify(&file, o_operator),
        Command::Construct { target, input, out, form } => cmd_construct(&target, &input, out.as_deref(), form),
        Command::CybeCheck { rmatrix, structure, format } => cmd_cybe_check(&rmatrix, structure.as_deref(), format.into()),
        Command::Roundtrip { file } => cmd_roundtrip(&file),
        Command::Report { file, format, o_operator } => cmd_report(&file, o_operator, format.into()),
        Command::Fixtures { out } => match corpus::write_corpus(&out) {
            Ok((transcript, true)) => Outcome { code: 0, text: transcript },
            Ok((transcript, false)) => Outcome { code: EXIT_VIOLATION, text: transcript },
            Err(e) => Outcome { code: EXIT_SCHEMA, text: format!("error: {e}\n") },
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_SCHEMA as u8);
    }
    let out = run(cli);
    if out.code == 0 {
        print!("{}", out.text);
    } else {
        // reports still go to stdout so they can be piped; errors go to stderr
        if out.text.starts_with("error:") {
            eprint!("{}", out.text);
        } else {
            print!("{}", out.text);
        }
    }
    ExitCode::from(out.code as u8)
}
