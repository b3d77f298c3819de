mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degenlab::{ErrorKind, Field};

#[derive(Parser)]
#[command(
    name = "degenlab",
    version,
    about = "Degeneracy loci of skew matrices of linear forms: exact experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Seeded random skew matrices of linear forms, with their flips.
    Random(Common),
    /// Pass between skew matrices and ternary forms, emitting certificates.
    Correspond {
        #[command(subcommand)]
        direction: Direction,
    },
    /// Projected Veronese construction for a ternary form in y0..y2.
    Project(FormInput),
    /// Incidence campaign on the degeneracy locus of a matrix's flip.
    Sample {
        #[command(flatten)]
        matrix: MatrixInput,
        /// Points per matrix (curve points for even n).
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Cohomology tables with chase traces, or a CSV sweep with `--grid`.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Sweep every admissible (m, n) with n up to `--n` (default 12).
        #[arg(long)]
        grid: bool,
    },
    /// Dimension ledger for one (m, n), or all m for n up to `--n`.
    Ledger(Common),
}

#[derive(Subcommand)]
enum Direction {
    /// Skew matrix -> form. Reads a matrix, a `random` report or a certificate.
    FromMatrix(MatrixInput),
    /// Form in d0..d2 -> skew matrix.
    FromForm(FormInput),
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Q,
    Fp,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "fp")]
    field: FieldArg,
    /// Modulus for `--field fp`.
    #[arg(long, default_value_t = degenlab::DEFAULT_PRIME as u64)]
    p: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn field(&self) -> degenlab::Result<Field> {
        match self.field {
            FieldArg::Q => Ok(Field::Rational),
            FieldArg::Fp => Field::prime(self.p),
        }
    }
}

#[derive(Args, Clone)]
struct MatrixInput {
    #[command(flatten)]
    common: Common,
    /// JSON file with a matrix; without it `--trials` random matrices are drawn.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FormInput {
    #[command(flatten)]
    common: Common,
    /// Form in the text format, e.g. `d0^2 + d1^2 + d2^2`.
    #[arg(long, conflicts_with = "input")]
    form: Option<String>,
    /// File holding a form as text or JSON.
    #[arg(long)]
    input: Option<PathBuf>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err
        .downcast_ref::<degenlab::Error>()
        .map(degenlab::Error::kind)
    {
        Some(ErrorKind::Mathematical) => 3,
        Some(ErrorKind::Internal) => 4,
        Some(ErrorKind::Usage) | None => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let (text, out) = match cli.command {
        Command::Random(c) => (commands::random(&c)?, c.out),
        Command::Correspond {
            direction: Direction::FromMatrix(i),
        } => (commands::from_matrix(&i)?, i.common.out),
        Command::Correspond {
            direction: Direction::FromForm(i),
        } => (commands::from_form(&i)?, i.common.out),
        Command::Project(i) => (commands::project(&i)?, i.common.out),
        Command::Sample { matrix, points } => {
            (commands::sample(&matrix, points)?, matrix.common.out)
        }
        Command::Cohomology { common, grid } => (commands::cohomology(&common, grid)?, common.out),
        Command::Ledger(c) => (commands::ledger(&c)?, c.out),
    };
    match out {
        Some(path) => std::fs::write(&path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = err
                .downcast_ref::<degenlab::Error>()
                .map_or("UsageError", degenlab::Error::code);
            let report = serde_json::json!({ "error": code, "message": format!("{err:#}") });
            eprintln!("{report}");
            ExitCode::from(exit_code(&err))
        }
    }
}
