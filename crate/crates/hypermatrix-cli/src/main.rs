//! `hypermatrix` — command-line front end for the hypermatrix algebra
//! library.
//!
//! Subcommands read and write self-describing JSON documents (see
//! [`document`]); results go to `--out` or standard output. Exit codes:
//! 0 on success, 1 on domain or dimension errors (one-line diagnostic on
//! standard error), 2 on malformed input files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypermatrix::HmError;

mod commands;
mod document;

use document::ScalarKind;

/// A CLI failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    message: Option<String>,
    code: u8,
}

impl CliError {
    /// Domain, dimension or I/O failure: exit 1.
    pub fn failure(message: String) -> Self {
        CliError {
            message: Some(message),
            code: 1,
        }
    }

    /// Unreadable or malformed input file: exit 2.
    pub fn malformed(message: String) -> Self {
        CliError {
            message: Some(message),
            code: 2,
        }
    }

    /// Exit 1 after a FAIL line has already been printed to stdout.
    pub fn silent_failure() -> Self {
        CliError {
            message: None,
            code: 1,
        }
    }

    pub fn with_context(mut self, context: &str) -> Self {
        if let Some(message) = self.message.take() {
            self.message = Some(format!("{message} ({context})"));
        }
        self
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl From<HmError> for CliError {
    fn from(e: HmError) -> Self {
        CliError::failure(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Row,
    Column,
    Depth,
    All,
}

#[derive(Parser)]
#[command(
    name = "hypermatrix",
    version,
    about = "Bhattacharya-Mesner hypermatrix algebra toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hypermatrix document.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Entrywise sum of two documents of the same kind and shape.
    Add {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply every entry by a scalar written in the document's entry syntax.
    Scale {
        a: PathBuf,
        /// Scalar literal, e.g. `3/2` (rational), `1.5` (real), `1+2i`
        /// (complex) or `2*x` (expression).
        #[arg(long)]
        by: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entrywise (Hadamard) product.
    Hadamard {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cyclic transpose applied `--times` times (mod the order).
    Transpose {
        a: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ternary Bhattacharya-Mesner product of three documents.
    Product {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ternary product with a background hypermatrix.
    ProductBg {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        background: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// General product of k operands, each of order k.
    Gproduct {
        /// Input documents, in operand order.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical vectorization (last index fastest) as a JSON list.
    Vectorize {
        a: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of product compositions of the given odd order.
    ChCount {
        #[arg(long)]
        order: usize,
    },
    /// Numerical dimension of the span of composition powers.
    ChRank {
        a: PathBuf,
        #[arg(long)]
        max_order: usize,
        /// Singular values below `tol * sigma_max` count as zero.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Pseudo-inverse pair of two cubic documents; writes R1 and R2 and
    /// prints the residual and reconstruction error.
    PinvPairs {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out_r1: PathBuf,
        #[arg(long)]
        out_r2: PathBuf,
    },
    /// Check a defining identity; prints PASS/FAIL and exits accordingly.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Symbolic hypermatrix with one atom per entry (`prefix` + digits).
    Labeled {
        /// Comma-separated dimensions, e.g. `2,2,2` (each at most 10).
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symbolic order-3 hypermatrix invariant under cyclic index rotation.
    Sym3 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kronecker delta: 1 on the main diagonal, 0 elsewhere.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ScalarKind::Rational)]
        kind: ScalarKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All-one hypermatrix.
    Ones {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ScalarKind::Rational)]
        kind: ScalarKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All-zero hypermatrix.
    Zeros {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ScalarKind::Rational)]
        kind: ScalarKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Permutation hypermatrix `P(i,j,k) = [k = sigma(j)]`.
    Perm {
        /// The image list of the permutation, e.g. `1,0,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ScalarKind::Rational)]
        kind: ScalarKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagonal hypermatrix built from a square matrix document (only the
    /// upper triangle is read).
    Diag {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthogonal 2x2x2 hypermatrix; theta strictly inside (0, pi/2).
    Ortho22 {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthogonal 3x3x3 hypermatrix; both angles strictly inside (0, pi/2).
    Ortho333 {
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Exact check of `prod(delta, delta^T2, delta^T) = delta`.
    DeltaIdentity {
        #[arg(long)]
        n: usize,
    },
    /// Exact symbolic check of `prod(D^T, D^T2, D) = entry_pow(D, 3)`.
    DiagonalIdentity {
        #[arg(long)]
        n: usize,
    },
    /// Max deviation of `prod(Q, Q^T2, Q^T)` from the Kronecker delta.
    Orthogonality {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Exact symbolic check that the product patterns permute slices.
    SliceAction {
        #[arg(long)]
        n: usize,
        /// Involution image list, e.g. `1,0,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Axis::All)]
        axis: Axis,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { what } => commands::gen(what),
        Command::Add { a, b, out } => commands::add(&a, &b, out.as_ref()),
        Command::Scale { a, by, out } => commands::scale(&a, &by, out.as_ref()),
        Command::Hadamard { a, b, out } => commands::hadamard(&a, &b, out.as_ref()),
        Command::Transpose { a, times, out } => commands::transpose(&a, times, out.as_ref()),
        Command::Product { a, b, c, out } => commands::product(&a, &b, &c, out.as_ref()),
        Command::ProductBg {
            a,
            b,
            c,
            background,
            out,
        } => commands::product_bg(&a, &b, &c, &background, out.as_ref()),
        Command::Gproduct { inputs, out } => commands::gproduct(&inputs, out.as_ref()),
        Command::Vectorize { a, out } => commands::vectorize(&a, out.as_ref()),
        Command::ChCount { order } => commands::ch_count(order),
        Command::ChRank { a, max_order, tol } => commands::ch_rank(&a, max_order, tol),
        Command::PinvPairs {
            a,
            b,
            out_r1,
            out_r2,
        } => commands::pinv_pairs(&a, &b, &out_r1, &out_r2),
        Command::Verify { check } => commands::verify(check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(message) = &err.message {
                eprintln!("error: {message}");
            }
            ExitCode::from(err.exit_code())
        }
    }
}
