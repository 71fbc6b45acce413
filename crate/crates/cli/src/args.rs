use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use okubo_core::accessory::Branch;
use okubo_core::exact::{parse_scalar, Scalar};
use okubo_core::series::{BasePoint, Mode};

#[derive(Debug, Parser)]
#[command(name = "okubo", version, about = "Okubo systems for products of Gauss hypergeometric functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn scalar(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ParamsArg {
    /// Hypergeometric parameter file.
    #[arg(long)]
    pub params: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub a: Scalar,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub b: Scalar,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub c: Scalar,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub d: Scalar,
}

/// Source of an Okubo system: parameters (giving `A0`) or a chart (giving `A1`).
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SystemSource {
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub chart: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub source: SystemSource,
    /// Base point: 0, 1 or inf.
    #[arg(long, default_value = "0")]
    pub base: BasePoint,
    /// Index into the exponent list of the base point.
    #[arg(long, default_value_t = 0)]
    pub exponent: usize,
    #[arg(long, default_value_t = 80)]
    pub terms: usize,
    #[arg(long, default_value = "float")]
    pub mode: Mode,
}

/// Three-dimensional system parameters, from a file or from flags.
#[derive(Debug, Args)]
pub struct DFArgs {
    #[arg(long, conflicts_with_all = ["a", "b", "c", "g"])]
    pub params: Option<PathBuf>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true, requires_all = ["b", "c", "g"])]
    pub a: Option<Scalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub b: Option<Scalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub c: Option<Scalar>,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub g: Option<Scalar>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residues of the product system and its Riemann scheme.
    BuildProduct(ParamsArg),
    /// The Okubo system A0 with the gauge matrices P and R.
    BuildOkubo(ParamsArg),
    /// Chart of an Okubo system: from parameters (A0) or from a matrix file.
    RecoverChart {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        params: Option<PathBuf>,
        /// JSON file {"matrix": [[...]], "a", "b", "c", "d"}.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Special accessory parameters for given exponents.
    SolveAccessory {
        #[command(flatten)]
        exponents: ExponentArgs,
        #[arg(long, default_value = "auto")]
        branch: Branch,
    },
    /// Whether the two reduced difference systems are substantially the same.
    CheckSame {
        #[arg(long)]
        chart: PathBuf,
        /// Use the pair at 0 and infinity.
        #[arg(long)]
        dual: bool,
    },
    /// Conjugation of the special matrix onto A0.
    VerifyRealize(ParamsArg),
    /// Local series coefficients.
    Series(SeriesArgs),
    /// Residual of a local series in its system.
    Residual {
        #[command(flatten)]
        series: SeriesArgs,
        /// Evaluation point; defaults to points on the boundary of the declared disc.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
    },
    /// The vector v computed two ways.
    VVector {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Residue matrices C0, C1 of the three-dimensional system.
    DfBuild(DFArgs),
    /// K0, K1 from the Euler transformation.
    DfReduce(DFArgs),
    /// Conjugation of K0, K1 onto C0, C1.
    DfVerify(DFArgs),
    /// Integral solution and its residual.
    DfSolve {
        #[command(flatten)]
        df: DFArgs,
        #[arg(long)]
        x: Option<f64>,
        /// Node budget per refinement level.
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Every identity and residual suite.
    VerifyAll {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}
