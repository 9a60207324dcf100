use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use descff::{Error, Precision};

#[derive(Parser, Debug)]
#[command(name = "descff", version, about = "Form factors of exponential fields and their descendants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate J^g_{N,a}(X), optionally with the physical form factor.
    Eval(EvalArgs),
    /// Run a suite of identity checks; exit code 1 if any fails.
    Verify(VerifyArgs),
    /// Solve for the reflection matrix on one chiral level.
    Reflect(ReflectArgs),
    /// Print the normalization constants at (p, a).
    Constants(ConstantsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Coupling p.
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    /// Seed for every random sample.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Pass threshold for identity checks.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    pub precision: PrecisionArg,
    /// Also write the JSON document to this path.
    #[arg(long)]
    pub json_out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionArg {
    Double,
    Extended,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    /// Exponent parameter a (complex syntax such as 0.1 or 0.1+0.02i). Without it the result is
    /// a Laurent polynomial in ρ = e^{iπa}.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
    /// Element: inline syntax ("c-1^2*c-2 + (0.5+0i)*cbar-3"), a JSON term list, or h2 / h11.
    #[arg(long, default_value = "1")]
    pub element: String,
    /// Particle number for randomly sampled points.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated points x_i.
    #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub x: Option<Vec<Complex64>>,
    /// Comma-separated rapidities; also assembles the physical form factor.
    #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub theta: Option<Vec<Complex64>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Residues,
    Reflection,
    Eom,
    Em,
    Kink,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Largest particle number (oracle, residues) or level (reflection, kink); suite default if absent.
    #[arg(long)]
    pub n: Option<usize>,
    /// Exponent parameter for suites that fix one; sampled otherwise.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
}

#[derive(Args, Debug)]
pub struct ReflectArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
    /// Chiral level.
    #[arg(long)]
    pub level: u32,
    /// Largest particle number used for the constraints (default level + 4).
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|e| format!("not a complex number: {s:?} ({e})"))
}

/// Exit status for a library error: 2 for bad input, 3 for numerical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Domain(_) | Error::Degenerate { .. } | Error::MixedModes => 2,
        Error::Pole(_) | Error::Quadrature { .. } | Error::Solver(_) | Error::Decomposition { .. } => 3,
    }
}
