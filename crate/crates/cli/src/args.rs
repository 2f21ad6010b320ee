use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use qbell_core::certified::parse_tolerance;
use qbell_core::partition::{Statistic, DEFAULT_CAP};
use qbell_core::poly::parse_rational;
use qbell_core::Rational;

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn tolerance(s: &str) -> Result<Rational, String> {
    parse_tolerance(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "qbell",
    version,
    about = "Exact q-Stirling, q-Bell and q-Poisson computations with built-in identity checks"
)]
pub struct Cli {
    /// Output format; csv is available for tabular results only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Omit the timestamp from JSON records.
    #[arg(long, global = true)]
    pub no_timestamp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// Carlitz q-Stirling numbers (inv-weighted partitions).
    Carlitz,
    /// Cigler's numbers (cigl-weighted partitions).
    Cigl,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Carlitz => "carlitz",
            Variant::Cigl => "cigl",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q-Stirling numbers S[n,k], one entry or the whole row n.
    Stirling {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Evaluate at this q instead of printing polynomials.
        #[arg(long, value_parser = rational)]
        q: Option<Rational>,
    },
    /// q-Bell numbers B_n = sum_k S[n,k].
    Bell {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational)]
        q: Option<Rational>,
        /// Print sum_k S[n,k] lambda^k instead.
        #[arg(long)]
        lambda_poly: bool,
    },
    /// q-Dobinski identity: formal series check or certified numeric sum.
    Dobinski(DobinskiArgs),
    /// Certified q-Poisson quantities.
    Poisson {
        #[command(subcommand)]
        quantity: PoissonQuantity,
    },
    /// Run an identity verifier; exit status 1 on failure.
    Verify {
        /// Add 1 to one table entry or series coefficient before checking.
        #[arg(long, global = true)]
        perturb: bool,
        #[command(subcommand)]
        which: VerifyWhich,
    },
    /// Enumerate set partitions of {0..n-1} with their statistics.
    Partitions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "cigl,inv")]
        stat: Vec<Statistic>,
        /// Print sum q^stat instead of listing partitions.
        #[arg(long)]
        weighted: bool,
        /// Largest n enumerated without complaint.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Stirling and Bell numbers of a number sequence psi.
    Psi {
        #[command(subcommand)]
        quantity: PsiQuantity,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["formal", "q"])))]
pub struct DobinskiArgs {
    #[arg(long)]
    pub n: usize,
    /// Check the identity as formal power series in lambda.
    #[arg(long, requires = "order", conflicts_with_all = ["q", "lambda"])]
    pub formal: bool,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, requires = "lambda", value_parser = rational)]
    pub q: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub lambda: Option<Rational>,
    #[arg(long, default_value = "1e-12", value_parser = tolerance)]
    pub eps: Rational,
    /// Add 1 to one table entry before the formal check.
    #[arg(long, requires = "formal")]
    pub perturb: bool,
}

#[derive(Debug, Args)]
pub struct PoissonParamArgs {
    #[arg(long, value_parser = rational)]
    pub q: Rational,
    #[arg(long, value_parser = rational)]
    pub lambda: Rational,
    #[arg(long, default_value = "1e-12", value_parser = tolerance)]
    pub eps: Rational,
    /// Give up after this many terms.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum PoissonQuantity {
    /// P(X = k).
    Pmf {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        params: PoissonParamArgs,
    },
    /// E[(X_q)^n].
    Moment {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: PoissonParamArgs,
    },
    /// E[X_q (X-1)_q ... (X-m+1)_q].
    FactorialMoment {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        params: PoissonParamArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyWhich {
    /// (x_q)^n = sum_k S[n,k] x_q (x-1)_q ... (x-k+1)_q for x = 0..=xmax.
    Eq4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        xmax: usize,
    },
    /// q-Maclaurin recovery and mean identity of the q-Poisson generating function.
    Eq8 {
        #[arg(long, value_parser = rational)]
        q: Rational,
        #[arg(long, value_parser = rational)]
        lambda: Rational,
        #[arg(long)]
        order: usize,
    },
    /// The cigl Dobinski identity.
    CiglDobinski {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
    },
    /// Carlitz numbers against inv-weighted partition sums.
    InvCalibration {
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PsiQuantity {
    /// Row n of the psi-Stirling triangle.
    Stirling {
        /// gauss:a/b, natural, fibonacci or file:PATH
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
        /// Also report the defining relation at this many nodes past n.
        #[arg(long, default_value_t = 0)]
        residuals: usize,
    },
    /// Sum of row n.
    Bell {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
    },
}
