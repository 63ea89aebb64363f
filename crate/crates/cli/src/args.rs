use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use deform_core::verify::DEFAULT_SEED;

#[derive(Debug, Parser, Serialize)]
#[command(name = "deform", version, about = "Exact star products, smash products and their numerical kernels")]
pub struct Cli {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// λ-ordered product of two polynomials on R^{2n}.
    Star(StarArgs),
    /// Product in an (L-R) smash algebra, or in an enveloping bialgebra.
    Smash(SmashArgs),
    /// Product transported along a group action.
    Udf(UdfArgs),
    /// Symplectic triple constructions.
    Triple(TripleArgs),
    /// Oscillatory-integral product on a WKB space.
    #[command(subcommand)]
    Wkb(WkbCommand),
    /// The acceptance suite.
    VerifyAll(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Engine {
    Direct,
    Smash,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct StarArgs {
    /// Ordering parameter; 0 is standard, 1/2 Weyl, 1 anti-standard.
    #[arg(long, default_value = "1/2")]
    pub lambda: String,
    /// Truncation order in t.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Number of (q, p) pairs; inferred from the inputs when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Engine::Direct)]
    pub engine: Engine,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SmashKindArg {
    Lr,
    Plain,
}

#[derive(Debug, Args, Serialize)]
pub struct SmashArgs {
    #[arg(long, value_enum, default_value_t = SmashKindArg::Lr)]
    pub kind: SmashKindArg,
    /// `lambda:R[,n=N][,group=G]` for the phase-space actions, or `lie:FILE`
    /// for the enveloping bialgebra of a Lie algebra.
    #[arg(long, default_value = "lambda:1/2")]
    pub algebra: String,
    /// Tensor `f | a`, sums separated by `;`.
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
    /// Also run the associativity and Hopf checks.
    #[arg(long)]
    pub verify: bool,
    /// Degree box of the checks.
    #[arg(long, default_value_t = 2)]
    pub deg: u32,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct UdfArgs {
    /// Group file or bundled name (`heisenberg.grp`, `abelian:N`).
    #[arg(long, default_value = "heisenberg.grp")]
    pub group: String,
    /// `lambda:R` or `pointwise`.
    #[arg(long, default_value = "lambda:1/2")]
    pub product: String,
    /// `regular` or `trivial:M`.
    #[arg(long, default_value = "regular")]
    pub action: String,
    /// Function on M in the variables `w1..wm`.
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
    #[arg(long, default_value_t = 2)]
    pub deg: u32,
    #[arg(long, default_value_t = 3)]
    pub order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum TripleAction {
    Validate,
    Extend,
    Diagnose,
    Weights,
    BuildS,
    Twist,
}

#[derive(Debug, Args, Serialize)]
pub struct TripleArgs {
    #[arg(value_enum)]
    pub action: TripleAction,
    /// Triple file or bundled name.
    pub file: String,
    /// Declare the triple indecomposable.
    #[arg(long)]
    pub indecomposable: bool,
    /// Declare the triple non-flat.
    #[arg(long)]
    pub non_flat: bool,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum WkbCommand {
    /// `u ⋆ v` at one point.
    Star(WkbStarArgs),
    /// Residual fit over a sweep of ħ.
    Asymptotic(WkbAsymptoticArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct WkbStarArgs {
    /// `rank1`, `flat`, or a space file.
    #[arg(long, default_value = "rank1")]
    pub space: String,
    #[arg(long)]
    pub hbar: f64,
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
    /// Evaluation point `a,l`.
    #[arg(long, default_value = "0,0")]
    pub x0: String,
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    /// Largest accepted error estimate.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct WkbAsymptoticArgs {
    #[arg(long, default_value = "rank1")]
    pub space: String,
    #[arg(long, default_value = "0.05,0.1,0.15,0.2,0.3")]
    pub hbars: String,
    #[arg(long, default_value = "gauss*1")]
    pub u: String,
    #[arg(long, default_value = "gauss*q")]
    pub v: String,
    #[arg(long, default_value = "0.3,0.2")]
    pub x0: String,
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Only the exact-arithmetic criteria.
    #[arg(long)]
    pub quick: bool,
    /// Comma-separated criterion numbers.
    #[arg(long)]
    pub only: Option<String>,
}
