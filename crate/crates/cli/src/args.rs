use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use epsident::epsident::CChoice;

pub const DEFAULT_SEED: u64 = 20_221_015;

#[derive(Debug, Parser)]
#[command(
    name = "epsident",
    version,
    about = "Tight bounds and epsilon-identification for causal effects and probabilities of causation"
)]
pub struct Cli {
    /// Print the canonical JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tight bounds on causal effects, PNS, PN and PS
    Bounds(BoundsArgs),
    /// Epsilon-identification of PNS, PN, PS and causal effects
    Epsident(EpsidentArgs),
    /// Benefit of selecting a subpopulation for treatment
    UnitSelect(UnitSelectArgs),
    /// Cross-check the engine against the brute-force oracle
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct InputArgs {
    /// JSON file with "experimental", "observational" and optional "bounds"
    pub input: Option<PathBuf>,

    /// Experimental study counts as arm,outcome,count CSV
    #[arg(long, value_name = "CSV")]
    pub experimental_csv: Option<PathBuf>,

    /// Observational study counts as arm,outcome,count CSV
    #[arg(long, value_name = "CSV")]
    pub observational_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Report bounds even when experimental and observational data disagree
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Pns,
    Pn,
    Ps,
    Effect,
    All,
}

#[derive(Debug, Args)]
pub struct EpsidentArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Radius of the identification
    #[arg(long, required_unless_present = "minimal", conflicts_with = "minimal")]
    pub eps: Option<f64>,

    /// Report the smallest radius at which each quantity is identified
    #[arg(long)]
    pub minimal: bool,

    #[arg(long, value_enum, default_value_t = QuantityArg::All)]
    pub quantity: QuantityArg,

    /// Identify P(y_x) under a binary confounder with P(u) <= --u-max
    #[arg(long, requires = "u_max", conflicts_with = "minimal")]
    pub confounder: bool,

    #[arg(long, value_name = "P")]
    pub u_max: Option<f64>,

    /// A number, "auto" (largest firing c on a 1e-4 grid) or "reference"
    #[arg(long, value_parser = parse_c, default_value = "auto")]
    pub c: CChoice,

    /// P(x); defaults to the observational data
    #[arg(long, value_name = "P")]
    pub p_x: Option<f64>,

    /// P(y|x); defaults to the observational data
    #[arg(long, value_name = "P")]
    pub p_y_given_x: Option<f64>,
}

#[derive(Debug, Args)]
pub struct UnitSelectArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Payoffs for complier, always-taker, never-taker and defier
    #[arg(
        long,
        num_args = 4,
        required = true,
        allow_negative_numbers = true,
        value_names = ["BETA", "GAMMA", "THETA", "DELTA"]
    )]
    pub payoffs: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Number of sampled models
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Also check benefit identification on the input
    #[arg(
        long,
        num_args = 4,
        allow_negative_numbers = true,
        value_names = ["BETA", "GAMMA", "THETA", "DELTA"]
    )]
    pub payoffs: Option<Vec<f64>>,
}

pub fn parse_c(s: &str) -> Result<CChoice, String> {
    match s {
        "auto" => Ok(CChoice::Auto),
        "reference" => Ok(CChoice::Reference),
        _ => s
            .parse::<f64>()
            .map(CChoice::Explicit)
            .map_err(|_| format!("{s:?} is not a number, \"auto\" or \"reference\"")),
    }
}
