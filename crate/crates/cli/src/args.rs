use std::path::PathBuf;

use artinian::points::SectionMode;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "artinian", version, about = "Experiments with Artinian graded algebras")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Expected result (inline JSON or a file); a mismatch exits with status 3.
    #[arg(long, global = true, value_name = "JSON|FILE")]
    pub assert: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function of R/I.
    Hilbert(HilbertParams),
    /// Fröberg prediction for general forms.
    Froberg(FrobergParams),
    /// Weak Lefschetz property.
    Wlp(LefschetzParams),
    /// Strong Lefschetz property.
    Slp(LefschetzParams),
    /// Maximal rank property.
    Mrp(LefschetzParams),
    /// Graded Betti numbers.
    Betti(BettiParams),
    /// Ghost terms of the minimal free resolution.
    Ghosts(GhostParams),
    /// Residual of I in a complete intersection J.
    Link(LinkParams),
    /// Hypersurface sections of points in the plane.
    Points(PointsParams),
    /// Run a parameter grid and append the records to a JSONL store.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct FieldArgs {
    /// Characteristic of the coefficient field (default: $ARTINIAN_PRIME, then 32003).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    /// Work over the rationals.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub rational: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct InstanceArgs {
    /// Number of variables.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Generator degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<usize>,
    /// Monomial generators, e.g. "x^2,xy,z^3".
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<String>,
    /// Use x_i^{d_i} instead of general forms of the given degrees.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub monomial_ci: bool,
    /// Ideal document (JSON).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct HilbertParams {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    /// Last degree to compute.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tmax: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FrobergParams {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<usize>,
    /// Last degree of the prediction (default: sum of the degrees).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    /// Also compute the Hilbert function of general forms and compare.
    #[arg(long)]
    #[serde(default)]
    pub compare: bool,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct LefschetzParams {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    /// Random multipliers tried per spot.
    #[arg(long, default_value_t = artinian::lefschetz::DEFAULT_TRIALS)]
    pub trials: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct BettiParams {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    /// Largest internal degree (default: socle degree + n).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jmax: Option<usize>,
    /// Print only the Betti diagram.
    #[arg(long)]
    #[serde(default)]
    pub diagram: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Complete intersection plus q forms of the socle degree.
    SocleForms,
    /// Socle forms with q = n - 2 (ghost between the last two modules).
    LastModule,
    /// q = n - 3 socle forms over a complete intersection with quadrics.
    MiddleGhost,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GhostParams {
    #[command(flatten)]
    #[serde(flatten)]
    pub instance: InstanceArgs,
    /// Build a family instance; --degrees are then the complete intersection degrees.
    #[arg(long, value_enum)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    /// Number of extra forms for the socle-forms preset.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jmax: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct LinkParams {
    /// Treat --J and --I as monomial generator lists instead of ideal documents.
    #[arg(long)]
    #[serde(default)]
    pub monomial: bool,
    /// The complete intersection J.
    #[arg(long = "J", value_name = "IDEAL")]
    pub j: String,
    /// The ideal I containing J.
    #[arg(long = "I", value_name = "IDEAL")]
    pub i: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointConfig {
    General,
    Collinear,
    /// Integer coordinates from --file, one point "a b c" per line.
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormMode {
    General,
    Product,
    Sparse,
}

impl From<FormMode> for SectionMode {
    fn from(m: FormMode) -> Self {
        match m {
            FormMode::General => SectionMode::General,
            FormMode::Product => SectionMode::Product,
            FormMode::Sparse => SectionMode::Sparse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PointsParams {
    /// Number of points.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[arg(long, value_enum, default_value = "general")]
    pub config: PointConfig,
    #[arg(long, required_if_eq("config", "file"))]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    /// Degree of the section form.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fdeg: Option<usize>,
    #[arg(long, value_enum, default_value = "general")]
    pub fmode: FormMode,
    #[arg(long, default_value_t = artinian::lefschetz::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Sweep description (JSON, or TOML by extension).
    #[arg(long)]
    pub spec: PathBuf,
    /// JSONL result store; existing records are kept and skipped.
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}
