use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mosaic_core::objectives::Objective;

/// Exact multi-objective selection of satellite images for mosaics.
///
/// Paths given as "-" read stdin or write stdout.
#[derive(Debug, Parser)]
#[command(name = "mosaic-select", version, args_override_self = true)]
pub struct Cli {
    /// JSON object supplying flags; keys are long flag names. A key named
    /// after the subcommand may hold that subcommand's flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded synthetic raw problem
    Generate(GenerateArgs),
    /// Convert a STAC ItemCollection into a raw problem
    Ingest(IngestArgs),
    /// Overlay footprints into parts and assign clouds
    Preprocess(PreprocessArgs),
    /// Enumerate the Pareto front of a discrete instance
    Solve(SolveArgs),
    /// Write the mixed integer program in LP format
    ExportLp(ExportLpArgs),
    /// Objective vector of an image selection
    Evaluate(EvaluateArgs),
    /// Hypervolume of a front file
    Hypervolume(HypervolumeArgs),
    /// Hypervolume scores of several fronts relative to the best
    Score(ScoreArgs),
    /// Draw parts, a cover or a front witness as SVG
    Render(RenderArgs),
    /// Solve batches of synthetic instances and report a CSV table
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 30)]
    pub images: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// AOI width in metres
    #[arg(long, default_value_t = 10_000.0)]
    pub width: f64,
    /// AOI height in metres
    #[arg(long, default_value_t = 10_000.0)]
    pub height: f64,
    /// Smallest footprint side as a fraction of the AOI side
    #[arg(long, default_value_t = 0.3)]
    pub scale_min: f64,
    /// Largest footprint side as a fraction of the AOI side
    #[arg(long, default_value_t = 0.7)]
    pub scale_max: f64,
    /// Make the first image cover the whole AOI
    #[arg(long)]
    pub first_covers_aoi: bool,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// STAC ItemCollection JSON
    pub catalog: PathBuf,
    /// GeoJSON Polygon (bare geometry or Feature) for the area of interest
    #[arg(long)]
    pub aoi: PathBuf,
    /// Dotted path of the price (currency units) inside each feature
    #[arg(long, default_value = "properties.price")]
    pub price_path: String,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// Raw problem JSON
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub cloud_seed: u64,
    /// Also write the preprocessing report as JSON
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Gavanelli,
    Saugmencon,
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gavanelli => "gavanelli",
            Algorithm::Saugmencon => "saugmencon",
            Algorithm::Brute => "brute",
        }
    }
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Wall-clock limit in milliseconds
    #[arg(long)]
    pub budget_ms: Option<u64>,
    /// Search node limit
    #[arg(long)]
    pub budget_nodes: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Discrete instance JSON
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Gavanelli)]
    pub algorithm: Algorithm,
    /// Objective optimised by saugmencon
    #[arg(long, default_value = "cost")]
    pub main_objective: Objective,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportLpArgs {
    #[arg(default_value = "-")]
    pub input: PathBuf,
    /// Single objective to minimise
    #[arg(long, default_value = "cost", conflicts_with = "weights")]
    pub objective: Objective,
    /// Weighted sum: four comma-separated weights (cost,cloud,resolution,incidence)
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// Extra bound OBJECTIVE=VALUE (repeatable)
    #[arg(long = "bound", value_name = "OBJECTIVE=VALUE")]
    pub bounds: Vec<String>,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(default_value = "-")]
    pub input: PathBuf,
    /// Selected image ids
    #[arg(long, value_delimiter = ',', required = true)]
    pub images: Vec<String>,
}

#[derive(Debug, Args)]
pub struct HypervolumeArgs {
    /// Front JSON
    #[arg(default_value = "-")]
    pub front: PathBuf,
    /// "auto" (the point stored in the front) or four comma-separated integers
    #[arg(long, default_value = "auto")]
    pub reference: String,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Front JSON files, one per strategy (named by file stem)
    #[arg(required = true)]
    pub fronts: Vec<PathBuf>,
    /// "auto" (component-wise maximum of the stored points) or four integers
    #[arg(long, default_value = "auto")]
    pub reference: String,
    /// Print a JSON object instead of text lines
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Discrete instance JSON (must come from preprocess)
    #[arg(default_value = "-")]
    pub input: PathBuf,
    /// Front JSON whose witness to draw
    #[arg(long, conflicts_with = "images")]
    pub front: Option<PathBuf>,
    /// Index of the front point to draw
    #[arg(long, default_value_t = 0, requires = "front")]
    pub point: usize,
    /// Image ids of a cover to draw
    #[arg(long, value_delimiter = ',')]
    pub images: Option<Vec<String>>,
    /// Raw problem whose AOI outline is drawn
    #[arg(long)]
    pub raw: Option<PathBuf>,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Image counts of the synthetic instances
    #[arg(long, value_delimiter = ',', default_value = "6,8,10")]
    pub images: Vec<usize>,
    /// Number of seeds per image count
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "gavanelli,saugmencon")]
    pub algorithms: Vec<Algorithm>,
    /// Per-run wall-clock limit in milliseconds
    #[arg(long, default_value_t = 10_000)]
    pub budget_ms: u64,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}
