use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nearby_core::layout::{MatrixOrder, Normalization};
use nearby_core::EdgeStrategy;

mod commands;
mod table;

use commands::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "nearby",
    version,
    about = "Explore multi-label sentence annotations of scientific texts"
)]
struct Cli {
    /// Corpus file.
    #[arg(long, global = true, env = "NEARBY_CORPUS")]
    corpus: Option<PathBuf>,

    /// Output format. `export` writes SVG unless `json` is requested.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a corpus and print per-document tag statistics.
    Validate {
        /// Corpus file; overrides `--corpus`.
        path: Option<PathBuf>,
    },
    /// Print per-document tag statistics only.
    Stats { path: Option<PathBuf> },
    /// Render one view of one document to SVG or layout JSON.
    Export(ExportArgs),
    /// Compare two annotations of the same sentences.
    Agreement { path_a: PathBuf, path_b: PathBuf },
    /// Generate a synthetic corpus.
    Synth(SynthArgs),
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = nearby_service::DEFAULT_PORT)]
        port: u16,
        /// Directory of static frontend assets.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ViewArg {
    Graph,
    Matrix,
    Waffle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizeArg {
    RawMax,
    Conditional,
}

impl From<NormalizeArg> for Normalization {
    fn from(v: NormalizeArg) -> Self {
        match v {
            NormalizeArg::RawMax => Normalization::RawMax,
            NormalizeArg::Conditional => Normalization::Conditional,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Id,
    Frequency,
}

impl From<OrderArg> for MatrixOrder {
    fn from(v: OrderArg) -> Self {
        match v {
            OrderArg::Id => MatrixOrder::Id,
            OrderArg::Frequency => MatrixOrder::Frequency,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgesArg {
    Mst,
    Complete,
}

impl From<EdgesArg> for EdgeStrategy {
    fn from(v: EdgesArg) -> Self {
        match v {
            EdgesArg::Mst => EdgeStrategy::Mst,
            EdgesArg::Complete => EdgeStrategy::Complete,
        }
    }
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub document: String,
    #[arg(long, value_enum)]
    pub view: ViewArg,
    /// Comma-separated category keys or ids to remove.
    #[arg(long)]
    pub exclude: Option<String>,
    /// Comma-separated category keys or ids to keep.
    #[arg(long)]
    pub include: Option<String>,
    /// Half-open sentence range `start,end`.
    #[arg(long)]
    pub range: Option<String>,
    #[arg(long, value_enum, default_value_t = NormalizeArg::RawMax)]
    pub normalize: NormalizeArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Id)]
    pub order: OrderArg,
    #[arg(long, value_enum, default_value_t = EdgesArg::Mst)]
    pub edges: EdgesArg,
    #[arg(long)]
    pub perplexity: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Comma-separated sentence counts, one per document.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 3.0)]
    pub mean_tags: f64,
    #[arg(long, default_value_t = 1)]
    pub min_tags: usize,
    #[arg(long, default_value_t = 5)]
    pub max_tags: usize,
    #[arg(long, default_value_t = 0.15)]
    pub blank_rate: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let corpus_path = |path: Option<PathBuf>| {
        path.or(cli.corpus.clone())
            .ok_or_else(|| Failure::Usage("no corpus given; pass a path, --corpus or NEARBY_CORPUS".into()))
    };
    match cli.command {
        Command::Validate { path } => commands::validate(&corpus_path(path)?, cli.format, false),
        Command::Stats { path } => commands::validate(&corpus_path(path)?, cli.format, true),
        Command::Export(args) => commands::export(&corpus_path(None)?, &args, cli.format, cli.seed),
        Command::Agreement { path_a, path_b } => commands::agreement(&path_a, &path_b, cli.format),
        Command::Synth(args) => commands::synth(&args, cli.format, cli.seed),
        Command::Serve { port, static_dir } => commands::serve(corpus_path(None)?, port, static_dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
