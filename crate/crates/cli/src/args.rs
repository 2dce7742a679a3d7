use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "convskel", version, about = "Network convexity, convex skeletons and backbones")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Global {
    /// Output directory.
    #[arg(long, global = true, env = "CONVSKEL_OUT", default_value = "convskel-out")]
    pub out: PathBuf,
    /// Master seed.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Expansion runs per convexity estimate [default: 100, or 50 with --fast].
    #[arg(long, global = true)]
    pub runs: Option<usize>,
    /// Output format; reports default to JSON, tables to TSV.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutFormat>,
    /// Desk-scale defaults: fewer runs and realisations.
    #[arg(long, global = true)]
    pub fast: bool,
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Global {
    pub fn runs(&self) -> usize {
        self.runs.unwrap_or(if self.fast { 50 } else { 100 })
    }

    pub fn realisations(&self, explicit: Option<usize>) -> usize {
        explicit.unwrap_or(if self.fast { 5 } else { 25 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum OutFormat {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Input {
    /// Edge list (`u v [w]`) or Pajek file (`.net`, `.paj`).
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Basic statistics and distributions.
    Stats(Input),
    /// Convexity X and corrected convexity Xs.
    Convexity(ConvexityArgs),
    /// Convex hull of a node set.
    Hull(HullArgs),
    /// Per-run convex expansion traces.
    Expand(Input),
    /// C-core inclusion and c-centrality per node.
    Ccore(CcoreArgs),
    /// Convex skeleton by targeted edge removal.
    Skeleton(SkeletonArgs),
    /// Uniform random spanning tree.
    SpanningTree(Input),
    /// Edge-betweenness backbone or salience skeleton.
    Backbone(BackboneArgs),
    /// Rewired null models and their convexity.
    Rewire(RewireArgs),
    /// Synthetic graphs.
    Generate(GenerateArgs),
    /// Pairwise graph edit distances.
    Ged(GedArgs),
    /// NMI and NVI between two partitions.
    ComparePartitions(CompareArgs),
    /// Modularity and inter-group edge fraction of a partition.
    Modularity(ModularityArgs),
    /// Node position scores and their correlations.
    Position(PositionArgs),
    /// Network, convex skeleton and spanning tree statistics per dataset.
    Pipeline(PipelineArgs),
    /// Re-run a recorded invocation.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ConvexityArgs {
    #[command(flatten)]
    pub input: Input,
    /// Also write the mean growth trace s(t).
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct HullArgs {
    #[command(flatten)]
    pub input: Input,
    /// Comma-separated node labels.
    #[arg(long, value_delimiter = ',', required = true)]
    pub nodes: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CcoreArgs {
    #[command(flatten)]
    pub input: Input,
    /// Expansion steps before inclusion is recorded.
    #[arg(long, default_value_t = 15)]
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum SkeletonMethod {
    Clustering,
    Ccentrality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum StopArg {
    DeltaC,
    XsPeak,
    Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum TieArg {
    Random,
    Lexicographic,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SkeletonArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value = "clustering")]
    pub method: SkeletonMethod,
    /// Share of edges removed per batch.
    #[arg(long, default_value_t = 0.01)]
    pub batch: f64,
    #[arg(long, value_enum, default_value = "delta-c")]
    pub stop: StopArg,
    /// Edge count for `--stop target`.
    #[arg(long)]
    pub target_edges: Option<usize>,
    /// Removal cap for peak searches.
    #[arg(long, default_value_t = 0.5)]
    pub max_removed: f64,
    /// Expansion runs per trajectory checkpoint.
    #[arg(long, default_value_t = 10)]
    pub checkpoint_runs: usize,
    #[arg(long, value_enum, default_value = "random")]
    pub tie_break: TieArg,
    /// Expansion runs per c-profile refresh.
    #[arg(long, default_value_t = 20)]
    pub profile_runs: usize,
    #[arg(long, default_value_t = 1)]
    pub refresh_stride: usize,
    #[arg(long, default_value_t = 10)]
    pub checkpoint_stride: usize,
    /// Skip bridges in c-centrality removal.
    #[arg(long)]
    pub keep_connected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum BackboneKind {
    Betweenness,
    Salience,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum ModeArg {
    High,
    Low,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum SptArg {
    All,
    Single,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BackboneArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum)]
    pub kind: BackboneKind,
    #[arg(long, value_enum, default_value = "high")]
    pub mode: ModeArg,
    /// Edges kept by the betweenness backbone.
    #[arg(long)]
    pub target_edges: Option<usize>,
    /// Salience above which edges are kept.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value = "all")]
    pub spt: SptArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum RewireMode {
    Degree,
    Full,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RewireArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, value_enum, default_value = "degree")]
    pub mode: RewireMode,
    /// Comma-separated fractions of edges to rewire.
    #[arg(long, value_delimiter = ',', default_value = "0.05")]
    pub fraction: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum KindArg {
    Er,
    LatticeRect,
    LatticeTri,
    RandomTree,
    UniformTree,
    Convex,
    CorePeriphery,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum ReattachArg {
    Any,
    Core,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 225)]
    pub n: usize,
    #[arg(long, default_value_t = 10.0)]
    pub avg_k: f64,
    #[arg(long, default_value_t = 15)]
    pub side: usize,
    /// Tree fraction of the convex generator.
    #[arg(long, default_value_t = 0.25)]
    pub t: f64,
    #[arg(long, default_value_t = 0.43)]
    pub core_fraction: f64,
    #[arg(long, default_value_t = 0.01)]
    pub density_core: f64,
    #[arg(long, default_value_t = 0.001)]
    pub density_cross: f64,
    #[arg(long, default_value_t = 0.0)]
    pub density_periphery: f64,
    #[arg(long, value_enum, default_value = "any")]
    pub reattach: ReattachArg,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GedArgs {
    /// Graphs on the same labelled node set.
    #[arg(long = "inputs", num_args = 2.., required = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum NormArg {
    Arithmetic,
    Max,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CompareArgs {
    /// Partition files, `label community` per line.
    #[arg(long)]
    pub p1: PathBuf,
    #[arg(long)]
    pub p2: PathBuf,
    #[arg(long, value_enum, default_value = "arithmetic")]
    pub norm: NormArg,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ModularityArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub partition: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PositionArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PipelineArgs {
    /// Dataset files; each row uses the largest component.
    #[arg(long = "inputs", num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    /// Independent skeletons and spanning trees per dataset [default: 25, or 5 with --fast].
    #[arg(long)]
    pub realisations: Option<usize>,
    #[arg(long, default_value_t = 0.01)]
    pub batch: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
}
