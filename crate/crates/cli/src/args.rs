use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "halfgap", version, about = "Distance to halfspaces: exact solvers, k-SUM reductions, SQ simulations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KSumMethod {
    Brute,
    Mitm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistMethod {
    Auto,
    Sep,
    Cand,
    #[value(name = "1d")]
    Sweep1d,
    #[value(name = "2d")]
    Sweep2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Exact,
    Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchTask {
    Mitm,
    ExactCand,
    ReductionE2e,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmKind {
    /// No queries, fixed estimate 1/2.
    Zero,
    /// Random halfspace probes.
    Probe,
    /// Family members as table queries.
    Table,
}

/// A k-SUM instance or its reduction, whichever is given.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct InstanceSource {
    #[arg(long)]
    pub ksum: Option<PathBuf>,
    #[arg(long)]
    pub reduced: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random k-SUM instance with values in [-n^(2k), n^(2k)].
    GenKsum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Plant a solution.
        #[arg(long)]
        planted: bool,
    },
    /// Solve a k-SUM instance.
    SolveKsum {
        #[arg(long)]
        ksum: PathBuf,
        #[arg(long, value_enum, default_value_t = KSumMethod::Mitm)]
        method: KSumMethod,
    },
    /// Build the point set of the reduction.
    Reduce {
        #[arg(long)]
        ksum: PathBuf,
    },
    /// Exact distance of a reduced instance and its side of the gap.
    VerifyGap {
        #[command(flatten)]
        source: InstanceSource,
        /// Largest point set handed to the exact solver.
        #[arg(long, default_value_t = halfgap_core::reduction::DEFAULT_GAP_CAP)]
        cap: usize,
    },
    /// Decide k-SUM through a distance solver.
    Decide {
        #[command(flatten)]
        source: InstanceSource,
        #[arg(long, value_enum, default_value_t = Solver::Exact)]
        solver: Solver,
        /// Accuracy for the estimate solver; the reduction's eps by default.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value = "1/3")]
        delta: String,
    },
    /// Exact distance of a labeled dataset.
    DistExact {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_enum, default_value_t = DistMethod::Auto)]
        method: DistMethod,
        /// Point cap for the separability method.
        #[arg(long, default_value_t = halfgap_core::exact::DEFAULT_POINT_CAP)]
        cap: usize,
    },
    /// Sampled distance estimate.
    DistEst {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        delta: String,
    },
    /// Timed scaling runs with a log-log slope fit.
    Bench {
        #[arg(long, value_enum)]
        task: BenchTask,
        /// Grid of sizes n.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Timed repetitions per size; the median is fitted.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Write a log-log chart here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Sample sphere packings over many seeds.
    SqPack {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        threshold: f64,
        #[arg(long, default_value_t = 50)]
        retries: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Build f0 for a query set and report its correlations.
    SqF0 {
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Base points of the support.
        #[arg(long, default_value_t = 1000)]
        m: usize,
        #[arg(long)]
        tau: f64,
        /// JSON list of queries; random halfspace queries otherwise.
        #[arg(long)]
        queries: Option<PathBuf>,
        /// Number of random queries when no file is given.
        #[arg(long, default_value_t = 10)]
        num_queries: usize,
        /// JSON list of reference halfspaces.
        #[arg(long)]
        references: Option<PathBuf>,
        /// Write the f0 assignment here.
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Run an SQ algorithm against the zero-answering adversary.
    SqAdversary {
        /// Family size (rows of a Hadamard matrix).
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Base points of the support; rounded up to a power of two >= s.
        #[arg(long, default_value_t = 64)]
        m: usize,
        #[arg(long, value_enum, default_value_t = AlgorithmKind::Probe)]
        algorithm: AlgorithmKind,
        /// Queries per run for probe and table algorithms.
        #[arg(long, default_value_t = 1)]
        queries: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Extreme pairwise angles of random unit vectors and the fitted law.
    SqAngles {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}
