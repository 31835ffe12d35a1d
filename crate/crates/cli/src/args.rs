use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectral_paths::LaplacianKind;

/// Shortest paths by greedy descent on pinned Laplacian eigenvectors.
#[derive(Parser, Debug)]
#[command(name = "spectral-paths", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// combinatorial, random-walk or sym-normalized
    #[arg(long, global = true, default_value = "combinatorial")]
    pub laplacian: LaplacianKind,

    /// Try both pinnings and keep the shorter path (the default)
    #[arg(long, global = true, overrides_with = "no_symmetrize")]
    pub symmetrize: bool,

    /// Only pin the target
    #[arg(long, global = true, overrides_with = "symmetrize")]
    pub no_symmetrize: bool,

    /// Seed for graph generation and pair sampling
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Relative eigen-residual tolerance
    #[arg(long, global = true)]
    pub tol_residual: Option<f64>,

    /// Relative eigenvalue change tolerance
    #[arg(long, global = true)]
    pub tol_eig: Option<f64>,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn symmetrize(&self) -> bool {
        !self.no_symmetrize
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Edge list file, one `u v` pair per line
    #[arg(long)]
    pub file: Option<PathBuf>,

    /// petersen, path:N, cycle:N, complete:N or star:N
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the spectral path between two vertices
    Solve {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Also print the BFS distance and the excess
        #[arg(long)]
        verify: bool,
    },
    /// Dump the landscape pinned at a vertex as CSV
    Landscape {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        pin: u64,
    },
    /// Generate a random graph as an edge list
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Compare spectral paths with BFS and write a JSON report
    Bench(BenchArgs),
    /// Run the same pairs under all three Laplacians
    Compare {
        #[command(flatten)]
        source: GraphSource,
        /// `all` or a number of random pairs
        #[arg(long, default_value = "all")]
        pairs: Pairs,
        /// Seed for pair sampling (default: --seed)
        #[arg(long)]
        pair_seed: Option<u64>,
        #[arg(long)]
        record_pairs: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenFamily {
    /// G(n, p)
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Random geometric graph on a rectangle
    Geometric {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3.0)]
        width: f64,
        #[arg(long, default_value_t = 1.0)]
        height: f64,
        #[arg(long)]
        radius: f64,
        /// Also write point coordinates as CSV
        #[arg(long)]
        coords: Option<PathBuf>,
    },
    /// Uniform labeled tree
    Tree {
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchFamily {
    Er,
    Geometric,
    Tree,
    File,
    Builtin,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub family: BenchFamily,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 3.0)]
    pub width: f64,
    #[arg(long, default_value_t = 1.0)]
    pub height: f64,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<String>,
    /// `all` or a number of random pairs
    #[arg(long, default_value = "all")]
    pub pairs: Pairs,
    /// Instances per random family
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Seed for pair sampling (default: --seed)
    #[arg(long)]
    pub pair_seed: Option<u64>,
    /// Attempts per instance before giving up on a connected sample
    #[arg(long, default_value_t = 1000)]
    pub max_attempts: usize,
    /// Include wall-clock timings (reports are then no longer reproducible)
    #[arg(long)]
    pub timings: bool,
    /// Include every evaluated pair in the report
    #[arg(long)]
    pub record_pairs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairs {
    All,
    Random(usize),
}

impl std::str::FromStr for Pairs {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(Pairs::All);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("pair count must be at least 1".into()),
            Ok(k) => Ok(Pairs::Random(k)),
            Err(_) => Err(format!("expected `all` or a pair count, got `{s}`")),
        }
    }
}
