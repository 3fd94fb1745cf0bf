use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use edgeflow::walk::Variety;

#[derive(Parser, Debug)]
#[command(name = "edgeflow", version, about = "Edge-flow normal forms, geodesics and random walks on free metabelian groups")]
pub struct Cli {
    /// Worker threads (outputs do not depend on it)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write an experiment manifest to this path
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyArg {
    Abelian,
    Free,
    Nilpotent2,
    Metabelian,
    Lamplighter,
}

impl From<VarietyArg> for Variety {
    fn from(v: VarietyArg) -> Variety {
        match v {
            VarietyArg::Abelian => Variety::Abelian,
            VarietyArg::Free => Variety::Free,
            VarietyArg::Nilpotent2 => Variety::Nilpotent2,
            VarietyArg::Metabelian => Variety::Metabelian,
            VarietyArg::Lamplighter => Variety::Lamplighter,
        }
    }
}

/// Group selection shared by the algebraic and walk subcommands.
#[derive(Args, Debug, Clone, Serialize)]
pub struct GroupArgs {
    #[arg(long, value_enum)]
    pub variety: VarietyArg,

    /// Lattice dimension; lamplighter words use d + 1 letters
    #[arg(long)]
    pub d: usize,

    /// Lamp modulus (0 for Z); lamplighter only
    #[arg(long)]
    pub m: Option<u64>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Normal form of a word
    Eval {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        word: String,
    },
    /// Decide whether two words are equal
    Eq {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        u: String,
        v: String,
    },
    /// Product of two elements
    Mul {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        u: String,
        v: String,
    },
    /// Inverse of an element
    Inv {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        word: String,
    },
    /// Shortest-word bounds in the free metabelian group
    Minlen {
        #[arg(long)]
        d: usize,
        word: String,
        /// Longest word length the exact search may try [default: heuristic length]
        #[arg(long)]
        max_len: Option<usize>,
        /// Search node cap for the exact solver
        #[arg(long, default_value_t = edgeflow::geodesic::DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Escape-rate statistics of random walks
    Walk {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        #[arg(long)]
        seed: u64,
        /// Comma-separated step counts
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<u64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Print the letters and final element of trajectory 0 instead
        #[arg(long)]
        trace: bool,
    },
    /// Ball sizes of the Cayley graph
    Growth {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        #[arg(long)]
        n_max: usize,
        /// Cap on stored elements
        #[arg(long, default_value_t = edgeflow::walk::DEFAULT_ELEMENT_BUDGET)]
        budget: usize,
    },
    /// Exact entropy of the step-N distribution
    Entropy {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        #[arg(long)]
        n_max: usize,
    },
    /// Entropy, escape and growth bounds side by side
    Inequality {
        #[command(flatten)]
        #[serde(flatten)]
        group: GroupArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        entropy_n: Option<usize>,
        #[arg(long)]
        growth_n: Option<usize>,
        #[arg(long)]
        drift_n: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Limit flows, Green function and lamp configurations
    #[command(subcommand)]
    Boundary(BoundaryCommand),
    /// Re-run a manifest and check its output digest
    Replay {
        path: String,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "boundary")]
pub enum BoundaryCommand {
    /// Window edge flows at N/2 and N for one walk
    StableFlow {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        /// Trajectory number under the seed
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 5)]
        radius: u32,
    },
    /// Green function G(0, x) by quadrature, optionally with Monte Carlo
    Green {
        #[arg(long)]
        d: usize,
        /// Comma-separated coordinates of x
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        x: Vec<i64>,
        #[arg(long, default_value_t = edgeflow::boundary::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Monte Carlo walks (0 to skip)
        #[arg(long, default_value_t = 0)]
        walks: u64,
        #[arg(long, default_value_t = 1000)]
        horizon: u64,
        /// Required when --walks is positive
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Expected limit flow on an edge
    ExpectedFlow {
        #[arg(long)]
        d: usize,
        /// Comma-separated coordinates of the edge base
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        base: Vec<i64>,
        #[arg(long)]
        axis: usize,
        #[arg(long, default_value_t = edgeflow::boundary::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Traversal counts and stabilization of edge (0, axis 1)
    Recurrence {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        /// Comma-separated step counts
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        checkpoints: Vec<u64>,
    },
    /// Stability of lamplighter lamp configurations in a window
    FinalConfig {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        /// Comma-separated horizons N
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        horizons: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        radius: u32,
        /// Seeds also checked against the metabelian projection
        #[arg(long, default_value_t = 4)]
        check_seeds: u64,
    },
}
