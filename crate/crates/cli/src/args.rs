use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "roundsim",
    version,
    about = "Parallel cost of random population-protocol rounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format (defaults depend on the subcommand)
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write output here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for trial fan-out; output does not depend on it
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one random round and print it as JSON lines
    Sample {
        #[arg(long)]
        n: usize,
        /// Round length (defaults to n)
        #[arg(long = "t")]
        length: Option<usize>,
        /// Required unless --adversarial
        #[arg(long)]
        seed: Option<u64>,
        /// Stream index under the master seed
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Emit the worst-case chain round instead of a random one
        #[arg(long)]
        adversarial: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Mean longest chain for one population size
    Depth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, required = true)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Mean longest chain over several population sizes
    Sweep {
        /// Comma-separated population sizes
        #[arg(long = "n", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long, required = true)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Empirical frequency of long monotone chains against the n^-c tail
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, required_unless_present = "adversarial")]
        seed: Option<u64>,
        /// Chain length to test (defaults to ceil((3+c) ln n / ln ln n))
        #[arg(long)]
        k: Option<usize>,
        /// Test the deterministic worst-case round instead of random rounds
        #[arg(long)]
        adversarial: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Maximum load of 2n balls in n bins
    Bins {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, required = true)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Execute a demo protocol under a schedule and count parallel steps
    Run {
        #[arg(long)]
        protocol: String,
        #[arg(long)]
        n: usize,
        /// sequential | levels | kparallel:K
        #[arg(long)]
        schedule: String,
        /// Round length, or number of matchings for kparallel
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, required = true)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form tail bound 8^k n / k! and its ingredients
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Sample { common, .. }
            | Command::Depth { common, .. }
            | Command::Sweep { common, .. }
            | Command::Verify { common, .. }
            | Command::Bins { common, .. }
            | Command::Run { common, .. }
            | Command::Bound { common, .. } => common,
        }
    }
}
