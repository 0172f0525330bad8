//! Command-line grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Debug, Parser)]
#[command(name = "diracidx", version, about = "Exact Dirac index constants for equal-rank real groups")]
pub struct Cli {
    /// Print JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// Catalog file to use instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    pub catalog: Option<PathBuf>,

    /// Worker threads for parallel jobs.
    #[arg(long, global = true, env = "DIRACIDX_THREADS", value_name = "N")]
    pub threads: Option<usize>,

    /// Write a run record (inputs, outputs, timestamps) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub record: Option<PathBuf>,

    /// Log progress (fold steps, ledger sizes) to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Catalog pairs.
    Pairs {
        #[command(subcommand)]
        action: PairsAction,
    },
    /// Real forms of a pair's orbit.
    Orbit {
        #[command(subcommand)]
        action: OrbitAction,
    },
    /// Springer gate verdicts.
    Springer {
        #[command(subcommand)]
        action: SpringerAction,
    },
    /// Constants c_k.
    Constants {
        #[command(subcommand)]
        action: ConstantsAction,
    },
    /// Table reproduction.
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// K-character identities.
    Charlab {
        #[command(subcommand)]
        action: CharlabAction,
    },
    /// Orbit data, gate verdict and verified constants for one pair.
    Report {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        form: Option<usize>,
        /// Extra evaluation points in the verification trace.
        #[arg(long, default_value_t = 3)]
        check_points: usize,
    },
    /// Re-run a run record and compare outputs.
    Replay {
        /// Record written with --record.
        file: PathBuf,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum PairsAction {
    /// List exceptional pairs and classical families.
    List,
}

#[derive(Clone, Debug, Subcommand)]
pub enum OrbitAction {
    /// Characteristic, level histogram and root counts of each real form.
    Describe {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        form: Option<usize>,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum SpringerAction {
    /// Verdict, orbit and dimension checks.
    Gate {
        #[arg(long)]
        pair: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dp,
    Naive,
    Shuffle,
    Closed,
}

#[derive(Clone, Debug, Subcommand)]
pub enum ConstantsAction {
    /// Compute constants for one form or all forms.
    Compute {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        form: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
        method: MethodArg,
        /// Additional points at which the quotient is recomputed.
        #[arg(long, default_value_t = 0)]
        check_points: usize,
        /// Directory for DP ledger snapshots.
        #[arg(long, value_name = "DIR")]
        checkpoint: Option<PathBuf>,
        /// Resume from snapshots in the checkpoint directory.
        #[arg(long, requires = "checkpoint")]
        resume: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Debug, Subcommand)]
pub enum TablesAction {
    /// Recompute a table and diff against the printed values.
    Verify {
        #[arg(long, value_enum)]
        table: TableArg,
        /// Include the E8 entries.
        #[arg(long)]
        long: bool,
        /// Evaluation points per constant beyond the default one.
        #[arg(long, default_value_t = 3)]
        check_points: usize,
        /// Directory for DP snapshots of long entries.
        #[arg(long, value_name = "DIR")]
        checkpoint: Option<PathBuf>,
        #[arg(long, requires = "checkpoint")]
        resume: bool,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum CharlabAction {
    /// Run the identity suite.
    Verify {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
    },
}
