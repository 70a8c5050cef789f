//! Command-line arguments.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

/// Stream-fusion compiler: emits completely fused C for the registered
/// pipelines and checks it against the reference semantics.
#[derive(Debug, Parser)]
#[command(name = "pipec", version)]
pub struct Cli {
    /// Directory of the golden C files.
    #[arg(long, global = true, default_value = "goldens")]
    pub goldens_dir: PathBuf,
    /// Directory the JSON-lines reports are written to.
    #[arg(long, global = true, default_value = "reports")]
    pub reports_dir: PathBuf,
    /// Directory of the timing harness and the hand-written baselines.
    #[arg(long, global = true, default_value = "baselines")]
    pub baselines_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lists the registered pipelines.
    List,
    /// Prints (or writes) the C translation unit of a pipeline.
    Emit {
        name: String,
        /// Seed of the fresh-name counter.
        #[arg(long, default_value_t = 0)]
        seed: u32,
        /// Writes to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interprets a pipeline's generated code and compares the result with
    /// the reference semantics.
    Run {
        name: String,
        /// Size parameter of the inputs.
        #[arg(long, default_value_t = 10_000)]
        size: usize,
    },
    /// Runs the law suite, the random corpora and the registry checks.
    Check {
        /// Observations per equivalence check.
        #[arg(long, default_value_t = 50)]
        fuel: usize,
        /// Random instances per law.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pipelines checked for normal forms and output.
        #[arg(long, default_value_t = 500)]
        corpus: usize,
        /// Random nested pipelines checked for linearization.
        #[arg(long, default_value_t = 100)]
        nested: usize,
        /// Random run-length round trips.
        #[arg(long, default_value_t = 1000)]
        round_trips: usize,
    },
    /// Compiles and times a benchmark's generated code against its
    /// hand-written baseline.
    Bench {
        name: String,
        /// Timed iterations; 0 only validates checksums.
        #[arg(long, default_value_t = 20)]
        iters: usize,
        /// Size parameter of the inputs.
        #[arg(long, default_value_t = 10_000_000)]
        size: usize,
        /// C compiler command (default: $PIPEC_CC, then `cc`).
        #[arg(long)]
        cc: Option<String>,
    },
    /// Compares the emitted C of every pipeline with its golden file.
    Goldens {
        /// Rewrites the golden files instead of comparing.
        #[arg(long)]
        update: bool,
    },
}
