//! The `pipec` command-line tool: lists, emits, runs, checks and
//! benchmarks the registered pipelines, and maintains their golden C files.
//!
//! Every command writes human-readable text to the given writer; commands
//! that produce results also write JSON-lines reports under the reports
//! directory (see [`report`]).

pub mod args;
pub mod bench;
pub mod commands;
pub mod report;

use std::io;
use std::path::PathBuf;

use thiserror::Error;

use pipec_core::registry::{Registry, RegistryError};

pub use args::{Cli, Command};

/// Environment variable naming the C compiler command for `bench`.
pub const CC_ENV: &str = "PIPEC_CC";

/// Errors that stop a command.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("serializing a report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Bench(String),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Whether a command's checks passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
}

impl Status {
    pub fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Success
        } else {
            Status::Failure
        }
    }
}

/// Directories and the pipeline registry shared by all commands.
#[derive(Clone, Debug)]
pub struct Context {
    pub goldens_dir: PathBuf,
    pub reports_dir: PathBuf,
    pub baselines_dir: PathBuf,
    pub registry: Registry,
}

impl Context {
    /// A context over the standard registry.
    pub fn new(goldens_dir: PathBuf, reports_dir: PathBuf, baselines_dir: PathBuf) -> Self {
        Context {
            goldens_dir,
            reports_dir,
            baselines_dir,
            registry: Registry::standard(),
        }
    }
}

/// Runs a parsed command line.
pub fn execute(cli: Cli, out: &mut dyn io::Write) -> Result<Status, CliError> {
    let ctx = Context::new(cli.goldens_dir, cli.reports_dir, cli.baselines_dir);
    match cli.command {
        Command::List => commands::list(&ctx, out),
        Command::Emit { name, seed, out: path } => commands::emit(&ctx, &name, seed, path.as_deref(), out),
        Command::Run { name, size } => commands::run(&ctx, &name, size, out),
        Command::Check {
            fuel,
            instances,
            seed,
            corpus,
            nested,
            round_trips,
        } => commands::check(
            &ctx,
            &commands::CheckConfig {
                fuel,
                instances,
                seed,
                corpus,
                nested,
                round_trips,
            },
            out,
        ),
        Command::Bench {
            name,
            iters,
            size,
            cc,
        } => {
            let cc = bench::resolve_cc(cc.as_deref(), std::env::var(CC_ENV).ok().as_deref());
            bench::bench(&ctx, &name, &bench::BenchConfig { iters, size, cc }, out)
        }
        Command::Goldens { update } => commands::goldens(&ctx, update, out),
    }
}
