//! Batch runner for the toeplab experiments: config parsing, the
//! experiment registry, the experiments themselves and CSV/JSON reports.

pub mod config;
pub mod experiments;
pub mod registry;
pub mod report;

use config::{ExperimentConfig, Resolved, Result, RunError};
use report::RunRecord;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const DEFAULT_OUTPUT_DIR: &str = "results";

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

/// Runs one experiment in-process without writing anything.
pub fn execute(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunRecord> {
    let resolved = Resolved::from_config(config, opts.seed)?;
    if opts.jobs == Some(0) {
        return Err(config::config_err("--jobs: must be at least 1"));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(config::compute_err)?;
    let info = resolved.experiment.info();
    let start = Instant::now();
    let outcome = pool.install(|| experiments::run(&resolved))?;
    let model = resolved
        .model
        .as_ref()
        .map(|m| serde_json::to_value(m).expect("model config serializes"));
    Ok(RunRecord {
        experiment: info.name,
        anchor: info.anchor,
        model,
        k_ladder: resolved.ladder.clone(),
        seed: resolved.seed,
        outcome,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Output directory: command line, then config, then the default.
pub fn output_dir(config: &ExperimentConfig, opts: &RunOptions) -> PathBuf {
    opts.output_dir
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
}

/// Loads, runs and writes; returns the record and the CSV and JSON paths.
pub fn run_file(path: &Path, opts: &RunOptions) -> Result<(RunRecord, PathBuf, PathBuf)> {
    let config = ExperimentConfig::load(path)?;
    let record = execute(&config, opts)?;
    let (csv, json) = record.write(&output_dir(&config, opts)).map_err(RunError::Io)?;
    Ok((record, csv, json))
}
