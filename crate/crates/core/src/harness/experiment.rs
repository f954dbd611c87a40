//! Seeded repetitions of one configuration and their output files.
//!
//! An output directory holds
//!
//! * `front_seed<S>.csv` per repetition (see [`super::files`]),
//! * `snapshots_seed<S>.csv` per repetition when snapshots are enabled,
//! * `metrics.toml` with per-run and mean dominated space,
//! * `manifest.toml`, the resolved configuration plus `fingerprint` and the
//!   list of runs. It is itself a valid configuration file.
//!
//! Nothing time-dependent is written, so identical configurations produce
//! identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, SCHEMA_VERSION};
use super::files::{format_sig12, write_front, FrontRow};
use crate::error::{Error, Result};
use crate::metrics::{dominated_space, FrontPoint, ReferencePoint, DEFAULT_REFERENCE};
use crate::optimizer::{self, Algorithm, Snapshot, Solution};
use crate::scenario::Evaluator;

/// Outcome of one seeded repetition.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub run_id: String,
    pub seed: u64,
    /// Archive entries sorted by coverage ratio; for the random baseline,
    /// every drawn deployment in draw order.
    pub front: Vec<Solution>,
    pub snapshots: Vec<Snapshot>,
    pub evaluations: usize,
    pub wall_time: Duration,
}

impl RunResult {
    pub fn points(&self) -> Vec<FrontPoint> {
        self.front.iter().map(|s| FrontPoint::from(&s.objectives)).collect()
    }

    pub fn rows(&self, config: &ExperimentConfig) -> Vec<FrontRow> {
        self.front
            .iter()
            .enumerate()
            .map(|(i, s)| FrontRow {
                run_id: self.run_id.clone(),
                algorithm: config.optimizer.algorithm.short_name().into(),
                mode: config.scenario.mode.short_name().into(),
                solution_id: i,
                coverage_ratio: s.objectives.coverage_ratio,
                lowest_rtsn_db: s.objectives.lowest_rtsn_db(),
                dv: s.dv.clone(),
            })
            .collect()
    }
}

pub fn run_id(config: &ExperimentConfig, seed: u64) -> String {
    format!(
        "{}-{}-J{}-seed{}",
        config.optimizer.algorithm.short_name(),
        config.scenario.mode.short_name(),
        config.scenario.num_nodes,
        seed
    )
}

/// Runs repetition `repetition` (seed `run.seed + repetition`) in memory.
pub fn run_repetition(config: &ExperimentConfig, evaluator: &Evaluator, repetition: usize) -> Result<RunResult> {
    let seed = config.run.seed + repetition as u64;
    let start = Instant::now();
    let out = optimizer::run(&config.optimizer, evaluator, seed, config.run.snapshot_every)?;
    let front = match config.optimizer.algorithm {
        Algorithm::Random => out.samples.clone(),
        _ => out.front(),
    };
    Ok(RunResult {
        run_id: run_id(config, seed),
        seed,
        front,
        snapshots: out.snapshots,
        evaluations: out.evaluations,
        wall_time: start.elapsed(),
    })
}

/// Runs every repetition without touching the filesystem.
pub fn run_all(config: &ExperimentConfig) -> Result<Vec<RunResult>> {
    config.validate()?;
    let evaluator = config.evaluator()?;
    (0..config.run.repetitions)
        .into_par_iter()
        .map(|r| run_repetition(config, &evaluator, r))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub run_id: String,
    pub seed: u64,
    pub front_file: String,
    pub front_size: usize,
    pub evaluations: usize,
    pub dominated_space: f64,
    pub max_coverage_ratio: f64,
    pub max_lowest_rtsn_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsFile {
    pub schema_version: u32,
    pub fingerprint: String,
    pub algorithm: Algorithm,
    pub mode: crate::detection::WorkingMode,
    pub num_nodes: usize,
    pub reference: ReferencePoint,
    /// Mean over runs of each run's own dominated space.
    pub mean_dominated_space: f64,
    pub runs: Vec<RunMetrics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRun {
    pub run_id: String,
    pub seed: u64,
    pub front_file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot_file: Option<String>,
}

/// Summary returned by [`run_experiment`].
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub output_dir: PathBuf,
    pub runs: Vec<RunResult>,
    pub metrics: MetricsFile,
}

fn front_file_name(seed: u64) -> String {
    format!("front_seed{seed}.csv")
}

fn snapshot_file_name(seed: u64) -> String {
    format!("snapshots_seed{seed}.csv")
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}

fn write_snapshots(path: &Path, snapshots: &[Snapshot]) -> Result<()> {
    let mut text = String::from("iteration,solution_id,cr,lr_db\n");
    for s in snapshots {
        for (i, o) in s.entries.iter().enumerate() {
            text.push_str(&format!(
                "{},{},{},{}\n",
                s.iteration,
                i,
                format_sig12(o.coverage_ratio),
                format_sig12(o.lowest_rtsn_db())
            ));
        }
    }
    write_text(path, &text)
}

pub fn metrics_for(config: &ExperimentConfig, runs: &[RunResult], reference: ReferencePoint) -> MetricsFile {
    let per_run: Vec<RunMetrics> = runs
        .iter()
        .map(|r| {
            let pts = r.points();
            RunMetrics {
                run_id: r.run_id.clone(),
                seed: r.seed,
                front_file: front_file_name(r.seed),
                front_size: pts.len(),
                evaluations: r.evaluations,
                dominated_space: dominated_space(&pts, &reference),
                max_coverage_ratio: pts.iter().map(|p| p.coverage_ratio).fold(f64::NEG_INFINITY, f64::max),
                max_lowest_rtsn_db: pts.iter().map(|p| p.lowest_rtsn_db).fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();
    let mean = per_run.iter().map(|m| m.dominated_space).sum::<f64>() / per_run.len().max(1) as f64;
    MetricsFile {
        schema_version: SCHEMA_VERSION,
        fingerprint: config.fingerprint(),
        algorithm: config.optimizer.algorithm,
        mode: config.scenario.mode,
        num_nodes: config.scenario.num_nodes,
        reference,
        mean_dominated_space: mean,
        runs: per_run,
    }
}

pub fn manifest_text(config: &ExperimentConfig, runs: &[ManifestRun]) -> Result<String> {
    let mut table = toml::Table::try_from(config).map_err(|e| Error::config("<config>", e.to_string()))?;
    table.insert("fingerprint".into(), toml::Value::String(config.fingerprint()));
    let runs = toml::Value::try_from(runs).map_err(|e| Error::config("<manifest>", e.to_string()))?;
    table.insert("runs".into(), runs);
    toml::to_string(&table).map_err(|e| Error::config("<manifest>", e.to_string()))
}

/// Runs every repetition and writes fronts, snapshots, metrics and the
/// manifest into `run.output_dir`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let runs = run_all(config)?;
    let dir = config.run.output_dir.clone();
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    let mut manifest_runs = Vec::with_capacity(runs.len());
    for r in &runs {
        let front_file = front_file_name(r.seed);
        write_front(&dir.join(&front_file), config.scenario.num_nodes, &r.rows(config))?;
        let snapshot_file = if config.run.snapshot_every > 0 {
            let name = snapshot_file_name(r.seed);
            write_snapshots(&dir.join(&name), &r.snapshots)?;
            Some(name)
        } else {
            None
        };
        manifest_runs.push(ManifestRun {
            run_id: r.run_id.clone(),
            seed: r.seed,
            front_file,
            snapshot_file,
        });
    }

    let metrics = metrics_for(config, &runs, DEFAULT_REFERENCE);
    let metrics_text = toml::to_string(&metrics).map_err(|e| Error::config("<metrics>", e.to_string()))?;
    write_text(&dir.join("metrics.toml"), &metrics_text)?;
    write_text(&dir.join("manifest.toml"), &manifest_text(config, &manifest_runs)?)?;

    Ok(ExperimentOutput {
        output_dir: dir,
        runs,
        metrics,
    })
}
