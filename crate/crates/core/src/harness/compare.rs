//! Comparison of two experiment output directories.
//!
//! Directory `a` is the control, `b` the candidate. Fronts are pooled over
//! runs. The control set is reduced to its non-dominated subset before the
//! average improvement of `b` over it is computed.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::files::read_front;
use crate::error::{Error, Result};
use crate::metrics::{
    average_improvement, dominated_fraction, dominated_space, non_dominated, AverageImprovement, FrontPoint,
    Objective, ReferencePoint,
};

/// Fronts and configuration recovered from an output directory.
#[derive(Debug, Clone)]
pub struct LoadedExperiment {
    pub dir: PathBuf,
    pub config: ExperimentConfig,
    pub fingerprint: String,
    /// One point set per run, in manifest order.
    pub runs: Vec<Vec<FrontPoint>>,
}

impl LoadedExperiment {
    pub fn load(dir: &Path) -> Result<Self> {
        let manifest_path = dir.join("manifest.toml");
        let text = std::fs::read_to_string(&manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
        let parse = |message: String| Error::Parse {
            path: manifest_path.clone(),
            message,
        };
        let table: toml::Table = toml::from_str(&text).map_err(|e| parse(e.to_string()))?;
        let config = ExperimentConfig::from_toml_str(&text)?;
        let fingerprint = table
            .get("fingerprint")
            .and_then(|v| v.as_str())
            .ok_or_else(|| parse("missing `fingerprint`".into()))?
            .to_string();
        if fingerprint != config.fingerprint() {
            return Err(parse("stored fingerprint does not match the scenario it describes".into()));
        }
        let files: Vec<String> = table
            .get("runs")
            .and_then(|v| v.as_array())
            .ok_or_else(|| parse("missing `runs`".into()))?
            .iter()
            .map(|r| {
                r.get("front_file")
                    .and_then(|f| f.as_str())
                    .map(str::to_string)
                    .ok_or_else(|| parse("run without `front_file`".into()))
            })
            .collect::<Result<_>>()?;
        let scenario = config.scenario.to_scenario()?;
        let runs = files
            .iter()
            .map(|f| {
                Ok(read_front(&dir.join(f), Some(&scenario))?
                    .iter()
                    .map(|r| r.point())
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            dir: dir.to_path_buf(),
            config,
            fingerprint,
            runs,
        })
    }

    pub fn pooled(&self) -> Vec<FrontPoint> {
        self.runs.iter().flatten().copied().collect()
    }

    pub fn dominated_spaces(&self, reference: &ReferencePoint) -> Vec<f64> {
        self.runs.iter().map(|r| dominated_space(r, reference)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideSummary {
    pub dir: String,
    pub algorithm: String,
    pub points: usize,
    pub dominated_space: Vec<f64>,
    pub mean_dominated_space: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub fingerprint: String,
    pub reference: ReferencePoint,
    pub a: SideSummary,
    pub b: SideSummary,
    /// Improvement of `b` over the non-dominated pool of `a`.
    pub improvement_cr: AverageImprovement,
    pub improvement_lr_db: AverageImprovement,
    /// `mean_dominated_space(b) / mean_dominated_space(a)`; absent when `a`
    /// dominates no area.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominated_space_ratio: Option<f64>,
    /// Share of `a`'s non-dominated pool dominated by some point of `b`.
    pub fraction_a_dominated_by_b: f64,
    pub fraction_b_dominated_by_a: f64,
}

impl CompareReport {
    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::config("<report>", e.to_string()))
    }
}

fn summary(e: &LoadedExperiment, reference: &ReferencePoint) -> SideSummary {
    let hv = e.dominated_spaces(reference);
    let mean = hv.iter().sum::<f64>() / hv.len().max(1) as f64;
    SideSummary {
        dir: e.dir.display().to_string(),
        algorithm: e.config.optimizer.algorithm.short_name().into(),
        points: e.runs.iter().map(Vec::len).sum(),
        dominated_space: hv,
        mean_dominated_space: mean,
    }
}

/// Compares two loaded experiments; refuses if they were not evaluated in
/// the same scenario.
pub fn compare_loaded(a: &LoadedExperiment, b: &LoadedExperiment, reference: ReferencePoint) -> Result<CompareReport> {
    if a.fingerprint != b.fingerprint {
        return Err(Error::FingerprintMismatch {
            a: a.fingerprint.clone(),
            b: b.fingerprint.clone(),
        });
    }
    let control = non_dominated(&a.pooled());
    let improved = b.pooled();
    let sa = summary(a, &reference);
    let sb = summary(b, &reference);
    let ratio = (sa.mean_dominated_space > 0.0).then(|| sb.mean_dominated_space / sa.mean_dominated_space);
    Ok(CompareReport {
        fingerprint: a.fingerprint.clone(),
        reference,
        improvement_cr: average_improvement(&improved, &control, Objective::CoverageRatio),
        improvement_lr_db: average_improvement(&improved, &control, Objective::LowestRtsn),
        dominated_space_ratio: ratio,
        fraction_a_dominated_by_b: dominated_fraction(&control, &improved),
        fraction_b_dominated_by_a: dominated_fraction(&non_dominated(&improved), &a.pooled()),
        a: sa,
        b: sb,
    })
}

pub fn compare(dir_a: &Path, dir_b: &Path, reference: ReferencePoint) -> Result<CompareReport> {
    compare_loaded(&LoadedExperiment::load(dir_a)?, &LoadedExperiment::load(dir_b)?, reference)
}
