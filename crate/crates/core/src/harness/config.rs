//! Experiment configuration file (TOML).
//!
//! Every field has a default, so an empty file describes the published
//! parameter set: 50 km x 50 km region, 2.5 km^2 cells, five cooperative
//! nodes, MOPSO-NRCD with 100 + 2 x 50 particles for 2000 iterations.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::detection::{DetectorConfig, PfaConvention, WorkingMode};
use crate::error::{Error, Result};
use crate::optimizer::OptimizerConfig;
use crate::scenario::{db_to_linear, Evaluator, Point, RcsModel, RcsTable, Region, Scenario};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    pub width_km: f64,
    pub height_km: f64,
    #[serde(default)]
    pub origin_km: [f64; 2],
}

impl RegionConfig {
    pub fn square(side_km: f64) -> Self {
        Self {
            width_km: side_km,
            height_km: side_km,
            origin_km: [0.0, 0.0],
        }
    }

    fn to_region(&self, field: &str) -> Result<Region> {
        Region::new(
            self.width_km,
            self.height_km,
            Point::new(self.origin_km[0], self.origin_km[1]),
        )
        .map_err(|_| Error::config(field, "width_km and height_km must be positive"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub surveillance: RegionConfig,
    pub placement: RegionConfig,
    pub cell_area_km2: f64,
    pub num_nodes: usize,
    pub mode: WorkingMode,
    pub p_dt: f64,
    pub p_fa: f64,
    pub d0_db: f64,
    pub r_max_km: f64,
    pub sigma: f64,
    pub rcs_model: RcsModel,
    pub rcs_seed: u64,
    pub min_range_km: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            surveillance: RegionConfig::square(50.0),
            placement: RegionConfig::square(50.0),
            cell_area_km2: 2.5,
            num_nodes: 5,
            mode: WorkingMode::Cooperative,
            p_dt: 0.8,
            p_fa: 1e-6,
            d0_db: 12.5,
            r_max_km: 6.0,
            sigma: 1.0,
            rcs_model: RcsModel::Deterministic,
            rcs_seed: 0,
            min_range_km: 0.1,
        }
    }
}

impl ScenarioConfig {
    pub fn to_scenario(&self) -> Result<Scenario> {
        if !self.d0_db.is_finite() {
            return Err(Error::config("scenario.d0_db", "must be finite"));
        }
        let scenario = Scenario {
            surveillance: self.surveillance.to_region("scenario.surveillance")?,
            placement: self.placement.to_region("scenario.placement")?,
            cell_area: self.cell_area_km2,
            num_nodes: self.num_nodes,
            mode: self.mode,
            d0: db_to_linear(self.d0_db),
            r_max: self.r_max_km,
            sigma: self.sigma,
            p_dt: self.p_dt,
            p_fa: self.p_fa,
            rcs_model: self.rcs_model,
            rcs_seed: self.rcs_seed,
            min_range: self.min_range_km,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DetectorBlock {
    pub pfa_convention: PfaConvention,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Repetition `r` uses seed `seed + r`.
    pub seed: u64,
    pub repetitions: usize,
    /// 0 disables archive snapshots.
    pub snapshot_every: usize,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            repetitions: 5,
            snapshot_every: 0,
            output_dir: PathBuf::from("out"),
        }
    }
}

/// Unknown top-level keys are ignored so that a run manifest, which adds
/// `fingerprint` and `runs`, can be fed back as a configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub scenario: ScenarioConfig,
    #[serde(default)]
    pub detector: DetectorBlock,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
    #[serde(default)]
    pub run: RunConfig,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            scenario: ScenarioConfig::default(),
            detector: DetectorBlock::default(),
            optimizer: OptimizerConfig::default(),
            run: RunConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| {
            Error::config(
                e.span().map(|s| format!("byte {}..{}", s.start, s.end)).unwrap_or_else(|| "<file>".into()),
                e.message().to_string(),
            )
        })?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config { field, message } => Error::Config {
                field: format!("{}: {field}", path.display()),
                message,
            },
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::config("<config>", e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::config(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        self.scenario.to_scenario()?;
        self.optimizer.validate()?;
        if self.run.repetitions == 0 {
            return Err(Error::config("run.repetitions", "must be at least 1"));
        }
        let last_seed = self
            .run
            .seed
            .checked_add(self.run.repetitions as u64 - 1)
            .filter(|s| *s <= i64::MAX as u64);
        if last_seed.is_none() {
            return Err(Error::config("run.seed", "seed + repetitions must fit in a signed 64-bit integer"));
        }
        self.detector_config()?;
        Ok(())
    }

    pub fn detector_config(&self) -> Result<DetectorConfig> {
        DetectorConfig::new(
            self.scenario.mode,
            self.scenario.num_nodes,
            self.scenario.p_fa,
            self.detector.pfa_convention,
        )
        .map_err(|e| Error::config("scenario.p_fa", e.to_string()))
    }

    pub fn evaluator(&self) -> Result<Evaluator> {
        let scenario = self.scenario.to_scenario()?;
        let rcs = RcsTable::for_scenario(&scenario);
        Evaluator::new(scenario, rcs, self.detector_config()?)
    }

    /// SHA-256 over the scenario and detector blocks: two results with the
    /// same fingerprint were evaluated in the same world.
    pub fn fingerprint(&self) -> String {
        #[derive(Serialize)]
        struct World<'a> {
            scenario: &'a ScenarioConfig,
            detector: &'a DetectorBlock,
        }
        let text = toml::to_string(&World {
            scenario: &self.scenario,
            detector: &self.detector,
        })
        .expect("scenario serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}
