//! Configuration files, seeded experiment runs and result comparison.

pub mod compare;
pub mod config;
pub mod experiment;
pub mod files;

pub use compare::{compare, compare_loaded, CompareReport, LoadedExperiment};
pub use config::{ExperimentConfig, ScenarioConfig, SCHEMA_VERSION};
pub use experiment::{run_all, run_experiment, ExperimentOutput, RunResult};
pub use files::{read_front, write_front, FrontRow};
