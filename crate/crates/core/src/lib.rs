//! Deployment optimization for multistatic radar networks.
//!
//! A deployment fixes where each of `J` transceivers sits and how the total
//! transmit power is split between them. Two objectives are maximized: the
//! fraction of surveillance cells detected with the required probability
//! (coverage ratio) and the weakest RTSN among those cells. The [`optimizer`]
//! module searches for the Pareto front with MOPSO-NRCD, with MOPSO-CD and
//! uniform random deployment as baselines.
//!
//! ```no_run
//! use msrs_deploy::harness::ExperimentConfig;
//!
//! let mut cfg = ExperimentConfig::default();
//! cfg.optimizer.max_iterations = 50;
//! let runs = msrs_deploy::harness::run_all(&cfg)?;
//! println!("{} solutions", runs[0].front.len());
//! # Ok::<(), msrs_deploy::Error>(())
//! ```

pub mod detection;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod optimizer;
pub mod rng;
pub mod scenario;

pub use detection::{detection_probability, marcum_q, DetectorConfig, PfaConvention, WorkingMode};
pub use error::{Error, Result};
pub use metrics::{average_improvement, dominated_space, FrontPoint, Objective};
pub use optimizer::{run, Algorithm, OptimizerConfig, RunOutput, Solution};
pub use scenario::{DeploymentVector, Evaluator, ObjectiveVector, Point, Region, Scenario};
