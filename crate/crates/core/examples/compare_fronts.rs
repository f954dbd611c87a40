//! Writes MOPSO-CD and MOPSO-NRCD results to disk, then compares the two
//! directories the same way `msrs-deploy compare` does.
//!
//! cargo run --release --example compare_fronts [-- <output dir>]

use std::path::PathBuf;

use msrs_deploy::harness::config::RegionConfig;
use msrs_deploy::harness::{compare, run_experiment, ExperimentConfig};
use msrs_deploy::metrics::DEFAULT_REFERENCE;
use msrs_deploy::{Algorithm, WorkingMode};

fn main() -> msrs_deploy::Result<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("msrs-compare-example"));

    let mut cfg = ExperimentConfig::default();
    cfg.scenario.surveillance = RegionConfig::square(40.0);
    cfg.scenario.placement = RegionConfig::square(40.0);
    cfg.scenario.cell_area_km2 = 4.0;
    cfg.scenario.mode = WorkingMode::NonCooperative;
    cfg.optimizer.max_iterations = 100;
    cfg.optimizer.swarm_size = 60;
    cfg.optimizer.main_swarm_size = 30;
    cfg.optimizer.sub_swarm_size = 15;
    cfg.run.repetitions = 3;

    let mut dirs = Vec::new();
    for algorithm in [Algorithm::MopsoCd, Algorithm::MopsoNrcd] {
        cfg.optimizer.algorithm = algorithm;
        cfg.run.output_dir = root.join(algorithm.short_name());
        let out = run_experiment(&cfg)?;
        println!(
            "{}: mean dominated space {:.4} -> {}",
            algorithm.short_name(),
            out.metrics.mean_dominated_space,
            out.output_dir.display()
        );
        dirs.push(out.output_dir);
    }
    let report = compare(&dirs[0], &dirs[1], DEFAULT_REFERENCE)?;
    print!("{}", report.to_toml_string()?);
    Ok(())
}
