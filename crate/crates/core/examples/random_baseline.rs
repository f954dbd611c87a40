//! Fifty uniform random deployments against one short MOPSO-NRCD run.
//!
//! cargo run --release --example random_baseline

use msrs_deploy::harness::config::RegionConfig;
use msrs_deploy::harness::{run_all, ExperimentConfig};
use msrs_deploy::metrics::{dominated_fraction, dominated_space, DEFAULT_REFERENCE};
use msrs_deploy::Algorithm;

fn main() -> msrs_deploy::Result<()> {
    let mut cfg = ExperimentConfig::default();
    cfg.scenario.surveillance = RegionConfig::square(30.0);
    cfg.scenario.placement = RegionConfig::square(30.0);
    cfg.scenario.cell_area_km2 = 2.0;
    cfg.optimizer.max_iterations = 100;
    cfg.optimizer.main_swarm_size = 30;
    cfg.optimizer.sub_swarm_size = 15;
    cfg.run.repetitions = 1;

    cfg.optimizer.algorithm = Algorithm::Random;
    let random = run_all(&cfg)?.remove(0).points();
    cfg.optimizer.algorithm = Algorithm::MopsoNrcd;
    let nrcd = run_all(&cfg)?.remove(0).points();

    let best = |pts: &[msrs_deploy::FrontPoint]| {
        pts.iter().fold((0.0f64, f64::NEG_INFINITY), |(c, l), p| {
            (c.max(p.coverage_ratio), l.max(p.lowest_rtsn_db))
        })
    };
    for (name, pts) in [("random", &random), ("nrcd", &nrcd)] {
        let (c, l) = best(pts);
        println!(
            "{name:<7} {:2} solutions  best C_R {c:.3}  best L_R {l:6.2} dB  dominated space {:.4}",
            pts.len(),
            dominated_space(pts, &DEFAULT_REFERENCE)
        );
    }
    println!(
        "random deployments dominated by the NRCD front: {:.0}%",
        100.0 * dominated_fraction(&random, &nrcd)
    );
    Ok(())
}
