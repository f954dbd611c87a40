//! MOPSO-NRCD against MOPSO-CD on a reduced scenario, five seeds per
//! algorithm and mode, scored by dominated space.
//!
//! cargo run --release --example nrcd_vs_cd            # 20 km, 1 km^2 cells
//! cargo run --release --example nrcd_vs_cd -- --wide  # 40 km, 4 km^2 cells

use msrs_deploy::harness::config::RegionConfig;
use msrs_deploy::harness::{run_all, ExperimentConfig};
use msrs_deploy::metrics::{dominated_space, DEFAULT_REFERENCE};
use msrs_deploy::{Algorithm, WorkingMode};

fn config(algorithm: Algorithm, mode: WorkingMode, wide: bool) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    let (side, cell) = if wide { (40.0, 4.0) } else { (20.0, 1.0) };
    cfg.scenario.surveillance = RegionConfig::square(side);
    cfg.scenario.placement = RegionConfig::square(side);
    cfg.scenario.cell_area_km2 = cell;
    cfg.scenario.mode = mode;
    cfg.optimizer.algorithm = algorithm;
    cfg.optimizer.max_iterations = 150;
    cfg.optimizer.swarm_size = 60;
    cfg.optimizer.main_swarm_size = 30;
    cfg.optimizer.sub_swarm_size = 15;
    cfg
}

fn main() -> msrs_deploy::Result<()> {
    let wide = std::env::args().any(|a| a == "--wide");
    for mode in [WorkingMode::Cooperative, WorkingMode::NonCooperative] {
        let cd = run_all(&config(Algorithm::MopsoCd, mode, wide))?;
        let nrcd = run_all(&config(Algorithm::MopsoNrcd, mode, wide))?;
        let mut wins = 0;
        println!("{}:", mode.short_name());
        for (c, n) in cd.iter().zip(&nrcd) {
            let hc = dominated_space(&c.points(), &DEFAULT_REFERENCE);
            let hn = dominated_space(&n.points(), &DEFAULT_REFERENCE);
            wins += usize::from(hn >= hc);
            println!(
                "  seed {}  CD {hc:8.4} ({:2} pts)  NRCD {hn:8.4} ({:2} pts)",
                c.seed,
                c.front.len(),
                n.front.len()
            );
        }
        println!("  NRCD >= CD in {wins}/{} seeds", cd.len());
    }
    Ok(())
}
