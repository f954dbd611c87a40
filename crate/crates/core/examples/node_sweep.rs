//! How the attainable front moves as nodes are added, J = 5..8.
//!
//! cargo run --release --example node_sweep

use msrs_deploy::harness::{run_all, ExperimentConfig};
use msrs_deploy::metrics::{dominated_space, DEFAULT_REFERENCE};

fn main() -> msrs_deploy::Result<()> {
    println!("{:>2} {:>6} {:>10} {:>10} {:>10}", "J", "points", "max C_R", "max L_R", "hypervol");
    for j in 5..=8 {
        let mut cfg = ExperimentConfig::default();
        cfg.scenario.num_nodes = j;
        cfg.optimizer.max_iterations = 60;
        cfg.optimizer.main_swarm_size = 30;
        cfg.optimizer.sub_swarm_size = 15;
        cfg.run.repetitions = 1;
        let pts = run_all(&cfg)?.remove(0).points();
        let max_cr = pts.iter().map(|p| p.coverage_ratio).fold(0.0, f64::max);
        let max_lr = pts.iter().map(|p| p.lowest_rtsn_db).fold(f64::NEG_INFINITY, f64::max);
        println!(
            "{j:>2} {:>6} {max_cr:>10.4} {max_lr:>10.2} {:>10.4}",
            pts.len(),
            dominated_space(&pts, &DEFAULT_REFERENCE)
        );
    }
    Ok(())
}
