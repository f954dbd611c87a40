//! Scores one hand-placed deployment in both working modes and draws the
//! coverage map.
//!
//! cargo run --release --example evaluate_deployment

use msrs_deploy::harness::ExperimentConfig;
use msrs_deploy::{DeploymentVector, Point, WorkingMode};

fn main() -> msrs_deploy::Result<()> {
    // Five nodes on a ring around the centre of the 50 x 50 km region.
    let positions: Vec<Point> = (0..5)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / 5.0;
            Point::new(25.0 + 12.0 * a.cos(), 25.0 + 12.0 * a.sin())
        })
        .collect();

    for mode in [WorkingMode::Cooperative, WorkingMode::NonCooperative] {
        let mut cfg = ExperimentConfig::default();
        cfg.scenario.mode = mode;
        let evaluator = cfg.evaluator()?;
        let dv = DeploymentVector::new(positions.clone(), vec![1.0; 5], evaluator.scenario())?;
        let o = evaluator.evaluate(&dv);
        println!(
            "{:<8} cells={} threshold={:.3}  C_R={:.4}  L_R={:.2} dB",
            mode.short_name(),
            evaluator.cells().len(),
            evaluator.detector().threshold(),
            o.coverage_ratio,
            o.lowest_rtsn_db()
        );

        // '#' covered, '.' not; one character per cell, top row first.
        let map = evaluator.rtsn_map(&dv);
        let cells = evaluator.cells();
        let cols = cells.iter().take_while(|c| c.y == cells[0].y).count();
        let rows: Vec<String> = map
            .chunks(cols)
            .map(|r| {
                r.iter()
                    .map(|&chi| if chi >= evaluator.min_covered_rtsn() { '#' } else { '.' })
                    .collect()
            })
            .collect();
        for r in rows.iter().rev() {
            println!("  {r}");
        }
    }
    Ok(())
}
