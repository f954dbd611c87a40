//! Detection probability against RTSN for a single monostatic pair and for
//! a five-node cooperative network, under both false-alarm conventions.
//!
//! cargo run --release --example detection_curves

use msrs_deploy::detection::{detection_probability, DetectorConfig, PfaConvention, WorkingMode};
use msrs_deploy::scenario::db_to_linear;

fn main() -> msrs_deploy::Result<()> {
    let p_fa = 1e-6;
    let setups = [
        ("noncoop/literal", WorkingMode::NonCooperative, PfaConvention::Literal),
        ("noncoop/standard", WorkingMode::NonCooperative, PfaConvention::Standard),
        ("coop/literal", WorkingMode::Cooperative, PfaConvention::Literal),
        ("coop/standard", WorkingMode::Cooperative, PfaConvention::Standard),
    ];
    let detectors = setups
        .iter()
        .map(|&(name, mode, conv)| Ok((name, DetectorConfig::new(mode, 5, p_fa, conv)?)))
        .collect::<msrs_deploy::Result<Vec<_>>>()?;

    print!("{:>8}", "RTSN dB");
    for (name, d) in &detectors {
        print!("  {:>18}", format!("{name} ({:.2})", d.threshold()));
    }
    println!();
    for step in 0..=12 {
        let db = -4.0 + 2.0 * step as f64;
        print!("{db:>8.1}");
        for (_, d) in &detectors {
            print!("  {:>18.6}", detection_probability(db_to_linear(db), d)?);
        }
        println!();
    }
    Ok(())
}
