use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = r#"
[scenario]
surveillance = { width_km = 12.0, height_km = 12.0 }
placement = { width_km = 12.0, height_km = 12.0 }
cell_area_km2 = 4.0
num_nodes = 3

[optimizer]
max_iterations = 5
swarm_size = 10
main_swarm_size = 6
sub_swarm_size = 3

[run]
repetitions = 1
"#;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msrs-deploy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path) -> String {
    let path = dir.join("small.toml");
    fs::write(&path, SMALL).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn invalid_config_exits_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("bad.toml");
    fs::write(&path, "[optimizer]\nc1 = -2.0\n").unwrap();
    let out = cli(&["optimize", "--config", path.to_str().unwrap(), "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("optimizer.c1"));
}

#[test]
fn missing_file_exits_with_three() {
    let out = cli(&["optimize", "--config", "/nonexistent/cfg.toml"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(cli(&["optimize", "--bogus"]).status.code(), Some(2));
}

#[test]
fn evaluate_prints_objectives() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path());
    let dv = tmp.path().join("dv.toml");
    fs::write(&dv, "positions = [[2.0, 2.0], [6.0, 6.0], [10.0, 10.0]]\npower_ratios = [1.0, 1.0, 1.0]\n").unwrap();
    let out = cli(&["evaluate", "--config", &config, "--dv", dv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let cr: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("cr = "))
        .expect("cr line")
        .parse()
        .unwrap();
    assert!((0.0..=1.0).contains(&cr));
    assert!(text.lines().any(|l| l.starts_with("lr_db = ")));

    fs::write(&dv, "positions = [[2.0, 2.0]]\npower_ratios = [1.0]\n").unwrap();
    let out = cli(&["evaluate", "--config", &config, "--dv", dv.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn optimize_then_compare() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path());
    let dir_cd = tmp.path().join("cd");
    let dir_nrcd = tmp.path().join("nrcd");
    for (algo, dir) in [("cd", &dir_cd), ("nrcd", &dir_nrcd)] {
        let out = cli(&[
            "optimize",
            "--config",
            &config,
            "--algorithm",
            algo,
            "--seed",
            "3",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(dir.join("front_seed3.csv").exists());
        assert!(dir.join("manifest.toml").exists());
    }
    let report = tmp.path().join("report.toml");
    let out = cli(&[
        "compare",
        dir_cd.to_str().unwrap(),
        dir_nrcd.to_str().unwrap(),
        "--ref-lr-db",
        "-20",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: toml::Table = fs::read_to_string(&report).unwrap().parse().unwrap();
    assert!(parsed.contains_key("fraction_a_dominated_by_b"));
    assert_eq!(parsed["reference"]["lowest_rtsn_db"].as_float(), Some(-20.0));
}

#[test]
fn compare_needs_existing_results() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path().to_str().unwrap();
    assert_eq!(cli(&["compare", p, p]).status.code(), Some(3));
}
