use std::fs;
use std::path::{Path, PathBuf};

use msrs_deploy::harness::config::RegionConfig;
use msrs_deploy::harness::experiment::{manifest_text, ManifestRun};
use msrs_deploy::harness::{
    compare, read_front, run_experiment, write_front, ExperimentConfig, FrontRow, LoadedExperiment,
};
use msrs_deploy::metrics::{FrontPoint, DEFAULT_REFERENCE};
use msrs_deploy::{Algorithm, Error};
use sha2::{Digest, Sha256};

fn small_config(algorithm: Algorithm, dir: &Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    cfg.scenario.surveillance = RegionConfig::square(12.0);
    cfg.scenario.placement = RegionConfig::square(12.0);
    cfg.scenario.cell_area_km2 = 4.0;
    cfg.scenario.num_nodes = 3;
    cfg.optimizer.algorithm = algorithm;
    cfg.optimizer.max_iterations = 10;
    cfg.optimizer.swarm_size = 12;
    cfg.optimizer.main_swarm_size = 8;
    cfg.optimizer.sub_swarm_size = 4;
    cfg.run.repetitions = 2;
    cfg.run.seed = 40;
    cfg.run.output_dir = dir.to_path_buf();
    cfg
}

fn digests(dir: &Path) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, hex::encode(Sha256::digest(fs::read(&path).unwrap())))
        })
        .collect();
    out.sort();
    out
}

#[test]
fn random_baseline_writes_fifty_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small_config(Algorithm::Random, tmp.path());
    cfg.run.repetitions = 1;
    let out = run_experiment(&cfg).unwrap();
    let rows = read_front(&tmp.path().join(&out.metrics.runs[0].front_file), None).unwrap();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r.algorithm == "random"));
}

#[test]
fn zero_iterations_write_the_initial_archive() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small_config(Algorithm::MopsoNrcd, tmp.path());
    cfg.optimizer.max_iterations = 0;
    cfg.run.snapshot_every = 1;
    let out = run_experiment(&cfg).unwrap();
    for r in &out.runs {
        assert_eq!(r.snapshots.len(), 1);
        let objs: Vec<_> = r.front.iter().map(|s| s.objectives).collect();
        assert_eq!(objs, r.snapshots[0].entries);
    }
    assert!(tmp.path().join("snapshots_seed40.csv").exists());
}

#[test]
fn outputs_are_byte_identical_and_rerunnable_from_the_manifest() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let cfg = small_config(Algorithm::MopsoCd, first.path());
    run_experiment(&cfg).unwrap();
    let before = digests(first.path());
    fs::remove_dir_all(first.path()).unwrap();
    run_experiment(&cfg).unwrap();
    assert_eq!(digests(first.path()), before);

    let mut echoed = ExperimentConfig::load(&first.path().join("manifest.toml")).unwrap();
    assert_eq!(echoed, cfg);
    echoed.run.output_dir = second.path().to_path_buf();
    run_experiment(&echoed).unwrap();
    let again = digests(second.path());
    assert_eq!(again.len(), before.len());
    for (a, b) in before.iter().zip(&again) {
        // The manifest records its own output directory.
        if a.0 != "manifest.toml" {
            assert_eq!(a, b);
        }
    }
}

#[test]
fn front_rows_are_revalidated_on_load() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(Algorithm::MopsoNrcd, tmp.path());
    let out = run_experiment(&cfg).unwrap();
    let path = tmp.path().join(&out.metrics.runs[0].front_file);
    let scenario = cfg.scenario.to_scenario().unwrap();
    assert!(read_front(&path, Some(&scenario)).is_ok());

    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let mut fields: Vec<String> = lines[1].split(',').map(str::to_string).collect();
    // Push the first node out of the placement region.
    fields[7] = "500".into();
    lines[1] = fields.join(",");
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert!(matches!(read_front(&path, Some(&scenario)), Err(Error::Parse { .. })));
}

#[test]
fn comparing_a_result_with_itself() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = small_config(Algorithm::MopsoNrcd, tmp.path());
    run_experiment(&cfg).unwrap();
    let report = compare(tmp.path(), tmp.path(), DEFAULT_REFERENCE).unwrap();
    assert!(report.improvement_cr.value.is_none());
    assert!(report.improvement_lr_db.value.is_none());
    assert_eq!(report.fraction_a_dominated_by_b, 0.0);
    assert!(report.a.mean_dominated_space > 0.0);
    assert_eq!(report.dominated_space_ratio, Some(1.0));
    assert!(report.to_toml_string().unwrap().contains("fingerprint"));
}

/// Writes a hand-made result directory holding a single front.
fn fixture(dir: &Path, cfg: &ExperimentConfig, points: &[FrontPoint]) -> PathBuf {
    let mut cfg = cfg.clone();
    cfg.run.repetitions = 1;
    cfg.run.output_dir = dir.to_path_buf();
    let scenario = cfg.scenario.to_scenario().unwrap();
    let dv = msrs_deploy::scenario::DeploymentVector::uniform_power(vec![
        msrs_deploy::Point::new(1.0, 1.0),
        msrs_deploy::Point::new(6.0, 6.0),
        msrs_deploy::Point::new(11.0, 2.0),
    ]);
    dv.validate(&scenario, 1e-9).unwrap();
    let rows: Vec<FrontRow> = points
        .iter()
        .enumerate()
        .map(|(i, p)| FrontRow {
            run_id: "fixture".into(),
            algorithm: "nrcd".into(),
            mode: "coop".into(),
            solution_id: i,
            coverage_ratio: p.coverage_ratio,
            lowest_rtsn_db: p.lowest_rtsn_db,
            dv: dv.clone(),
        })
        .collect();
    write_front(&dir.join("front_seed1.csv"), 3, &rows).unwrap();
    let runs = [ManifestRun {
        run_id: "fixture".into(),
        seed: 1,
        front_file: "front_seed1.csv".into(),
        snapshot_file: None,
    }];
    fs::write(dir.join("manifest.toml"), manifest_text(&cfg, &runs).unwrap()).unwrap();
    dir.to_path_buf()
}

#[test]
fn dominating_result_covers_the_whole_control() {
    let (ta, tb) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfg = small_config(Algorithm::MopsoNrcd, ta.path());
    // 36 cells, so coverage ratios are multiples of 1/36.
    let a = fixture(ta.path(), &cfg, &[FrontPoint::new(9.0 / 36.0, 4.0), FrontPoint::new(18.0 / 36.0, -2.0)]);
    let b = fixture(tb.path(), &cfg, &[FrontPoint::new(27.0 / 36.0, 6.0)]);
    let report = compare(&a, &b, DEFAULT_REFERENCE).unwrap();
    assert_eq!(report.fraction_a_dominated_by_b, 1.0);
    assert_eq!(report.fraction_b_dominated_by_a, 0.0);
    let cr = report.improvement_cr.value.unwrap();
    assert!((cr - (0.5 + 0.25) / 2.0).abs() < 1e-12);
    assert_eq!(report.improvement_lr_db.value, Some((2.0 + 8.0) / 2.0));
    assert!(report.dominated_space_ratio.unwrap() > 1.0);
    assert_eq!(LoadedExperiment::load(&b).unwrap().runs.len(), 1);
}

#[test]
fn different_scenarios_are_not_compared() {
    let (ta, tb) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfg = small_config(Algorithm::MopsoNrcd, ta.path());
    let mut other = cfg.clone();
    other.scenario.d0_db = 13.0;
    let a = fixture(ta.path(), &cfg, &[FrontPoint::new(0.5, 1.0)]);
    let b = fixture(tb.path(), &other, &[FrontPoint::new(0.5, 1.0)]);
    assert!(matches!(compare(&a, &b, DEFAULT_REFERENCE), Err(Error::FingerprintMismatch { .. })));
}

#[test]
fn invalid_configuration_names_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = small_config(Algorithm::MopsoCd, tmp.path());
    cfg.optimizer.c1 = -1.0;
    match run_experiment(&cfg) {
        Err(Error::Config { field, .. }) => assert_eq!(field, "optimizer.c1"),
        other => panic!("expected a config error, got {other:?}"),
    }
}
