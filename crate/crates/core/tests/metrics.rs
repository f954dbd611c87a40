mod common;

use msrs_deploy::metrics::{
    average_improvement, dominated_fraction, dominated_space, dominates, non_dominated, FrontPoint, Objective,
    DEFAULT_REFERENCE,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn fp(c: f64, l: f64) -> FrontPoint {
    FrontPoint::new(c, l)
}

fn random_points(rng: &mut impl Rng, n: usize) -> Vec<FrontPoint> {
    (0..n)
        .map(|_| fp(rng.gen_range(0.0..1.0), rng.gen_range(-20.0..10.0)))
        .collect()
}

/// A_I written as the literal double sum, without sharing any code.
fn average_improvement_oracle(igs: &[FrontPoint], cgs: &[FrontPoint], k: Objective) -> Option<f64> {
    let g = |p: &FrontPoint| match k {
        Objective::CoverageRatio => p.coverage_ratio,
        Objective::LowestRtsn => p.lowest_rtsn_db,
    };
    let mut outer = 0.0;
    let mut z_count = 0;
    for z in cgs {
        let mut inner = 0.0;
        let mut i_count = 0;
        for i in igs {
            if common::dominates2((i.coverage_ratio, i.lowest_rtsn_db), (z.coverage_ratio, z.lowest_rtsn_db)) {
                inner += g(i) - g(z);
                i_count += 1;
            }
        }
        if i_count > 0 {
            outer += inner / i_count as f64;
            z_count += 1;
        }
    }
    (z_count > 0).then(|| outer / z_count as f64)
}

#[test]
fn dominance_examples() {
    assert!(dominates(&fp(0.5, 10.0), &fp(0.4, 9.0)));
    assert!(!dominates(&fp(0.5, 9.0), &fp(0.4, 10.0)));
    assert!(!dominates(&fp(0.5, 10.0), &fp(0.5, 10.0)));
}

#[test]
fn single_pair_improvement() {
    let igs = [fp(0.5, 10.0)];
    let cgs = [fp(0.4, 8.0)];
    let cr = average_improvement(&igs, &cgs, Objective::CoverageRatio);
    assert!((cr.value.unwrap() - 0.1).abs() < 1e-15);
    let lr = average_improvement(&igs, &cgs, Objective::LowestRtsn);
    assert_eq!(lr.value, Some(2.0));
    assert_eq!((lr.considered, lr.skipped), (1, 0));
}

#[test]
fn undominated_control_point_is_skipped() {
    let igs = [fp(0.5, 10.0)];
    let cgs = [fp(0.4, 8.0), fp(0.9, 1.0)];
    let r = average_improvement(&igs, &cgs, Objective::LowestRtsn);
    assert_eq!(r.value, Some(2.0));
    assert_eq!(r.skipped, 1);
}

#[test]
fn improvement_matches_double_loop() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut defined = 0;
    for _ in 0..50 {
        let igs = random_points(&mut rng, 20);
        let cgs = random_points(&mut rng, 20);
        for k in [Objective::CoverageRatio, Objective::LowestRtsn] {
            let got = average_improvement(&igs, &cgs, k).value;
            let want = average_improvement_oracle(&igs, &cgs, k);
            match (got, want) {
                (Some(g), Some(w)) => {
                    assert!((g - w).abs() <= 1e-12 * w.abs().max(1.0), "{g} vs {w}");
                    defined += 1;
                }
                (None, None) => {}
                other => panic!("definedness differs: {other:?}"),
            }
        }
    }
    assert!(defined > 50);
}

#[test]
fn one_rectangle() {
    let area = dominated_space(&[fp(1.0, -5.0)], &DEFAULT_REFERENCE);
    assert!((area - 8.5).abs() < 1e-12);
}

#[test]
fn nothing_above_the_reference() {
    assert_eq!(dominated_space(&[], &DEFAULT_REFERENCE), 0.0);
    let below = [fp(0.1, 0.0), fp(0.9, -20.0), fp(0.15, -15.0)];
    assert_eq!(dominated_space(&below, &DEFAULT_REFERENCE), 0.0);
}

#[test]
fn area_matches_monte_carlo() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
    for trial in 0..3 {
        let front: Vec<FrontPoint> = (0..10)
            .map(|_| fp(rng.gen_range(0.2..1.0), rng.gen_range(-14.0..5.0)))
            .collect();
        let exact = dominated_space(&front, &DEFAULT_REFERENCE);
        let mc = common::dominated_space_mc(&front, DEFAULT_REFERENCE, 1_000_000, trial);
        assert!((exact - mc).abs() <= 0.01 * exact, "{exact} vs {mc}");
    }
}

#[test]
fn fraction_dominated() {
    let a = [fp(0.2, 1.0), fp(0.6, -3.0)];
    let b = [fp(0.7, 2.0)];
    assert_eq!(dominated_fraction(&a, &b), 1.0);
    assert_eq!(dominated_fraction(&b, &a), 0.0);
    assert_eq!(dominated_fraction(&[], &b), 0.0);
}

fn point() -> impl Strategy<Value = FrontPoint> {
    // Coarse values so equal coordinates are common.
    (0u32..20, 0u32..20).prop_map(|(c, l)| fp(c as f64 / 20.0, l as f64 - 15.0))
}

proptest! {
    #[test]
    fn area_grows_with_the_set(a in prop::collection::vec(point(), 0..15), b in prop::collection::vec(point(), 0..15)) {
        let mut both = a.clone();
        both.extend_from_slice(&b);
        prop_assert!(dominated_space(&both, &DEFAULT_REFERENCE) >= dominated_space(&a, &DEFAULT_REFERENCE));
    }

    #[test]
    fn area_ignores_dominated_and_repeated_points(
        a in prop::collection::vec(point(), 1..15),
        extra in prop::collection::vec(point(), 0..15),
    ) {
        let base = dominated_space(&a, &DEFAULT_REFERENCE);
        let mut padded = a.clone();
        padded.extend(a.iter().copied());
        padded.extend(extra.iter().filter(|e| a.iter().any(|p| dominates(p, e))).copied());
        prop_assert_eq!(dominated_space(&padded, &DEFAULT_REFERENCE), base);
        prop_assert_eq!(dominated_space(&non_dominated(&a), &DEFAULT_REFERENCE), base);
    }

    #[test]
    fn self_comparison_is_undefined(a in prop::collection::vec(point(), 1..20)) {
        let set = non_dominated(&a);
        for k in [Objective::CoverageRatio, Objective::LowestRtsn] {
            let r = average_improvement(&set, &set, k);
            prop_assert!(r.value.is_none());
            prop_assert_eq!(r.skipped, set.len());
        }
    }

    #[test]
    fn dominance_is_a_strict_order(a in point(), b in point(), c in point()) {
        prop_assert!(!dominates(&a, &a));
        prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
        if dominates(&a, &b) && dominates(&b, &c) {
            prop_assert!(dominates(&a, &c));
        }
    }
}
