mod common;

use common::PairColors;
use rainbow_core::harness::{run_trial, Density, Harness};
use rainbow_core::report::{
    emit_results, read_json, read_records_csv, render_results, Format, Results,
};
use rainbow_core::{sample_family, Model, ModelParams, SeedPlan, ThresholdEstimate};

fn oracle_connected(params: &ModelParams, plan: &SeedPlan, trial: u64) -> bool {
    let family = sample_family(params, plan, trial).unwrap();
    PairColors::of(&family.into()).all_pairs_connected()
}

#[test]
fn trial_counts_match_the_reference_pipeline() {
    let harness = Harness::new(Some(2), false).unwrap();
    let params = ModelParams::derive(10, 3, 2.0, Model::Family).unwrap();
    let plan = SeedPlan::new(99);
    let records = harness.run_trials(&params, &plan, 100).unwrap();
    let got = records.iter().filter(|r| r.rainbow_connected).count();
    let expected = (0..100)
        .filter(|&i| oracle_connected(&params, &plan, i))
        .count();
    assert_eq!(got, expected);
    assert!(records.iter().all(|r| r.is_consistent()));
    let estimate = harness
        .estimate_probability(10, 3, Density::Constant(2.0), Model::Family, 100, 99)
        .unwrap();
    assert_eq!(estimate.successes as usize, expected);
}

#[test]
fn scan_curve_matches_the_reference_pipeline() {
    let harness = Harness::new(Some(3), false).unwrap();
    let outcome = harness
        .scan_threshold(
            12,
            Density::Constant(2.0),
            Model::Family,
            50,
            5,
            Some((1, 4)),
        )
        .unwrap();
    let plan = SeedPlan::new(5);
    assert_eq!(outcome.estimate.curve.len(), 4);
    for point in &outcome.estimate.curve {
        let params = ModelParams::derive(12, point.s, 2.0, Model::Family).unwrap();
        let child = plan.child(point.s as u64);
        let expected = (0..50)
            .filter(|&i| oracle_connected(&params, &child, i))
            .count() as u64;
        assert_eq!(point.estimate.successes, expected, "s = {}", point.s);
        assert_eq!(point.estimate.trials, 50);
    }
    let crossing = outcome
        .estimate
        .curve
        .iter()
        .find(|p| 2 * p.estimate.successes >= 50)
        .map(|p| p.s);
    assert_eq!(outcome.estimate.s_star, crossing);
}

#[test]
fn forced_probabilities() {
    let full = ModelParams::with_probability(2, 1, 1.0, Model::Family).unwrap();
    let r = run_trial(&full, &SeedPlan::new(0), 0).unwrap();
    assert!(r.rainbow_connected);
    assert_eq!(r.union_diameter, Some(1));

    let empty = ModelParams::with_probability(5, 2, 0.0, Model::Uniform).unwrap();
    let r = run_trial(&empty, &SeedPlan::new(0), 0).unwrap();
    assert!(!r.rainbow_connected && !r.union_connected);
    assert_eq!(r.max_layer_degree, None);

    let harness = Harness::new(Some(1), false).unwrap();
    let sure = harness
        .estimate_probability(8, 3, Density::Probability(1.0), Model::Family, 10, 1)
        .unwrap();
    assert_eq!(sure.fraction, 1.0);

    let (family, uniform) = harness
        .compare_models(8, Density::Probability(1.0), 5, 1, Some((2, 4)))
        .unwrap();
    assert_eq!(family.estimate.s_star, Some(2));
    assert_eq!(uniform.estimate.s_star, Some(2));
    let (family, uniform) = harness
        .compare_models(8, Density::Probability(0.0), 5, 1, Some((2, 4)))
        .unwrap();
    assert_eq!(family.estimate.s_star, None);
    assert_eq!(uniform.estimate.s_star, None);
}

#[test]
fn scans_need_a_range_below_the_asymptotic_cutoff() {
    let harness = Harness::new(Some(1), false).unwrap();
    assert!(harness
        .scan_threshold(12, Density::Constant(2.0), Model::Family, 5, 1, None)
        .is_err());
    assert!(harness
        .scan_threshold(
            12,
            Density::Constant(2.0),
            Model::Family,
            5,
            1,
            Some((3, 2))
        )
        .is_err());
}

#[test]
fn outputs_do_not_depend_on_worker_count() {
    let mut outputs = Vec::new();
    for threads in [1, 2, 8] {
        let harness = Harness::new(Some(threads), false).unwrap();
        let outcome = harness
            .scan_threshold(
                60,
                Density::Constant(2.0),
                Model::Uniform,
                20,
                17,
                Some((2, 7)),
            )
            .unwrap();
        outputs.push((
            render_results(Results::Records(&outcome.records), Format::Csv).unwrap(),
            render_results(Results::Estimates(&[outcome.estimate]), Format::Json).unwrap(),
        ));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn results_round_trip_through_files() {
    let harness = Harness::new(Some(2), false).unwrap();
    let outcome = harness
        .scan_threshold(
            40,
            Density::Constant(2.5),
            Model::Family,
            10,
            3,
            Some((2, 5)),
        )
        .unwrap();
    let dir = tempfile::tempdir().unwrap();

    let csv = dir.path().join("trials.csv");
    emit_results(Results::Records(&outcome.records), &csv, Format::Csv).unwrap();
    assert_eq!(read_records_csv(&csv).unwrap(), outcome.records);

    let json = dir.path().join("curve.json");
    let estimates = vec![outcome.estimate];
    emit_results(Results::Estimates(&estimates), &json, Format::Json).unwrap();
    let back: Vec<ThresholdEstimate> = read_json(&json).unwrap();
    assert_eq!(back, estimates);

    let missing = dir.path().join("nope").join("x.csv");
    let err = emit_results(Results::Records(&[]), &missing, Format::Csv).unwrap_err();
    assert!(err.to_string().contains("nope"), "{err}");
}
