use std::collections::BTreeMap;

use giantcomp::experiments::{
    run_experiment, run_powerlaw_sweep, sweep_csv, ExperimentSpec, Scenario, SweepSpec,
};
use giantcomp::graphgen::Method;

#[test]
fn identical_specs_give_identical_bytes() {
    let mut spec = ExperimentSpec::new(
        Scenario::Mixture { n: 400, fractions: BTreeMap::from([(1, 0.5), (2, 0.2), (3, 0.3)]) },
        12,
        0.3,
        7,
    );
    let a = run_experiment(&spec).unwrap().to_csv();
    assert_eq!(a, run_experiment(&spec).unwrap().to_csv());
    spec.master_seed = 8;
    assert_ne!(a, run_experiment(&spec).unwrap().to_csv());
}

#[test]
fn giant_and_kernel_giant_agree() {
    let scenarios = [
        (Scenario::Regular { n: 600, degree: 3 }, 0.5),
        (Scenario::Mixture { n: 1000, fractions: BTreeMap::from([(1, 0.9), (3, 0.1)]) }, 0.05),
        (Scenario::Mixture { n: 1000, fractions: BTreeMap::from([(1, 0.4), (2, 0.3), (3, 0.3)]) }, 0.2),
        (Scenario::Star { k: 31 }, 0.05),
    ];
    let (mut trials, mut mismatches) = (0, 0);
    for (i, (scenario, gamma)) in scenarios.into_iter().enumerate() {
        let report = run_experiment(&ExperimentSpec::new(scenario, 40, gamma, i as u64)).unwrap();
        trials += report.aggregate.trials;
        mismatches += report.aggregate.coupling_mismatches;
        for t in &report.trials {
            assert!((0.0..=1.0).contains(&t.largest_fraction) && (0.0..=1.0).contains(&t.kernel_fraction));
        }
    }
    assert!(mismatches as f64 <= 0.05 * trials as f64, "{mismatches} of {trials}");
}

#[test]
fn star_family_is_forced() {
    let report = run_experiment(&ExperimentSpec::new(Scenario::Star { k: 21 }, 5, 0.05, 3)).unwrap();
    assert!(report.trials.iter().all(|t| t.largest_order == 43));
    assert!(report.invariants.ratio_hat_f64() > 0.0);
}

#[test]
fn file_scenario_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.txt");
    std::fs::write(&path, "#counts\n1\t20\n3\t20\n").unwrap();
    let json = format!(
        r#"{{"scenario": {{"kind": "file", "path": {:?}}}, "trials": 4, "gamma": 0.5, "sampler": "config", "master_seed": 1}}"#,
        path.to_str().unwrap()
    );
    let spec = ExperimentSpec::from_json(&json).unwrap();
    assert_eq!(spec.sampler, Method::Config);
    let report = run_experiment(&spec).unwrap();
    assert_eq!(report.n, 40);
    assert_eq!(report.trials.len(), 4);
}

#[test]
fn powerlaw_sweep_rows() {
    let spec = SweepSpec {
        alphas: vec![7.0],
        betas: vec![2.5, 3.9],
        gamma: 0.05,
        trials: 5,
        master_seed: 2,
        sampler: Method::Auto,
        eps: 0.1,
        delta: 0.01,
    };
    let rows = run_powerlaw_sweep(&spec).unwrap();
    assert_eq!(rows.len(), 2);
    let csv = sweep_csv(&rows);
    assert!(csv.starts_with("alpha,beta,n,M,R,jD,ratio_hat,verdict,probability\n"));
    assert_eq!(csv.lines().count(), 3);
    assert!(rows[0].probability > rows[1].probability);
}

#[test]
fn degree_keyed_scenarios_from_json() {
    let spec = ExperimentSpec::from_json(
        r#"{"scenario": {"kind": "mixture", "n": 100, "fractions": {"1": 0.5, "3": 0.5}}, "gamma": 0.1}"#,
    )
    .unwrap();
    assert_eq!(spec.scenario.sequence().unwrap().count(3), 50);
    let spec = ExperimentSpec::from_json(r#"{"scenario": {"kind": "counts", "counts": {"3": 10}}, "gamma": 0.1}"#).unwrap();
    assert_eq!(spec.scenario, Scenario::Counts { counts: BTreeMap::from([(3, 10)]) });
    let round = serde_json::to_string(&spec).unwrap();
    assert_eq!(ExperimentSpec::from_json(&round).unwrap(), spec);
    assert!(ExperimentSpec::from_json(r#"{"scenario": {"kind": "counts", "counts": {"x": 10}}, "gamma": 0.1}"#).is_err());
}
