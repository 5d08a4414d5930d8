use qpoisson::polys::aw_norm0;
use qpoisson::verify::*;
use qpoisson::{standard, Complex64, Error};

fn only(ids: &[&str]) -> SuiteConfig {
    SuiteConfig { only: Some(ids.iter().map(|s| s.to_string()).collect()), ..SuiteConfig::default() }
}

#[test]
fn empty_selection_gives_no_reports() {
    assert!(run_suite(&only(&[])).unwrap().is_empty());
}

#[test]
fn orthogonality_cardinality() {
    let r = run_suite(&only(&["check_orthogonality"])).unwrap();
    assert_eq!(r.len(), 36);
    assert!(r.iter().all(|x| x.passed));
}

#[test]
fn unknown_family_is_a_config_error() {
    assert!(matches!(run_suite(&only(&["check_nothing"])), Err(Error::InvalidParameter { .. })));
    let cfg = SuiteConfig { tolerances: vec![("check_nothing".into(), 1.0)], ..SuiteConfig::default() };
    assert!(run_suite(&cfg).is_err());
    let cfg = SuiteConfig { tolerances: vec![("check_mehler".into(), -1.0)], ..SuiteConfig::default() };
    assert!(run_suite(&cfg).is_err());
}

#[test]
fn full_suite_is_deterministic_and_replayable() {
    let a = run_suite(&SuiteConfig::default()).unwrap();
    let b = run_suite(&SuiteConfig::default()).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    let mut ids: Vec<_> = a.iter().map(|r| r.identity_id.as_str()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]), "ids must be sorted and unique");
    ids.dedup();
    assert_eq!(ids.len(), a.len());
    for r in &a {
        let again = rerun(r).unwrap();
        assert_eq!(again.identity_id, r.identity_id);
        assert_eq!(again.observed_error.to_bits(), r.observed_error.to_bits(), "{}", r.identity_id);
    }
}

#[test]
fn registry_order_does_not_change_samples() {
    let all = run_suite(&SuiteConfig::default()).unwrap();
    let part = run_suite(&only(&["check_2phi1_2phi2"])).unwrap();
    let from_all: Vec<_> = all.into_iter().filter(|r| r.family() == "check_2phi1_2phi2").collect();
    assert_eq!(part, from_all);
    assert_eq!(part.len(), 50);
}

#[test]
fn seed_changes_samples() {
    let a = run_suite(&only(&["check_6w5_split"])).unwrap();
    let b = run_suite(&SuiteConfig { seed: 7, ..only(&["check_6w5_split"]) }).unwrap();
    assert_eq!(a.len(), 100);
    assert_ne!(a[0].witness, b[0].witness);
    assert!(a.iter().chain(&b).all(|r| r.passed), "6W5 split samples must pass");
}

#[test]
fn tolerance_overrides() {
    let mut cfg = only(&["check_mehler"]);
    cfg.tolerances = vec![("check_mehler".into(), 1.0), ("check_mehler/x=2,y=2,t=0.8".into(), 0.0)];
    let r = run_suite(&cfg).unwrap();
    for x in &r {
        let want = if x.identity_id == "check_mehler/x=2,y=2,t=0.8" { 0.0 } else { 1.0 };
        assert_eq!(x.tolerance, want, "{}", x.identity_id);
    }
    assert!(!r.iter().find(|x| x.identity_id == "check_mehler/x=2,y=2,t=0.8").unwrap().passed);
}

#[test]
fn failures_are_reported_not_raised() {
    let r = run_suite(&only(&["check_mehler"])).unwrap();
    assert_eq!(r.len(), 48);
    assert!(r.iter().filter(|x| x.identity_id.ends_with("t=0.2") || x.identity_id.ends_with("t=0.5")).all(|x| x.passed));
    assert!(r.iter().any(|x| !x.passed));
}

#[test]
fn evaluation_errors_become_failed_reports() {
    let case = Case { family: "check_kernel_explicit", tolerance: 1e-7, witness: qpoisson::report::Witness::new().with("q", 2.0) };
    let r = run_case(&case);
    assert!(!r.passed);
    assert_eq!(r.identity_id, "check_kernel_explicit/error");
    assert_eq!(r.diagnostics[0].0, "error:InvalidBase");
}

#[test]
fn registry_is_sorted_and_complete() {
    let ids = family_ids();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    for id in ["check_orthogonality", "check_6w5_split", "check_2phi1_2phi2", "check_kernel_explicit", "check_mehler"] {
        assert!(family(id).is_some(), "{id}");
    }
}

#[test]
fn quadrature_self_convergence() {
    let lambda = standard::lambda();
    let base = QuadratureConfig::default();
    let one = |_: f64| -> qpoisson::Result<Complex64> { Ok(Complex64::new(1.0, 0.0)) };
    let a = integrate_weighted(one, &Weight::AskeyWilson(lambda.clone()), &base).unwrap();
    let b = integrate_weighted(one, &Weight::AskeyWilson(lambda.clone()), &base.refined(2).unwrap()).unwrap();
    assert!((a - b).norm() < 1e-10 * a.norm());
    let h0 = aw_norm0(&lambda).unwrap();
    assert!((a.re * h0 - 1.0).abs() < 1e-8);
}

#[test]
fn quadrature_config_validation() {
    assert!(QuadratureConfig::new(0, 16, (0.0, 1.0)).is_err());
    assert!(QuadratureConfig::new(4, 16, (1.0, 0.5)).is_err());
    assert!(QuadratureConfig::new(4, 16, (0.0, 4.0)).is_err());
}

#[test]
fn delta_limit_is_monotone() {
    let q = standard::q();
    let cfg = QuadratureConfig::default();
    let theta = 0.3f64.acos();
    let errs: Vec<f64> =
        [0.9, 0.99, 0.995].iter().map(|&r| check_delta_limit(r, DeltaTest::Square, theta, q, &cfg, 1.0).unwrap().observed_error).collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    let exact = |r: f64| (1.0 - r * r) * (4.0 * 0.09 + 0.5 - 1.0f64).abs() / 4.0;
    for (e, r) in errs.iter().zip([0.9, 0.99, 0.995]) {
        assert!((e - exact(r)).abs() < 1e-8, "r={r}: {e} vs {}", exact(r));
    }
}
