use std::collections::BTreeMap;

use pdmwell::verification::{full_report, Checks, Fault, Status, Verifier};
use pdmwell::{ExtensionKind, WellParams};

fn key(c: &pdmwell::verification::CheckReport) -> String {
    format!("{} [{}]", c.check_name, c.kind)
}

#[test]
fn default_report_is_green_and_large() {
    let t = std::time::Instant::now();
    let r = full_report(&WellParams::reference(), &Verifier::default());
    eprintln!("full report: {:?}, {} checks", t.elapsed(), r.checks.len());
    for f in r.failures() {
        eprintln!("FAIL {} obs={:e} exp={:e} tol={:e} {}", key(f), f.observed, f.expected, f.tolerance, f.detail);
    }
    assert!(r.all_passed());
    assert!(r.checks.len() >= 40);
    assert!(r.skipped.is_empty());
    assert_eq!(r.summary.total, r.checks.len());
}

#[test]
fn every_check_fails_under_some_fault() {
    let p = WellParams::reference();
    let clean = full_report(&p, &Verifier::default());
    let mut caught: BTreeMap<String, Vec<Fault>> = clean.checks.iter().map(|c| (key(c), vec![])).collect();
    for fault in Fault::ALL {
        let t = std::time::Instant::now();
        let r = full_report(&p, &Verifier::default().with_fault(Some(fault)));
        eprintln!("{fault}: {:?}, {} failures", t.elapsed(), r.summary.failed);
        assert_eq!(r.checks.len(), clean.checks.len());
        for c in r.failures() {
            caught.get_mut(&key(c)).unwrap().push(fault);
        }
    }
    let missed: Vec<_> = caught.iter().filter(|(_, v)| v.is_empty()).map(|(k, _)| k.clone()).collect();
    for (k, v) in &caught {
        eprintln!("{k}: {v:?}");
    }
    assert!(missed.is_empty(), "never failed: {missed:?}");
}

#[test]
fn status_is_recomputable() {
    let r = full_report(&WellParams::reference(), &Verifier::default().with_fault(Some(Fault::Potential)));
    for c in &r.checks {
        assert_eq!(c.status, c.recomputed_status(), "{}", key(c));
        assert_eq!(c.status == Status::Pass, (c.observed - c.expected).abs() <= c.tolerance);
    }
}

#[test]
fn invalid_parameters_yield_only_validation_failures() {
    let p = WellParams::new(0.1, 1.0, 10.0).unwrap();
    let r = full_report(&p, &Verifier::default());
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| c.check_name.starts_with("validation: ") && !c.passed()));
    assert!(r.checks.iter().any(|c| c.check_name.contains("2·omega·a²·b > b−a")));
}

#[test]
fn inadmissible_kinds_are_skipped() {
    let p = WellParams::new(2.0, 0.5, 2.0).unwrap();
    let r = full_report(&p, &Verifier::default());
    let skipped: Vec<_> = r.skipped.iter().map(|s| s.kind).collect();
    assert_eq!(
        skipped,
        [ExtensionKind::X2TypeI, ExtensionKind::X2TypeII, ExtensionKind::X2TypeIII]
    );
    for f in r.failures() {
        eprintln!("FAIL {} obs={:e} exp={:e} tol={:e} {}", key(f), f.observed, f.expected, f.tolerance, f.detail);
    }
    assert!(r.all_passed());
    assert!(r.checks.iter().all(|c| !c.check_name.starts_with("printed")));
}

#[test]
fn report_round_trips_through_json() {
    let r = full_report(&WellParams::reference(), &Verifier::default().with_fault(Some(Fault::CBar)));
    let text = serde_json::to_string(&r).unwrap();
    let back: pdmwell::verification::Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}

#[test]
fn report_is_deterministic() {
    let a = full_report(&WellParams::reference(), &Verifier::default());
    let b = full_report(&WellParams::reference(), &Verifier::default());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn type_iii_records_absence_of_e0_level() {
    let r = Verifier::default().check_spectrum(&WellParams::reference(), ExtensionKind::X2TypeIII);
    assert!(r.passed());
    let near = r.iter().find(|c| c.check_name == "level near E(0)").unwrap();
    assert!(near.detail.contains("absent"));
    assert!((near.expected - 8.0 / 3.0).abs() < 1e-12);
}
