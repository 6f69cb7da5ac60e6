use std::io::Write;

use quintic_core::nslattice::{blowup_h2, symmetric_square, SurfaceForm, TripleForm};
use quintic_core::probe::{
    certify_secant_variety, load_cache, scan_cached, scan_curve, secant_point_count, CacheOutcome,
};
use quintic_core::report::all_passed;

#[test]
fn scan_then_certify_secants() {
    let scan = scan_curve(31, 2).unwrap();
    assert_eq!(scan.len(), 25);
    assert!(scan.hasse_ok());
    let recs = certify_secant_variety(&scan, 200, 11).unwrap();
    assert!(recs.iter().filter(|r| !r.status.is_soft()).all(|r| r.passed()));
    let (observed, predicted) = secant_point_count(&scan).unwrap();
    assert_eq!(observed, predicted);
}

#[test]
fn cache_round_trip_through_the_public_api() {
    let dir = tempfile::tempdir().unwrap();
    let (first, outcome) = scan_cached(dir.path(), 61, 2).unwrap();
    assert_eq!(outcome, CacheOutcome::Created);
    let (second, outcome) = scan_cached(dir.path(), 61, 2).unwrap();
    assert_eq!(outcome, CacheOutcome::Hit);
    assert_eq!(first, second);
    assert_eq!(load_cache(dir.path(), 61, 2).unwrap(), Some(first));
    assert_eq!(load_cache(dir.path(), 61, 3).unwrap(), None);
}

#[test]
fn forms_load_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.form");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "kind surface\nbasis L E\nL L = 1\nL E = 0\nE E = -1").unwrap();
    let form = SurfaceForm::load(&path).unwrap();
    let c = form.class("L - E", &[1, -1]).unwrap();
    assert_eq!(form.pairing(&c, &c).unwrap(), 0);
    assert!(TripleForm::load(&path).is_err());
}

#[test]
fn bundled_tables() {
    let h2 = blowup_h2();
    let h = h2.generator("H2").unwrap();
    let x = h2.generator("X").unwrap();
    let d = h.scale(2).sub(&x).unwrap();
    assert_eq!(h2.cube(&d).unwrap(), 5);
    assert_eq!(h2.entry(&["H2", "X", "S"]).unwrap(), None);

    let s = symmetric_square();
    let a = s.class("4C0 - 2F", &[4, -2]).unwrap();
    let b = s.class("C0 + 2F", &[1, 2]).unwrap();
    assert_eq!(s.pairing(&a, &b).unwrap(), 10);
    assert!(all_passed(&quintic_core::nslattice::lattice_suite()));
}
