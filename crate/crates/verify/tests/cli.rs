use std::process::{Command, Output};

use quintic_verify::VerificationReport;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).env_remove("QUINTIC_CACHE_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lattice_run_writes_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = verify(&["run", "--suites", "lattice", "--report", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = VerificationReport::parse_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(r.records.iter().any(|c| c.check.id == "lattice.alpha"));
    assert_eq!(r.seed, 42);

    let md = verify(&["report", "--format", "markdown", path.to_str().unwrap()]);
    assert!(md.status.success());
    let text = stdout(&md);
    assert!(text.contains("## lattice"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn no_suites_gives_an_empty_report() {
    let o = verify(&["run", "--suites", "none"]);
    assert_eq!(o.status.code(), Some(0));
    let r = VerificationReport::parse_json(&stdout(&o)).unwrap();
    assert!(r.records.is_empty());
}

#[test]
fn unsupported_prime_is_rejected() {
    let o = verify(&["run", "--suites", "scan", "--prime", "37"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not supported"));
}

#[test]
fn excluded_modulus_exits_nonzero() {
    let o = verify(&["run", "--suites", "scan", "--prime", "31", "--a", "0", "--no-symbolic"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scan_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = verify(&["scan", "--prime", "31", "--a", "2", "--cache-dir", d]);
    assert!(first.status.success());
    assert!(stdout(&first).contains("points=25"));
    assert!(stdout(&first).contains("cache written"));
    let second = verify(&["scan", "--prime", "31", "--a", "2", "--cache-dir", d]);
    assert!(stdout(&second).contains("cache hit"));
}

#[test]
fn cache_dir_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["scan", "--prime", "31", "--a", "4"])
        .env("QUINTIC_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
