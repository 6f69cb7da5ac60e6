//! Acceptance gate. Prints one line per criterion and fails if any criterion
//! fails.

use std::time::{Duration, Instant};

use serde_json::Value;

use quintic_core::hessepencil::verify_fermat_identities;
use quintic_core::moore::moore_suite_symbolic;
use quintic_core::nslattice::lattice_suite;
use quintic_core::probe::scan_curve;
use quintic_core::report::CheckRecord;
use quintic_verify::{run, ClaimRecord, RunConfig, Suite, VerificationReport};

struct Gate {
    lines: Vec<String>,
    failed: usize,
}

impl Gate {
    fn record(&mut self, n: usize, ok: bool, detail: String) {
        let line = format!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.failed += usize::from(!ok);
        self.lines.push(line);
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn failing(recs: &[CheckRecord]) -> Vec<String> {
    recs.iter().filter(|r| !r.passed()).map(|r| r.id.clone()).collect()
}

fn by_id<'a>(report: &'a VerificationReport, id: &str) -> Option<&'a ClaimRecord> {
    report.records.iter().find(|r| r.check.id == id)
}

fn witness_u64(r: Option<&ClaimRecord>, key: &str) -> Option<u64> {
    r.and_then(|r| r.check.witness.get(key)).and_then(Value::as_u64)
}

fn hard_pass(r: Option<&ClaimRecord>) -> bool {
    r.is_some_and(|r| r.check.passed() && !r.check.status.is_soft())
}

fn suite_hard_failures(report: &VerificationReport, suite: Suite) -> Vec<String> {
    report
        .records
        .iter()
        .filter(|r| r.suite == suite && !r.check.status.is_soft() && !r.check.passed())
        .map(|r| r.check.id.clone())
        .collect()
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new(), failed: 0 };
    let config = RunConfig::default();
    let report = run(&config);

    // 1: sum-of-cubes identities, < 1 s.
    let (fermat, t) = timed(verify_fermat_identities);
    let bad = failing(&fermat);
    gate.record(
        1,
        fermat.len() >= 4 && bad.is_empty() && t < Duration::from_secs(1),
        format!("{} identities, failing {bad:?}, {:.3}s", fermat.len(), t.as_secs_f64()),
    );

    // 2: character decomposition and table, discrepancy reported.
    let dec = by_id(&report, "characters.decomposition");
    let table = by_id(&report, "characters.table");
    let dims_ok = dec.is_some_and(|r| {
        let w = &r.check.witness;
        let dims = w.get("dimensions").and_then(Value::as_object);
        w.get("total").and_then(Value::as_u64) == Some(10)
            && dims.is_some_and(|d| {
                d.len() == 9 && d.iter().all(|(k, v)| v.as_u64() == Some(if k == "(0,0)" { 2 } else { 1 }))
            })
    });
    let flagged = table.is_some_and(|r| !r.check.notes.is_empty());
    gate.record(
        2,
        hard_pass(dec) && hard_pass(table) && dims_ok && flagged,
        format!("decomposition total 10: {dims_ok}, table discrepancy reported: {flagged}"),
    );

    // 3: commutator scalars.
    let ids = ["commutator.plane", "commutator.dual", "commutator.level15"];
    let ok = ids.iter().all(|id| hard_pass(by_id(&report, id)));
    gate.record(3, ok, format!("{} commutator records", ids.len()));

    // 4: section symmetries.
    let bad = suite_hard_failures(&report, Suite::Sections);
    let n = report.records.iter().filter(|r| r.suite == Suite::Sections).count();
    gate.record(4, n >= 4 && bad.is_empty(), format!("{n} records, failing {bad:?}"));

    // 5: Moore suite over Q(a), < 30 s.
    let (moore, t) = timed(moore_suite_symbolic);
    let bad = failing(&moore);
    gate.record(
        5,
        moore.len() >= 8 && bad.is_empty() && t < Duration::from_secs(30),
        format!("{} records, failing {bad:?}, {:.2}s", moore.len(), t.as_secs_f64()),
    );

    // 6: finite-field checks at two admissible a for p = 31 and 61.
    let pairs = config.pairs();
    let mut six_ok = pairs.len() == 4;
    let mut detail = Vec::new();
    for &(p, a) in &pairs {
        let (scan, t) = timed(|| scan_curve(p, a));
        let limit = if p == 31 { Duration::from_secs(10) } else { Duration::from_secs(60) };
        let id = |s: &str| format!("{s}.p{p}.a{a}");
        let count = by_id(&report, &format!("{}.count", id("scan")));
        let rank = by_id(&report, &format!("{}.rank-on-curve", id("secant")));
        let van = by_id(&report, &format!("{}.vanishing", id("secant")));
        let dual = by_id(&report, &format!("{}.duality", id("incidence")));
        let rank_all = witness_u64(rank, "rank3") == witness_u64(rank, "points");
        let van_all = witness_u64(van, "vanishing") == Some(1000) && witness_u64(van, "samples") == Some(1000);
        let dual_all = witness_u64(dual, "samples_zero") == Some(500)
            && witness_u64(dual, "samples") == Some(500)
            && witness_u64(dual, "residual_zero") == witness_u64(dual, "pairs");
        let ok = scan.is_ok()
            && t < limit
            && hard_pass(count)
            && hard_pass(rank)
            && rank_all
            && hard_pass(van)
            && van_all
            && hard_pass(dual)
            && dual_all;
        six_ok &= ok;
        detail.push(format!(
            "p={p} a={a}: #E={} scan {:.2}s {}",
            witness_u64(count, "points").unwrap_or(0),
            t.as_secs_f64(),
            if ok { "ok" } else { "bad" }
        ));
    }
    gate.record(6, six_ok, detail.join("; "));

    // 7: Cremona inverse.
    let mut seven_ok = true;
    let mut detail = Vec::new();
    for &(p, a) in &pairs {
        let id = |s: &str| by_id(&report, &format!("cremona.p{p}.a{a}.{s}"));
        let kernel = id("kernel");
        let rt = id("round-trip");
        let img = id("secant-image");
        let agree = witness_u64(rt, "agree").unwrap_or(0);
        let ok = hard_pass(kernel)
            && witness_u64(kernel, "kernel_dim").unwrap_or(0) >= 1
            && hard_pass(rt)
            && agree >= 498
            && rt.is_some_and(|r| r.check.witness.get("skipped_points").is_some())
            && hard_pass(img)
            && witness_u64(img, "samples") == Some(200)
            && witness_u64(img, "vanishing_y_i_eq_Q_i") == Some(200);
        seven_ok &= ok;
        detail.push(format!("p={p} a={a}: {agree}/500"));
    }
    gate.record(7, seven_ok, detail.join("; "));

    // 8: torsion on the witness curve.
    let bad = suite_hard_failures(&report, Suite::Torsion);
    let count = by_id(&report, "sixsecant.count");
    let solutions = witness_u64(count, "five_torsion");
    let ok = bad.is_empty()
        && hard_pass(by_id(&report, "torsion.counts"))
        && hard_pass(by_id(&report, "sixsecant.reduction"))
        && hard_pass(count)
        && solutions == Some(25);
    gate.record(8, ok, format!("5e0 = O solutions {solutions:?}, failing {bad:?}"));

    // 9: lattice calculator, < 1 s.
    let (lattice, t) = timed(lattice_suite);
    let bad = failing(&lattice);
    let has = |id: &str| lattice.iter().any(|r| r.id == id);
    gate.record(
        9,
        bad.is_empty() && has("lattice.alpha") && has("lattice.double-point") && t < Duration::from_secs(1),
        format!("{} records, failing {bad:?}, {:.3}s", lattice.len(), t.as_secs_f64()),
    );

    // 10: determinism.
    let again = run(&config);
    let same = report.fingerprint() == again.fingerprint();
    gate.record(10, same, format!("{} records compared", report.records.len()));

    println!("acceptance: {} of 10 criteria pass", 10 - gate.failed);
    assert_eq!(gate.failed, 0, "{:#?}", gate.lines);
}
