use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use quintic_core::heisenberg::{verify_character_table, verify_commutators, verify_section_symmetries};
use quintic_core::hessepencil::{hesse_suite, torsion_suite, DEFAULT_WITNESS_BOUND};
use quintic_core::moore::{moore_suite_numeric, moore_suite_symbolic};
use quintic_core::nslattice::lattice_suite;
use quintic_core::probe::{
    certify_incidence, certify_secant_variety, scan_cached, scan_curve, scan_records, verify_cremona, CacheOutcome,
    CurveScan, ProbeError,
};
use quintic_core::report::CheckRecord;

use crate::config::{RunConfig, Suite};
use crate::report::{ClaimRecord, VerificationReport};

pub const SECANT_SAMPLES: usize = 1000;
pub const INCIDENCE_SAMPLES: usize = 500;
pub const ROUND_TRIPS: usize = 500;
pub const CREMONA_SECANT_SAMPLES: usize = 200;

/// A per-job seed: the first 8 bytes of `sha256(seed ‖ label)`.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

fn timed(f: impl FnOnce() -> Vec<CheckRecord>) -> (Vec<CheckRecord>, u64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_millis() as u64)
}

fn global_suite(suite: Suite, config: &RunConfig) -> Vec<CheckRecord> {
    let seed = derive_seed(config.seed, suite.name());
    match suite {
        Suite::Heisenberg => {
            let mut v = verify_commutators();
            v.extend(verify_character_table());
            v
        }
        Suite::Sections => verify_section_symmetries(),
        Suite::Hesse => hesse_suite(seed),
        Suite::Torsion => torsion_suite(DEFAULT_WITNESS_BOUND, seed),
        Suite::Moore if config.symbolic_a => moore_suite_symbolic(),
        Suite::Lattice => lattice_suite(),
        _ => Vec::new(),
    }
}

fn error_record(id: &str, statement: &str, e: &ProbeError) -> Vec<CheckRecord> {
    vec![CheckRecord::new(id, statement, false, json!({ "error": e.to_string() }))]
}

/// The suites that run once per `(p, a)`, in report order.
fn pair_suites(
    config: &RunConfig,
    p: u64,
    a: u64,
    log: &(dyn Fn(String) + Sync),
) -> Vec<(Suite, Vec<CheckRecord>, u64)> {
    let mut out = Vec::new();
    let label = |s: Suite| format!("{}.p{p}.a{a}", s.name());
    if config.suites.contains(&Suite::Moore) {
        let (v, ms) = timed(|| moore_suite_numeric(p, a, derive_seed(config.seed, &label(Suite::Moore))));
        out.push((Suite::Moore, v, ms));
    }
    if !config.suites.iter().any(|s| s.needs_scan()) {
        return out;
    }

    let t = Instant::now();
    let scanned: Result<CurveScan, ProbeError> = match &config.cache_dir {
        Some(dir) => scan_cached(dir, p, a).map(|(s, outcome)| {
            match outcome {
                CacheOutcome::Hit => log(format!("p={p} a={a}: cache hit")),
                CacheOutcome::Created => log(format!("p={p} a={a}: scanned, cache written")),
                CacheOutcome::Rebuilt(why) => log(format!("p={p} a={a}: cache rejected ({why}), rescanned")),
            }
            s
        }),
        None => scan_curve(p, a),
    };
    let scan_ms = t.elapsed().as_millis() as u64;
    let scan = match scanned {
        Ok(s) => s,
        Err(e) => {
            let id = format!("scan.p{p}.a{a}.scan");
            out.push((Suite::Scan, error_record(&id, "E(F_p) can be scanned", &e), scan_ms));
            return out;
        }
    };
    if config.suites.contains(&Suite::Scan) {
        let (v, ms) = timed(|| scan_records(&scan));
        out.push((Suite::Scan, v, scan_ms + ms));
    }
    let wrap = |suite: Suite, r: Result<Vec<CheckRecord>, ProbeError>| {
        r.unwrap_or_else(|e| error_record(&format!("{}.error", label(suite)), "suite ran to completion", &e))
    };
    if config.suites.contains(&Suite::Secants) {
        let seed = derive_seed(config.seed, &label(Suite::Secants));
        let (v, ms) = timed(|| wrap(Suite::Secants, certify_secant_variety(&scan, SECANT_SAMPLES, seed)));
        out.push((Suite::Secants, v, ms));
    }
    if config.suites.contains(&Suite::Incidence) {
        let seed = derive_seed(config.seed, &label(Suite::Incidence));
        let (v, ms) = timed(|| wrap(Suite::Incidence, certify_incidence(&scan, INCIDENCE_SAMPLES, seed)));
        out.push((Suite::Incidence, v, ms));
    }
    if config.suites.contains(&Suite::Cremona) {
        let seed = derive_seed(config.seed, &label(Suite::Cremona));
        let (v, ms) = timed(|| wrap(Suite::Cremona, verify_cremona(&scan, ROUND_TRIPS, CREMONA_SECANT_SAMPLES, seed)));
        out.push((Suite::Cremona, v, ms));
    }
    out
}

/// Runs every selected suite. Independent jobs run in parallel; records are
/// assembled in suite order, then by `(p, a)`.
pub fn run(config: &RunConfig) -> VerificationReport {
    run_with_log(config, &|_| {})
}

pub fn run_with_log(config: &RunConfig, log: &(dyn Fn(String) + Sync)) -> VerificationReport {
    let globals: Vec<(Suite, Vec<CheckRecord>, u64)> = config
        .suites
        .iter()
        .copied()
        .filter(|s| !s.needs_scan())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let (v, ms) = timed(|| global_suite(s, config));
            (s, v, ms)
        })
        .collect();
    let pairs: Vec<Vec<(Suite, Vec<CheckRecord>, u64)>> =
        if config.suites.iter().any(|s| s.needs_scan() || *s == Suite::Moore) {
            config.pairs().into_par_iter().map(|(p, a)| pair_suites(config, p, a, log)).collect()
        } else {
            Vec::new()
        };

    let mut records = Vec::new();
    for suite in Suite::ALL {
        let chunks = globals.iter().filter(|g| g.0 == suite).chain(pairs.iter().flatten().filter(|g| g.0 == suite));
        for (s, v, ms) in chunks {
            records.extend(v.iter().cloned().map(|check| ClaimRecord { suite: *s, check, elapsed_ms: *ms }));
        }
    }
    VerificationReport {
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        config: config.clone(),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn seeds_differ_by_label_and_are_stable() {
        assert_eq!(derive_seed(42, "hesse"), derive_seed(42, "hesse"));
        assert_ne!(derive_seed(42, "hesse"), derive_seed(42, "torsion"));
        assert_ne!(derive_seed(42, "hesse"), derive_seed(43, "hesse"));
    }

    #[test]
    fn empty_suite_list_gives_empty_report() {
        let c = RunConfig { suites: BTreeSet::new(), ..RunConfig::default() };
        let r = run(&c);
        assert!(r.records.is_empty());
        assert_eq!(r.exit_code(false), 0);
    }

    #[test]
    fn lattice_only_report() {
        let c = RunConfig { suites: [Suite::Lattice].into_iter().collect(), ..RunConfig::default() };
        let r = run(&c);
        assert!(!r.records.is_empty());
        assert!(r.records.iter().all(|x| x.suite == Suite::Lattice && x.check.passed()));
        assert!(r.records.iter().any(|x| x.check.id == "lattice.alpha"));
        assert!(r.records.iter().any(|x| x.check.id == "lattice.double-point"));
    }

    #[test]
    fn excluded_modulus_is_a_recorded_failure() {
        let c = RunConfig {
            primes: vec![31],
            a_values: crate::config::AValues::All(vec![0]),
            suites: [Suite::Scan, Suite::Secants].into_iter().collect(),
            ..RunConfig::default()
        };
        let r = run(&c);
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.exit_code(false), 1);
    }
}
