use std::time::Instant;

use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};

use super::*;

/// Every point of P⁴(F_p) tested against the quadric polynomials.
fn brute_force(p: u64, a: u64) -> Vec<Vec5> {
    let f = PrimeField::new(p).unwrap();
    let qs = QuadricSystem::new(&f, a).unwrap();
    let mut out = Vec::new();
    for l in 0..5usize {
        let total = p.pow((4 - l) as u32);
        for mut code in 0..total {
            let mut x = [0u64; 5];
            x[l] = 1;
            for slot in x.iter_mut().skip(l + 1) {
                *slot = code % p;
                code /= p;
            }
            if qs.evaluate(&x[..]).unwrap().iter().all(|&c| c == 0) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

fn admissible(p: u64) -> Vec<u64> {
    ExcludedModuli::new().admissible_mod(p, 2)
}

#[test]
fn chart_scan_matches_brute_force() {
    for a in admissible(31) {
        assert_eq!(scan_curve(31, a).unwrap().points, brute_force(31, a), "a={a}");
    }
}

#[test]
fn scan_at_31_with_a_2() {
    let s = scan_curve(31, 2).unwrap();
    assert!((21..=43).contains(&s.len()));
    let f = s.field();
    assert!(s.contains(&designated_origin(&f, 2)));
    for r in scan_records(&s) {
        assert!(r.passed(), "{} {}", r.id, r.witness);
    }
}

#[test]
fn scan_is_fast_and_deterministic() {
    for (p, limit) in [(31u64, 10.0), (61, 60.0)] {
        for a in admissible(p) {
            let t = Instant::now();
            let s1 = scan_curve(p, a).unwrap();
            assert!(t.elapsed().as_secs_f64() < limit);
            assert_eq!(s1, scan_curve(p, a).unwrap());
            assert!(s1.hasse_ok());
        }
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert_eq!(scan_curve(37, 2), Err(ProbeError::UnsupportedPrime(37)));
    assert_eq!(scan_curve(31, 0), Err(ProbeError::ExcludedModulus { p: 31, a: 0 }));
    let bad = ExcludedModuli::new().images_mod(31).unwrap()[1];
    assert_eq!(scan_curve(31, bad), Err(ProbeError::ExcludedModulus { p: 31, a: bad }));
}

#[test]
fn symmetry_permutes_points() {
    for p in [31u64, 61] {
        let s = scan_curve(p, admissible(p)[0]).unwrap();
        assert_eq!(heisenberg_invariance(&s), (true, Some(true)));
    }
}

#[test]
fn secant_checks_pass() {
    for p in [31u64, 61] {
        for a in admissible(p) {
            let s = scan_curve(p, a).unwrap();
            for r in certify_secant_variety(&s, 1000, 3).unwrap() {
                assert!(!r.status.is_hard_failure(), "{} {}", r.id, r.witness);
            }
        }
    }
}

#[test]
fn incidence_checks_pass() {
    for p in [31u64, 61] {
        for a in admissible(p) {
            let s = scan_curve(p, a).unwrap();
            for r in certify_incidence(&s, 500, 4).unwrap() {
                assert!(!r.status.is_hard_failure(), "{} {}", r.id, r.witness);
            }
        }
    }
}

#[test]
fn exact_secant_count_oracle() {
    // Independent count: the union of all secant and tangent lines through
    // rational points, built point by point.
    let s = scan_curve(31, 2).unwrap();
    let f = s.field();
    let mut set = std::collections::BTreeSet::new();
    for (i, a) in s.points.iter().enumerate() {
        for b in &s.points[i..] {
            if a == b {
                continue;
            }
            for t in 0..31 {
                set.insert(normalize5(&f, &fp::combine5(&f, 1, a, t, b)).unwrap());
            }
            set.insert(*b);
        }
    }
    let (observed, predicted) = secant_point_count(&s).unwrap();
    assert_eq!(observed, predicted);
    // Lines through two rational points are a subset of the whole variety.
    assert!((set.len() as u64) < observed);
    let n = s.len();
    assert_eq!(set.len(), n + 30 * n * (n - 1) / 2);
}

#[test]
fn cremona_inverse_round_trips() {
    for p in [31u64, 61] {
        for a in admissible(p) {
            let s = scan_curve(p, a).unwrap();
            for r in verify_cremona(&s, 500, 200, 5).unwrap() {
                assert!(r.passed(), "{} {}", r.id, r.witness);
            }
        }
    }
}

#[test]
fn cremona_kernel_is_one_dimensional() {
    let w = interpolate_cremona_inverse(&scan_curve(31, 2).unwrap()).unwrap();
    assert_eq!(w.kernel_dim, 1);
    assert_eq!((w.equations, w.unknowns), (1050, 301));
    assert!(w.cubics.iter().all(|c| c.homogeneous_degree() == Some(3)));
    assert_eq!(w.g.homogeneous_degree(), Some(5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn scanned_points_satisfy_quadrics(i in 0usize..1000) {
        let s = scan_curve(61, 2).unwrap();
        let x = s.points[i % s.len()];
        let f = s.field();
        let q = eval_quadrics(&f, 2, f.inv_mod(2).unwrap(), &x);
        prop_assert!(q.iter().all(|&c| c == 0));
        prop_assert_eq!(normalize5(&f, &x), Some(x));
    }
}
