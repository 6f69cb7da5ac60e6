use super::*;
use crate::scalars::{Cyclo15, CycloField, PrimeField, RatFunc, Rationals};
use proptest::prelude::*;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn zero_modulus_is_rejected() {
    assert_eq!(build_moore_matrices(&fp(31), 0).err(), Some(MooreError::ZeroModulus));
    assert!(QuadricSystem::new(&fp(31), 0).is_err());
}

#[test]
fn m_of_e0_recovers_twice_q0() {
    let f = fp(31);
    let mm = build_moore_matrices(&f, 2).unwrap();
    let m = mm.m_at(&[1, 0, 0, 0, 0]).unwrap();
    assert_eq!(m[0][0], 2);
    let qs = QuadricSystem::new(&f, 2).unwrap();
    // x·M(e_0)·xᵀ at random points against 2Q_0.
    for x in [[1u64, 2, 3, 4, 5], [0, 7, 1, 30, 2]] {
        let mx = linalg::mat_vec(&f, &m, &x);
        let v = (0..5).fold(0, |s, i| f.add_mod(s, f.mul_mod(x[i], mx[i])));
        assert_eq!(v, f.mul_mod(2, qs.evaluate(&x).unwrap()[0]));
    }
}

#[test]
fn dual_matrix_has_closed_form() {
    // M′_ik = z_{2i−k} x_{k−i}, written out independently.
    let f = fp(61);
    let a = 7;
    let mm = build_moore_matrices(&f, a).unwrap();
    let z = z_vector(&f, &a).unwrap();
    let x = [3u64, 1, 4, 1, 5];
    let mp = mm.m_prime_at(&x).unwrap();
    for i in 0..5i64 {
        for k in 0..5i64 {
            let want = f.mul_mod(z[idx(2 * i - k)], x[idx(k - i)]);
            assert_eq!(mp[i as usize][k as usize], want);
        }
    }
}

#[test]
fn incidence_residual_is_dual() {
    let f = fp(31);
    let mm = build_moore_matrices(&f, 3).unwrap();
    let r = incidence_residual(&[1, 2, 3, 4, 5], &[5, 4, 3, 2, 1], &mm).unwrap();
    assert_eq!(r.len(), 5);
    assert!(r.iter().any(|&c| c != 0));
    assert!(matches!(incidence_residual(&[1, 2], &[1, 2, 3, 4, 5], &mm), Err(MooreError::PointLength(2))));
}

#[test]
fn numeric_suite_passes() {
    for (p, a) in [(31u64, 2u64), (61, 3)] {
        for r in moore_suite_numeric(p, a, 1) {
            assert!(r.passed(), "{} {}", r.id, r.witness);
        }
    }
}

#[test]
fn rational_a_suite_passes() {
    let k = Cyclo15;
    let qs = QuadricSystem::new(&k, k.from_i64(2)).unwrap();
    let mm = build_moore_matrices(&k, k.from_i64(2)).unwrap();
    for r in verify_moore_structure("moore.q", &qs, &mm).unwrap() {
        assert!(r.passed(), "{} {}", r.id, r.witness);
    }
    let recs = verify_span_claims("moore.q", &qs, &mm).unwrap();
    assert!(recs.iter().all(|r| r.passed()));
    let syz = &recs[1].witness["reindexings"];
    assert!(syz.as_array().unwrap().contains(&serde_json::json!({"scale": 3, "shift": 0})));
}

#[test]
fn symbolic_suite_passes() {
    let t = std::time::Instant::now();
    for r in moore_suite_symbolic() {
        assert!(r.passed(), "{} {}", r.id, r.witness);
    }
    assert!(t.elapsed().as_secs() < 30);
}

#[test]
fn symbolic_determinant_specializes() {
    // det M′ over Q(a), evaluated at a = 2, equals det M′ built at a = 2.
    let q = Rationals;
    let k = RatFunc::new(q, "a");
    let mm = build_moore_matrices(&k, k.var()).unwrap();
    let (_, d) = quintic_equations(&mm).unwrap();
    let two = q.from_i64(2);
    let specialized = d.map_coeffs(&q, |c| k.evaluate(c, &two).unwrap());
    let mm2 = build_moore_matrices(&q, two).unwrap();
    assert_eq!(quintic_equations(&mm2).unwrap().1, specialized);
}

#[test]
fn excluded_modulus_makes_determinant_degenerate_or_not() {
    // Recorded behaviour at excluded values over F_31; the curve is what degenerates.
    let recs = moore_suite_numeric(31, 2, 0);
    let ex = recs.iter().find(|r| r.id.ends_with("excluded-moduli")).unwrap();
    assert_eq!(ex.witness["images"].as_array().unwrap().len(), 11);
}

#[test]
fn prime_field_embedding_supports_tau() {
    let f = fp(31);
    assert_eq!(f.pow(&f.from_cyclo(&crate::scalars::cyclo_root_of_unity(5, 1).unwrap()), 5), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn duality_holds_at_random_points(a in 1u64..31, x in proptest::array::uniform5(0u64..31), y in proptest::array::uniform5(0u64..31)) {
        let f = fp(31);
        let mm = build_moore_matrices(&f, a).unwrap();
        prop_assert!(incidence_residual(&x, &y, &mm).is_ok());
    }

    #[test]
    fn syzygy_kills_the_reindexed_quadrics(a in 1u64..61, x in proptest::array::uniform5(0u64..61)) {
        let f = fp(61);
        let mm = build_moore_matrices(&f, a).unwrap();
        let qs = QuadricSystem::new(&f, a).unwrap();
        let q = qs.evaluate(&x).unwrap();
        let v: Vec<u64> = (0..5).map(|i| q[(3 * i) % 5]).collect();
        let ax = mm.syzygy_matrix().evaluate(&x).unwrap();
        prop_assert!(linalg::mat_vec(&f, &ax, &v).iter().all(|&c| c == 0));
    }
}
