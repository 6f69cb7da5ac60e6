use super::*;
use proptest::prelude::{prop_assert, prop_assert_eq, prop_assume, proptest, ProptestConfig};

fn curve(p: u64, lambda: u64) -> (PlaneCubic<PrimeField>, CurveGroup) {
    let f = PrimeField::new(p).unwrap();
    let c = PlaneCubic::hesse(&f, lambda).unwrap();
    let g = c.group().unwrap();
    (c, g)
}

/// Points of the curve on the line through `a` and `b`, by brute force.
fn points_on_line(g: &CurveGroup, a: &[u64; 3], b: &[u64; 3]) -> Vec<Pt> {
    let f = PrimeField::new(g.p).unwrap();
    let l = [
        f.sub_mod(f.mul_mod(a[1], b[2]), f.mul_mod(a[2], b[1])),
        f.sub_mod(f.mul_mod(a[2], b[0]), f.mul_mod(a[0], b[2])),
        f.sub_mod(f.mul_mod(a[0], b[1]), f.mul_mod(a[1], b[0])),
    ];
    g.points
        .iter()
        .filter(|q| {
            let c = q.coords();
            (0..3).fold(0, |s, i| f.add_mod(s, f.mul_mod(l[i], c[i]))) == 0
        })
        .cloned()
        .collect()
}

#[test]
fn collinear_triples_sum_to_zero() {
    let (c, g) = curve(31, 1);
    let o = c.origin();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 200 {
        let a = &g.points[rng.gen_range(0..g.points.len())];
        let b = &g.points[rng.gen_range(0..g.points.len())];
        if a == b {
            continue;
        }
        let line = points_on_line(&g, a.coords(), b.coords());
        if line.len() != 3 {
            continue;
        }
        let sum = c.add(&c.add(&line[0], &line[1]).unwrap(), &line[2]).unwrap();
        // O is a flex, so three distinct collinear points sum to O.
        assert_eq!(sum, o);
        checked += 1;
    }
}

#[test]
fn orders_match_repeated_addition() {
    let (c, g) = curve(61, 5);
    let o = c.origin();
    for (q, &ord) in g.points.iter().zip(&g.orders).step_by(7) {
        let mut acc = q.clone();
        let mut n = 1;
        while acc != o {
            acc = c.add(&acc, q).unwrap();
            n += 1;
        }
        assert_eq!(n, ord);
    }
    assert_eq!(g.order, hesse_point_counts(61)[5]);
}

#[test]
fn identity_and_negation() {
    let (c, g) = curve(31, 2);
    let o = c.origin();
    assert_eq!(o.coords(), &[0, 1, 30]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let q = &g.points[rng.gen_range(0..g.points.len())];
        assert_eq!(c.add(q, &o).unwrap(), *q);
        let n = c.negate(q).unwrap();
        assert_eq!(Some(n.clone()), c.negate_closed_form(q));
        assert_eq!(c.add(q, &n).unwrap(), o);
    }
}

#[test]
fn trivial_torsion_is_origin() {
    let (c, _) = curve(31, 1);
    assert_eq!(torsion_points(&c, 1).unwrap(), vec![c.origin()]);
    assert_eq!(torsion_points(&c, 0), Err(CurveError::ZeroTorsionOrder));
}

#[test]
fn base_points_are_full_three_torsion() {
    let (c, g) = curve(31, 1);
    let t = torsion_points(&c, 3).unwrap();
    assert_eq!(t.len(), 9);
    assert_eq!(g.torsion_count(3), 9);
    assert!(t.iter().all(|q| q.coords().contains(&0)));
}

#[test]
fn singular_member_is_rejected() {
    let f = PrimeField::new(31).unwrap();
    let c = PlaneCubic::hesse(&f, 28).unwrap();
    assert!(matches!(c.group(), Err(CurveError::SingularAt(_))));
}

#[test]
fn points_of_other_curves_are_rejected() {
    let (c1, g1) = curve(31, 1);
    let (c2, _) = curve(31, 2);
    let q = &g1.points[1];
    assert_eq!(c2.add(q, &c2.origin()), Err(CurveError::DifferentCurves));
    assert!(c1.add(q, &c1.origin()).is_ok());
}

#[test]
fn non_flex_origin_is_rejected() {
    let f = PrimeField::new(31).unwrap();
    let c = PlaneCubic::hesse(&f, 1).unwrap();
    let g = c.group().unwrap();
    let t = g.points.iter().zip(&g.orders).find(|(_, &o)| o > 3).unwrap().0;
    assert_eq!(PlaneCubic::new(&c.polynomial(), *t.coords()).err(), Some(CurveError::OriginNotFlex));
}

#[test]
fn symbolic_group_law_over_cyclotomics() {
    // Over Q(ε15) with λ = 0, (1, -ε3, 0) is a base point of order 3.
    let k = Cyclo15;
    let c = PlaneCubic::hesse(&k, k.zero()).unwrap();
    let e = eps3(1);
    let q = c.point([k.one(), k.neg(&e), k.zero()]).unwrap();
    assert_ne!(c.mul(&q, 1).unwrap(), c.origin());
    assert_eq!(c.mul(&q, 3).unwrap(), c.origin());
}

#[test]
fn identity_checks_pass() {
    for r in verify_fermat_identities() {
        assert!(r.passed(), "{} {}", r.id, r.witness);
    }
}

#[test]
fn triangle_checks_pass() {
    let recs = verify_triangle_members();
    for r in &recs {
        assert!(r.passed(), "{} {}", r.id, r.witness);
    }
    let rows = recs[0].witness["triangles"].as_array().unwrap();
    let t10 = rows.iter().find(|r| r["triangle"] == "T(1,0)").unwrap();
    assert_eq!(t10["expansion"], "x0^3 + x1^3 - 3*x0*x1*x2 + x2^3");
    assert_eq!(t10["lambda"], "-3");
}

#[test]
fn small_curve_suite_passes() {
    for r in hesse_suite(1) {
        assert!(r.passed(), "{} {}", r.id, r.witness);
    }
}

#[test]
fn intersection_arithmetic_on_fifteen_torsion_witness() {
    let (w, c, g) = find_torsion_witness(&crate::scalars::DEFAULT_PRIMES, TorsionRequirement::FIFTEEN).unwrap();
    assert_eq!(torsion_points(&c, 5).unwrap().len(), 25);
    for r in verify_intersection_arithmetic(&c, &g, 20, 9).unwrap() {
        assert!(r.passed(), "{} {} at {:?}", r.id, r.witness, w);
    }
}

#[test]
fn six_secant_suite_finds_a_witness() {
    let recs = torsion_suite(DEFAULT_WITNESS_BOUND, 7);
    for r in &recs {
        assert!(r.passed(), "{} {}", r.id, r.witness);
    }
    let w = &recs[0].witness;
    assert_eq!(w["order"].as_u64().unwrap() % 900, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn group_axioms_on_random_members(lambda in 0u64..61, i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        prop_assume!(!hesse_is_singular(61, lambda));
        let (c, g) = curve(61, lambda);
        let n = g.points.len();
        let (a, b, d) = (&g.points[i % n], &g.points[j % n], &g.points[k % n]);
        let ab = c.add(a, b).unwrap();
        prop_assert!(c.contains(ab.coords()));
        prop_assert_eq!(c.add(&ab, d).unwrap(), c.add(a, &c.add(b, d).unwrap()).unwrap());
        prop_assert_eq!(ab, c.add(b, a).unwrap());
        prop_assert!(g.hasse_ok());
    }
}
