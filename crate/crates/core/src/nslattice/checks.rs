use serde_json::json;

use super::form::{LatticeError, SurfaceForm};
use super::{blowup_h1, blowup_h2, symmetric_square};
use crate::report::CheckRecord;

fn failed(id: &str, statement: &str, e: LatticeError) -> Vec<CheckRecord> {
    vec![CheckRecord::new(id, statement, false, json!({ "error": e.to_string() }))]
}

fn equal(id: &str, statement: &str, got: i64, want: i64) -> CheckRecord {
    CheckRecord::new(id, statement, got == want, json!({ "computed": got, "expected": want }))
}

/// Degrees and class identities for the degree-15 surfaces, in the basis
/// `H, C, F`.
pub fn verify_degree15_surfaces() -> Vec<CheckRecord> {
    let run = || -> Result<Vec<CheckRecord>, LatticeError> {
        let t = blowup_h1();
        let h = t.generator("H")?;
        let x = t.class("X", &[1, -2, 6])?;
        let k = t.class("K", &[-2, 1, 2])?;
        let ak = x.sub(&k)?.named("A_K");
        let pencil = t.class("4C - 2F", &[0, 4, -2])?;
        let mut out = vec![
            equal("lattice.h1-cubed", "H³ = 5", t.cube(&h)?, 5),
            equal("lattice.scroll-degree", "X·H² = 15 for X = H − 2C + 6F", t.triple_product(&x, &h, &h)?, 15),
            CheckRecord::new(
                "lattice.anticanonical-plus-x",
                "−K + X = 3H − 3C + 4F",
                ak.coeffs() == [3, -3, 4],
                json!({ "computed": ak.render(), "expected": "3H - 3C + 4F" }),
            ),
            equal("lattice.abelian-degree", "A_K·H² = 15", t.triple_product(&ak, &h, &h)?, 15),
            equal("lattice.zero-class", "products with the zero class vanish", t.triple_product(&t.zero(), &h, &x)?, 0),
        ];
        // 5H ~ −K + A_K + (4C − 2F).
        let rhs = k.scale(-1).add(&ak)?.add(&pencil)?;
        let residual = h.scale(5).sub(&rhs)?;
        out.push(CheckRecord::new(
            "lattice.pencil-ledger",
            "5H − (−K + A_K + (4C − 2F)) = 0 as a vector",
            residual.is_zero(),
            json!({ "residual": residual.coeffs(), "rhs": rhs.render() }),
        ));

        // 2H′ − ΣE_i with H′² = 10 and 25 disjoint (−1)-curves.
        let basis: Vec<String> = std::iter::once("Hp".to_string()).chain((1..=25).map(|i| format!("E{i}"))).collect();
        let squares: Vec<i64> = std::iter::once(10).chain(std::iter::repeat_n(-1, 25)).collect();
        let s = SurfaceForm::diagonal(&basis, &squares)?;
        let coeffs: Vec<i64> = std::iter::once(2).chain(std::iter::repeat_n(-1, 25)).collect();
        let hyp = s.class("2H′ − ΣE", &coeffs)?;
        out.push(equal("lattice.abelian-polarization", "(2H′ − ΣE_i)² = 4·10 − 25 = 15", s.pairing(&hyp, &hyp)?, 15));
        Ok(out)
    };
    run().unwrap_or_else(|e| failed("lattice.degree15", "degree-15 surface ledger", e))
}

/// `(2H2 − X)³ = 5`, so `9α = 5 − 5` forces `α = 0`.
pub fn verify_alpha_vanishes() -> Vec<CheckRecord> {
    let run = || -> Result<Vec<CheckRecord>, LatticeError> {
        let t = blowup_h2();
        let h2 = t.generator("H2")?;
        let x = t.generator("X")?;
        let d = h2.scale(2).sub(&x)?;
        let cube = t.cube(&d)?;
        let expansion =
            [8 * t.cube(&h2)?, -12 * t.triple_product(&h2, &h2, &x)?, 6 * t.triple_product(&h2, &x, &x)?, -t.cube(&x)?];
        let nine_alpha = 5 - cube;
        Ok(vec![
            equal("lattice.h2-x-squared", "H2·X² = −10", t.triple_product(&h2, &x, &x)?, -10),
            equal("lattice.x-cubed", "X³ = −25", t.cube(&x)?, -25),
            CheckRecord::new(
                "lattice.alpha",
                "(2H2 − X)³ = 5, hence α = 0 in 5 = 9α + (2H2 − X)³",
                cube == 5 && nine_alpha == 0,
                json!({ "cube": cube, "expansion_terms": expansion, "nine_alpha": nine_alpha, "alpha": nine_alpha / 9 }),
            ),
            CheckRecord::new(
                "lattice.fibre-slots",
                "products H2²S, H2·X·S, X²S are carried as open entries",
                t.entry(&["H2", "H2", "S"])?.is_none() && t.entry(&["S", "S", "H2"])? == Some(0),
                json!({ "open": ["H2·H2·S", "H2·X·S", "X·X·S"] }),
            ),
        ])
    };
    run().unwrap_or_else(|e| failed("lattice.alpha", "α = 0", e))
}

/// `5HK + K² − e` and the positive integer root of `d² − 10d` equal to it.
fn positive_root(hk: i64, k2: i64, e: i64) -> (i64, Option<i64>) {
    let c = 5 * hk + k2 - e;
    // d² − 10d − c = 0.
    let disc = 100 + 4 * c;
    let s = (disc as f64).sqrt().round() as i64;
    let root = (s * s == disc && (10 + s) % 2 == 0).then_some((10 + s) / 2);
    (c, root)
}

/// The double-point count for the abelian surface and the surface ledger on
/// the symmetric square.
pub fn verify_double_point_formula() -> Vec<CheckRecord> {
    let run = || -> Result<Vec<CheckRecord>, LatticeError> {
        let (rhs, root) = positive_root(25, -25, 25);
        let mut out = vec![CheckRecord::new(
            "lattice.double-point",
            "d² = 10d + 5HK + K² − e with HK = 25, K² = −25, e = 25 gives d(d − 10) = 75 and d = 15",
            rhs == 75 && root == Some(15) && root.is_some_and(|d| d * (d - 10) == 75),
            json!({ "d_times_d_minus_10": rhs, "positive_root": root }),
        )];

        let s = symmetric_square();
        let c0 = s.generator("C0")?;
        let f = s.generator("F")?;
        let h = s.class("H", &[1, 2])?;
        let k = s.class("K", &[-2, 1])?;
        let c_ab = s.class("C_(a,b)", &[1, 12])?;
        let delta = s.class("4C0 - 2F", &[4, -2])?;
        out.push(equal("lattice.s2e-hyperplane", "H² = 5 for H = C0 + 2F", s.pairing(&h, &h)?, 5));
        out.push(equal("lattice.s2e-canonical", "K² = 0 for K = −2C0 + F", s.pairing(&k, &k)?, 0));
        out.push(equal("lattice.rank3-curve-degree", "(4C0 − 2F)·(C0 + 2F) = 10", s.pairing(&delta, &h)?, 10));
        // 5H − C_(a,b) ~ 4C0 − F − F_(a,b) ~ −2K + (F − F_(a,b)), fibres all numerically F.
        let lhs = h.scale(5).sub(&c_ab)?;
        let mid = c0.scale(4).sub(&f)?.sub(&f)?;
        let right = k.scale(-2);
        out.push(CheckRecord::new(
            "lattice.quintic-ledger",
            "5H − C_(a,b) ≡ 4C0 − F − F_(a,b) ≡ −2K numerically",
            lhs == mid && mid == right,
            json!({ "lhs": lhs.render(), "middle": mid.render(), "rhs": right.render() }),
        ));
        Ok(out)
    };
    run().unwrap_or_else(|e| failed("lattice.double-point", "double point ledger", e))
}

pub fn lattice_suite() -> Vec<CheckRecord> {
    let mut out = verify_degree15_surfaces();
    out.extend(verify_alpha_vanishes());
    out.extend(verify_double_point_formula());
    out
}
