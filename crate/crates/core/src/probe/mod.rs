//! Finite-field certification: the points of `E(F_p)`, secant and incidence
//! checks against the Moore determinants, and the inverse Cremona map.

mod cache;
mod cremona;
pub mod fp;
mod secant;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::moore::{quadric_jacobian, ExcludedModuli, MooreError, QuadricSystem};
use crate::multipoly::linalg;
use crate::report::CheckRecord;
use crate::scalars::{find_root_of_unity, PrimeField, DEFAULT_PRIMES};
use fp::{normalize5, Vec5};

pub use cache::{cache_path, load_cache, scan_cached, write_cache, CacheOutcome, CACHE_VERSION};
pub use cremona::{interpolate_cremona_inverse, verify_cremona, CremonaWitness};
pub use secant::{certify_incidence, certify_secant_variety, rank3_census, secant_point_count};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("p = {0} is not a supported prime")]
    UnsupportedPrime(u64),
    #[error("a = {a} is an excluded modulus mod {p}")]
    ExcludedModulus { p: u64, a: u64 },
    #[error("the curve is singular at {0:?}")]
    Singular(Vec5),
    #[error("{count} points is outside the Hasse interval for p = {p}")]
    HasseViolation { p: u64, count: usize },
    #[error("the scan found no points")]
    EmptyScan,
    #[error("cache: {0}")]
    Cache(String),
    #[error("the interpolation system has no solution with g nonzero")]
    NoInverse,
    #[error(transparent)]
    Moore(#[from] MooreError),
}

/// The points of `E(F_p)`, normalized so the first nonzero coordinate is 1,
/// sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveScan {
    pub p: u64,
    pub a: u64,
    pub points: Vec<Vec5>,
}

impl CurveScan {
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("scan prime")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Vec5) -> bool {
        normalize5(&self.field(), x).is_some_and(|n| self.points.binary_search(&n).is_ok())
    }

    pub fn quadrics(&self) -> QuadricSystem<PrimeField> {
        QuadricSystem::new(&self.field(), self.a).expect("admissible a")
    }

    pub fn hasse_ok(&self) -> bool {
        hasse_ok(self.p, self.points.len())
    }
}

pub fn hasse_ok(p: u64, n: usize) -> bool {
    let d = n as i64 - p as i64 - 1;
    (d * d) as u64 <= 4 * p
}

/// `(Q_0(x), …, Q_4(x))` without going through the polynomial type.
pub fn eval_quadrics(f: &PrimeField, a: u64, inv_a: u64, x: &Vec5) -> Vec5 {
    std::array::from_fn(|i| {
        let sq = f.mul_mod(x[i], x[i]);
        let pa = f.mul_mod(a, f.mul_mod(x[(i + 2) % 5], x[(i + 3) % 5]));
        let pb = f.mul_mod(inv_a, f.mul_mod(x[(i + 1) % 5], x[(i + 4) % 5]));
        f.sub_mod(f.add_mod(sq, pa), pb)
    })
}

/// Solves for `x4` from whichever of `Q_0..Q_3` is linear with nonzero
/// coefficient, then keeps the point if every quadric vanishes.
fn complete_point(f: &PrimeField, a: u64, inv_a: u64, x: [u64; 4]) -> Option<Vec5> {
    let [x0, x1, x2, x3] = x;
    let m = |u, v| f.mul_mod(u, v);
    // Q_k = c·x4 + r, with (c, r) for k = 0..3.
    let forms = [
        (f.sub_mod(0, m(inv_a, x1)), f.add_mod(m(x0, x0), m(a, m(x2, x3)))),
        (m(a, x3), f.sub_mod(m(x1, x1), m(inv_a, m(x2, x0)))),
        (m(a, x0), f.sub_mod(m(x2, x2), m(inv_a, m(x3, x1)))),
        (f.sub_mod(0, m(inv_a, x2)), f.add_mod(m(x3, x3), m(a, m(x0, x1)))),
    ];
    let (c, r) = forms.iter().find(|(c, _)| *c != 0)?;
    let x4 = f.sub_mod(0, m(*r, f.inv_mod(*c)?));
    let pt = [x0, x1, x2, x3, x4];
    eval_quadrics(f, a, inv_a, &pt).iter().all(|&v| v == 0).then_some(pt)
}

pub fn check_admissible(p: u64, a: u64) -> Result<PrimeField, ProbeError> {
    if !DEFAULT_PRIMES.contains(&p) {
        return Err(ProbeError::UnsupportedPrime(p));
    }
    let f = PrimeField::new(p).map_err(|_| ProbeError::UnsupportedPrime(p))?;
    if ExcludedModuli::new().contains_mod(p, a) {
        return Err(ProbeError::ExcludedModulus { p, a: a % p });
    }
    Ok(f)
}

/// Enumerates `E(F_p)` chart by chart. For fixed `(x0:…:x3)` the first four
/// quadrics are linear in `x4`, so each chart costs `p³` evaluations.
pub fn scan_curve(p: u64, a: u64) -> Result<CurveScan, ProbeError> {
    let f = check_admissible(p, a)?;
    let a = a % p;
    let inv_a = f.inv_mod(a).expect("a nonzero");

    // Chart l: x_l = 1 and x_0..x_{l-1} = 0, the rest of x_0..x_3 free.
    let mut points: Vec<Vec5> = (0..4usize)
        .into_par_iter()
        .flat_map_iter(|l| {
            let free = 3 - l;
            let total = p.pow(free as u32);
            (0..total).filter_map(move |mut code| {
                let mut x = [0u64; 4];
                x[l] = 1;
                for slot in x.iter_mut().skip(l + 1) {
                    *slot = code % p;
                    code /= p;
                }
                complete_point(&f, a, inv_a, x)
            })
        })
        .collect();
    // (0:0:0:0:1) has Q_4 = 1.
    points.par_sort_unstable();
    points.dedup();
    if points.is_empty() {
        return Err(ProbeError::EmptyScan);
    }

    let scan = CurveScan { p, a, points };
    if let Some(bad) = singular_point(&scan) {
        return Err(ProbeError::Singular(bad));
    }
    if !scan.hasse_ok() {
        return Err(ProbeError::HasseViolation { p, count: scan.len() });
    }
    Ok(scan)
}

/// The first point where the Jacobian of the quadrics drops below rank 3.
fn singular_point(scan: &CurveScan) -> Option<Vec5> {
    let qs = scan.quadrics();
    let jac = quadric_jacobian(&qs).expect("quadric jacobian");
    let f = scan.field();
    scan.points.par_iter().find_first(|x| linalg::rank(&f, &jac.evaluate(&x[..]).expect("5 coordinates")) != 3).copied()
}

/// `(0, a, −1, 1, −a)`.
pub fn designated_origin(f: &PrimeField, a: u64) -> Vec5 {
    [0, a % f.modulus(), f.modulus() - 1, 1, f.sub_mod(0, a % f.modulus())]
}

/// `(a, −1, 1, −a, 0)`.
pub fn eta5(f: &PrimeField, a: u64) -> Vec5 {
    [a % f.modulus(), f.modulus() - 1, 1, f.sub_mod(0, a % f.modulus()), 0]
}

fn rotate(x: &Vec5, k: usize) -> Vec5 {
    std::array::from_fn(|i| x[(i + k) % 5])
}

/// Images of the point set under `σ5` and, when `p ≡ 1 mod 5`, under
/// `x_i ↦ ε5^{2i} x_i`. Returns `(sigma_ok, tau_ok)`.
pub fn heisenberg_invariance(scan: &CurveScan) -> (bool, Option<bool>) {
    let f = scan.field();
    let set: BTreeSet<Vec5> = scan.points.iter().copied().collect();
    let image_is_set = |g: &dyn Fn(&Vec5) -> Vec5| {
        let img: BTreeSet<Vec5> = scan.points.iter().map(|x| normalize5(&f, &g(x)).expect("nonzero")).collect();
        img == set
    };
    let sigma = image_is_set(&|x| rotate(x, 1));
    let tau = find_root_of_unity(scan.p, 5).map(|w| {
        let w2 = f.mul_mod(w, w);
        image_is_set(&|x| std::array::from_fn(|i| f.mul_mod(f.pow_mod(w2, i as u64), x[i])))
    });
    (sigma, tau)
}

/// Records for one scan: the point count, smoothness, distinguished points
/// and the symmetry of the point set.
pub fn scan_records(scan: &CurveScan) -> Vec<CheckRecord> {
    let prefix = format!("scan.p{}.a{}", scan.p, scan.a);
    let f = scan.field();
    let id = |s: &str| format!("{prefix}.{s}");
    let qs = scan.quadrics();
    let on_curve = scan.points.iter().all(|x| qs.evaluate(&x[..]).map(|v| v.iter().all(|&c| c == 0)).unwrap_or(false));
    let slack = 2.0 * (scan.p as f64).sqrt();
    let mut out = vec![
        CheckRecord::new(
            &id("count"),
            "|E(F_p)| lies in the Hasse interval and every point satisfies all five quadrics",
            scan.hasse_ok() && on_curve,
            json!({
                "points": scan.len(),
                "interval": [scan.p as f64 + 1.0 - slack, scan.p as f64 + 1.0 + slack],
            }),
        ),
        CheckRecord::new(
            &id("smooth"),
            "the Jacobian of the quadrics has rank 3 at every point",
            singular_point(scan).is_none(),
            json!({ "points": scan.len() }),
        ),
    ];
    let o = designated_origin(&f, scan.a);
    out.push(CheckRecord::new(&id("origin"), "(0, a, −1, 1, −a) lies on E", scan.contains(&o), json!({ "origin": o })));
    let eta = eta5(&f, scan.a);
    let shifts: Vec<bool> = (0..5).map(|k| scan.contains(&rotate(&eta, k))).collect();
    out.push(CheckRecord::new(
        &id("eta5"),
        "(a, −1, 1, −a, 0) and its cyclic shifts lie on E",
        shifts.iter().all(|&b| b),
        json!({ "eta5": eta, "shifts_on_curve": shifts }),
    ));
    let (sigma, tau) = heisenberg_invariance(scan);
    out.push(CheckRecord::new(
        &id("heisenberg-invariance"),
        "σ5 and τ5 permute E(F_p)",
        sigma && tau.unwrap_or(true),
        json!({ "sigma5": sigma, "tau5": tau }),
    ));
    out
}

#[cfg(test)]
mod tests;
