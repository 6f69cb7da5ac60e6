use serde::Serialize;

use super::curve::{CurveGroup, PlaneCubic};
use super::CurveError;
use crate::scalars::{is_prime, PrimeField, DEFAULT_PRIMES};

/// Default upper bound on primes tried when full rational 2-torsion is required.
pub const DEFAULT_WITNESS_BOUND: u64 = 4000;

/// Rational torsion a witness curve must carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorsionRequirement {
    /// Required `|E(F_p)[n]|` for each listed `n`.
    pub counts: [(u64, u64); 3],
}

impl TorsionRequirement {
    /// Full 3- and 5-torsion.
    pub const FIFTEEN: TorsionRequirement = TorsionRequirement { counts: [(2, 1), (3, 9), (5, 25)] };
    /// Full 2-, 3- and 5-torsion.
    pub const THIRTY: TorsionRequirement = TorsionRequirement { counts: [(2, 4), (3, 9), (5, 25)] };

    /// Smallest group order compatible with the requirement.
    fn modulus(&self) -> u64 {
        self.counts.iter().map(|&(_, c)| c).product()
    }

    fn satisfied_by(&self, g: &CurveGroup) -> bool {
        self.counts.iter().all(|&(n, c)| {
            let got = g.torsion_count(n);
            // A count of 1 only asks for nothing; higher counts must match.
            c == 1 || got == c
        })
    }
}

/// A Hesse member over `F_p` with the requested torsion.
#[derive(Debug, Clone, Serialize)]
pub struct TorsionWitness {
    pub p: u64,
    pub lambda: u64,
    pub order: u64,
    pub structure: (u64, u64),
    /// Points generating the group.
    pub generators: Vec<[u64; 3]>,
    pub primes_tried: Vec<u64>,
}

/// `#E_λ(F_p)` for every `λ ∈ F_p`, indexed by `λ`, from one pass over `P²(F_p)`.
/// A point with `x0 x1 x2 ≠ 0` lies on exactly one member; the others lie on
/// every member or none.
pub fn hesse_point_counts(p: u64) -> Vec<u64> {
    let f = PrimeField::new(p).expect("prime below 2^31");
    let cube: Vec<u64> = (0..p).map(|x| f.mul_mod(x, f.mul_mod(x, x))).collect();
    let inv: Vec<u64> = (0..p).map(|x| f.inv_mod(x).unwrap_or(0)).collect();
    let mut counts = vec![0u64; p as usize];
    for x0 in 1..p {
        for x1 in 1..p {
            let s = f.add_mod(f.add_mod(cube[x0 as usize], cube[x1 as usize]), 1);
            let lambda = f.sub_mod(0, f.mul_mod(s, inv[f.mul_mod(x0, x1) as usize]));
            counts[lambda as usize] += 1;
        }
    }
    // Points with a zero coordinate.
    let mut common = 0;
    for c in std::iter::once([0u64, 0, 1])
        .chain((0..p).map(|b| [0, 1, b]))
        .chain((0..p).flat_map(|a| [[1, a, 0], [1, 0, a]]))
    {
        let s = f.add_mod(f.add_mod(cube[c[0] as usize], cube[c[1] as usize]), cube[c[2] as usize]);
        if s == 0 {
            common += 1;
        }
    }
    // [1,0,0] is listed twice above and is never on the curve.
    for c in counts.iter_mut() {
        *c += common;
    }
    counts
}

/// Whether `λ³ = -27`, i.e. the member is a triangle.
pub fn hesse_is_singular(p: u64, lambda: u64) -> bool {
    let f = PrimeField::new(p).expect("prime");
    f.add_mod(f.pow_mod(lambda, 3), 27 % p) == 0
}

fn hasse_contains_multiple(p: u64, m: u64) -> bool {
    let lo = (p + 1).saturating_sub(2 * (p as f64).sqrt().ceil() as u64);
    let hi = p + 1 + 2 * (p as f64).sqrt().ceil() as u64;
    let first = lo.div_ceil(m) * m;
    first > 0 && first <= hi
}

/// Generators: a point of maximal order and a complement.
fn generators(curve: &PlaneCubic<PrimeField>, g: &CurveGroup) -> Result<Vec<[u64; 3]>, CurveError> {
    let (n1, n2) = g.structure;
    let i = g.orders.iter().position(|&o| o == n2).expect("exponent is attained");
    let big = &g.points[i];
    let mut out = vec![*big.coords()];
    if n1 == 1 {
        return Ok(out);
    }
    let mut span = std::collections::HashSet::new();
    let mut acc = curve.origin();
    for _ in 0..n2 {
        span.insert(acc.clone());
        acc = curve.add(&acc, big)?;
    }
    for (q, &oq) in g.points.iter().zip(&g.orders) {
        // |<big, q>| = n2 · ord(q) / |<q> ∩ <big>|.
        let mut meet = 0u64;
        let mut m = curve.origin();
        for _ in 0..oq {
            if span.contains(&m) {
                meet += 1;
            }
            m = curve.add(&m, q)?;
        }
        if n2 * oq / meet == g.order {
            out.push(*q.coords());
            return Ok(out);
        }
    }
    Err(CurveError::NoWitness("group is not generated by two points".into()))
}

/// Searches `primes × λ` for a smooth Hesse member meeting `req`, stopping at
/// the first hit.
pub fn find_torsion_witness(
    primes: &[u64],
    req: TorsionRequirement,
) -> Result<(TorsionWitness, PlaneCubic<PrimeField>, CurveGroup), CurveError> {
    let m = req.modulus();
    let mut tried = Vec::new();
    for &p in primes {
        tried.push(p);
        // Rational 3-torsion needs cube roots of unity; the tested counts are
        // skipped unless some multiple of m is a possible order.
        if p % 3 != 1 || !hasse_contains_multiple(p, m) {
            continue;
        }
        let field = PrimeField::new(p).map_err(|e| CurveError::NoWitness(e.to_string()))?;
        for (lambda, &n) in hesse_point_counts(p).iter().enumerate() {
            let lambda = lambda as u64;
            if n % m != 0 || hesse_is_singular(p, lambda) {
                continue;
            }
            let curve = PlaneCubic::hesse(&field, lambda)?;
            let group = curve.group()?;
            debug_assert_eq!(group.order, n);
            if req.satisfied_by(&group) {
                let witness = TorsionWitness {
                    p,
                    lambda,
                    order: group.order,
                    structure: group.structure,
                    generators: generators(&curve, &group)?,
                    primes_tried: tried,
                };
                return Ok((witness, curve, group));
            }
        }
    }
    Err(CurveError::NoWitness(format!("no Hesse member with torsion {:?} over primes {:?}", req.counts, primes)))
}

/// The default primes followed by further primes `≡ 1 mod 30` up to `bound`.
pub fn witness_primes(bound: u64) -> Vec<u64> {
    let mut out: Vec<u64> = DEFAULT_PRIMES.to_vec();
    let last = *out.last().expect("nonempty");
    out.extend((last + 1..=bound).filter(|&q| q % 30 == 1 && is_prime(q)));
    out
}
