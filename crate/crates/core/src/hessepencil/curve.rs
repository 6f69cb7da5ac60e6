use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use super::CurveError;
use crate::multipoly::{monomials_of_degree, var_names, Monomial, MultiPoly};
use crate::scalars::{Field, PrimeField};

/// A point of a plane cubic, normalized so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicCurvePoint<E> {
    coords: [E; 3],
    /// Fingerprint of the owning curve.
    curve: u64,
}

impl<E: Clone> CubicCurvePoint<E> {
    pub fn coords(&self) -> &[E; 3] {
        &self.coords
    }

    pub fn curve_id(&self) -> u64 {
        self.curve
    }
}

/// A ternary cubic form with a designated inflection point as origin.
#[derive(Debug, Clone)]
pub struct PlaneCubic<F: Field> {
    field: F,
    /// Coefficients aligned with `monos`.
    coeffs: Vec<F::Elem>,
    monos: Vec<[u32; 3]>,
    origin: CubicCurvePoint<F::Elem>,
    hesse_lambda: Option<F::Elem>,
    id: u64,
}

fn normalize<F: Field>(f: &F, v: &[F::Elem; 3]) -> Option<[F::Elem; 3]> {
    let lead = v.iter().find(|c| !f.is_zero(c))?;
    let inv = f.inv(lead)?;
    Some([f.mul(&v[0], &inv), f.mul(&v[1], &inv), f.mul(&v[2], &inv)])
}

impl<F: Field> PlaneCubic<F> {
    /// `poly` must be a ternary cubic form; `origin` must be a smooth flex.
    pub fn new(poly: &MultiPoly<F>, origin: [F::Elem; 3]) -> Result<Self, CurveError> {
        if poly.nvars() != 3 || poly.homogeneous_degree() != Some(3) {
            return Err(CurveError::NotACubic);
        }
        let field = poly.field().clone();
        let monos: Vec<Monomial> = monomials_of_degree(3, 3);
        let coeffs: Vec<F::Elem> = monos.iter().map(|m| poly.coefficient(m)).collect();
        let monos = monos.iter().map(|m| [m.exponent(0), m.exponent(1), m.exponent(2)]).collect();
        let origin = normalize(&field, &origin).ok_or(CurveError::ZeroPoint)?;
        let mut h = DefaultHasher::new();
        coeffs.hash(&mut h);
        origin.hash(&mut h);
        let id = h.finish();
        let origin = CubicCurvePoint { coords: origin, curve: id };
        let curve = PlaneCubic { field, coeffs, monos, origin: origin.clone(), hesse_lambda: None, id };
        if !curve.contains(&origin.coords) {
            return Err(CurveError::NotOnCurve);
        }
        if curve.is_singular_at(&origin.coords) {
            return Err(CurveError::Singular);
        }
        // A tangent line lying on the curve is a line component through the origin.
        match curve.third_point(&origin.coords, &origin.coords) {
            Ok(t) if t != origin.coords => return Err(CurveError::OriginNotFlex),
            Ok(_) | Err(CurveError::LineOnCurve) => {}
            Err(e) => return Err(e),
        }
        Ok(curve)
    }

    /// `x0³ + x1³ + x2³ + λ x0 x1 x2` with origin `(0, 1, -1)`.
    pub fn hesse(field: &F, lambda: F::Elem) -> Result<Self, CurveError> {
        let vars = var_names("x", 3);
        let x = MultiPoly::vars_of(field, &vars);
        let poly = x[0].pow(3).add(&x[1].pow(3)).add(&x[2].pow(3)).add(&x[0].mul(&x[1]).mul(&x[2]).scale(&lambda));
        let origin = [field.zero(), field.one(), field.neg(&field.one())];
        let mut c = Self::new(&poly, origin)?;
        c.hesse_lambda = Some(lambda);
        Ok(c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn hesse_lambda(&self) -> Option<&F::Elem> {
        self.hesse_lambda.as_ref()
    }

    pub fn polynomial(&self) -> MultiPoly<F> {
        let vars = var_names("x", 3);
        MultiPoly::from_terms(
            &self.field,
            &vars,
            self.monos.iter().zip(&self.coeffs).map(|(m, c)| (Monomial::from_exponents(m), c.clone())),
        )
    }

    fn monomial_value(&self, m: &[u32; 3], p: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.one();
        for i in 0..3 {
            for _ in 0..m[i] {
                acc = f.mul(&acc, &p[i]);
            }
        }
        acc
    }

    pub fn evaluate(&self, p: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        self.monos
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !f.is_zero(c))
            .fold(f.zero(), |acc, (m, c)| f.add(&acc, &f.mul(c, &self.monomial_value(m, p))))
    }

    pub fn gradient(&self, p: &[F::Elem; 3]) -> [F::Elem; 3] {
        let f = &self.field;
        std::array::from_fn(|i| {
            let mut acc = f.zero();
            for (m, c) in self.monos.iter().zip(&self.coeffs) {
                if m[i] == 0 || f.is_zero(c) {
                    continue;
                }
                let mut d = *m;
                d[i] -= 1;
                let t = f.mul(&f.mul(c, &f.from_i64(m[i] as i64)), &self.monomial_value(&d, p));
                acc = f.add(&acc, &t);
            }
            acc
        })
    }

    fn dot(&self, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        (0..3).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&a[i], &b[i])))
    }

    fn cross(&self, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
        let f = &self.field;
        let m = |x: &F::Elem, y: &F::Elem| f.mul(x, y);
        [
            f.sub(&m(&a[1], &b[2]), &m(&a[2], &b[1])),
            f.sub(&m(&a[2], &b[0]), &m(&a[0], &b[2])),
            f.sub(&m(&a[0], &b[1]), &m(&a[1], &b[0])),
        ]
    }

    fn proportional(&self, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> bool {
        self.cross(a, b).iter().all(|c| self.field.is_zero(c))
    }

    pub fn contains(&self, p: &[F::Elem; 3]) -> bool {
        self.field.is_zero(&self.evaluate(p))
    }

    pub fn is_singular_at(&self, p: &[F::Elem; 3]) -> bool {
        self.gradient(p).iter().all(|c| self.field.is_zero(c))
    }

    /// A validated curve point.
    pub fn point(&self, coords: [F::Elem; 3]) -> Result<CubicCurvePoint<F::Elem>, CurveError> {
        let coords = normalize(&self.field, &coords).ok_or(CurveError::ZeroPoint)?;
        if !self.contains(&coords) {
            return Err(CurveError::NotOnCurve);
        }
        Ok(self.wrap(coords))
    }

    fn wrap(&self, coords: [F::Elem; 3]) -> CubicCurvePoint<F::Elem> {
        CubicCurvePoint { coords, curve: self.id }
    }

    fn check(&self, p: &CubicCurvePoint<F::Elem>) -> Result<(), CurveError> {
        if p.curve != self.id {
            return Err(CurveError::DifferentCurves);
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn origin(&self) -> CubicCurvePoint<F::Elem> {
        self.origin.clone()
    }

    /// Third intersection of the line through `a` and `b` (the tangent when
    /// they coincide). The cubic restricted to the line `s·A + t·B` is
    /// `s³F(A) + s²t ∇F(A)·B + st² ∇F(B)·A + t³F(B)`; the known roots are
    /// divided out exactly.
    pub fn third_point(&self, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> Result<[F::Elem; 3], CurveError> {
        let f = &self.field;
        let combo = |s: &F::Elem, p: &[F::Elem; 3], t: &F::Elem, q: &[F::Elem; 3]| -> [F::Elem; 3] {
            std::array::from_fn(|i| f.add(&f.mul(s, &p[i]), &f.mul(t, &q[i])))
        };
        if !self.proportional(a, b) {
            let g1 = self.dot(&self.gradient(a), b);
            let g2 = self.dot(&self.gradient(b), a);
            if f.is_zero(&g1) && f.is_zero(&g2) {
                return Err(CurveError::LineOnCurve);
            }
            // Remaining root of s·g1 + t·g2.
            let r = combo(&g2, a, &f.neg(&g1), b);
            return normalize(f, &r).ok_or(CurveError::LineOnCurve);
        }
        let grad = self.gradient(a);
        if grad.iter().all(|c| f.is_zero(c)) {
            return Err(CurveError::Singular);
        }
        let unit = |k: usize| -> [F::Elem; 3] { std::array::from_fn(|i| if i == k { f.one() } else { f.zero() }) };
        let r = (0..3)
            .map(|k| self.cross(&grad, &unit(k)))
            .find(|r| r.iter().any(|c| !f.is_zero(c)) && !self.proportional(r, a))
            .expect("the tangent line has a second point");
        // Restricted cubic is t²(s·g2 + t·g3).
        let g2 = self.dot(&self.gradient(&r), a);
        let g3 = self.evaluate(&r);
        if f.is_zero(&g2) && f.is_zero(&g3) {
            return Err(CurveError::LineOnCurve);
        }
        let out = combo(&g3, a, &f.neg(&g2), &r);
        normalize(f, &out).ok_or(CurveError::LineOnCurve)
    }

    pub fn add(
        &self,
        p: &CubicCurvePoint<F::Elem>,
        q: &CubicCurvePoint<F::Elem>,
    ) -> Result<CubicCurvePoint<F::Elem>, CurveError> {
        self.check(p)?;
        self.check(q)?;
        let r = self.third_point(&p.coords, &q.coords)?;
        let s = self.third_point(&self.origin.coords, &r)?;
        Ok(self.wrap(s))
    }

    /// Negation by the chord construction; valid because the origin is a flex.
    pub fn negate(&self, p: &CubicCurvePoint<F::Elem>) -> Result<CubicCurvePoint<F::Elem>, CurveError> {
        self.check(p)?;
        Ok(self.wrap(self.third_point(&p.coords, &self.origin.coords)?))
    }

    /// `(x0, x1, x2) ↦ (x0, x2, x1)`, the negation on a Hesse member with origin `(0,1,-1)`.
    pub fn negate_closed_form(&self, p: &CubicCurvePoint<F::Elem>) -> Option<CubicCurvePoint<F::Elem>> {
        self.hesse_lambda.as_ref()?;
        if p.curve != self.id {
            return None;
        }
        let [a, b, c] = p.coords.clone();
        normalize(&self.field, &[a, c, b]).map(|coords| self.wrap(coords))
    }

    /// Fast negation: closed form on Hesse members, chords otherwise.
    pub fn neg(&self, p: &CubicCurvePoint<F::Elem>) -> Result<CubicCurvePoint<F::Elem>, CurveError> {
        match self.negate_closed_form(p) {
            Some(q) => Ok(q),
            None => self.negate(p),
        }
    }

    pub fn sub(
        &self,
        p: &CubicCurvePoint<F::Elem>,
        q: &CubicCurvePoint<F::Elem>,
    ) -> Result<CubicCurvePoint<F::Elem>, CurveError> {
        self.add(p, &self.neg(q)?)
    }

    pub fn mul(&self, p: &CubicCurvePoint<F::Elem>, n: i64) -> Result<CubicCurvePoint<F::Elem>, CurveError> {
        let base = if n < 0 { self.neg(p)? } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.origin();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b)?;
            }
            k >>= 1;
            if k > 0 {
                b = self.add(&b, &b)?;
            }
        }
        Ok(acc)
    }

    /// Applies a 3×3 matrix to a point.
    pub fn transform(&self, m: &[[F::Elem; 3]; 3], p: &CubicCurvePoint<F::Elem>) -> Option<[F::Elem; 3]> {
        let f = &self.field;
        let v: [F::Elem; 3] = std::array::from_fn(|r| self.dot(&m[r], &p.coords));
        normalize(f, &v)
    }
}

/// The abstract group of rational points of a smooth cubic over `F_p`.
#[derive(Debug, Clone, Serialize)]
pub struct CurveGroup {
    pub p: u64,
    #[serde(skip)]
    pub points: Vec<CubicCurvePoint<u64>>,
    #[serde(skip)]
    pub orders: Vec<u64>,
    pub order: u64,
    /// `(n1, n2)` with `n1 | n2` and group ≅ Z_n1 × Z_n2.
    pub structure: (u64, u64),
}

impl CurveGroup {
    /// Number of points killed by `n`, from the group structure.
    pub fn torsion_count(&self, n: u64) -> u64 {
        num_integer::gcd(n, self.structure.0) * num_integer::gcd(n, self.structure.1)
    }

    pub fn hasse_ok(&self) -> bool {
        let p = self.p as f64;
        let t = (self.order as f64 - p - 1.0).abs();
        // Exact: t² ≤ 4p.
        let t_int = (self.order as i64 - self.p as i64 - 1).unsigned_abs();
        t_int * t_int <= 4 * self.p && t <= 2.0 * p.sqrt() + 1e-9
    }
}

impl PlaneCubic<PrimeField> {
    /// All points of `P²(F_p)` on the curve, sorted.
    pub fn enumerate_points(&self) -> Vec<CubicCurvePoint<u64>> {
        let p = self.field.modulus();
        let mut out: Vec<CubicCurvePoint<u64>> = std::iter::once([0, 0, 1])
            .chain((0..p).map(|b| [0, 1, b]))
            .filter(|c| self.contains(c))
            .map(|c| self.wrap(c))
            .collect();
        let rows: Vec<Vec<CubicCurvePoint<u64>>> = (0..p)
            .into_par_iter()
            .map(|a| (0..p).map(|b| [1, a, b]).filter(|c| self.contains(c)).map(|c| self.wrap(c)).collect())
            .collect();
        out.extend(rows.into_iter().flatten());
        out.sort();
        out
    }

    /// Rational singular points.
    pub fn singular_points(&self) -> Vec<CubicCurvePoint<u64>> {
        self.enumerate_points().into_iter().filter(|q| self.is_singular_at(&q.coords)).collect()
    }

    /// Order of a point given a multiple of it.
    fn order_dividing(&self, q: &CubicCurvePoint<u64>, n: u64) -> Result<u64, CurveError> {
        let mut ord = n;
        for r in crate::scalars::prime_factors(n) {
            while ord.is_multiple_of(r) && self.mul(q, (ord / r) as i64)? == self.origin {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn group(&self) -> Result<CurveGroup, CurveError> {
        let points = self.enumerate_points();
        if let Some(s) = points.iter().find(|q| self.is_singular_at(&q.coords)) {
            return Err(CurveError::SingularAt(format!("{:?}", s.coords)));
        }
        let n = points.len() as u64;
        let orders = points.iter().map(|q| self.order_dividing(q, n)).collect::<Result<Vec<_>, _>>()?;
        let exponent = orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o));
        Ok(CurveGroup { p: self.field.modulus(), order: n, structure: (n / exponent, exponent), points, orders })
    }
}

/// All rational points `P` with `nP = O`.
pub fn torsion_points(curve: &PlaneCubic<PrimeField>, n: u64) -> Result<Vec<CubicCurvePoint<u64>>, CurveError> {
    if n == 0 {
        return Err(CurveError::ZeroTorsionOrder);
    }
    let g = curve.group()?;
    Ok(g.points.iter().zip(&g.orders).filter(|(_, &o)| n.is_multiple_of(o)).map(|(q, _)| q.clone()).collect())
}
