use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{Monomial, MAX_VARS};
use super::PolyError;
use crate::scalars::Field;

/// A sparse polynomial with exact coefficients. Terms are keyed by exponent
/// vector under the graded reverse lexicographic order; zero coefficients
/// are never stored.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    field: F,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.render())
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Variable names `prefix0 .. prefix{n-1}`.
pub fn var_names(prefix: &str, n: usize) -> Arc<[String]> {
    assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, vars: &Arc<[String]>) -> Self {
        assert!(vars.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly { field: field.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, vars: &Arc<[String]>, c: F::Elem) -> Self {
        Self::term(field, vars, c, Monomial::one())
    }

    pub fn one(field: &F, vars: &Arc<[String]>) -> Self {
        Self::constant(field, vars, field.one())
    }

    pub fn var(field: &F, vars: &Arc<[String]>, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        Self::term(field, vars, field.one(), Monomial::var(i))
    }

    /// All variables of the ring, in order.
    pub fn vars_of(field: &F, vars: &Arc<[String]>) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::var(field, vars, i)).collect()
    }

    pub fn term(field: &F, vars: &Arc<[String]>, c: F::Elem, m: Monomial) -> Self {
        let mut p = Self::zero(field, vars);
        assert!(m.support_len() <= vars.len(), "monomial uses unknown variables");
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(field: &F, vars: &Arc<[String]>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            assert!(m.support_len() <= vars.len(), "monomial uses unknown variables");
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous.
    /// The zero polynomial is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) {
        assert!(self.vars == other.vars, "polynomials live in different rings: {:?} vs {:?}", self.vars, other.vars);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, &self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        if self.field.is_zero(c) {
            return out;
        }
        for (k, v) in &self.terms {
            let prod = self.field.mul(v, c);
            if !self.field.is_zero(&prod) {
                out.terms.insert(k.mul(m), prod);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        let f = &self.field;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = f.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, v| !f.is_zero(v));
        MultiPoly { field: self.field.clone(), vars: self.vars.clone(), terms: acc }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, &self.vars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check_ring(d);
        let (lm, lc) = d.leading_term()?;
        let lc_inv = self.field.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field, &self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(lm)?;
            let qc = self.field.mul(rc, &lc_inv);
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        let f = &self.field;
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        // Power table per variable.
        let pows: Vec<Vec<F::Elem>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(maxdeg + 1);
                v.push(f.one());
                for k in 1..=maxdeg {
                    v.push(f.mul(&v[k - 1], x));
                }
                v
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in pows.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = f.mul(&t, &pw[e]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for the i-th variable. The images may live in
    /// a different ring over the same field.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: images.len() });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.vars.clone();
        if images.iter().any(|p| p.vars != target) {
            return Err(PolyError::VariableMismatch);
        }
        let f = &self.field;
        let zero = MultiPoly::zero(f, &target);
        if self.is_zero() {
            return Ok(zero);
        }
        // Monomial maps (permutations with scalars) take a direct path.
        if images.iter().all(|p| p.terms.len() == 1) {
            let single: Vec<(Monomial, F::Elem)> = images
                .iter()
                .map(|p| {
                    let (m, c) = p.terms.iter().next().expect("one term");
                    (*m, c.clone())
                })
                .collect();
            let mut out = zero;
            for (m, c) in &self.terms {
                let mut mon = Monomial::one();
                let mut coef = c.clone();
                for (i, (im, ic)) in single.iter().enumerate() {
                    let e = m.exponent(i);
                    for _ in 0..e {
                        mon = mon.mul(im);
                    }
                    if e > 0 {
                        coef = f.mul(&coef, &f.pow(ic, e as u64));
                    }
                }
                out.add_term(mon, coef);
            }
            return Ok(out);
        }
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        let mut pows: Vec<Vec<MultiPoly<F>>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let need = self.terms.keys().map(|m| m.exponent(i)).max().unwrap_or(0) as usize;
            let mut v = vec![MultiPoly::one(f, &target)];
            for k in 1..=need.min(maxdeg) {
                v.push(v[k - 1].mul(img));
            }
            pows.push(v);
        }
        let mut out = zero;
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(f, &target, c.clone());
            for (i, pw) in pows.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn partial_derivative_index(&self, index: usize) -> Result<Self, PolyError> {
        if index >= self.nvars() {
            return Err(PolyError::UnknownVariable(format!("#{index}")));
        }
        let ch = self.field.characteristic();
        if ch != 0 {
            let d = self.total_degree().unwrap_or(0) as u64;
            if d >= ch {
                return Err(PolyError::CharacteristicTooSmall { characteristic: ch, degree: d as u32 });
            }
        }
        let mut out = Self::zero(&self.field, &self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut nm = *m;
            nm.0[index] -= 1;
            out.add_term(nm, self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self, PolyError> {
        let i = self.var_index(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        self.partial_derivative_index(i)
    }

    /// Applies `map` to every coefficient, landing in field `g`.
    pub fn map_coeffs<G: Field>(&self, g: &G, map: impl Fn(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        MultiPoly::from_terms(g, &self.vars, self.terms.iter().map(|(m, c)| (*m, map(c))))
    }

    /// Same polynomial viewed in a ring with other variable names (same count).
    pub fn rename_vars(&self, vars: &Arc<[String]>) -> Self {
        assert!(vars.len() >= self.terms.keys().map(Monomial::support_len).max().unwrap_or(0));
        MultiPoly { field: self.field.clone(), vars: vars.clone(), terms: self.terms.clone() }
    }

    /// The scalar `c` with `self = c * other`, if one exists.
    pub fn ratio_to(&self, other: &Self) -> Option<F::Elem> {
        self.check_ring(other);
        if other.is_zero() {
            return self.is_zero().then(|| self.field.one());
        }
        let (m, oc) = other.leading_term()?;
        let c = self.field.div(&self.coefficient(m), oc)?;
        (self.sub(&other.scale(&c)).is_zero()).then_some(c)
    }

    /// Canonical text form: terms by descending grevlex order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mon = self.render_monomial(m);
            let (neg, body) = if f.render_is_compound(c) {
                (false, format!("({})", f.render(c)))
            } else {
                let s = f.render(c);
                match s.strip_prefix('-') {
                    Some(r) => (true, r.to_string()),
                    None => (false, s),
                }
            };
            let term = if mon.is_empty() {
                body
            } else if body == "1" {
                mon
            } else {
                format!("{body}*{mon}")
            };
            match (k, neg) {
                (0, false) => out.push_str(&term),
                (0, true) => {
                    out.push('-');
                    out.push_str(&term);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&term);
                }
            }
        }
        out
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.vars.iter().enumerate() {
            match m.exponent(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl<F: Field> std::ops::Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, o: Self) -> MultiPoly<F> {
        MultiPoly::add(self, o)
    }
}

impl<F: Field> std::ops::Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, o: Self) -> MultiPoly<F> {
        MultiPoly::sub(self, o)
    }
}

impl<F: Field> std::ops::Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, o: Self) -> MultiPoly<F> {
        MultiPoly::mul(self, o)
    }
}

impl<F: Field> std::ops::Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly::neg(self)
    }
}
