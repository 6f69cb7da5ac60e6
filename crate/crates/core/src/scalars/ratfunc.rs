use super::{unipoly, CycloField, CycloNum, Field};

/// A rational function `num / den` in one variable, kept in lowest terms
/// with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFuncElem<E> {
    num: Vec<E>,
    den: Vec<E>,
}

impl<E> RatFuncElem<E> {
    pub fn numerator(&self) -> &[E] {
        &self.num
    }

    pub fn denominator(&self) -> &[E] {
        &self.den
    }
}

/// Context for the field `K(a)` of rational functions over a base field `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc<F: Field> {
    base: F,
    var: String,
}

impl<F: Field> RatFunc<F> {
    pub fn new(base: F, var: &str) -> Self {
        RatFunc { base, var: var.to_string() }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    /// The generator `a`.
    pub fn var(&self) -> RatFuncElem<F::Elem> {
        RatFuncElem { num: vec![self.base.zero(), self.base.one()], den: vec![self.base.one()] }
    }

    pub fn constant(&self, c: F::Elem) -> RatFuncElem<F::Elem> {
        self.from_parts(vec![c], vec![self.base.one()]).expect("unit denominator")
    }

    /// Builds and normalizes `num / den`; `None` when `den` is zero.
    pub fn from_parts(&self, num: Vec<F::Elem>, den: Vec<F::Elem>) -> Option<RatFuncElem<F::Elem>> {
        let f = &self.base;
        let num = unipoly::trim(f, num);
        let den = unipoly::trim(f, den);
        if den.is_empty() {
            return None;
        }
        if num.is_empty() {
            return Some(RatFuncElem { num, den: vec![f.one()] });
        }
        let g = unipoly::gcd(f, &num, &den);
        let (mut n, mut d) =
            if g.len() > 1 { (unipoly::divrem(f, &num, &g).0, unipoly::divrem(f, &den, &g).0) } else { (num, den) };
        let lead = d.last().expect("nonzero").clone();
        if !f.is_one(&lead) {
            let li = f.inv(&lead).expect("nonzero");
            n = unipoly::scale(f, &n, &li);
            d = unipoly::scale(f, &d, &li);
        }
        Some(RatFuncElem { num: n, den: d })
    }

    /// Value at `a = t`; `None` at a pole.
    pub fn evaluate(&self, x: &RatFuncElem<F::Elem>, t: &F::Elem) -> Option<F::Elem> {
        let f = &self.base;
        let d = unipoly::eval(f, &x.den, t);
        f.div(&unipoly::eval(f, &x.num, t), &d)
    }

    /// True when the element is a constant of the base field.
    pub fn as_constant(&self, x: &RatFuncElem<F::Elem>) -> Option<F::Elem> {
        if x.den.len() == 1 && x.num.len() <= 1 {
            Some(x.num.first().cloned().unwrap_or_else(|| self.base.zero()))
        } else {
            None
        }
    }

    fn render_poly(&self, p: &[F::Elem]) -> String {
        unipoly::render(&self.base, p, &self.var)
    }
}

impl<F: Field> Field for RatFunc<F> {
    type Elem = RatFuncElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFuncElem { num: Vec::new(), den: vec![self.base.one()] }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.den == b.den {
            return self.from_parts(unipoly::add(f, &a.num, &b.num), a.den.clone()).expect("nonzero denominator");
        }
        let n = unipoly::add(f, &unipoly::mul(f, &a.num, &b.den), &unipoly::mul(f, &b.num, &a.den));
        self.from_parts(n, unipoly::mul(f, &a.den, &b.den)).expect("nonzero denominator")
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFuncElem { num: unipoly::neg(&self.base, &a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        self.from_parts(unipoly::mul(f, &a.num, &b.num), unipoly::mul(f, &a.den, &b.den)).expect("nonzero denominator")
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_empty() {
            return None;
        }
        self.from_parts(a.den.clone(), a.num.clone())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn render(&self, a: &Self::Elem) -> String {
        let n = self.render_poly(&a.num);
        if a.den.len() == 1 {
            return n;
        }
        let d = self.render_poly(&a.den);
        let wrap = |s: String, compound: bool| if compound { format!("({s})") } else { s };
        let n_compound = a.num.iter().filter(|c| !self.base.is_zero(c)).count() > 1;
        let d_compound = a.den.iter().filter(|c| !self.base.is_zero(c)).count() > 1
            || !self.base.is_one(a.den.last().expect("nonzero"))
            || d.contains('*');
        format!("{}/{}", wrap(n, n_compound), wrap(d, d_compound))
    }

    fn is_function_field(&self) -> bool {
        true
    }
}

impl<F: CycloField> CycloField for RatFunc<F> {
    fn from_cyclo(&self, c: &CycloNum) -> Self::Elem {
        self.constant(self.base.from_cyclo(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_rendering() {
        let k = RatFunc::new(Rationals, "a");
        let a = k.var();
        let inv_a = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv_a), k.one());
        assert_eq!(k.render(&k.neg(&inv_a)), "-1/a");
        // (a^2 - 1)/(a - 1) = a + 1
        let q = Rationals;
        let x = k.from_parts(vec![q.from_i64(-1), q.zero(), q.one()], vec![q.from_i64(-1), q.one()]).unwrap();
        assert_eq!(k.render(&x), "a + 1");
        assert_eq!(k.evaluate(&inv_a, &q.zero()), None);
    }

    fn arb_elem(k: &RatFunc<PrimeField>) -> impl Strategy<Value = RatFuncElem<u64>> {
        let k = k.clone();
        (proptest::collection::vec(0u64..61, 0..4), proptest::collection::vec(0u64..61, 1..4))
            .prop_filter_map("zero denominator", move |(n, d)| k.from_parts(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_axioms(
            (x, y, z) in {
                let k = RatFunc::new(PrimeField::new(61).unwrap(), "a");
                (arb_elem(&k), arb_elem(&k), arb_elem(&k))
            }
        ) {
            let k = RatFunc::new(PrimeField::new(61).unwrap(), "a");
            prop_assert_eq!(k.add(&k.add(&x, &y), &z), k.add(&x, &k.add(&y, &z)));
            prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
            if !k.is_zero(&x) {
                prop_assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
            }
        }
    }
}
