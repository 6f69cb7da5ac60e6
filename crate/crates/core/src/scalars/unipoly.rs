//! Dense univariate polynomials over a [`Field`], stored low degree first.
//! The zero polynomial is the empty vector.

use super::Field;

pub type Coeffs<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut a: Coeffs<F>) -> Coeffs<F> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<F: Field>(a: &[F::Elem]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Coeffs<F> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    add(f, a, &neg(f, b))
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Coeffs<F> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Coeffs<F>, Coeffs<F>) {
    let db = degree::<F>(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("leading coefficient is nonzero");
    let mut r: Coeffs<F> = a.to_vec();
    r = trim(f, r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, bj));
        }
        q[shift] = c;
        r.pop();
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Coeffs<F> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(f, a, &f.inv(l).expect("nonzero leading coefficient")),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Coeffs<F> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Coeffs<F>, Coeffs<F>, Coeffs<F>) {
    let mut r0 = trim(f, a.to_vec());
    let mut r1 = trim(f, b.to_vec());
    let mut s0 = vec![f.one()];
    let mut s1: Coeffs<F> = Vec::new();
    let mut t0: Coeffs<F> = Vec::new();
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (Vec::new(), s0, t0),
        Some(l) => {
            let li = f.inv(l).expect("nonzero");
            (scale(f, &r0, &li), scale(f, &s0, &li), scale(f, &t0, &li))
        }
    }
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn render<F: Field>(f: &F, a: &[F::Elem], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = f.render(c);
        let term = if mon.is_empty() {
            cs
        } else if f.is_one(c) {
            mon
        } else if f.is_one(&f.neg(c)) {
            format!("-{mon}")
        } else if f.render_is_compound(c) {
            format!("({cs})*{mon}")
        } else {
            format!("{cs}*{mon}")
        };
        parts.push(term);
    }
    let Some(first) = parts.first() else {
        return "0".into();
    };
    let mut s = first.clone();
    for t in &parts[1..] {
        if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(t);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::PrimeField;

    #[test]
    fn divrem_and_gcd() {
        let f = PrimeField::new(31).unwrap();
        // (x+1)(x+2) and (x+1)(x+3)
        let a = mul(&f, &[1, 1], &[2, 1]);
        let b = mul(&f, &[1, 1], &[3, 1]);
        assert_eq!(gcd(&f, &a, &b), vec![1, 1]);
        let (q, r) = divrem(&f, &a, &[1, 1]);
        assert_eq!(q, vec![2, 1]);
        assert!(r.is_empty());
        let (g, s, t) = ext_gcd(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
    }

    #[test]
    fn rendering() {
        let f = PrimeField::new(31).unwrap();
        assert_eq!(render(&f, &[1, 0, 30], "a"), "-a^2 + 1");
        assert_eq!(render(&f, &[0, 2], "a"), "2*a");
        assert_eq!(render(&f, &[], "a"), "0");
        assert_eq!(render(&f, &[0, 0], "a"), "0");
    }
}
