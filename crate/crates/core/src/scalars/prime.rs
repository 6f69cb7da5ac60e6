use std::fmt;

use super::{Field, ScalarError};

/// Deterministic trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Context for the prime field `F_p`. Elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Moduli are kept below 2^31 so products fit comfortably in `u64`.
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p >= Self::MAX_MODULUS {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn mul_mod(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn add_mod(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_mod(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow_mod(&self, mut a: u64, mut n: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_mod(acc, a);
            }
            a = self.mul_mod(a, a);
            n >>= 1;
        }
        acc
    }

    pub fn inv_mod(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow_mod(a, self.p - 2))
        }
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let n = self.p - 1;
        let mut ord = n;
        for q in prime_factors(n) {
            while ord.is_multiple_of(q) && self.pow_mod(a, ord / q) == 1 {
                ord /= q;
            }
        }
        Some(ord)
    }

    /// A square root when one exists (Tonelli-Shanks).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if self.pow_mod(a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.pow_mod(z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow_mod(z, q);
        let mut t = self.pow_mod(a, q);
        let mut r = self.pow_mod(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul_mod(tt, tt);
                i += 1;
            }
            let b = self.pow_mod(c, 1 << (m - i - 1));
            m = i;
            c = self.mul_mod(b, b);
            t = self.mul_mod(t, c);
            r = self.mul_mod(r, b);
        }
        Some(r)
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for display.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn num(&self, residue: u64) -> PrimeFieldNum {
        PrimeFieldNum { residue: residue % self.p, modulus: self.p }
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_mod(*a, *b)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.sub_mod(*a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        self.sub_mod(0, *a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        self.inv_mod(*a)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn render_is_compound(&self, _a: &u64) -> bool {
        false
    }

    fn pow(&self, a: &u64, n: u64) -> u64 {
        self.pow_mod(*a, n)
    }
}

/// A residue bundled with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldNum {
    pub residue: u64,
    pub modulus: u64,
}

impl PrimeFieldNum {
    pub fn new(residue: i64, modulus: u64) -> Result<Self, ScalarError> {
        let f = PrimeField::new(modulus)?;
        Ok(f.num(f.reduce_i64(residue)))
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn inv(&self) -> Option<Self> {
        self.field().inv_mod(self.residue).map(|r| self.field().num(r))
    }

    pub fn pow(&self, n: u64) -> Self {
        self.field().num(self.field().pow_mod(self.residue, n))
    }

    pub fn order(&self) -> Option<u64> {
        self.field().order(self.residue)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl std::ops::Add for PrimeFieldNum {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        self.field().num(self.field().add_mod(self.residue, o.residue))
    }
}

impl std::ops::Sub for PrimeFieldNum {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        self.field().num(self.field().sub_mod(self.residue, o.residue))
    }
}

impl std::ops::Mul for PrimeFieldNum {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        self.field().num(self.field().mul_mod(self.residue, o.residue))
    }
}

impl std::ops::Neg for PrimeFieldNum {
    type Output = Self;
    fn neg(self) -> Self {
        self.field().num(self.field().sub_mod(0, self.residue))
    }
}

impl fmt::Display for PrimeFieldNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}
