use crate::scalars::{cyclo_root_of_unity, find_root_of_unity, Cyclo15, CycloNum, Field, PrimeField};

/// Values of `a` for which the five quadrics do not cut out a smooth curve:
/// `0`, `∞` and the ten values `ε5^k(ε5² + ε5³)`, `ε5^k(ε5 + ε5⁴)`.
#[derive(Debug, Clone)]
pub struct ExcludedModuli {
    finite: Vec<CycloNum>,
}

impl Default for ExcludedModuli {
    fn default() -> Self {
        Self::new()
    }
}

fn eps5(k: i64) -> CycloNum {
    cyclo_root_of_unity(5, k).expect("order 5")
}

impl ExcludedModuli {
    pub fn new() -> Self {
        let k = Cyclo15;
        let mut finite = vec![CycloNum::zero()];
        for (u, v) in [(2, 3), (1, 4)] {
            let base = k.add(&eps5(u), &eps5(v));
            for j in 0..5 {
                finite.push(k.mul(&eps5(j), &base));
            }
        }
        ExcludedModuli { finite }
    }

    /// The finite values, `0` first.
    pub fn finite(&self) -> &[CycloNum] {
        &self.finite
    }

    /// Count on the projective line, including `∞`.
    pub fn len(&self) -> usize {
        self.finite.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `a = 0` or `a¹⁰ + 11a⁵ − 1 = 0`, the polynomial whose roots are the
    /// ten nonzero values. Works for every `p`.
    pub fn contains_mod(&self, p: u64, a: u64) -> bool {
        let f = PrimeField::new(p).expect("prime");
        let a = a % p;
        if a == 0 {
            return true;
        }
        let a5 = f.pow_mod(a, 5);
        let v = f.add_mod(f.add_mod(f.mul_mod(a5, a5), f.mul_mod(11 % p, a5)), p - 1);
        v == 0
    }

    /// Images in `F_p` for `p ≡ 1 mod 5`, through any primitive fifth root
    /// (the set does not depend on the choice).
    pub fn images_mod(&self, p: u64) -> Option<Vec<u64>> {
        let f = PrimeField::new(p).ok()?;
        let w = find_root_of_unity(p, 5)?;
        let e = |k: u64| f.pow_mod(w, k % 5);
        let mut out = vec![0u64];
        for (u, v) in [(2, 3), (1, 4)] {
            let base = f.add_mod(e(u), e(v));
            for j in 0..5 {
                out.push(f.mul_mod(e(j), base));
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    /// The smallest admissible values in `2..p`, used when `a` is "auto".
    pub fn admissible_mod(&self, p: u64, count: usize) -> Vec<u64> {
        (2..p).filter(|&a| !self.contains_mod(p, a)).take(count).collect()
    }
}
