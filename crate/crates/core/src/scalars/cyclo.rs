use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::PrimeField;
use super::{unipoly, CycloField, Field, PrimeFieldNum, Rationals, ScalarError};

/// Degree of the 15th cyclotomic polynomial.
pub const CYCLO_DEGREE: usize = 8;

/// Low-degree-first coefficients of t^8 - t^7 + t^5 - t^4 + t^3 - t + 1.
const PHI15: [i64; 9] = [1, -1, 0, 1, -1, 1, 0, -1, 1];

/// An element of Q(ε) for a primitive 15th root of unity ε, as a reduced
/// polynomial of degree below 8 in ε.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    coeffs: [BigRational; CYCLO_DEGREE],
}

impl CycloNum {
    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs: [BigRational; CYCLO_DEGREE] = Default::default();
        coeffs[0] = r;
        CycloNum { coeffs }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// Reduces an arbitrary-length coefficient list modulo Φ15.
    pub fn from_coeffs(c: &[BigRational]) -> Self {
        let mut v: Vec<BigRational> = c.to_vec();
        for d in (CYCLO_DEGREE..v.len()).rev() {
            let lead = std::mem::take(&mut v[d]);
            if lead.is_zero() {
                continue;
            }
            // t^8 = -(Φ15 - t^8)
            for (j, &pj) in PHI15[..CYCLO_DEGREE].iter().enumerate() {
                if pj != 0 {
                    v[d - CYCLO_DEGREE + j] -= &lead * BigInt::from(pj);
                }
            }
        }
        let mut coeffs: [BigRational; CYCLO_DEGREE] = Default::default();
        for (slot, val) in coeffs.iter_mut().zip(v) {
            *slot = val;
        }
        CycloNum { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational; CYCLO_DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `ε^k` for the fixed primitive 15th root ε.
    pub fn eps15_pow(k: i64) -> Self {
        eps_table()[k.rem_euclid(15) as usize].clone()
    }

    /// The exponent `k` with `self = ε^k`, if `self` is a 15th root of unity.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        eps_table().iter().position(|e| e == self).map(|k| k as u32)
    }

    fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&o.coeffs) {
            *c += d;
        }
        CycloNum { coeffs }
    }

    fn sub(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&o.coeffs) {
            *c -= d;
        }
        CycloNum { coeffs }
    }

    fn neg(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        CycloNum { coeffs }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut prod: Vec<BigRational> = vec![BigRational::zero(); 2 * CYCLO_DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(&prod)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let q = Rationals;
        let phi: Vec<BigRational> = PHI15.iter().map(|&c| q.from_i64(c)).collect();
        let a = unipoly::trim(&q, self.coeffs.to_vec());
        let (g, s, _) = unipoly::ext_gcd(&q, &a, &phi);
        debug_assert_eq!(g, vec![BigRational::one()], "Φ15 is irreducible");
        Some(Self::from_coeffs(&s))
    }
}

fn eps_table() -> &'static [CycloNum; 15] {
    static TABLE: OnceLock<[CycloNum; 15]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|k| {
            let mut c = vec![BigRational::zero(); k + 1];
            c[k] = BigRational::one();
            CycloNum::from_coeffs(&c)
        })
    })
}

/// Context for Q(ε15).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Cyclo15;

impl Field for Cyclo15 {
    type Elem = CycloNum;

    fn zero(&self) -> CycloNum {
        CycloNum::zero()
    }

    fn one(&self) -> CycloNum {
        CycloNum::one()
    }

    fn from_i64(&self, n: i64) -> CycloNum {
        CycloNum::from_i64(n)
    }

    fn add(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        a.add(b)
    }

    fn sub(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        a.sub(b)
    }

    fn neg(&self, a: &CycloNum) -> CycloNum {
        a.neg()
    }

    fn mul(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        a.mul(b)
    }

    fn inv(&self, a: &CycloNum) -> Option<CycloNum> {
        a.inv()
    }

    fn is_zero(&self, a: &CycloNum) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn render(&self, a: &CycloNum) -> String {
        let root = |k: u32| match k {
            0 => "1".to_string(),
            1 => "ε".to_string(),
            k => format!("ε^{k}"),
        };
        if let Some(k) = a.as_root_of_unity() {
            return root(k);
        }
        if let Some(k) = a.neg().as_root_of_unity() {
            return format!("-{}", root(k));
        }
        unipoly::render(&Rationals, &a.coeffs, "ε")
    }
}

impl CycloField for Cyclo15 {
    fn from_cyclo(&self, c: &CycloNum) -> CycloNum {
        c.clone()
    }
}

impl CycloField for PrimeField {
    /// Uses the canonical 15th root of unity of this field; panics when
    /// `p` is not 1 mod 15 or a coefficient denominator vanishes mod p.
    fn from_cyclo(&self, c: &CycloNum) -> u64 {
        let root = find_root_of_unity(self.modulus(), 15)
            .unwrap_or_else(|| panic!("F_{} has no primitive 15th root", self.modulus()));
        embed_cyclo_in_prime_field(c, self.modulus(), self.num(root)).unwrap_or_else(|e| panic!("{e}")).residue
    }
}

/// `ζ^power` for the canonical primitive `order`-th root ζ = ε15^(15/order).
pub fn cyclo_root_of_unity(order: u32, power: i64) -> Result<CycloNum, ScalarError> {
    if order == 0 || 15 % order != 0 {
        return Err(ScalarError::OrderNotDividing15(order));
    }
    Ok(CycloNum::eps15_pow((15 / order) as i64 * power))
}

/// The smallest residue of multiplicative order exactly `order` in `F_p`.
pub fn find_root_of_unity(p: u64, order: u64) -> Option<u64> {
    let f = PrimeField::new(p).ok()?;
    if order == 0 || !(p - 1).is_multiple_of(order) {
        return None;
    }
    (1..p).find(|&r| f.order(r) == Some(order))
}

/// Ring homomorphism Q(ε15) → F_p sending ε to `witness_root`.
pub fn embed_cyclo_in_prime_field(
    x: &CycloNum,
    p: u64,
    witness_root: PrimeFieldNum,
) -> Result<PrimeFieldNum, ScalarError> {
    let f = PrimeField::new(p)?;
    if p % 15 != 1 {
        return Err(ScalarError::NoFifteenthRoots(p));
    }
    if witness_root.modulus != p {
        return Err(ScalarError::ModulusMismatch { expected: p, got: witness_root.modulus });
    }
    let order = f.order(witness_root.residue).unwrap_or(0);
    if order != 15 {
        return Err(ScalarError::BadWitness { witness: witness_root.residue, order, p });
    }
    let mut acc = 0u64;
    for c in x.coeffs.iter().rev() {
        let r = rational_mod(c, p)?;
        acc = f.add_mod(f.mul_mod(acc, witness_root.residue), r);
    }
    Ok(f.num(acc))
}

/// Image of a rational number in `F_p`.
pub fn rational_mod(c: &BigRational, p: u64) -> Result<u64, ScalarError> {
    let f = PrimeField::new(p)?;
    let m = BigInt::from(p);
    let n = c.numer().mod_floor(&m).to_u64().expect("reduced residue");
    let d = c.denom().mod_floor(&m).to_u64().expect("reduced residue");
    let di = f.inv_mod(d).ok_or(ScalarError::DenominatorVanishes(p))?;
    Ok(f.mul_mod(n, di))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::gcd;
    use proptest::prelude::*;

    fn order_of(x: &CycloNum) -> u32 {
        let k = Cyclo15;
        (1..=15).find(|&n| k.pow(x, n as u64) == k.one()).unwrap()
    }

    #[test]
    fn roots_have_expected_orders() {
        for n in [1u32, 3, 5, 15] {
            for k in 0..n as i64 {
                let z = cyclo_root_of_unity(n, k).unwrap();
                assert_eq!(order_of(&z), n / gcd(n, k as u32), "n={n} k={k}");
            }
        }
        assert!(cyclo_root_of_unity(4, 1).is_err());
        assert!(cyclo_root_of_unity(0, 1).is_err());
    }

    #[test]
    fn cube_root_relation() {
        let k = Cyclo15;
        let w = cyclo_root_of_unity(3, 1).unwrap();
        assert_eq!(cyclo_root_of_unity(15, 5).unwrap(), w);
        let val = k.add(&k.add(&k.mul(&w, &w), &w), &k.one());
        assert!(k.is_zero(&val));
        assert_ne!(w, k.one());
        assert_eq!(cyclo_root_of_unity(3, 0).unwrap(), k.one());
    }

    #[test]
    fn embedding_into_f31() {
        let root = find_root_of_unity(31, 15).unwrap();
        let w = PrimeFieldNum::new(root as i64, 31).unwrap();
        let one = embed_cyclo_in_prime_field(&CycloNum::one(), 31, w).unwrap();
        assert_eq!(one.residue, 1);
        let e3 = embed_cyclo_in_prime_field(&cyclo_root_of_unity(3, 1).unwrap(), 31, w).unwrap();
        // Brute-force list of elements of order 3.
        let cube: Vec<u64> = (1..31u64).filter(|&a| a * a % 31 * a % 31 == 1 && a != 1).collect();
        assert!(cube.contains(&e3.residue));
        let e = embed_cyclo_in_prime_field(&CycloNum::eps15_pow(1), 31, w).unwrap();
        assert_eq!(e.pow(15).residue, 1);
        assert_ne!(e.pow(5).residue, 1);
    }

    #[test]
    fn embedding_rejects_bad_input() {
        let w = PrimeFieldNum::new(2, 31).unwrap();
        assert!(matches!(embed_cyclo_in_prime_field(&CycloNum::one(), 31, w), Err(ScalarError::BadWitness { .. })));
        let w = PrimeFieldNum::new(2, 37).unwrap();
        assert!(matches!(embed_cyclo_in_prime_field(&CycloNum::one(), 37, w), Err(ScalarError::NoFifteenthRoots(37))));
    }

    #[test]
    fn rendering_prefers_root_form() {
        let k = Cyclo15;
        assert_eq!(k.render(&CycloNum::eps15_pow(10)), "ε^10");
        assert_eq!(k.render(&k.neg(&CycloNum::eps15_pow(0))), "-1");
        let s = k.add(&CycloNum::eps15_pow(1), &CycloNum::eps15_pow(2));
        assert_eq!(k.render(&s), "ε^2 + ε");
    }

    fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), CYCLO_DEGREE).prop_map(|v| {
            let c: Vec<BigRational> = v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
            CycloNum::from_coeffs(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_axioms(x in arb_cyclo(), y in arb_cyclo(), z in arb_cyclo()) {
            let k = Cyclo15;
            prop_assert_eq!(k.add(&k.add(&x, &y), &z), k.add(&x, &k.add(&y, &z)));
            prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
            prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
            if !k.is_zero(&x) {
                prop_assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
            }
        }

        #[test]
        fn embedding_is_homomorphism(x in arb_cyclo(), y in arb_cyclo()) {
            let k = Cyclo15;
            for p in [31u64, 61] {
                let w = PrimeFieldNum::new(find_root_of_unity(p, 15).unwrap() as i64, p).unwrap();
                let emb = |v: &CycloNum| embed_cyclo_in_prime_field(v, p, w).unwrap();
                prop_assert_eq!(emb(&k.mul(&x, &y)), emb(&x) * emb(&y));
                prop_assert_eq!(emb(&k.add(&x, &y)), emb(&x) + emb(&y));
            }
        }
    }
}
