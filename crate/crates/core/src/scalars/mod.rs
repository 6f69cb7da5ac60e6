//! Exact coefficient fields.
//!
//! Every field is described by a small context value implementing [`Field`];
//! elements are plain data ([`Field::Elem`]) and all arithmetic goes through
//! the context. This keeps prime-field residues as bare `u64`s while letting
//! polynomials and matrices be generic over the coefficient field.

mod cyclo;
mod prime;
mod ratfunc;
mod rational;
pub mod unipoly;

use std::fmt;
use std::hash::Hash;

pub use cyclo::{
    cyclo_root_of_unity, embed_cyclo_in_prime_field, find_root_of_unity, rational_mod, Cyclo15, CycloNum, CYCLO_DEGREE,
};
pub use prime::{is_prime, prime_factors, PrimeField, PrimeFieldNum};
pub use ratfunc::{RatFunc, RatFuncElem};
pub use rational::Rationals;

use thiserror::Error;

/// Default verification primes; all are 1 mod 15 so the 15th roots of unity embed.
pub const DEFAULT_PRIMES: [u64; 6] = [31, 61, 151, 181, 211, 241];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("order {0} does not divide 15")]
    OrderNotDividing15(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is not 1 mod 15")]
    NoFifteenthRoots(u64),
    #[error("witness {witness} has order {order} in F_{p}, expected 15")]
    BadWitness { witness: u64, order: u64, p: u64 },
    #[error("witness modulus {got} does not match target prime {expected}")]
    ModulusMismatch { expected: u64, got: u64 },
    #[error("coefficient denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
    #[error("modulus {0} is too large for u64 arithmetic")]
    ModulusTooLarge(u64),
}

/// A field context. Elements carry no context of their own.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Canonical text form of an element.
    fn render(&self, a: &Self::Elem) -> String;

    /// True when elements are rational functions; determinants then prefer
    /// fraction-free elimination.
    fn is_function_field(&self) -> bool {
        false
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `num / den` as a field element, if `den` is invertible here.
    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    /// True when the rendered form needs parentheses inside a product.
    fn render_is_compound(&self, a: &Self::Elem) -> bool {
        let s = self.render(a);
        s.trim_start_matches('-').contains(['+', '-', '/', ' '])
    }
}

/// Fields that contain the 15th roots of unity through a fixed embedding.
#[allow(clippy::wrong_self_convention)]
pub trait CycloField: Field {
    fn from_cyclo(&self, c: &CycloNum) -> Self::Elem;
}
