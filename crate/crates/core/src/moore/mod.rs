//! The five quadrics through an elliptic normal quintic, the symmetric Moore
//! matrix `M(y)`, its dual `M′(x)`, the antisymmetric syzygy matrix `A` and
//! the two determinantal quintics.
//!
//! Everything is generic over the coefficient field, so the same code runs
//! with `a` a number in `F_p`, a rational, or the generator of `K(a)`.

mod checks;
mod excluded;

use std::sync::Arc;

use thiserror::Error;

use crate::heisenberg::HeisenbergError;
use crate::multipoly::linalg::{self, Dense};
use crate::multipoly::{var_names, DetMethod, Monomial, MultiPoly, PolyError, PolyMatrix};
use crate::scalars::Field;

pub use checks::{
    find_reindexings, moore_suite_numeric, moore_suite_symbolic, quadric_jacobian, verify_moore_structure,
    verify_span_claims, AffineIndex,
};
pub use excluded::ExcludedModuli;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MooreError {
    #[error("the modulus a must be invertible")]
    ZeroModulus,
    #[error("a = {0} is an excluded modulus")]
    ExcludedModulus(String),
    #[error("M(y)x and M′(x)y disagree")]
    DualityMismatch,
    #[error("expected a point with 5 coordinates, got {0}")]
    PointLength(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
}

fn idx(i: i64) -> usize {
    i.rem_euclid(5) as usize
}

/// `Q_i = x_i² + a x_{i+2} x_{i+3} − (1/a) x_{i+1} x_{i+4}`, `i ∈ Z5`.
#[derive(Debug, Clone)]
pub struct QuadricSystem<F: Field> {
    field: F,
    a: F::Elem,
    vars: Arc<[String]>,
    quadrics: Vec<MultiPoly<F>>,
}

impl<F: Field> QuadricSystem<F> {
    pub fn new(field: &F, a: F::Elem) -> Result<Self, MooreError> {
        let inv_a = field.inv(&a).ok_or(MooreError::ZeroModulus)?;
        let vars = var_names("x", 5);
        let x = MultiPoly::vars_of(field, &vars);
        let quadrics = (0..5i64)
            .map(|i| {
                x[idx(i)]
                    .pow(2)
                    .add(&x[idx(i + 2)].mul(&x[idx(i + 3)]).scale(&a))
                    .sub(&x[idx(i + 1)].mul(&x[idx(i + 4)]).scale(&inv_a))
            })
            .collect();
        Ok(QuadricSystem { field: field.clone(), a, vars, quadrics })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn a(&self) -> &F::Elem {
        &self.a
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn quadrics(&self) -> &[MultiPoly<F>] {
        &self.quadrics
    }

    /// `(Q_0(x), …, Q_4(x))`, the forward Cremona map.
    pub fn evaluate(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>, MooreError> {
        if x.len() != 5 {
            return Err(MooreError::PointLength(x.len()));
        }
        Ok(self.quadrics.iter().map(|q| q.evaluate(x)).collect::<Result<_, _>>()?)
    }
}

/// `z = (2, a, −1/a, −1/a, a)`, indexed by `Z5`.
pub fn z_vector<F: Field>(field: &F, a: &F::Elem) -> Result<[F::Elem; 5], MooreError> {
    let inv = field.inv(a).ok_or(MooreError::ZeroModulus)?;
    let m = field.neg(&inv);
    Ok([field.from_i64(2), a.clone(), m.clone(), m, a.clone()])
}

/// `M(y)`, `M′(x)` and `A(x)` for one value of `a`.
#[derive(Debug, Clone)]
pub struct MooreMatrices<F: Field> {
    field: F,
    a: F::Elem,
    m: PolyMatrix<F>,
    m_prime: PolyMatrix<F>,
    syzygy: PolyMatrix<F>,
}

/// Builds `M(y) = (y_{i+j} z_{i−j})`, solves `M′` from `M(y)·x = M′(x)·y` by
/// matching coefficients of `y`, and enters `A` row by row.
pub fn build_moore_matrices<F: Field>(field: &F, a: F::Elem) -> Result<MooreMatrices<F>, MooreError> {
    let z = z_vector(field, &a)?;
    let yv = var_names("y", 5);
    let xv = var_names("x", 5);
    let y = MultiPoly::vars_of(field, &yv);
    let m =
        PolyMatrix::from_fn(field, &yv, 5, 5, |i, j| y[idx(i as i64 + j as i64)].scale(&z[idx(i as i64 - j as i64)]));

    // M(y)·x in the joint ring x0..x4, y0..y4.
    let joint: Arc<[String]> = xv.iter().chain(yv.iter()).cloned().collect::<Vec<_>>().into();
    let jv = MultiPoly::vars_of(field, &joint);
    let mut m_prime = PolyMatrix::zeros(field, &xv, 5, 5);
    for i in 0..5 {
        let row = (0..5).fold(MultiPoly::zero(field, &joint), |acc, j| {
            acc.add(&jv[5 + idx(i as i64 + j as i64)].mul(&jv[j]).scale(&z[idx(i as i64 - j as i64)]))
        });
        for (mono, c) in row.terms() {
            let k = (0..5).find(|&k| mono.exponent(5 + k) == 1).expect("bilinear in x and y");
            let xpart = Monomial::from_exponents(&(0..5).map(|v| mono.exponent(v)).collect::<Vec<_>>());
            let mut e = m_prime.get(i, k).clone();
            e.add_term(xpart, c.clone());
            m_prime.set(i, k, e);
        }
    }

    let x = MultiPoly::vars_of(field, &xv);
    let zero = MultiPoly::zero(field, &xv);
    let ax = |i: usize| x[i].scale(&a);
    let neg = |p: MultiPoly<F>| p.neg();
    let rows: [[MultiPoly<F>; 5]; 5] = [
        [zero.clone(), ax(4), neg(x[3].clone()), x[2].clone(), neg(ax(1))],
        [neg(ax(4)), zero.clone(), ax(2), neg(x[1].clone()), x[0].clone()],
        [x[3].clone(), neg(ax(2)), zero.clone(), ax(0), neg(x[4].clone())],
        [neg(x[2].clone()), x[1].clone(), neg(ax(0)), zero.clone(), ax(3)],
        [ax(1), neg(x[0].clone()), x[4].clone(), neg(ax(3)), zero],
    ];
    let syzygy = PolyMatrix::from_fn(field, &xv, 5, 5, |i, j| rows[i][j].clone());
    Ok(MooreMatrices { field: field.clone(), a, m, m_prime, syzygy })
}

impl<F: Field> MooreMatrices<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn a(&self) -> &F::Elem {
        &self.a
    }

    /// `M(y)`, symmetric, linear in `y`.
    pub fn m(&self) -> &PolyMatrix<F> {
        &self.m
    }

    /// `M′(x)`, linear in `x`.
    pub fn m_prime(&self) -> &PolyMatrix<F> {
        &self.m_prime
    }

    /// The antisymmetric matrix `A(x)`.
    pub fn syzygy_matrix(&self) -> &PolyMatrix<F> {
        &self.syzygy
    }

    pub fn m_at(&self, y: &[F::Elem]) -> Result<Dense<F::Elem>, MooreError> {
        if y.len() != 5 {
            return Err(MooreError::PointLength(y.len()));
        }
        Ok(self.m.evaluate(y)?)
    }

    pub fn m_prime_at(&self, x: &[F::Elem]) -> Result<Dense<F::Elem>, MooreError> {
        if x.len() != 5 {
            return Err(MooreError::PointLength(x.len()));
        }
        Ok(self.m_prime.evaluate(x)?)
    }
}

/// `(det M(y), det M′(x))`.
pub fn quintic_equations<F: Field>(mm: &MooreMatrices<F>) -> Result<(MultiPoly<F>, MultiPoly<F>), MooreError> {
    Ok((mm.m.determinant_with(DetMethod::Bareiss)?, mm.m_prime.determinant_with(DetMethod::Bareiss)?))
}

/// `M(y)·x`, checked against `M′(x)·y`. Zero iff `(x, y)` is an incidence pair.
pub fn incidence_residual<F: Field>(
    x: &[F::Elem],
    y: &[F::Elem],
    mm: &MooreMatrices<F>,
) -> Result<Vec<F::Elem>, MooreError> {
    let f = &mm.field;
    let r1 = linalg::mat_vec(f, &mm.m_at(y)?, x);
    let r2 = linalg::mat_vec(f, &mm.m_prime_at(x)?, y);
    if r1 != r2 {
        return Err(MooreError::DualityMismatch);
    }
    Ok(r1)
}

#[cfg(test)]
mod tests;
