//! Sparse multivariate polynomials, polynomial matrices and the exact
//! linear algebra used for span membership.

pub mod linalg;
mod matrix;
mod monomial;
mod poly;

use std::collections::BTreeSet;

use thiserror::Error;

pub use matrix::{DetMethod, PolyMatrix, MAX_DET_SIZE};
pub use monomial::{monomials_of_degree, Monomial, MAX_VARS};
pub use poly::{var_names, MultiPoly};

use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("characteristic {characteristic} does not exceed degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: u32 },
    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("substitution images live in different rings")]
    VariableMismatch,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant of size {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("matrix shapes do not match")]
    ShapeMismatch,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("inputs are not homogeneous of one common degree")]
    DegreeMismatch,
}

/// Coefficients `c` with `q = Σ c_i basis_i`, or `Ok(None)` if `q` is not in
/// the span. All inputs must be homogeneous of one degree.
pub fn in_linear_span<F: Field>(q: &MultiPoly<F>, basis: &[MultiPoly<F>]) -> Result<Option<Vec<F::Elem>>, PolyError> {
    let f = q.field();
    let mut degree = q.homogeneous_degree();
    if !q.is_homogeneous() {
        return Err(PolyError::DegreeMismatch);
    }
    for b in basis {
        if b.vars() != q.vars() {
            return Err(PolyError::VariableMismatch);
        }
        match (b.homogeneous_degree(), degree) {
            (None, _) if !b.is_zero() => return Err(PolyError::DegreeMismatch),
            (Some(d), Some(e)) if d != e => return Err(PolyError::DegreeMismatch),
            (Some(d), None) => degree = Some(d),
            _ => {}
        }
    }
    if q.is_zero() {
        return Ok(Some(vec![f.zero(); basis.len()]));
    }
    let monos: Vec<Monomial> = basis
        .iter()
        .chain(std::iter::once(q))
        .flat_map(|p| p.terms().map(|(m, _)| *m))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let a: linalg::Dense<F::Elem> = monos.iter().map(|m| basis.iter().map(|b| b.coefficient(m)).collect()).collect();
    let rhs: Vec<F::Elem> = monos.iter().map(|m| q.coefficient(m)).collect();
    if basis.is_empty() {
        return Ok(None);
    }
    Ok(linalg::solve(f, &a, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ring3() -> (PrimeField, Arc<[String]>) {
        (PrimeField::new(31).unwrap(), var_names("x", 3))
    }

    #[test]
    fn determinant_basics() {
        let (f, v) = ring3();
        let x = MultiPoly::vars_of(&f, &v);
        let id = PolyMatrix::identity(&f, &v, 3);
        assert_eq!(id.determinant().unwrap(), MultiPoly::one(&f, &v));
        let diag =
            PolyMatrix::from_fn(&f, &v, 3, 3, |i, j| if i == j { x[i].clone() } else { MultiPoly::zero(&f, &v) });
        let prod = x[0].mul(&x[1]).mul(&x[2]);
        for m in [DetMethod::Bareiss, DetMethod::Cofactor] {
            assert_eq!(diag.determinant_with(m).unwrap(), prod);
        }
        let rect = PolyMatrix::zeros(&f, &v, 2, 3);
        assert!(matches!(rect.determinant(), Err(PolyError::NotSquare { .. })));
        assert!(PolyMatrix::zeros(&f, &v, 7, 7).determinant().is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_with_zero_pivots() {
        let (f, v) = ring3();
        let x = MultiPoly::vars_of(&f, &v);
        let z = MultiPoly::zero(&f, &v);
        // Leading entry zero forces a row swap.
        let m = PolyMatrix::from_fn(&f, &v, 3, 3, |i, j| match (i, j) {
            (0, 0) => z.clone(),
            _ => x[(i + 2 * j) % 3].add(&MultiPoly::constant(&f, &v, (i * j) as u64)),
        });
        assert_eq!(m.determinant_with(DetMethod::Bareiss).unwrap(), m.determinant_with(DetMethod::Cofactor).unwrap());
    }

    #[test]
    fn derivative_and_rank() {
        let (f, v) = ring3();
        let x = MultiPoly::vars_of(&f, &v);
        let sq = x[0].mul(&x[0]);
        assert_eq!(sq.partial_derivative("x0").unwrap(), x[0].scale(&2));
        assert!(x[1].mul(&x[2]).partial_derivative("x0").unwrap().is_zero());
        assert!(sq.partial_derivative("y").is_err());
        let f3 = PrimeField::new(3).unwrap();
        let cube = MultiPoly::var(&f3, &v, 0).pow(3);
        assert!(matches!(cube.partial_derivative("x0"), Err(PolyError::CharacteristicTooSmall { .. })));
        let zero = PolyMatrix::zeros(&f, &v, 3, 3);
        assert_eq!(zero.rank_at_point(&[1, 2, 3]).unwrap(), 0);
        assert_eq!(PolyMatrix::identity(&f, &v, 3).rank_at_point(&[0, 0, 5]).unwrap(), 3);
        assert_eq!(zero.rank_at_point(&[0, 0, 0]), Err(PolyError::ZeroPoint));
    }

    #[test]
    fn span_membership() {
        let q = Rationals;
        let v = var_names("x", 2);
        let x = MultiPoly::vars_of(&q, &v);
        let basis = vec![x[0].mul(&x[0]), x[0].mul(&x[1])];
        let c = in_linear_span(&basis[0], &basis).unwrap().unwrap();
        assert_eq!(c, vec![q.one(), q.zero()]);
        let zero = MultiPoly::zero(&q, &v);
        assert_eq!(in_linear_span(&zero, &basis).unwrap().unwrap(), vec![q.zero(), q.zero()]);
        assert_eq!(in_linear_span(&x[1].mul(&x[1]), &basis).unwrap(), None);
        assert_eq!(in_linear_span(&x[1], &basis), Err(PolyError::DegreeMismatch));
    }

    #[test]
    fn rendering_is_canonical() {
        let q = Rationals;
        let v = var_names("x", 3);
        let x = MultiPoly::vars_of(&q, &v);
        let p =
            x[2].sub(&x[0].mul(&x[1]).scale(&q.from_ratio(1, 3).unwrap())).add(&x[1].mul(&x[1]).scale(&q.from_i64(2)));
        assert_eq!(p.render(), "-1/3*x0*x1 + 2*x1^2 + x2");
    }

    #[test]
    fn substitution_general_and_monomial() {
        let (f, v) = ring3();
        let x = MultiPoly::vars_of(&f, &v);
        let p = x[0].mul(&x[1]).add(&x[2].pow(2));
        let rot = vec![x[1].clone(), x[2].clone(), x[0].clone()];
        assert_eq!(p.substitute(&rot).unwrap(), x[1].mul(&x[2]).add(&x[0].pow(2)));
        let lin = vec![x[0].add(&x[1]), x[1].clone(), x[2].clone()];
        let expect = x[0].mul(&x[1]).add(&x[1].pow(2)).add(&x[2].pow(2));
        assert_eq!(p.substitute(&lin).unwrap(), expect);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly<PrimeField>> {
        proptest::collection::vec((0u64..31, proptest::collection::vec(0u32..3, 3)), 0..6).prop_map(|terms| {
            let (f, v) = ring3();
            MultiPoly::from_terms(&f, &v, terms.into_iter().map(|(c, e)| (Monomial::from_exponents(&e), c)))
        })
    }

    fn arb_hom(d: u32) -> impl Strategy<Value = MultiPoly<PrimeField>> {
        proptest::collection::vec(0u64..31, 10).prop_map(move |cs| {
            let (f, v) = ring3();
            MultiPoly::from_terms(&f, &v, monomials_of_degree(3, d).into_iter().zip(cs))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn evaluation_is_homomorphism(a in arb_poly(), b in arb_poly(), pt in proptest::collection::vec(0u64..31, 3)) {
            let f = *a.field();
            prop_assert_eq!(a.mul(&b).evaluate(&pt).unwrap(), f.mul(&a.evaluate(&pt).unwrap(), &b.evaluate(&pt).unwrap()));
            prop_assert_eq!(a.add(&b).evaluate(&pt).unwrap(), f.add(&a.evaluate(&pt).unwrap(), &b.evaluate(&pt).unwrap()));
        }

        #[test]
        fn homogeneous_degrees_add(a in arb_hom(2), b in arb_hom(1)) {
            let prod = a.mul(&b);
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(prod.homogeneous_degree(), Some(3));
            }
        }

        #[test]
        fn exact_division_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn determinant_commutes_with_evaluation(
            entries in proptest::collection::vec(arb_hom(1), 16),
            pt in proptest::collection::vec(0u64..31, 3),
        ) {
            let (f, v) = ring3();
            let m = PolyMatrix::from_fn(&f, &v, 4, 4, |i, j| entries[4 * i + j].clone());
            let numeric = linalg::det(&f, &m.evaluate(&pt).unwrap());
            for method in [DetMethod::Bareiss, DetMethod::Cofactor] {
                prop_assert_eq!(m.determinant_with(method).unwrap().evaluate(&pt).unwrap(), numeric);
            }
        }

        #[test]
        fn rank_is_projective_and_permutation_invariant(
            entries in proptest::collection::vec(arb_hom(1), 16),
            pt in proptest::collection::vec(0u64..31, 3),
            scale in 1u64..31,
            shift in 0usize..4,
        ) {
            prop_assume!(pt.iter().any(|&c| c != 0));
            let (f, v) = ring3();
            let m = PolyMatrix::from_fn(&f, &v, 4, 4, |i, j| entries[4 * i + j].clone());
            let permuted = PolyMatrix::from_fn(&f, &v, 4, 4, |i, j| entries[4 * ((i + shift) % 4) + (j + 3 * shift) % 4].clone());
            let scaled: Vec<u64> = pt.iter().map(|c| c * scale % 31).collect();
            let r = m.rank_at_point(&pt).unwrap();
            prop_assert_eq!(r, m.rank_at_point(&scaled).unwrap());
            prop_assert_eq!(r, permuted.rank_at_point(&pt).unwrap());
        }
    }
}
