use std::sync::Arc;

use super::linalg::{self, Dense};
use super::{MultiPoly, PolyError};
use crate::scalars::Field;

/// Largest matrix accepted by [`PolyMatrix::determinant`].
pub const MAX_DET_SIZE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetMethod {
    /// Bareiss for rational-function coefficients, cofactor expansion otherwise.
    Auto,
    /// Fraction-free elimination with exact polynomial division.
    Bareiss,
    /// Laplace expansion memoized over column subsets.
    Cofactor,
}

/// A rectangular matrix of polynomials over one ring.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    vars: Arc<[String]>,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly<F>>,
}

impl<F: Field> std::fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PolyMatrix {}x{} {:?}", self.rows, self.cols, self.render_rows())
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_fn(
        field: &F,
        vars: &Arc<[String]>,
        rows: usize,
        cols: usize,
        mut entry: impl FnMut(usize, usize) -> MultiPoly<F>,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = entry(i, j);
                assert!(e.vars() == vars, "entry ({i},{j}) lives in another ring");
                entries.push(e);
            }
        }
        PolyMatrix { field: field.clone(), vars: vars.clone(), rows, cols, entries }
    }

    pub fn zeros(field: &F, vars: &Arc<[String]>, rows: usize, cols: usize) -> Self {
        Self::from_fn(field, vars, rows, cols, |_, _| MultiPoly::zero(field, vars))
    }

    pub fn identity(field: &F, vars: &Arc<[String]>, n: usize) -> Self {
        Self::from_fn(field, vars, n, n, |i, j| {
            if i == j {
                MultiPoly::one(field, vars)
            } else {
                MultiPoly::zero(field, vars)
            }
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly<F>) {
        assert!(p.vars() == &self.vars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[MultiPoly<F>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, &self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
        let entries: Vec<MultiPoly<F>> = self.entries.iter().map(&mut f).collect();
        let vars = entries.first().map_or(self.vars.clone(), |e| e.vars().clone());
        PolyMatrix { field: self.field.clone(), vars, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, PolyError> {
        if self.cols != o.rows {
            return Err(PolyError::ShapeMismatch);
        }
        Ok(Self::from_fn(&self.field, &self.vars, self.rows, o.cols, |i, j| {
            (0..self.cols)
                .fold(MultiPoly::zero(&self.field, &self.vars), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        }))
    }

    pub fn mul_vec(&self, v: &[MultiPoly<F>]) -> Result<Vec<MultiPoly<F>>, PolyError> {
        if v.len() != self.cols {
            return Err(PolyError::ShapeMismatch);
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .fold(MultiPoly::zero(&self.field, &self.vars), |acc, k| acc.add(&self.get(i, k).mul(&v[k])))
            })
            .collect())
    }

    pub fn add(&self, o: &Self) -> Result<Self, PolyError> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(PolyError::ShapeMismatch);
        }
        Ok(Self::from_fn(&self.field, &self.vars, self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j))))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, PolyError> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(PolyError::ShapeMismatch);
        }
        Ok(Self::from_fn(&self.field, &self.vars, self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j))))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..=i).all(|j| self.get(i, j) == &self.get(j, i).neg()))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Dense<F::Elem>, PolyError> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate(point)).collect()).collect()
    }

    /// Rank of the scalar matrix obtained by evaluating at a nonzero point.
    pub fn rank_at_point(&self, point: &[F::Elem]) -> Result<usize, PolyError> {
        if point.iter().all(|c| self.field.is_zero(c)) {
            return Err(PolyError::ZeroPoint);
        }
        let m = self.evaluate(point)?;
        Ok(linalg::rank(&self.field, &m))
    }

    pub fn determinant(&self) -> Result<MultiPoly<F>, PolyError> {
        self.determinant_with(DetMethod::Auto)
    }

    pub fn determinant_with(&self, method: DetMethod) -> Result<MultiPoly<F>, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows > MAX_DET_SIZE {
            return Err(PolyError::TooLarge(self.rows));
        }
        let method = match method {
            DetMethod::Auto if self.field.is_function_field() => DetMethod::Bareiss,
            DetMethod::Auto => DetMethod::Cofactor,
            m => m,
        };
        Ok(match method {
            DetMethod::Bareiss => self.det_bareiss(),
            _ => self.det_cofactor(),
        })
    }

    fn det_cofactor(&self) -> MultiPoly<F> {
        let n = self.rows;
        let one = MultiPoly::one(&self.field, &self.vars);
        if n == 0 {
            return one;
        }
        // minors[mask]: determinant of rows 0..|mask| restricted to the columns in mask.
        let mut minors: Vec<Option<MultiPoly<F>>> = vec![None; 1 << n];
        minors[0] = Some(one);
        let mut masks: Vec<usize> = (1..1usize << n).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let k = mask.count_ones() as usize;
            let row = k - 1;
            let mut acc = MultiPoly::zero(&self.field, &self.vars);
            let mut pos = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = self.get(row, j);
                let sub = minors[mask & !(1 << j)].as_ref().expect("computed");
                if !entry.is_zero() && !sub.is_zero() {
                    let t = entry.mul(sub);
                    acc = if (row + pos).is_multiple_of(2) { acc.add(&t) } else { acc.sub(&t) };
                }
                pos += 1;
            }
            minors[mask] = Some(acc);
        }
        minors[(1 << n) - 1].take().expect("full minor")
    }

    fn det_bareiss(&self) -> MultiPoly<F> {
        let n = self.rows;
        if n == 0 {
            return MultiPoly::one(&self.field, &self.vars);
        }
        let mut m: Vec<Vec<MultiPoly<F>>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = MultiPoly::one(&self.field, &self.vars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return MultiPoly::zero(&self.field, &self.vars);
                };
                m.swap(k, r);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).render()).collect()).collect()
    }
}
