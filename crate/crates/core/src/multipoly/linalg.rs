//! Exact dense linear algebra over a [`Field`]; matrices are row vectors.

use crate::scalars::Field;

pub type Dense<E> = Vec<Vec<E>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Rows beyond the rank end up zero.
pub fn rref<F: Field>(f: &F, m: &mut Dense<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = f.inv(&m[r][c]).expect("pivot is nonzero");
        if !f.is_one(&inv) {
            for x in m[r][c..].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Dense<F::Elem>) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

/// A basis of `{v : m v = 0}` where `m` has `cols` columns.
pub fn kernel<F: Field>(f: &F, m: &Dense<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut w = m.clone();
    for row in &w {
        assert_eq!(row.len(), cols, "ragged matrix");
    }
    let pivots = rref(f, &mut w);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&w[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(f: &F, a: &Dense<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Dense<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Determinant by Gaussian elimination.
pub fn det<F: Field>(f: &F, m: &Dense<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut w = m.clone();
    let mut acc = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !f.is_zero(&w[i][c])) else {
            return f.zero();
        };
        if piv != c {
            w.swap(c, piv);
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &w[c][c]);
        let inv = f.inv(&w[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if f.is_zero(&w[i][c]) {
                continue;
            }
            let factor = f.mul(&w[i][c], &inv);
            for j in c..n {
                let t = f.mul(&factor, &w[c][j]);
                w[i][j] = f.sub(&w[i][j], &t);
            }
        }
    }
    acc
}

pub fn mat_vec<F: Field>(f: &F, m: &Dense<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter().map(|row| row.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::PrimeField;

    #[test]
    fn kernel_and_solve() {
        let f = PrimeField::new(31).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(rank(&f, &m), 1);
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&f, &m, v).iter().all(|&x| x == 0));
        }
        let x = solve(&f, &m, &[1, 2]).unwrap();
        assert_eq!(mat_vec(&f, &m, &x), vec![1, 2]);
        assert!(solve(&f, &m, &[1, 3]).is_none());
    }

    #[test]
    fn determinant_small() {
        let f = PrimeField::new(31).unwrap();
        assert_eq!(det(&f, &vec![vec![0, 1], vec![1, 0]]), 30);
        assert_eq!(det(&f, &vec![vec![2, 0], vec![0, 3]]), 6);
    }
}
