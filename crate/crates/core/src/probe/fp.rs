//! Fixed-size linear algebra over `F_p` for the hot loops.

use crate::multipoly::{Monomial, PolyMatrix};
use crate::scalars::PrimeField;

pub type Mat5 = [[u64; 5]; 5];
pub type Vec5 = [u64; 5];

/// A 5×5 matrix of linear forms in 5 variables, stored by coefficient.
#[derive(Debug, Clone)]
pub struct LinearMatrix {
    field: PrimeField,
    coeffs: [[[u64; 5]; 5]; 5],
}

impl LinearMatrix {
    /// `None` if some entry is not a linear form.
    pub fn from_poly_matrix(m: &PolyMatrix<PrimeField>) -> Option<Self> {
        if m.rows() != 5 || m.cols() != 5 || m.vars().len() != 5 {
            return None;
        }
        let mut coeffs = [[[0u64; 5]; 5]; 5];
        for (i, row) in coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                for (mono, v) in m.get(i, j).terms() {
                    let k = (0..5).find(|&k| *mono == Monomial::var(k))?;
                    c[k] = *v;
                }
            }
        }
        Some(LinearMatrix { field: *m.field(), coeffs })
    }

    pub fn eval(&self, x: &Vec5) -> Mat5 {
        let f = &self.field;
        let mut out = [[0u64; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                let c = &self.coeffs[i][j];
                out[i][j] = (0..5).fold(0, |s, k| f.add_mod(s, f.mul_mod(c[k], x[k])));
            }
        }
        out
    }
}

/// Row reduction in place; returns the rank and the determinant.
fn eliminate(f: &PrimeField, m: &mut Mat5) -> (usize, u64) {
    let mut det = 1u64;
    let mut rank = 0;
    for col in 0..5 {
        let Some(piv) = (rank..5).find(|&r| m[r][col] != 0) else {
            det = 0;
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            det = f.sub_mod(0, det);
        }
        let pv = m[rank][col];
        det = f.mul_mod(det, pv);
        let inv = f.inv_mod(pv).expect("nonzero pivot");
        for r in rank + 1..5 {
            if m[r][col] == 0 {
                continue;
            }
            let factor = f.mul_mod(m[r][col], inv);
            for c in col..5 {
                let t = f.mul_mod(factor, m[rank][c]);
                m[r][c] = f.sub_mod(m[r][c], t);
            }
        }
        rank += 1;
    }
    (rank, if rank == 5 { det } else { 0 })
}

pub fn det5(f: &PrimeField, m: &Mat5) -> u64 {
    eliminate(f, &mut m.clone()).1
}

pub fn rank5(f: &PrimeField, m: &Mat5) -> usize {
    eliminate(f, &mut m.clone()).0
}

pub fn mat_vec5(f: &PrimeField, m: &Mat5, v: &Vec5) -> Vec5 {
    std::array::from_fn(|i| (0..5).fold(0, |s, k| f.add_mod(s, f.mul_mod(m[i][k], v[k]))))
}

/// Scales so the first nonzero coordinate is 1.
pub fn normalize5(f: &PrimeField, v: &Vec5) -> Option<Vec5> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    let inv = f.inv_mod(lead)?;
    Some(v.map(|c| f.mul_mod(c, inv)))
}

pub fn combine5(f: &PrimeField, s: u64, p: &Vec5, t: u64, q: &Vec5) -> Vec5 {
    std::array::from_fn(|i| f.add_mod(f.mul_mod(s, p[i]), f.mul_mod(t, q[i])))
}

/// Kernel basis of a 5×5 matrix.
pub fn kernel5(f: &PrimeField, m: &Mat5) -> Vec<Vec5> {
    let dense: Vec<Vec<u64>> = m.iter().map(|r| r.to_vec()).collect();
    crate::multipoly::linalg::kernel(f, &dense, 5).into_iter().map(|v| std::array::from_fn(|i| v[i])).collect()
}
