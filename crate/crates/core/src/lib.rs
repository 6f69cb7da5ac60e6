//! Exact algebra for elliptic normal quintics, their Heisenberg symmetry and
//! the determinantal quintics built from the Moore matrix.

#![allow(clippy::needless_range_loop)]

pub mod heisenberg;
pub mod hessepencil;
pub mod moore;
pub mod multipoly;
pub mod nslattice;
pub mod probe;
pub mod report;
pub mod scalars;
