//! Intersection numbers on Néron–Severi lattices, entered from plain text
//! tables, and the numeric ledgers built on them.

mod checks;
mod form;

pub use checks::{lattice_suite, verify_alpha_vanishes, verify_degree15_surfaces, verify_double_point_formula};
pub use form::{DivisorClass, LatticeError, SurfaceForm, TripleForm};

/// Triple products in the basis `H, C, F`.
pub const BLOWUP_H1_TABLE: &str = include_str!("../../data/blowup_h1.form");
/// Triple products in the basis `H2, X, S`.
pub const BLOWUP_H2_TABLE: &str = include_str!("../../data/blowup_h2.form");
/// The pairing on the symmetric square in the basis `C0, F`.
pub const SYMMETRIC_SQUARE_TABLE: &str = include_str!("../../data/symmetric_square.form");

pub fn blowup_h1() -> TripleForm {
    TripleForm::parse(BLOWUP_H1_TABLE).expect("bundled table")
}

pub fn blowup_h2() -> TripleForm {
    TripleForm::parse(BLOWUP_H2_TABLE).expect("bundled table")
}

pub fn symmetric_square() -> SurfaceForm {
    SurfaceForm::parse(SYMMETRIC_SQUARE_TABLE).expect("bundled table")
}
