//! Heisenberg groups of level 3, 5 and 15 in Schrödinger form, acting on
//! coordinate polynomials by linear substitution and on formal tensors.
//!
//! An element is stored as `ε^k σ^s τ^t` with `σ(x_i) = x_{i-1}` and
//! `τ(x_i) = ε^{c·i} x_i`, where `c = -e` for the coordinate conventions and
//! `c = +e` for the dual one (`e` is the twist). Elements act on polynomials
//! as algebra automorphisms and `act(g·h, f) = act(g, act(h, f))`.

mod characters;
mod fixed;
mod tensor;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::multipoly::{MultiPoly, PolyError};
use crate::report::CheckRecord;
use crate::scalars::{cyclo_root_of_unity, Cyclo15, CycloField, CycloNum};

pub use characters::{
    character_decomposition, character_of, compare_character_table, tabulated_character_cubics, CharacterLabel,
    TableRow,
};
pub use fixed::{cross, fixed_points_of_subgroup, projectively_equal, triangle_lines, triangle_vertices, ProjPoint3};
pub use tensor::{sections, verify_section_symmetries, FormalTensor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisenbergError {
    #[error("unsupported level {0}; expected 3, 5 or 15")]
    InvalidLevel(u32),
    #[error("the level-15 convention requires level 15, got {0}")]
    ConventionLevel(u32),
    #[error("twist {twist} is not coprime to level {level}")]
    BadTwist { twist: u32, level: u32 },
    #[error("elements from different groups cannot be composed")]
    GroupMismatch,
    #[error("polynomial has {got} variables but the level-{level} action needs {level}")]
    VariableCount { level: u32, got: usize },
    #[error("σ and τ do not commute on degree {degree} at level {level}")]
    NonCommuting { degree: u32, level: u32 },
    #[error("(0,0) generates the trivial subgroup")]
    TrivialSubgroup,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which Schrödinger-type action is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `τ(x_i) = ε^{-i} x_i` on plane coordinates.
    Coordinates,
    /// `τ(ξ_i) = ε^{i} ξ_i` on the dual basis.
    Dual,
    /// `τ(y_i) = ε_15^{-i} y_i` on the 15 sections of degree 15.
    Level15,
}

impl Convention {
    fn sign(self) -> i64 {
        match self {
            Convention::Dual => 1,
            Convention::Coordinates | Convention::Level15 => -1,
        }
    }
}

/// `ε_n^k σ^s τ^t` at level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    level: u32,
    sigma: u32,
    tau: u32,
    central: u32,
    twist: u32,
    convention: Convention,
}

fn modn(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

impl HeisenbergElement {
    pub fn identity(level: u32, convention: Convention) -> Result<Self, HeisenbergError> {
        if ![3, 5, 15].contains(&level) {
            return Err(HeisenbergError::InvalidLevel(level));
        }
        if convention == Convention::Level15 && level != 15 {
            return Err(HeisenbergError::ConventionLevel(level));
        }
        Ok(HeisenbergElement { level, sigma: 0, tau: 0, central: 0, twist: 1, convention })
    }

    pub fn new(level: u32, convention: Convention, sigma: i64, tau: i64) -> Result<Self, HeisenbergError> {
        let mut g = Self::identity(level, convention)?;
        g.sigma = modn(sigma, level);
        g.tau = modn(tau, level);
        Ok(g)
    }

    pub fn sigma(level: u32, convention: Convention) -> Result<Self, HeisenbergError> {
        Self::new(level, convention, 1, 0)
    }

    pub fn tau(level: u32, convention: Convention) -> Result<Self, HeisenbergError> {
        Self::new(level, convention, 0, 1)
    }

    /// Replaces ε by ε^e in the action of τ.
    pub fn with_twist(mut self, twist: u32) -> Result<Self, HeisenbergError> {
        if num_integer::gcd(twist, self.level) != 1 {
            return Err(HeisenbergError::BadTwist { twist, level: self.level });
        }
        self.twist = twist % self.level;
        Ok(self)
    }

    pub fn with_central(mut self, k: i64) -> Self {
        self.central = modn(k, self.level);
        self
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn sigma_power(&self) -> u32 {
        self.sigma
    }

    pub fn tau_power(&self) -> u32 {
        self.tau
    }

    pub fn central_power(&self) -> u32 {
        self.central
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    /// The central factor as an element of Q(ε15).
    pub fn central(&self) -> CycloNum {
        cyclo_root_of_unity(self.level, self.central as i64).expect("level divides 15")
    }

    pub fn is_central(&self) -> bool {
        self.sigma == 0 && self.tau == 0
    }

    fn c(&self) -> i64 {
        self.convention.sign() * self.twist as i64
    }

    fn compatible(&self, o: &Self) -> Result<(), HeisenbergError> {
        if (self.level, self.twist, self.convention) != (o.level, o.twist, o.convention) {
            return Err(HeisenbergError::GroupMismatch);
        }
        Ok(())
    }

    /// The composite acting as `self ∘ o`.
    pub fn mul(&self, o: &Self) -> Result<Self, HeisenbergError> {
        self.compatible(o)?;
        let n = self.level;
        let k = self.central as i64 + o.central as i64 - self.c() * self.tau as i64 * o.sigma as i64;
        Ok(HeisenbergElement {
            sigma: (self.sigma + o.sigma) % n,
            tau: (self.tau + o.tau) % n,
            central: modn(k, n),
            ..*self
        })
    }

    pub fn inverse(&self) -> Self {
        let n = self.level;
        let k = -(self.central as i64) - self.c() * self.tau as i64 * self.sigma as i64;
        HeisenbergElement { sigma: (n - self.sigma) % n, tau: (n - self.tau) % n, central: modn(k, n), ..*self }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut acc = HeisenbergElement { sigma: 0, tau: 0, central: 0, ..*self };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base).expect("same group");
        }
        acc
    }

    /// `g h g⁻¹ h⁻¹` computed with the group law.
    pub fn commutator(g: &Self, h: &Self) -> Result<Self, HeisenbergError> {
        g.mul(h)?.mul(&g.inverse())?.mul(&h.inverse())
    }

    /// Image of the i-th basis vector as `(index, exponent of ε_n)`.
    pub fn basis_image(&self, i: usize) -> (usize, u32) {
        let n = self.level as i64;
        let i = i as i64;
        let exp = self.central as i64 + self.c() * self.tau as i64 * i;
        ((i - self.sigma as i64).rem_euclid(n) as usize, exp.rem_euclid(n) as u32)
    }

    /// Exponent of ε15 equal to `ε_n^k`.
    pub fn eps15_exponent(&self, k: u32) -> i64 {
        (15 / self.level) as i64 * k as i64
    }

    /// The substitution automorphism applied to `f`.
    pub fn act_on_polynomial<F: CycloField>(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>, HeisenbergError> {
        let n = self.level as usize;
        if f.nvars() != n {
            return Err(HeisenbergError::VariableCount { level: self.level, got: f.nvars() });
        }
        let field = f.field();
        let images: Vec<MultiPoly<F>> = (0..n)
            .map(|i| {
                let (j, k) = self.basis_image(i);
                let scalar = field.from_cyclo(&CycloNum::eps15_pow(self.eps15_exponent(k)));
                MultiPoly::var(field, f.vars(), j).scale(&scalar)
            })
            .collect();
        Ok(f.substitute(&images)?)
    }

    /// Matrix `G` of the induced map on points: `q_r = (g·x_r)(p) = Σ_c G[r][c] p_c`.
    pub fn point_matrix(&self) -> Vec<Vec<CycloNum>> {
        let n = self.level as usize;
        let mut g = vec![vec![CycloNum::zero(); n]; n];
        for (r, row) in g.iter_mut().enumerate() {
            let (c, k) = self.basis_image(r);
            row[c] = CycloNum::eps15_pow(self.eps15_exponent(k));
        }
        g
    }
}

/// The scalar by which `g h g⁻¹ h⁻¹` acts, read off from the action on every
/// coordinate. `None` if the commutator is not a scalar.
pub fn commutator_scalar_of(g: &HeisenbergElement, h: &HeisenbergElement) -> Result<Option<CycloNum>, HeisenbergError> {
    let k = Cyclo15;
    let n = g.level() as usize;
    let vars = crate::multipoly::var_names("x", n);
    let ops = [h.inverse(), g.inverse(), *h, *g];
    let mut scalar: Option<CycloNum> = None;
    for i in 0..n {
        let mut p = MultiPoly::var(&k, &vars, i);
        for op in &ops {
            p = op.act_on_polynomial(&p)?;
        }
        let xi = MultiPoly::var(&k, &vars, i);
        let Some(c) = p.ratio_to(&xi) else {
            return Ok(None);
        };
        match &scalar {
            None => scalar = Some(c),
            Some(s) if *s != c => return Ok(None),
            _ => {}
        }
    }
    Ok(scalar)
}

/// `[σ, τ]` at the given level, computed from the action.
pub fn commutator_scalar(level: u32, convention: Convention) -> Result<CycloNum, HeisenbergError> {
    let s = HeisenbergElement::sigma(level, convention)?;
    let t = HeisenbergElement::tau(level, convention)?;
    Ok(commutator_scalar_of(&s, &t)?.expect("σ and τ commute up to a scalar"))
}

/// The involution `x_i ↦ x_{-i}` on polynomials in `n` variables.
pub fn iota_on_polynomial<F: crate::scalars::Field>(f: &MultiPoly<F>) -> MultiPoly<F> {
    let n = f.nvars();
    let images: Vec<MultiPoly<F>> = (0..n).map(|i| MultiPoly::var(f.field(), f.vars(), (n - i) % n)).collect();
    f.substitute(&images).expect("same ring")
}

fn render_root(c: &CycloNum) -> String {
    crate::scalars::Field::render(&Cyclo15, c)
}

/// Checks the three commutator identities and the level-5 subgroup scalars.
pub fn verify_commutators() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let eps3 = |k: i64| cyclo_root_of_unity(3, k).expect("order 3");
    let cases = [
        (
            "commutator.plane",
            "[σ3, τ3] = ε3^-1 for τ3(x_i) = ε3^-i x_i",
            HeisenbergElement::sigma(3, Convention::Coordinates),
            HeisenbergElement::tau(3, Convention::Coordinates),
            eps3(-1),
        ),
        (
            "commutator.dual",
            "[σ3, τ3] = ε3 for τ3(ξ_i) = ε3^i ξ_i",
            HeisenbergElement::sigma(3, Convention::Dual),
            HeisenbergElement::tau(3, Convention::Dual),
            eps3(1),
        ),
        (
            "commutator.level15",
            "[σ15^5, τ15^5] = ε15^-10 = ε3",
            HeisenbergElement::new(15, Convention::Level15, 5, 0),
            HeisenbergElement::new(15, Convention::Level15, 0, 5),
            eps3(1),
        ),
    ];
    for (id, statement, g, h, expected) in cases {
        let (g, h) = (g.expect("valid"), h.expect("valid"));
        let from_action = commutator_scalar_of(&g, &h).expect("same ring");
        let from_law = HeisenbergElement::commutator(&g, &h).expect("same group");
        let ok = from_action.as_ref() == Some(&expected) && from_law.is_central() && from_law.central() == expected;
        out.push(CheckRecord::new(
            id,
            statement,
            ok,
            json!({
                "from_action": from_action.as_ref().map(render_root),
                "from_group_law": render_root(&from_law.central()),
                "expected": render_root(&expected),
            }),
        ));
    }
    // The level-5 subgroup generated by σ15^3 and τ15^{±3}.
    let s3 = HeisenbergElement::new(15, Convention::Level15, 3, 0).expect("valid");
    let t3 = HeisenbergElement::new(15, Convention::Level15, 0, 3).expect("valid");
    let t3inv = t3.inverse();
    let lit = commutator_scalar_of(&s3, &t3).expect("ring").expect("scalar");
    let contra = commutator_scalar_of(&s3, &t3inv).expect("ring").expect("scalar");
    let eps5 = |k: i64| cyclo_root_of_unity(5, k).expect("order 5");
    let ok = lit == eps5(2) && contra == eps5(-2);
    out.push(
        CheckRecord::new(
            "commutator.level5-subgroup",
            "[σ15^3, τ15^-3] = ε5^-2, while [σ15^3, τ15^3] = ε15^-9 = ε5^2",
            ok,
            json!({
                "sigma3_tau3": render_root(&lit),
                "sigma3_tau3_inverse": render_root(&contra),
            }),
        )
        .with_note("τ5 is identified with τ15^-3; with τ15^3 the scalar is ε5^2"),
    );
    out
}

/// Dimensions of the character eigenspaces on cubics, and the tabulated
/// representatives compared against the computed characters.
pub fn verify_character_table() -> Vec<CheckRecord> {
    let decomposition = match character_decomposition(3, 3, Convention::Coordinates) {
        Ok(d) => d,
        Err(e) => {
            return vec![CheckRecord::new(
                "characters.decomposition",
                "character decomposition of cubics",
                false,
                json!({ "error": e.to_string() }),
            )]
        }
    };
    let dims: std::collections::BTreeMap<String, usize> =
        decomposition.iter().map(|(l, b)| (l.to_string(), b.len())).collect();
    let total: usize = dims.values().sum();
    let dims_ok = decomposition.len() == 9
        && total == 10
        && decomposition.iter().all(|(l, b)| b.len() == if (l.a, l.b) == (0, 0) { 2 } else { 1 });
    let mut out = vec![CheckRecord::new(
        "characters.decomposition",
        "cubics split as 2 invariants plus one cubic for each of the 8 nontrivial characters",
        dims_ok,
        json!({ "dimensions": dims, "total": total }),
    )];
    let rows = compare_character_table(&tabulated_character_cubics(), &decomposition, 3, Convention::Coordinates);
    match rows {
        Ok(rows) => {
            let mismatched: Vec<&TableRow> = rows.iter().filter(|r| !r.matches).collect();
            let only_known_typo = mismatched.len() == 1
                && mismatched[0].listed_label == CharacterLabel::new(2, 2, 3)
                && mismatched[0].computed_label == Some(CharacterLabel::new(2, 1, 3));
            let f22 = decomposition
                .get(&CharacterLabel::new(2, 2, 3))
                .map(|b| b.iter().map(MultiPoly::render).collect::<Vec<_>>());
            out.push(
                CheckRecord::new(
                    "characters.table",
                    "every tabulated representative carries its listed character, except the duplicated F(2,2) row",
                    only_known_typo,
                    json!({ "rows": rows, "computed_F22": f22 }),
                )
                .with_note("the listed F(2,2) repeats F(2,1); the computed (2,2) eigenvector is reported"),
            );
        }
        Err(e) => out.push(CheckRecord::new(
            "characters.table",
            "tabulated character representatives",
            false,
            json!({ "error": e.to_string() }),
        )),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{var_names, Monomial};
    use crate::scalars::{Field, PrimeField};
    use proptest::prelude::*;

    fn x3() -> (Cyclo15, std::sync::Arc<[String]>) {
        (Cyclo15, var_names("x", 3))
    }

    #[test]
    fn character_table_records_pass() {
        let recs = verify_character_table();
        assert_eq!(recs.len(), 2);
        for r in &recs {
            assert!(r.passed(), "{} {}", r.id, r.witness);
        }
    }

    #[test]
    fn sigma_shifts_indices_down() {
        let (k, v) = x3();
        let s = HeisenbergElement::sigma(3, Convention::Coordinates).unwrap();
        let x0 = MultiPoly::var(&k, &v, 0);
        assert_eq!(s.act_on_polynomial(&x0).unwrap(), MultiPoly::var(&k, &v, 2));
    }

    #[test]
    fn tau_fixes_the_product_of_coordinates() {
        let (k, v) = x3();
        let t = HeisenbergElement::tau(3, Convention::Coordinates).unwrap();
        let x = MultiPoly::vars_of(&k, &v);
        let p = x[0].mul(&x[1]).mul(&x[2]);
        assert_eq!(t.act_on_polynomial(&p).unwrap(), p);
        let x1 = t.act_on_polynomial(&x[1]).unwrap();
        assert_eq!(x1.ratio_to(&x[1]), Some(cyclo_root_of_unity(3, -1).unwrap()));
    }

    #[test]
    fn identity_acts_trivially() {
        let (k, v) = x3();
        let e = HeisenbergElement::identity(3, Convention::Coordinates).unwrap();
        let x = MultiPoly::vars_of(&k, &v);
        let p = x[0].pow(2).add(&x[1].mul(&x[2]));
        assert_eq!(e.act_on_polynomial(&p).unwrap(), p);
    }

    #[test]
    fn commutators_match_expected_values() {
        for r in verify_commutators() {
            assert!(r.passed(), "{}: {}", r.id, r.witness);
        }
        assert_eq!(commutator_scalar(3, Convention::Coordinates).unwrap(), cyclo_root_of_unity(3, -1).unwrap());
        assert_eq!(commutator_scalar(3, Convention::Dual).unwrap(), cyclo_root_of_unity(3, 1).unwrap());
    }

    #[test]
    fn generators_have_order_n_projectively() {
        for (n, conv) in [(3, Convention::Coordinates), (5, Convention::Coordinates), (15, Convention::Level15)] {
            for g in [HeisenbergElement::sigma(n, conv).unwrap(), HeisenbergElement::tau(n, conv).unwrap()] {
                assert!(g.pow(n as i64).is_central());
                assert_eq!(g.pow(n as i64).central(), CycloNum::one());
            }
        }
    }

    #[test]
    fn errors_are_reported() {
        assert!(HeisenbergElement::identity(4, Convention::Coordinates).is_err());
        assert!(HeisenbergElement::identity(3, Convention::Level15).is_err());
        let s = HeisenbergElement::sigma(5, Convention::Coordinates).unwrap();
        assert!(s.with_twist(5).is_err());
        let (k, v) = x3();
        assert!(matches!(s.act_on_polynomial(&MultiPoly::var(&k, &v, 0)), Err(HeisenbergError::VariableCount { .. })));
    }

    #[test]
    fn action_transfers_to_prime_field() {
        let f = PrimeField::new(31).unwrap();
        let v = var_names("x", 3);
        let t = HeisenbergElement::tau(3, Convention::Coordinates).unwrap();
        let x1 = MultiPoly::var(&f, &v, 1);
        let img = t.act_on_polynomial(&x1).unwrap();
        let c = img.ratio_to(&x1).unwrap();
        assert_eq!(f.pow(&c, 3), 1);
        assert_ne!(c, 1);
    }

    fn arb_element(n: u32, conv: Convention) -> impl Strategy<Value = HeisenbergElement> {
        (0..n as i64, 0..n as i64, 0..n as i64)
            .prop_map(move |(s, t, k)| HeisenbergElement::new(n, conv, s, t).unwrap().with_central(k))
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = MultiPoly<Cyclo15>> {
        proptest::collection::vec((-3i64..=3, proptest::collection::vec(0u32..3, n), 0i64..15), 1..5).prop_map(
            move |terms| {
                let k = Cyclo15;
                let v = var_names(if n == 15 { "y" } else { "x" }, n);
                MultiPoly::from_terms(
                    &k,
                    &v,
                    terms.into_iter().map(|(c, e, r)| {
                        (Monomial::from_exponents(&e), k.mul(&k.from_i64(c), &CycloNum::eps15_pow(r)))
                    }),
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn action_is_homomorphism_level3(
            g in arb_element(3, Convention::Coordinates),
            h in arb_element(3, Convention::Coordinates),
            f in arb_poly(3),
        ) {
            let lhs = g.mul(&h).unwrap().act_on_polynomial(&f).unwrap();
            let rhs = g.act_on_polynomial(&h.act_on_polynomial(&f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn action_is_homomorphism_level5_twisted(
            g in arb_element(5, Convention::Coordinates),
            h in arb_element(5, Convention::Coordinates),
            f in arb_poly(5),
        ) {
            let (g, h) = (g.with_twist(2).unwrap(), h.with_twist(2).unwrap());
            let lhs = g.mul(&h).unwrap().act_on_polynomial(&f).unwrap();
            let rhs = g.act_on_polynomial(&h.act_on_polynomial(&f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn action_is_homomorphism_level15(
            g in arb_element(15, Convention::Level15),
            h in arb_element(15, Convention::Level15),
            f in arb_poly(15),
        ) {
            let lhs = g.mul(&h).unwrap().act_on_polynomial(&f).unwrap();
            let rhs = g.act_on_polynomial(&h.act_on_polynomial(&f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
