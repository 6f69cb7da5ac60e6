use std::collections::BTreeMap;

use serde_json::json;

use super::{Convention, HeisenbergElement};
use crate::report::CheckRecord;
use crate::scalars::{cyclo_root_of_unity, Cyclo15, CycloNum, Field};

/// A combination over Q(ε15) of the symbols `y_i ⊗ x_j`, `i ∈ Z15`, `j ∈ Z3`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalTensor {
    terms: BTreeMap<(u32, u32), CycloNum>,
}

impl FormalTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: i64, j: i64) -> Self {
        let mut t = Self::zero();
        t.add_term(i, j, CycloNum::one());
        t
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: CycloNum) {
        let k = Cyclo15;
        let key = (i.rem_euclid(15) as u32, j.rem_euclid(3) as u32);
        let v = match self.terms.remove(&key) {
            Some(old) => k.add(&old, &c),
            None => c,
        };
        if !k.is_zero(&v) {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CycloNum)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i as i64, j as i64, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let k = Cyclo15;
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i as i64, j as i64, k.mul(v, c));
        }
        out
    }

    /// The scalar `c` with `self = c·o`, if any.
    pub fn ratio_to(&self, o: &Self) -> Option<CycloNum> {
        let k = Cyclo15;
        let (key, oc) = o.terms.iter().next()?;
        let c = k.div(self.terms.get(key)?, oc)?;
        (o.scale(&c) == *self).then_some(c)
    }

    /// Applies `gy ⊗ gx`: `gy` at level 15 on the `y` factor and `gx` at
    /// level 3 on the `x` factor (identity when `None`).
    pub fn act(&self, gy: &HeisenbergElement, gx: Option<&HeisenbergElement>) -> Self {
        assert_eq!(gy.level(), 15, "y factor needs a level-15 element");
        let k = Cyclo15;
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let (i2, ky) = gy.basis_image(i as usize);
            let (j2, e3) = match gx {
                Some(g) => {
                    assert_eq!(g.level(), 3, "x factor needs a level-3 element");
                    let (j2, kx) = g.basis_image(j as usize);
                    (j2, g.eps15_exponent(kx))
                }
                None => (j as usize, 0),
            };
            let w = CycloNum::eps15_pow(gy.eps15_exponent(ky) + e3);
            out.add_term(i2 as i64, j2 as i64, k.mul(c, &w));
        }
        out
    }

    /// `y_i ⊗ x_j ↦ y_{-i} ⊗ x_{-j}`.
    pub fn iota(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(-(i as i64), -(j as i64), c.clone());
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let k = Cyclo15;
        self.terms
            .iter()
            .map(|(&(i, j), c)| if k.is_one(c) { format!("y{i}⊗x{j}") } else { format!("({})·y{i}⊗x{j}", k.render(c)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The five sections `s_i = Σ_j y_{3i+5j} ⊗ x_j`.
pub fn sections() -> [FormalTensor; 5] {
    std::array::from_fn(|i| {
        let mut t = FormalTensor::zero();
        for j in 0..3i64 {
            t.add_term(3 * i as i64 + 5 * j, j, CycloNum::one());
        }
        t
    })
}

fn el(level: u32, conv: Convention, s: i64, t: i64) -> HeisenbergElement {
    HeisenbergElement::new(level, conv, s, t).expect("valid element")
}

/// Diagonal generators `(σ15^5 ⊗ σ3, τ15^5 ⊗ τ3)`.
pub fn delta_generators() -> [(HeisenbergElement, HeisenbergElement); 2] {
    [
        (el(15, Convention::Level15, 5, 0), el(3, Convention::Coordinates, 1, 0)),
        (el(15, Convention::Level15, 0, 5), el(3, Convention::Coordinates, 0, 1)),
    ]
}

/// Invariance of the sections under the diagonal group, the level-5 action
/// through `σ5 = σ15^3`, `τ5 = τ15^-3`, and the involution.
pub fn verify_section_symmetries() -> Vec<CheckRecord> {
    let s = sections();
    let mut out = Vec::new();
    let [(dsy, dsx), (dty, dtx)] = delta_generators();
    let delta_ok: Vec<bool> =
        s.iter().map(|si| si.act(&dsy, Some(&dsx)) == *si && si.act(&dty, Some(&dtx)) == *si).collect();
    out.push(CheckRecord::new(
        "sections.diagonal-invariance",
        "each s_i is fixed by the diagonal σ3 (y_i⊗x_j ↦ y_{i-5}⊗x_{j-1}) and τ3 (scalar ε3^{-i-j})",
        delta_ok.iter().all(|&b| b),
        json!({ "sections": s.iter().map(FormalTensor::render).collect::<Vec<_>>(), "per_section": delta_ok }),
    ));

    let sigma5 = el(15, Convention::Level15, 3, 0);
    let shift_ok: Vec<bool> = (0..5).map(|i| s[i].act(&sigma5, None) == s[(i + 4) % 5]).collect();
    out.push(CheckRecord::new(
        "sections.level5-shift",
        "σ5(s_i) = s_{i-1} with σ5 = σ15^3 on the y factor",
        shift_ok.iter().all(|&b| b),
        json!({ "per_section": shift_ok }),
    ));

    let tau5 = el(15, Convention::Level15, 0, -3);
    let tau_lit = el(15, Convention::Level15, 0, 3);
    let mut diag_ok = true;
    let mut eig = Vec::new();
    let mut eig_lit = Vec::new();
    for (i, si) in s.iter().enumerate() {
        let expected = cyclo_root_of_unity(5, -2 * i as i64).expect("order 5");
        let c = si.act(&tau5, None).ratio_to(si);
        diag_ok &= c.as_ref() == Some(&expected);
        eig.push(c.map(|c| Cyclo15.render(&c)));
        eig_lit.push(si.act(&tau_lit, None).ratio_to(si).map(|c| Cyclo15.render(&c)));
    }
    out.push(
        CheckRecord::new(
            "sections.level5-diagonal",
            "τ5(s_i) = ε5^{-2i} s_i with τ5 = τ15^-3 on the y factor",
            diag_ok,
            json!({ "eigenvalues": eig, "eigenvalues_tau15_cubed": eig_lit }),
        )
        .with_note("with τ15^3 itself the eigenvalues are ε5^{2i}"),
    );

    let iota_ok: Vec<bool> = (0..5).map(|i| s[i].iota() == s[(5 - i) % 5]).collect();
    out.push(CheckRecord::new(
        "sections.involution",
        "ι(y_i⊗x_j) = y_{-i}⊗x_{-j} induces ι(s_i) = s_{-i}",
        iota_ok.iter().all(|&b| b),
        json!({ "per_section": iota_ok }),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The diagonal action written out directly on symbols.
    fn delta_sigma_direct(t: &FormalTensor) -> FormalTensor {
        let mut out = FormalTensor::zero();
        for (&(i, j), c) in t.terms() {
            out.add_term(i as i64 - 5, j as i64 - 1, c.clone());
        }
        out
    }

    fn delta_tau_direct(t: &FormalTensor) -> FormalTensor {
        let k = Cyclo15;
        let mut out = FormalTensor::zero();
        for (&(i, j), c) in t.terms() {
            let w = cyclo_root_of_unity(3, -(i as i64) - j as i64).unwrap();
            out.add_term(i as i64, j as i64, k.mul(c, &w));
        }
        out
    }

    #[test]
    fn composed_action_matches_direct_formula() {
        let [(sy, sx), (ty, tx)] = delta_generators();
        for i in 0..15 {
            for j in 0..3 {
                let b = FormalTensor::basis(i, j);
                assert_eq!(b.act(&sy, Some(&sx)), delta_sigma_direct(&b));
                assert_eq!(b.act(&ty, Some(&tx)), delta_tau_direct(&b));
            }
        }
    }

    #[test]
    fn section_claims_hold() {
        for r in verify_section_symmetries() {
            assert!(r.passed(), "{} {}", r.id, r.witness);
        }
    }

    #[test]
    fn spot_values() {
        let s = sections();
        let [(sy, sx), _] = delta_generators();
        assert_eq!(s[0].act(&sy, Some(&sx)), s[0]);
        assert_eq!(s[1].act(&el(15, Convention::Level15, 3, 0), None), s[0]);
        assert_eq!(s[2].iota(), s[3]);
    }
}
