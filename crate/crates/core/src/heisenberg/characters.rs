use std::collections::BTreeMap;

use serde::Serialize;

use super::{Convention, HeisenbergElement, HeisenbergError};
use crate::multipoly::{linalg, monomials_of_degree, var_names, MultiPoly};
use crate::scalars::{cyclo_root_of_unity, Cyclo15, CycloNum, Field};

/// A character of Z_n × Z_n: σ acts by ε^a and τ by ε^b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharacterLabel {
    pub a: u32,
    pub b: u32,
}

impl CharacterLabel {
    pub fn new(a: i64, b: i64, n: u32) -> Self {
        CharacterLabel { a: a.rem_euclid(n as i64) as u32, b: b.rem_euclid(n as i64) as u32 }
    }

    pub fn negate(&self, n: u32) -> Self {
        Self::new(-(self.a as i64), -(self.b as i64), n)
    }
}

impl std::fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Splits the degree-`degree` polynomials in `level` variables into joint
/// eigenspaces of σ and τ. Each basis is in reduced echelon form over the
/// monomials in descending order.
pub fn character_decomposition(
    degree: u32,
    level: u32,
    convention: Convention,
) -> Result<BTreeMap<CharacterLabel, Vec<MultiPoly<Cyclo15>>>, HeisenbergError> {
    let sigma = HeisenbergElement::sigma(level, convention)?;
    let tau = HeisenbergElement::tau(level, convention)?;
    let comm = HeisenbergElement::commutator(&sigma, &tau)?;
    // The commutator acts on degree-d forms by its scalar to the d-th power.
    if !(comm.central_power() as u64 * degree as u64).is_multiple_of(level as u64) {
        return Err(HeisenbergError::NonCommuting { degree, level });
    }
    let k = Cyclo15;
    let n = level as usize;
    let vars = var_names("x", n);
    let monos = monomials_of_degree(n, degree);
    let elems: Vec<(u32, u32, HeisenbergElement)> = (0..level)
        .flat_map(|s| (0..level).map(move |t| (s, t)))
        .map(|(s, t)| {
            let g = sigma.pow(s as i64).mul(&tau.pow(t as i64)).expect("same group");
            (s, t, g)
        })
        .collect();
    // Images of every monomial under every group element.
    let images: Vec<Vec<MultiPoly<Cyclo15>>> = monos
        .iter()
        .map(|m| {
            let p = MultiPoly::term(&k, &vars, k.one(), *m);
            elems.iter().map(|(_, _, g)| g.act_on_polynomial(&p)).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut out = BTreeMap::new();
    for a in 0..level {
        for b in 0..level {
            let mut rows: Vec<Vec<CycloNum>> = Vec::new();
            for imgs in &images {
                let mut proj = MultiPoly::zero(&k, &vars);
                for ((s, t, _), img) in elems.iter().zip(imgs) {
                    let w = cyclo_root_of_unity(level, -((a * s + b * t) as i64)).expect("level divides 15");
                    proj = proj.add(&img.scale(&w));
                }
                if !proj.is_zero() {
                    rows.push(monos.iter().map(|m| proj.coefficient(m)).collect());
                }
            }
            let mut basis = Vec::new();
            if !rows.is_empty() {
                let pivots = linalg::rref(&k, &mut rows);
                for row in rows.into_iter().take(pivots.len()) {
                    basis.push(MultiPoly::from_terms(&k, &vars, monos.iter().copied().zip(row)));
                }
            }
            if !basis.is_empty() {
                out.insert(CharacterLabel { a, b }, basis);
            }
        }
    }
    Ok(out)
}

/// The character of a joint eigenvector, or `None` if `f` is not one.
pub fn character_of(
    f: &MultiPoly<Cyclo15>,
    level: u32,
    convention: Convention,
) -> Result<Option<CharacterLabel>, HeisenbergError> {
    if f.is_zero() {
        return Ok(None);
    }
    let sigma = HeisenbergElement::sigma(level, convention)?;
    let tau = HeisenbergElement::tau(level, convention)?;
    let eigen = |g: &HeisenbergElement| -> Result<Option<u32>, HeisenbergError> {
        let img = g.act_on_polynomial(f)?;
        Ok(img.ratio_to(f).and_then(|c| {
            let k = c.as_root_of_unity()?;
            // ε15^k = ε_level^(k / (15/level))
            let step = 15 / level;
            (k % step == 0).then_some(k / step)
        }))
    };
    match (eigen(&sigma)?, eigen(&tau)?) {
        (Some(a), Some(b)) => Ok(Some(CharacterLabel { a, b })),
        _ => Ok(None),
    }
}

/// Representatives of the eight nontrivial characters of the level-3 group on
/// ternary cubics, entered verbatim from the customary table. The (2,2) row
/// repeats the (2,1) polynomial; [`compare_character_table`] exposes this.
pub fn tabulated_character_cubics() -> Vec<(CharacterLabel, MultiPoly<Cyclo15>)> {
    let k = Cyclo15;
    let vars = var_names("x", 3);
    let x = MultiPoly::vars_of(&k, &vars);
    let e = |p: i64| cyclo_root_of_unity(3, p).expect("order 3");
    let cube = |i: usize| x[i].pow(3);
    let m = |i: usize, j: usize, l: usize| x[i].mul(&x[j]).mul(&x[l]);
    let sum3 = |terms: [(MultiPoly<Cyclo15>, i64); 3]| {
        terms.into_iter().fold(MultiPoly::zero(&k, &vars), |acc, (p, c)| acc.add(&p.scale(&e(c))))
    };
    let lab = |a, b| CharacterLabel { a, b };
    vec![
        (lab(1, 0), sum3([(cube(0), 0), (cube(1), 1), (cube(2), 2)])),
        (lab(2, 0), sum3([(cube(0), 0), (cube(1), 2), (cube(2), 1)])),
        (lab(0, 1), sum3([(m(0, 1, 1), 0), (m(1, 2, 2), 0), (m(2, 0, 0), 0)])),
        (lab(1, 1), sum3([(m(0, 1, 1), 0), (m(1, 2, 2), 1), (m(2, 0, 0), 2)])),
        (lab(2, 1), sum3([(m(0, 1, 1), 0), (m(1, 2, 2), 2), (m(2, 0, 0), 1)])),
        (lab(0, 2), sum3([(m(0, 0, 1), 0), (m(1, 1, 2), 0), (m(2, 2, 0), 0)])),
        (lab(1, 2), sum3([(m(0, 0, 1), 0), (m(1, 1, 2), 1), (m(2, 2, 0), 2)])),
        (lab(2, 2), sum3([(m(0, 1, 1), 0), (m(1, 2, 2), 2), (m(2, 0, 0), 1)])),
    ]
}

/// One row of the tabulated-versus-computed comparison.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub listed_label: CharacterLabel,
    pub listed: String,
    /// Character actually carried by the listed polynomial.
    pub computed_label: Option<CharacterLabel>,
    pub matches: bool,
    /// Basis of the computed eigenspace for the listed label.
    pub computed_representative: Vec<String>,
}

/// Compares a list of labelled polynomials against a computed decomposition.
pub fn compare_character_table(
    table: &[(CharacterLabel, MultiPoly<Cyclo15>)],
    decomposition: &BTreeMap<CharacterLabel, Vec<MultiPoly<Cyclo15>>>,
    level: u32,
    convention: Convention,
) -> Result<Vec<TableRow>, HeisenbergError> {
    table
        .iter()
        .map(|(label, poly)| {
            let computed = character_of(poly, level, convention)?;
            Ok(TableRow {
                listed_label: *label,
                listed: poly.render(),
                computed_label: computed,
                matches: computed == Some(*label),
                computed_representative: decomposition
                    .get(label)
                    .map(|b| b.iter().map(MultiPoly::render).collect())
                    .unwrap_or_default(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_decomposition_dimensions() {
        let d = character_decomposition(3, 3, Convention::Coordinates).unwrap();
        assert_eq!(d.len(), 9);
        let trivial = &d[&CharacterLabel { a: 0, b: 0 }];
        assert_eq!(trivial.len(), 2);
        for (l, b) in &d {
            if (l.a, l.b) != (0, 0) {
                assert_eq!(b.len(), 1, "{l}");
            }
        }
        assert_eq!(d.values().map(Vec::len).sum::<usize>(), 10);
        // The invariant pencil.
        let k = Cyclo15;
        let v = var_names("x", 3);
        let x = MultiPoly::vars_of(&k, &v);
        let fermat = x[0].pow(3).add(&x[1].pow(3)).add(&x[2].pow(3));
        let prod = x[0].mul(&x[1]).mul(&x[2]);
        assert!(crate::multipoly::in_linear_span(&fermat, trivial).unwrap().is_some());
        assert!(crate::multipoly::in_linear_span(&prod, trivial).unwrap().is_some());
    }

    #[test]
    fn blocks_are_eigenspaces() {
        let d = character_decomposition(3, 3, Convention::Coordinates).unwrap();
        for (l, basis) in &d {
            for f in basis {
                assert_eq!(character_of(f, 3, Convention::Coordinates).unwrap(), Some(*l));
            }
        }
    }

    #[test]
    fn decomposition_is_exhaustive_in_degree_six() {
        let d = character_decomposition(6, 3, Convention::Coordinates).unwrap();
        let all: Vec<_> = d.values().flatten().cloned().collect();
        assert_eq!(all.len(), 28);
        let k = Cyclo15;
        let mut rows: Vec<Vec<CycloNum>> =
            all.iter().map(|p| monomials_of_degree(3, 6).iter().map(|m| p.coefficient(m)).collect()).collect();
        assert_eq!(linalg::rref(&k, &mut rows).len(), 28);
    }

    #[test]
    fn non_commuting_degree_is_rejected() {
        assert!(matches!(
            character_decomposition(2, 3, Convention::Coordinates),
            Err(HeisenbergError::NonCommuting { .. })
        ));
    }

    #[test]
    fn table_flags_only_the_duplicated_row() {
        let d = character_decomposition(3, 3, Convention::Coordinates).unwrap();
        let rows = compare_character_table(&tabulated_character_cubics(), &d, 3, Convention::Coordinates).unwrap();
        let bad: Vec<_> = rows.iter().filter(|r| !r.matches).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].listed_label, CharacterLabel { a: 2, b: 2 });
        assert_eq!(bad[0].computed_label, Some(CharacterLabel { a: 2, b: 1 }));
        // x0^2 x1 + ε3^2 x1^2 x2 + ε3 x2^2 x0 carries (2,2).
        let k = Cyclo15;
        let v = var_names("x", 3);
        let x = MultiPoly::vars_of(&k, &v);
        let e = |p| cyclo_root_of_unity(3, p).unwrap();
        let f22 =
            x[0].pow(2).mul(&x[1]).add(&x[1].pow(2).mul(&x[2]).scale(&e(2))).add(&x[2].pow(2).mul(&x[0]).scale(&e(1)));
        assert_eq!(character_of(&f22, 3, Convention::Coordinates).unwrap(), Some(CharacterLabel { a: 2, b: 2 }));
    }

    #[test]
    fn involution_pairs_characters() {
        for (l, f) in tabulated_character_cubics().into_iter().take(7) {
            let g = super::super::iota_on_polynomial(&f);
            assert_eq!(character_of(&g, 3, Convention::Coordinates).unwrap(), Some(l.negate(3)));
        }
    }
}
