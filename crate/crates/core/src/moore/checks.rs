use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{build_moore_matrices, quintic_equations, ExcludedModuli, MooreError, MooreMatrices, QuadricSystem};
use crate::heisenberg::{Convention, HeisenbergElement};
use crate::multipoly::{in_linear_span, linalg, monomials_of_degree, DetMethod, MultiPoly, PolyMatrix};
use crate::report::CheckRecord;
use crate::scalars::{Cyclo15, CycloField, Field, PrimeField, RatFunc};

/// The index map `i ↦ scale·i + shift` on `Z5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffineIndex {
    pub scale: u32,
    pub shift: u32,
}

impl AffineIndex {
    pub fn apply(&self, i: usize) -> usize {
        (self.scale as usize * i + self.shift as usize) % 5
    }

    fn all() -> impl Iterator<Item = AffineIndex> {
        (1..5).flat_map(|scale| (0..5).map(move |shift| AffineIndex { scale, shift }))
    }
}

/// Every affine reindexing of `Z5` satisfying `pred`.
pub fn find_reindexings(pred: impl Fn(AffineIndex) -> bool) -> Vec<AffineIndex> {
    AffineIndex::all().filter(|&m| pred(m)).collect()
}

/// `J_ij = ∂Q_j/∂x_i`.
pub fn quadric_jacobian<F: Field>(qs: &QuadricSystem<F>) -> Result<PolyMatrix<F>, MooreError> {
    let mut entries = Vec::with_capacity(25);
    for i in 0..5 {
        for q in qs.quadrics() {
            entries.push(q.partial_derivative_index(i)?);
        }
    }
    Ok(PolyMatrix::from_fn(qs.field(), qs.vars(), 5, 5, |i, j| entries[5 * i + j].clone()))
}

fn rid(prefix: &str, name: &str) -> String {
    format!("{prefix}.{name}")
}

/// `x·C·xᵀ` for a constant matrix `C`.
fn quadratic_form<F: Field>(f: &F, vars: &Arc<[String]>, c: &[Vec<F::Elem>]) -> MultiPoly<F> {
    let x = MultiPoly::vars_of(f, vars);
    let mut out = MultiPoly::zero(f, vars);
    for (i, row) in c.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !f.is_zero(v) {
                out = out.add(&x[i].mul(&x[j]).scale(v));
            }
        }
    }
    out
}

/// The structural identities of the Moore matrices, over any field that
/// contains the fifth roots of unity.
pub fn verify_moore_structure<F>(
    prefix: &str,
    qs: &QuadricSystem<F>,
    mm: &MooreMatrices<F>,
) -> Result<Vec<CheckRecord>, MooreError>
where
    F: CycloField + Send + Sync,
{
    let f = qs.field();
    let xv = qs.vars().clone();
    let mut out = Vec::new();

    out.push(CheckRecord::new(
        &rid(prefix, "symmetric"),
        "M(y) = M(y)ᵀ with M(y)_ij = y_{i+j} z_{i-j}",
        mm.m().is_symmetric(),
        json!({ "M": mm.m().render_rows() }),
    ));

    let x = MultiPoly::vars_of(f, &xv);
    let ax = mm.syzygy_matrix().mul_vec(&x)?;
    let xax = x.iter().zip(&ax).fold(MultiPoly::zero(f, &xv), |s, (xi, v)| s.add(&xi.mul(v)));
    out.push(CheckRecord::new(
        &rid(prefix, "antisymmetric"),
        "A = -Aᵀ, hence x·A·xᵀ = 0",
        mm.syzygy_matrix().is_antisymmetric() && xax.is_zero(),
        json!({ "A": mm.syzygy_matrix().render_rows() }),
    ));

    // M(y)·x = M′(x)·y in the joint ring.
    let joint: Arc<[String]> = xv.iter().chain(mm.m().vars().iter()).cloned().collect::<Vec<_>>().into();
    let jv = MultiPoly::vars_of(f, &joint);
    let to_x = |p: &MultiPoly<F>| p.substitute(&jv[..5]);
    let to_y = |p: &MultiPoly<F>| p.substitute(&jv[5..]);
    let mut bilinear = true;
    for i in 0..5 {
        let mut lhs = MultiPoly::zero(f, &joint);
        let mut rhs = MultiPoly::zero(f, &joint);
        for j in 0..5 {
            lhs = lhs.add(&to_y(mm.m().get(i, j))?.mul(&jv[j]));
            rhs = rhs.add(&to_x(mm.m_prime().get(i, j))?.mul(&jv[5 + j]));
        }
        bilinear &= lhs == rhs;
    }
    out.push(CheckRecord::new(
        &rid(prefix, "bilinear"),
        "M(y)·xᵀ = M′(x)·yᵀ",
        bilinear,
        json!({ "M_prime": mm.m_prime().render_rows() }),
    ));

    // x·M(e_i)·xᵀ against 2Q_j.
    let two = f.from_i64(2);
    let forms: Vec<MultiPoly<F>> = (0..5)
        .map(|i| {
            let e: Vec<F::Elem> = (0..5).map(|k| if k == i { f.one() } else { f.zero() }).collect();
            Ok(quadratic_form(f, &xv, &mm.m_at(&e)?))
        })
        .collect::<Result<_, MooreError>>()?;
    let doubled: Vec<MultiPoly<F>> = qs.quadrics().iter().map(|q| q.scale(&two)).collect();
    let stated = forms.iter().enumerate().all(|(i, g)| *g == doubled[(3 * i) % 5]);
    let found = find_reindexings(|m| (0..5).all(|i| forms[i] == doubled[m.apply(i)]));
    out.push(CheckRecord::new(
        &rid(prefix, "quadric-pinning"),
        "x·M(e_i)·xᵀ = 2Q_{3i} for every i",
        stated,
        json!({ "reindexings": found }),
    ));

    let jac = quadric_jacobian(qs)?;
    let stated = (0..5).all(|i| (0..5).all(|j| mm.m_prime().get(i, j) == jac.get(i, (3 * j) % 5)));
    let found = find_reindexings(|m| (0..5).all(|i| (0..5).all(|j| mm.m_prime().get(i, j) == jac.get(i, m.apply(j)))));
    out.push(CheckRecord::new(
        &rid(prefix, "dual-jacobian"),
        "M′ equals the Jacobian (∂Q_{3j}/∂x_i) entrywise",
        stated,
        json!({ "reindexings": found }),
    ));

    let (det_m, det_mp) = quintic_equations(mm)?;
    let mut inv_rows = Vec::new();
    let mut inv_ok = true;
    for (name, d) in [("det_M", &det_m), ("det_M_prime", &det_mp)] {
        for (g, gname) in [
            (HeisenbergElement::sigma(5, Convention::Coordinates)?, "sigma5"),
            (HeisenbergElement::tau(5, Convention::Coordinates)?, "tau5"),
        ] {
            let img = g.act_on_polynomial(d)?;
            inv_ok &= img == *d;
            inv_rows.push(json!({ "polynomial": name, "element": gname, "fixed": img == *d }));
        }
    }
    let degrees_ok = [&det_m, &det_mp].iter().all(|d| !d.is_zero() && d.homogeneous_degree() == Some(5));
    out.push(CheckRecord::new(
        &rid(prefix, "quintics"),
        "det M(y) and det M′(x) are nonzero quintic forms fixed by σ5 and τ5",
        degrees_ok && inv_ok,
        json!({
            "terms": [det_m.num_terms(), det_mp.num_terms()],
            "invariance": inv_rows,
        }),
    ));
    Ok(out)
}

/// Span membership of the entries of `A·M′ᵀ` and the syzygy reindexing search.
pub fn verify_span_claims<F>(
    prefix: &str,
    qs: &QuadricSystem<F>,
    mm: &MooreMatrices<F>,
) -> Result<Vec<CheckRecord>, MooreError>
where
    F: Field + Send + Sync,
{
    let f = qs.field();
    let prod = mm.syzygy_matrix().mul(&mm.m_prime().transpose())?;
    let plain = mm.syzygy_matrix().mul(mm.m_prime())?;
    let basis = qs.quadrics();
    let spans: Vec<Option<Vec<F::Elem>>> =
        prod.entries().par_iter().map(|e| in_linear_span(e, basis)).collect::<Result<_, _>>()?;
    let plain_in_span = plain
        .entries()
        .par_iter()
        .map(|e| in_linear_span(e, basis).map(|s| s.is_some()))
        .collect::<Result<Vec<bool>, _>>()?;
    let failures: Vec<String> = spans
        .iter()
        .zip(prod.entries())
        .enumerate()
        .filter(|(_, (s, _))| s.is_none())
        .map(|(k, (_, e))| format!("({},{}): {}", k / 5, k % 5, e.render()))
        .collect();
    let entry00 = spans[0].as_ref().map(|c| c.iter().map(|v| f.render(v)).collect::<Vec<_>>());
    let mut out = vec![CheckRecord::new(
        &rid(prefix, "span"),
        "every entry of A·M′ᵀ lies in the span of Q_0, …, Q_4",
        failures.is_empty(),
        json!({
            "entry_00_coefficients": entry00,
            "failures": failures,
            "untransposed_entries_in_span": plain_in_span.iter().filter(|&&b| b).count(),
        }),
    )];

    let found = find_reindexings(|m| {
        let v: Vec<MultiPoly<F>> = (0..5).map(|i| basis[m.apply(i)].clone()).collect();
        mm.syzygy_matrix().mul_vec(&v).map(|r| r.iter().all(MultiPoly::is_zero)).unwrap_or(false)
    });

    // Per row i: dimension of {C ∈ F^{5×5} : Σ_j A_ij (C·Q)_j = 0}.
    let cubics = monomials_of_degree(5, 3);
    let mut row_dims = Vec::new();
    for i in 0..5 {
        let mut columns = Vec::new();
        for j in 0..5 {
            for q in basis {
                let p = mm.syzygy_matrix().get(i, j).mul(q);
                columns.push(cubics.iter().map(|m| p.coefficient(m)).collect::<Vec<_>>());
            }
        }
        let rows: Vec<Vec<F::Elem>> =
            (0..cubics.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        row_dims.push(linalg::kernel(f, &rows, 25).len());
    }
    out.push(CheckRecord::new(
        &rid(prefix, "syzygy"),
        "A·(Q_{π(0)}, …, Q_{π(4)})ᵀ = 0 for some affine reindexing π of Z5",
        !found.is_empty() && row_dims.iter().all(|&d| d >= 1),
        json!({ "reindexings": found, "row_kernel_dims": row_dims }),
    ));
    Ok(out)
}

/// The Moore suite with `a` the generator of `Q(ε15)(a)`.
pub fn moore_suite_symbolic() -> Vec<CheckRecord> {
    let field = RatFunc::new(Cyclo15, "a");
    let a = field.var();
    run_suite("moore", &field, a)
}

fn run_suite<F: CycloField + Send + Sync>(prefix: &str, field: &F, a: F::Elem) -> Vec<CheckRecord> {
    let run = || -> Result<Vec<CheckRecord>, MooreError> {
        let qs = QuadricSystem::new(field, a.clone())?;
        let mm = build_moore_matrices(field, a.clone())?;
        let mut v = verify_moore_structure(prefix, &qs, &mm)?;
        v.extend(verify_span_claims(prefix, &qs, &mm)?);
        Ok(v)
    };
    run().unwrap_or_else(|e| {
        vec![CheckRecord::new(
            &rid(prefix, "construction"),
            "the Moore matrices can be built",
            false,
            json!({ "error": e.to_string() }),
        )]
    })
}

/// The Moore suite over `F_p` at one admissible `a`, with determinant
/// oracles at random points and the excluded moduli.
pub fn moore_suite_numeric(p: u64, a: u64, seed: u64) -> Vec<CheckRecord> {
    let prefix = format!("moore.p{p}.a{a}");
    let excluded = ExcludedModuli::new();
    let field = match PrimeField::new(p) {
        Ok(f) => f,
        Err(e) => {
            return vec![CheckRecord::new(
                &rid(&prefix, "field"),
                "p is a supported prime",
                false,
                json!({ "error": e.to_string() }),
            )]
        }
    };
    if excluded.contains_mod(p, a) {
        return vec![CheckRecord::new(
            &rid(&prefix, "admissible"),
            "a avoids the excluded moduli",
            false,
            json!({ "p": p, "a": a }),
        )];
    }
    let mut out = run_suite(&prefix, &field, a);
    let oracle = || -> Result<CheckRecord, MooreError> {
        let mm = build_moore_matrices(&field, a)?;
        let (dm, dmp) = quintic_equations(&mm)?;
        let dm_cof = mm.m().determinant_with(DetMethod::Cofactor)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut agree = 0;
        let trials = 20;
        for _ in 0..trials {
            let y: Vec<u64> = (0..5).map(|_| rng.gen_range(0..p)).collect();
            let dense = linalg::det(&field, &mm.m_at(&y)?);
            let ok = dm.evaluate(&y)? == dense
                && dm_cof.evaluate(&y)? == dense
                && dmp.evaluate(&y)? == linalg::det(&field, &mm.m_prime_at(&y)?);
            agree += ok as usize;
        }
        Ok(CheckRecord::new(
            &rid(&prefix, "determinant-oracle"),
            "det M and det M′ agree with dense elimination and cofactor expansion at random points",
            agree == trials && dm == dm_cof,
            json!({ "trials": trials, "agree": agree }),
        ))
    };
    out.push(oracle().unwrap_or_else(|e| {
        CheckRecord::new(
            &rid(&prefix, "determinant-oracle"),
            "determinant oracle",
            false,
            json!({ "error": e.to_string() }),
        )
    }));

    // Excluded values: count, and whether det M′ vanishes there (recorded only).
    let images = excluded.images_mod(p);
    let degenerate: Vec<serde_json::Value> = images
        .iter()
        .flatten()
        .filter(|&&b| b != 0)
        .map(|&b| {
            let zero =
                build_moore_matrices(&field, b).and_then(|m| quintic_equations(&m)).map(|(_, d)| d.is_zero()).ok();
            json!({ "a": b, "det_M_prime_identically_zero": zero })
        })
        .collect();
    out.push(CheckRecord::new(
        &rid(&prefix, "excluded-moduli"),
        "twelve excluded values of a on the projective line",
        excluded.len() == 12,
        json!({ "images": images, "degeneracy": degenerate }),
    ));
    out
}
