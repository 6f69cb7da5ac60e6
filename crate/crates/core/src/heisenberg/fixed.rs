use super::{Convention, HeisenbergElement, HeisenbergError};
use crate::multipoly::linalg;
use crate::scalars::{cyclo_root_of_unity, Cyclo15, CycloNum, Field};

/// A point of the projective plane with first nonzero coordinate 1.
pub type ProjPoint3 = [CycloNum; 3];

fn normalize(v: &[CycloNum]) -> ProjPoint3 {
    let k = Cyclo15;
    let lead = v.iter().find(|c| !k.is_zero(c)).expect("nonzero vector");
    let inv = k.inv(lead).expect("nonzero");
    [k.mul(&v[0], &inv), k.mul(&v[1], &inv), k.mul(&v[2], &inv)]
}

pub fn cross(a: &[CycloNum; 3], b: &[CycloNum; 3]) -> [CycloNum; 3] {
    let k = Cyclo15;
    let m = |x: &CycloNum, y: &CycloNum| k.mul(x, y);
    [
        k.sub(&m(&a[1], &b[2]), &m(&a[2], &b[1])),
        k.sub(&m(&a[2], &b[0]), &m(&a[0], &b[2])),
        k.sub(&m(&a[0], &b[1]), &m(&a[1], &b[0])),
    ]
}

pub fn projectively_equal(a: &[CycloNum; 3], b: &[CycloNum; 3]) -> bool {
    cross(a, b).iter().all(CycloNum::is_zero)
}

/// Fixed points in the plane of the order-3 map `σ^i τ^j` acting on points
/// through its substitution matrix.
pub fn fixed_points_of_subgroup(i: i64, j: i64) -> Result<Vec<ProjPoint3>, HeisenbergError> {
    if i.rem_euclid(3) == 0 && j.rem_euclid(3) == 0 {
        return Err(HeisenbergError::TrivialSubgroup);
    }
    let k = Cyclo15;
    let g = HeisenbergElement::new(3, Convention::Coordinates, i, 0)?.mul(&HeisenbergElement::new(
        3,
        Convention::Coordinates,
        0,
        j,
    )?)?;
    let m = g.point_matrix();
    let mut pts: Vec<ProjPoint3> = Vec::new();
    for e in 0..15 {
        let lambda = CycloNum::eps15_pow(e);
        let shifted: Vec<Vec<CycloNum>> = (0..3)
            .map(|r| (0..3).map(|c| if r == c { k.sub(&m[r][c], &lambda) } else { m[r][c].clone() }).collect())
            .collect();
        for v in linalg::kernel(&k, &shifted, 3) {
            let p = normalize(&v);
            if !pts.iter().any(|q| projectively_equal(q, &p)) {
                pts.push(p);
            }
        }
    }
    Ok(pts)
}

/// The three lines of the singular pencil member attached to the subgroup
/// generated by `σ^i τ^j`, as coefficient vectors of linear forms.
pub fn triangle_lines(i: i64, j: i64) -> Option<[[CycloNum; 3]; 3]> {
    let (i, j) = (i.rem_euclid(3), j.rem_euclid(3));
    // (i,j) and (2i,2j) generate the same subgroup.
    let (i, j) = if i == 2 || (i == 0 && j == 2) { ((2 * i) % 3, (2 * j) % 3) } else { (i, j) };
    let e = |p: i64| cyclo_root_of_unity(3, p).expect("order 3");
    let z = CycloNum::zero;
    let l = |a: i64, b: i64| [e(0), e(a), e(b)];
    Some(match (i, j) {
        (0, 1) => [[e(0), z(), z()], [z(), e(0), z()], [z(), z(), e(0)]],
        (1, 1) => [l(2, 2), l(0, 1), l(1, 0)],
        (1, 0) => [l(1, 2), l(2, 1), l(0, 0)],
        (1, 2) => [l(0, 2), l(1, 1), l(2, 0)],
        _ => return None,
    })
}

/// Pairwise intersections of the three lines.
pub fn triangle_vertices(lines: &[[CycloNum; 3]; 3]) -> Vec<ProjPoint3> {
    [(0, 1), (0, 2), (1, 2)].iter().map(|&(a, b)| normalize(&cross(&lines[a], &lines[b]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn same_set(a: &[ProjPoint3], b: &[ProjPoint3]) -> bool {
        a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| projectively_equal(p, q)))
    }

    #[test]
    fn tau_fixes_coordinate_points() {
        let pts = fixed_points_of_subgroup(0, 1).unwrap();
        let one = CycloNum::one;
        let z = CycloNum::zero;
        let expect = vec![[one(), z(), z()], [z(), one(), z()], [z(), z(), one()]];
        assert!(same_set(&pts, &expect));
    }

    #[test]
    fn fixed_points_are_triangle_vertices() {
        for (i, j) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 2), (0, 2), (2, 0), (2, 1)] {
            let pts = fixed_points_of_subgroup(i, j).unwrap();
            assert_eq!(pts.len(), 3, "({i},{j})");
            let verts = triangle_vertices(&triangle_lines(i, j).unwrap());
            assert!(same_set(&pts, &verts), "({i},{j})");
        }
    }

    #[test]
    fn fixed_points_are_fixed() {
        let k = Cyclo15;
        for (i, j) in [(1, 0), (1, 1), (1, 2)] {
            let g = HeisenbergElement::new(3, Convention::Coordinates, i, 0)
                .unwrap()
                .mul(&HeisenbergElement::new(3, Convention::Coordinates, 0, j).unwrap())
                .unwrap();
            let m = g.point_matrix();
            for p in fixed_points_of_subgroup(i, j).unwrap() {
                let q = linalg::mat_vec(&k, &m, &p);
                assert!(projectively_equal(&p, &[q[0].clone(), q[1].clone(), q[2].clone()]));
            }
        }
    }

    #[test]
    fn trivial_subgroup_rejected() {
        assert!(matches!(fixed_points_of_subgroup(3, 0), Err(HeisenbergError::TrivialSubgroup)));
    }
}
