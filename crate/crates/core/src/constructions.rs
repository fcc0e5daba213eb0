//! Standard quasitoric examples and closure operations: projective spaces,
//! Hirzebruch surfaces, products, vertex cuts and equivariant connected sums
//! of 4-manifolds.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::charpair::{
    validate_char, CharError, CharacteristicMatrix, CharacteristicPair, Omniorientation,
};
use crate::exact::{mat_mul, unimodular_inverse};
use crate::polytope::{validate_polytope, Facet, SimplePolytope};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation needs dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),
    #[error("no GL(2,Z) alignment glues the chosen vertices")]
    NoUnimodularMatch,
    #[error("construction produced an invalid pair: {0}")]
    InvalidResult(#[from] CharError),
}

/// Boundary of the `n`-simplex: facets `0..=n`, vertices all `n`-subsets.
pub fn simplex(n: usize) -> Result<SimplePolytope, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter(
            "simplex dimension must be at least 1".into(),
        ));
    }
    let vertices = (0..=n)
        .rev()
        .map(|skip| (0..=n).filter(|&f| f != skip).collect())
        .collect();
    Ok(validate_polytope(n, n + 1, vertices).map_err(CharError::from)?)
}

/// Complex projective space: `lambda = [I_n | -1]`.
pub fn cpn(n: usize) -> Result<CharacteristicPair, ConstructionError> {
    let polytope = simplex(n)?;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..=n)
                .map(|j| match j {
                    _ if j == n => -1,
                    _ if j == i => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    Ok(validate_char(
        polytope,
        CharacteristicMatrix::from_i64(&rows),
    )?)
}

/// Cycle of `m` facets with vertices `{i, i+1 mod m}`.
pub fn polygon(m: usize) -> Result<SimplePolytope, ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::InvalidParameter(format!(
            "a polygon needs at least 3 edges, got {m}"
        )));
    }
    let vertices = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    Ok(validate_polytope(2, m, vertices).map_err(CharError::from)?)
}

/// Hirzebruch surface: square with columns `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> Result<CharacteristicPair, ConstructionError> {
    let lambda = CharacteristicMatrix::from_i64(&[vec![1, 0, -1, 0], vec![0, 1, a, -1]]);
    Ok(validate_char(polygon(4)?, lambda)?)
}

/// Product of two pairs. Facets of `p1` come first, those of `p2` are
/// shifted by `m1`; the characteristic matrix is block diagonal.
pub fn product(
    p1: &CharacteristicPair,
    p2: &CharacteristicPair,
) -> Result<CharacteristicPair, ConstructionError> {
    let (n1, n2) = (p1.dim(), p2.dim());
    let (m1, m2) = (p1.num_facets(), p2.num_facets());
    let mut vertices =
        Vec::with_capacity(p1.polytope().num_vertices() * p2.polytope().num_vertices());
    for s in p1.polytope().vertices() {
        for t in p2.polytope().vertices() {
            vertices.push(s.iter().copied().chain(t.iter().map(|&f| f + m1)).collect());
        }
    }
    let polytope = validate_polytope(n1 + n2, m1 + m2, vertices).map_err(CharError::from)?;
    let mut rows = vec![vec![BigInt::zero(); m1 + m2]; n1 + n2];
    for (i, row) in p1.lambda().rows().iter().enumerate() {
        rows[i][..m1].clone_from_slice(row);
    }
    for (i, row) in p2.lambda().rows().iter().enumerate() {
        rows[n1 + i][m1..].clone_from_slice(row);
    }
    Ok(validate_char(polytope, CharacteristicMatrix::new(rows))?)
}

/// Cuts off vertex `v`: a new facet `m` whose column is the sum of the
/// columns at `v`, and `n` new vertices `S(v) \ {f} + {m}`.
pub fn vertex_cut(
    pair: &CharacteristicPair,
    v: usize,
) -> Result<CharacteristicPair, ConstructionError> {
    let poly = pair.polytope();
    if v >= poly.num_vertices() {
        return Err(ConstructionError::NoSuchVertex(v));
    }
    if poly.dim() < 2 {
        return Err(ConstructionError::WrongDimension {
            expected: 2,
            got: poly.dim(),
        });
    }
    let m = poly.num_facets();
    let cut = poly.vertex(v);
    let mut vertices: Vec<Vec<Facet>> = poly
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, s)| s.clone())
        .collect();
    for &f in cut {
        vertices.push(cut.iter().copied().filter(|&g| g != f).chain([m]).collect());
    }
    let polytope = validate_polytope(poly.dim(), m + 1, vertices).map_err(CharError::from)?;
    let rows = pair
        .lambda()
        .rows()
        .iter()
        .map(|row| {
            let sum = cut.iter().fold(BigInt::zero(), |acc, &f| acc + &row[f]);
            row.iter().cloned().chain([sum]).collect()
        })
        .collect();
    Ok(validate_char(polytope, CharacteristicMatrix::new(rows))?)
}

/// Facets met walking around a polygon from `start` away from vertex `v`,
/// ending with the other facet of `v`.
fn polygon_path(poly: &SimplePolytope, v: usize, start: Facet) -> Vec<Facet> {
    let other_of = |w: usize, f: Facet| {
        let s = poly.vertex(w);
        if s[0] == f {
            s[1]
        } else {
            s[0]
        }
    };
    let end = other_of(v, start);
    let mut path = vec![start];
    let (mut cur_v, mut cur_f) = (v, start);
    loop {
        let w = poly.adjacent_vertex(cur_v, other_of(cur_v, cur_f));
        let next = other_of(w, cur_f);
        path.push(next);
        if next == end {
            return path;
        }
        cur_v = w;
        cur_f = next;
    }
}

fn columns_at(pair: &CharacteristicPair, facets: [Facet; 2]) -> Vec<Vec<BigInt>> {
    pair.lambda().submatrix(&facets)
}

/// Equivariant connected sum of two quasitoric 4-manifolds at fixed points
/// `v1` of `p1` and `v2` of `p2`.
///
/// The facets of `p1` keep their labels. The facets `c < d` at `v2` merge
/// with the facets `a < b` at `v1` (`c` with `a`, `d` with `b`), and the
/// remaining facets of `p2` are appended in boundary order starting next to
/// `c`. `p2` is moved by the `GL(2,Z)` element sending its columns at `v2` to
/// `lambda_a` and `s * lambda_b`, where the sign `s` makes the two charts
/// meet with opposite orientations: `s = -sign_1(v1) * sign_2(v2)` under the
/// all-plus omniorientations.
pub fn connected_sum_4d(
    p1: &CharacteristicPair,
    v1: usize,
    p2: &CharacteristicPair,
    v2: usize,
) -> Result<CharacteristicPair, ConstructionError> {
    for p in [p1, p2] {
        if p.dim() != 2 {
            return Err(ConstructionError::WrongDimension {
                expected: 2,
                got: p.dim(),
            });
        }
    }
    if v1 >= p1.polytope().num_vertices() {
        return Err(ConstructionError::NoSuchVertex(v1));
    }
    if v2 >= p2.polytope().num_vertices() {
        return Err(ConstructionError::NoSuchVertex(v2));
    }
    let m1 = p1.num_facets();
    let [a, b] = [p1.polytope().vertex(v1)[0], p1.polytope().vertex(v1)[1]];
    let [c, d] = [p2.polytope().vertex(v2)[0], p2.polytope().vertex(v2)[1]];
    let path2 = polygon_path(p2.polytope(), v2, c);
    let interior = &path2[1..path2.len() - 1];

    let mut relabel = vec![usize::MAX; p2.num_facets()];
    relabel[c] = a;
    relabel[d] = b;
    for (k, &y) in interior.iter().enumerate() {
        relabel[y] = m1 + k;
    }

    let mut target = columns_at(p1, [a, b]);
    if -(p1.base_sign(v1) * p2.base_sign(v2)) == Sign::Minus {
        for row in target.iter_mut() {
            row[1] = -row[1].clone();
        }
    }
    let source_inv =
        unimodular_inverse(&columns_at(p2, [c, d])).ok_or(ConstructionError::NoUnimodularMatch)?;
    let align = mat_mul(&target, &source_inv);
    let moved = mat_mul(&align, p2.lambda().rows());

    let mut columns: Vec<Vec<BigInt>> = (0..m1).map(|j| p1.lambda().column(j)).collect();
    columns.extend(
        interior
            .iter()
            .map(|&y| moved.iter().map(|row| row[y].clone()).collect()),
    );

    let identity: Vec<Facet> = (0..m1).collect();
    let vertices: Vec<Vec<Facet>> = surviving_vertices(p1, v1, &identity)
        .chain(surviving_vertices(p2, v2, &relabel))
        .collect();
    let polytope = validate_polytope(2, m1 + interior.len(), vertices).map_err(CharError::from)?;
    let lambda = CharacteristicMatrix::from_columns(&columns, 2);
    Ok(validate_char(polytope, lambda)?)
}

fn surviving_vertices<'a>(
    pair: &'a CharacteristicPair,
    removed: usize,
    relabel: &'a [Facet],
) -> impl Iterator<Item = Vec<Facet>> + 'a {
    pair.polytope()
        .vertices()
        .iter()
        .enumerate()
        .filter(move |&(w, _)| w != removed)
        .map(move |(_, s)| s.iter().map(|&f| relabel[f]).collect())
}

/// Connected sum of `k` copies of the complex projective plane, as a
/// `(k+2)`-gon. Each step glues a fresh copy at the last vertex of the
/// running sum, so the first vertex (and with it the orientation class
/// normalization) is inherited from the first summand.
pub fn cp2_sum(k: usize) -> Result<CharacteristicPair, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::InvalidParameter(
            "cp2_sum needs at least one summand".into(),
        ));
    }
    let cp2 = cpn(2)?;
    let mut acc = cp2.clone();
    for _ in 1..k {
        let last = acc.polytope().num_vertices() - 1;
        acc = connected_sum_4d(&acc, last, &cp2, 0)?;
    }
    Ok(acc)
}

/// The omniorientation whose global sign is the orientation inherited by
/// constructions (`+1` relative to the pair's orientation class) and whose
/// facet signs follow the stored columns.
pub fn standard_omniorientation(pair: &CharacteristicPair) -> Omniorientation {
    Omniorientation::all_plus(pair.num_facets())
}
