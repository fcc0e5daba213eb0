//! Characteristic matrices, omniorientations and fixed-point signs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{bareiss_det, mat_mul};
use crate::polytope::{Facet, OrientationClass, PolytopeError, SimplePolytope};
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("characteristic matrix must be {rows}x{cols}, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("|det| != 1 at {}", format_singular(.0))]
    SingularVertex(Vec<(Vec<Facet>, BigInt)>),
    #[error("basis change has determinant {0}, expected +1 or -1")]
    NotUnimodular(BigInt),
    #[error("omniorientation has {got} facet signs, expected {expected}")]
    OmniorientationLength { expected: usize, got: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn format_singular(bad: &[(Vec<Facet>, BigInt)]) -> String {
    bad.iter()
        .map(|(v, d)| format!("vertex {v:?} (det {d})"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// An `n x m` integer matrix; column `j` belongs to facet `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl CharacteristicMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> CharacteristicMatrix {
        CharacteristicMatrix { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> CharacteristicMatrix {
        CharacteristicMatrix {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn column(&self, j: Facet) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// Square submatrix on the given columns, in the given order.
    pub fn submatrix(&self, cols: &[Facet]) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
            .collect()
    }

    pub fn from_columns(columns: &[Vec<BigInt>], num_rows: usize) -> CharacteristicMatrix {
        CharacteristicMatrix {
            rows: (0..num_rows)
                .map(|i| columns.iter().map(|c| c[i].clone()).collect())
                .collect(),
        }
    }
}

/// Orientation `global` of the manifold plus one sign per characteristic
/// submanifold. A facet sign `+1` means "as given by the stored column".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Omniorientation {
    pub global: Sign,
    pub facets: Vec<Sign>,
}

impl Omniorientation {
    pub fn all_plus(num_facets: usize) -> Omniorientation {
        Omniorientation {
            global: Sign::Plus,
            facets: vec![Sign::Plus; num_facets],
        }
    }

    /// Decodes bit `0` as the global sign and bit `1 + j` as facet `j`.
    pub fn from_bits(bits: u64, num_facets: usize) -> Omniorientation {
        Omniorientation {
            global: Sign::from_parity(bits & 1 == 1),
            facets: (0..num_facets)
                .map(|j| Sign::from_parity((bits >> (j + 1)) & 1 == 1))
                .collect(),
        }
    }

    pub fn with_global_flipped(&self) -> Omniorientation {
        Omniorientation {
            global: -self.global,
            facets: self.facets.clone(),
        }
    }

    pub fn with_facet_flipped(&self, j: Facet) -> Omniorientation {
        let mut out = self.clone();
        out.facets[j] = -out.facets[j];
        out
    }
}

/// A simple polytope with a characteristic matrix that is unimodular at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPair {
    polytope: SimplePolytope,
    lambda: CharacteristicMatrix,
    vertex_dets: Vec<BigInt>,
}

impl CharacteristicPair {
    pub fn new(
        polytope: SimplePolytope,
        lambda: CharacteristicMatrix,
    ) -> Result<CharacteristicPair, CharError> {
        validate_char(polytope, lambda)
    }

    pub fn polytope(&self) -> &SimplePolytope {
        &self.polytope
    }

    pub fn lambda(&self) -> &CharacteristicMatrix {
        &self.lambda
    }

    pub fn orientation(&self) -> &OrientationClass {
        self.polytope.orientation()
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn num_facets(&self) -> usize {
        self.polytope.num_facets()
    }

    /// `det lambda_v` with columns in ascending facet order; always `+-1`.
    pub fn vertex_det(&self, v: usize) -> &BigInt {
        &self.vertex_dets[v]
    }

    pub fn vertex_det_sign(&self, v: usize) -> Sign {
        Sign::from_parity(self.vertex_dets[v].is_negative())
    }

    /// Orientation class times determinant sign: the sign of `v` under the
    /// all-plus omniorientation.
    pub fn base_sign(&self, v: usize) -> Sign {
        self.orientation().sign(v) * self.vertex_det_sign(v)
    }

    pub fn check_omniorientation(&self, omni: &Omniorientation) -> Result<(), CharError> {
        if omni.facets.len() != self.num_facets() {
            return Err(CharError::OmniorientationLength {
                expected: self.num_facets(),
                got: omni.facets.len(),
            });
        }
        Ok(())
    }

    /// `eps_0 * orientation(v) * prod_{j in S(v)} eps_j * sgn det lambda_v`.
    pub fn vertex_sign(&self, omni: &Omniorientation, v: usize) -> Sign {
        self.polytope
            .vertex(v)
            .iter()
            .fold(omni.global * self.base_sign(v), |acc, &j| {
                acc * omni.facets[j]
            })
    }

    /// Signs of all fixed points, in vertex order.
    pub fn all_signs(&self, omni: &Omniorientation) -> Vec<Sign> {
        (0..self.polytope.num_vertices())
            .map(|v| self.vertex_sign(omni, v))
            .collect()
    }

    pub fn is_positive(&self, omni: &Omniorientation) -> bool {
        self.all_signs(omni).iter().all(|&s| s == Sign::Plus)
    }

    /// Columns with facet signs folded in: column `j` times `eps_j`.
    pub fn signed_columns(&self, omni: &Omniorientation) -> Vec<Vec<BigInt>> {
        (0..self.num_facets())
            .map(|j| {
                let col = self.lambda.column(j);
                if omni.facets[j].is_minus() {
                    col.into_iter().map(|x| -x).collect()
                } else {
                    col
                }
            })
            .collect()
    }

    /// Pair with `lambda' = a * lambda`.
    pub fn basis_change(&self, a: &[Vec<BigInt>]) -> Result<CharacteristicPair, CharError> {
        let n = self.dim();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(CharError::ShapeMismatch {
                rows: n,
                cols: n,
                got_rows: a.len(),
                got_cols: a.first().map_or(0, Vec::len),
            });
        }
        let det = bareiss_det(a);
        if !det.abs().is_one() {
            return Err(CharError::NotUnimodular(det));
        }
        let lambda = CharacteristicMatrix::new(mat_mul(a, self.lambda.rows()));
        validate_char(self.polytope.clone(), lambda)
    }

    /// Relabels facet `j` as `perm[j]` throughout, carrying `omni` along.
    ///
    /// The orientation class of the relabeled polytope is renormalized, so the
    /// global sign of the returned omniorientation is adjusted to keep every
    /// fixed-point sign unchanged.
    pub fn permute_facets(
        &self,
        perm: &[Facet],
        omni: &Omniorientation,
    ) -> Result<(CharacteristicPair, Omniorientation), CharError> {
        let m = self.num_facets();
        let polytope = self.polytope.relabel(perm)?;
        let mut columns = vec![Vec::new(); m];
        let mut facets = vec![Sign::Plus; m];
        for j in 0..m {
            columns[perm[j]] = self.lambda.column(j);
            facets[perm[j]] = omni.facets[j];
        }
        let lambda = CharacteristicMatrix::from_columns(&columns, self.dim());
        let pair = validate_char(polytope, lambda)?;
        let mut out = Omniorientation {
            global: omni.global,
            facets,
        };
        // Relabeling multiplies both the orientation sign and det lambda_v by
        // the same reordering sign, up to one global constant.
        let image: Vec<Facet> = self.polytope.vertex(0).iter().map(|&f| perm[f]).collect();
        let w = pair
            .polytope
            .vertex_index(&image)
            .expect("relabeled vertex exists");
        if pair.base_sign(w) != self.base_sign(0) {
            out.global = -out.global;
        }
        Ok((pair, out))
    }
}

/// Checks shape and unimodularity at every vertex.
pub fn validate_char(
    polytope: SimplePolytope,
    lambda: CharacteristicMatrix,
) -> Result<CharacteristicPair, CharError> {
    let (n, m) = (polytope.dim(), polytope.num_facets());
    if lambda.num_rows() != n || lambda.rows().iter().any(|r| r.len() != m) {
        return Err(CharError::ShapeMismatch {
            rows: n,
            cols: m,
            got_rows: lambda.num_rows(),
            got_cols: lambda.rows().iter().map(Vec::len).max().unwrap_or(0),
        });
    }
    let vertex_dets: Vec<BigInt> = polytope
        .vertices()
        .iter()
        .map(|s| bareiss_det(&lambda.submatrix(s)))
        .collect();
    let bad: Vec<(Vec<Facet>, BigInt)> = vertex_dets
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.abs().is_one())
        .map(|(v, d)| (polytope.vertex(v).to_vec(), d.clone()))
        .collect();
    if !bad.is_empty() {
        return Err(CharError::SingularVertex(bad));
    }
    Ok(CharacteristicPair {
        polytope,
        lambda,
        vertex_dets,
    })
}

/// Identity-like helper for building small integer matrices in code and tests.
pub fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}
