//! Euler characteristic, top Chern number, and for quasitoric 4-manifolds the
//! intersection form, signature and Todd genus.
//!
//! In dimension 4 the classes `v_j` dual to the characteristic submanifolds
//! generate `H^2`. Two distinct classes pair to the sign of the fixed point
//! where their facets meet, or to 0 if the facets are disjoint. The linear
//! relations `sum_j lambda_kj eps_j v_j = 0` then force the self-pairings and
//! let two generators whose columns form a basis of `Z^2` be eliminated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::charpair::{CharacteristicPair, Omniorientation};
use crate::exact::{bareiss_det, inertia};
use crate::polytope::Facet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("operation needs a 4-manifold (polygon), got dimension {0}")]
    NotDimension2(usize),
    #[error("no two characteristic columns form a basis of Z^2")]
    DegenerateRelations,
    #[error("linear relations give inconsistent self-intersection for facet {0}")]
    InconsistentRelations(Facet),
}

/// Symmetric pairing on the retained generators of `H^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    pub basis: Vec<Facet>,
    pub matrix: Vec<Vec<BigInt>>,
}

impl IntersectionForm {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_det(&self.matrix)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs() == BigInt::from(1)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn signature(&self) -> i64 {
        signature(&self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub euler: i64,
    pub chern_top: i64,
    /// Present only for 4-manifolds.
    pub signature: Option<i64>,
    pub todd: Option<BigRational>,
    pub almost_complex_4d: Option<bool>,
}

/// Number of fixed points.
pub fn euler_characteristic(pair: &CharacteristicPair) -> i64 {
    pair.polytope().num_vertices() as i64
}

/// Sum of the fixed-point signs.
pub fn chern_top_number(pair: &CharacteristicPair, omni: &Omniorientation) -> i64 {
    pair.all_signs(omni).iter().map(|s| s.to_i64()).sum()
}

/// Full pairing matrix on all `m` facet classes, indexed by facet.
pub fn facet_pairings(
    pair: &CharacteristicPair,
    omni: &Omniorientation,
) -> Result<Vec<Vec<BigInt>>, InvariantError> {
    if pair.dim() != 2 {
        return Err(InvariantError::NotDimension2(pair.dim()));
    }
    let m = pair.num_facets();
    let poly = pair.polytope();
    let mut pairing = vec![vec![BigInt::zero(); m]; m];
    for (v, s) in poly.vertices().iter().enumerate() {
        let value = BigInt::from(pair.vertex_sign(omni, v).to_i64());
        pairing[s[0]][s[1]] = value.clone();
        pairing[s[1]][s[0]] = value;
    }
    let columns = pair.signed_columns(omni);
    for i in 0..m {
        let mut self_pairing: Option<BigInt> = None;
        for (k, coeff) in columns[i].iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let rest = (0..m).filter(|&j| j != i).fold(BigInt::zero(), |acc, j| {
                acc + &columns[j][k] * &pairing[j][i]
            });
            let (q, r) = (-rest).div_rem(coeff);
            if !r.is_zero() || self_pairing.as_ref().is_some_and(|prev| *prev != q) {
                return Err(InvariantError::InconsistentRelations(i));
            }
            self_pairing = Some(q);
        }
        pairing[i][i] = self_pairing.ok_or(InvariantError::InconsistentRelations(i))?;
    }
    Ok(pairing)
}

/// The two lowest-indexed facets (lexicographically) whose columns form a
/// basis of `Z^2`.
fn eliminated_pair(pair: &CharacteristicPair) -> Result<(Facet, Facet), InvariantError> {
    let m = pair.num_facets();
    for i in 0..m {
        for j in i + 1..m {
            if bareiss_det(&pair.lambda().submatrix(&[i, j])).abs() == BigInt::from(1) {
                return Ok((i, j));
            }
        }
    }
    Err(InvariantError::DegenerateRelations)
}

pub fn intersection_form(
    pair: &CharacteristicPair,
    omni: &Omniorientation,
) -> Result<IntersectionForm, InvariantError> {
    let pairing = facet_pairings(pair, omni)?;
    let (x, y) = eliminated_pair(pair)?;
    let basis: Vec<Facet> = (0..pair.num_facets())
        .filter(|&j| j != x && j != y)
        .collect();
    let matrix = basis
        .iter()
        .map(|&i| basis.iter().map(|&j| pairing[i][j].clone()).collect())
        .collect();
    Ok(IntersectionForm { basis, matrix })
}

/// `b+ - b-` of a symmetric integer matrix, exactly.
pub fn signature(matrix: &[Vec<BigInt>]) -> i64 {
    let rational: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let (pos, neg, _) = inertia(&rational);
    pos as i64 - neg as i64
}

/// `(chi + sigma) / 4`.
pub fn todd_genus_4d(
    pair: &CharacteristicPair,
    omni: &Omniorientation,
) -> Result<BigRational, InvariantError> {
    let sigma = intersection_form(pair, omni)?.signature();
    Ok(BigRational::new(
        BigInt::from(euler_characteristic(pair) + sigma),
        BigInt::from(4),
    ))
}

/// Whether the Todd genus is an integer, the criterion for an almost complex
/// structure on a closed 4-manifold.
pub fn almost_complex_exists_4d(
    pair: &CharacteristicPair,
    omni: &Omniorientation,
) -> Result<bool, InvariantError> {
    Ok(todd_genus_4d(pair, omni)?.is_integer())
}

pub fn report(
    pair: &CharacteristicPair,
    omni: &Omniorientation,
) -> Result<InvariantReport, InvariantError> {
    let euler = euler_characteristic(pair);
    let chern_top = chern_top_number(pair, omni);
    if pair.dim() != 2 {
        return Ok(InvariantReport {
            euler,
            chern_top,
            signature: None,
            todd: None,
            almost_complex_4d: None,
        });
    }
    let sigma = intersection_form(pair, omni)?.signature();
    let todd = BigRational::new(BigInt::from(euler + sigma), BigInt::from(4));
    Ok(InvariantReport {
        euler,
        chern_top,
        signature: Some(sigma),
        almost_complex_4d: Some(todd.is_integer()),
        todd: Some(todd),
    })
}
