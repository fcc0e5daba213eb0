//! Existence of a positive omniorientation.
//!
//! Writing `eps_0 = (-1)^x_0` and `eps_j = (-1)^x_(1+j)`, the fixed point `v`
//! is positive iff `x_0 + sum_{j in S(v)} x_j = b_v (mod 2)`, where `b_v` is 1
//! exactly when the all-plus sign of `v` is negative. A positive
//! omniorientation is a solution of this system; an inconsistent system is
//! refuted by a set of vertices whose equations sum to `0 = 1`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::charpair::{CharacteristicPair, Omniorientation};
use crate::gf2::{BitRow, LinearSystem, Solution};
use crate::sign::Sign;

/// Largest facet count accepted by [`brute_force_decide`].
pub const BRUTE_FORCE_MAX_FACETS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositivityError {
    #[error("solver produced an invalid {0}; this is a bug")]
    InternalInconsistency(&'static str),
    #[error("brute force limited to {BRUTE_FORCE_MAX_FACETS} facets, got {0}")]
    TooLarge(usize),
}

/// One equation per vertex over `m + 1` unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2System {
    pub num_facets: usize,
    pub system: LinearSystem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositivityResult {
    Sat {
        certificate: Omniorientation,
        kernel_dim: usize,
    },
    /// Vertex indices whose equations sum to a contradiction.
    Unsat { witness: Vec<usize> },
}

impl PositivityResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, PositivityResult::Sat { .. })
    }

    /// Number of positive omniorientations: `2^kernel_dim`, or 0.
    pub fn count(&self) -> BigUint {
        match self {
            PositivityResult::Sat { kernel_dim, .. } => BigUint::one() << *kernel_dim,
            PositivityResult::Unsat { .. } => BigUint::zero(),
        }
    }
}

pub fn build_system(pair: &CharacteristicPair) -> Gf2System {
    let m = pair.num_facets();
    let mut system = LinearSystem::new(m + 1);
    for (v, facets) in pair.polytope().vertices().iter().enumerate() {
        let mut row = BitRow::unit(m + 1, 0);
        for &j in facets {
            row.set(j + 1, true);
        }
        system.push(row, pair.base_sign(v).is_minus());
    }
    Gf2System {
        num_facets: m,
        system,
    }
}

pub fn solve(system: &Gf2System) -> PositivityResult {
    match system.system.solve() {
        Solution::Consistent { x, rank } => PositivityResult::Sat {
            certificate: Omniorientation {
                global: Sign::from_parity(x.get(0)),
                facets: (0..system.num_facets)
                    .map(|j| Sign::from_parity(x.get(j + 1)))
                    .collect(),
            },
            kernel_dim: system.system.unknowns - rank,
        },
        Solution::Inconsistent { combination } => PositivityResult::Unsat {
            witness: combination,
        },
    }
}

/// Checks the parity conditions refuting positivity: an even number of
/// vertices, every facet on an even number of them, and an odd number of
/// negative all-plus signs.
pub fn verify_witness(pair: &CharacteristicPair, witness: &[usize]) -> bool {
    if witness.is_empty() || !witness.len().is_multiple_of(2) {
        return false;
    }
    let mut facet_hits = vec![0usize; pair.num_facets()];
    let mut product = Sign::Plus;
    for &v in witness {
        if v >= pair.polytope().num_vertices() {
            return false;
        }
        for &j in pair.polytope().vertex(v) {
            facet_hits[j] += 1;
        }
        product *= pair.base_sign(v);
    }
    facet_hits.iter().all(|h| h % 2 == 0) && product == Sign::Minus
}

/// Solves the positivity system and checks whichever certificate comes out.
pub fn decide_positive(pair: &CharacteristicPair) -> Result<PositivityResult, PositivityError> {
    let result = solve(&build_system(pair));
    match &result {
        PositivityResult::Sat { certificate, .. } => {
            if !pair.is_positive(certificate) {
                return Err(PositivityError::InternalInconsistency("certificate"));
            }
        }
        PositivityResult::Unsat { witness } => {
            if !verify_witness(pair, witness) {
                return Err(PositivityError::InternalInconsistency("witness"));
            }
        }
    }
    Ok(result)
}

/// Whether the quasitoric manifold carries a torus-invariant almost complex
/// structure, i.e. whether some omniorientation is positive.
pub fn admits_invariant_acs(pair: &CharacteristicPair) -> bool {
    decide_positive(pair).is_ok_and(|r| r.is_sat())
}

pub fn count_positive_omniorientations(pair: &CharacteristicPair) -> BigUint {
    solve(&build_system(pair)).count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceSummary {
    pub satisfiable: bool,
    pub count: u64,
    /// First positive omniorientation in enumeration order.
    pub first: Option<Omniorientation>,
}

/// Enumerates all `2^(m+1)` omniorientations and evaluates every fixed-point
/// sign directly.
pub fn brute_force_decide(pair: &CharacteristicPair) -> Result<BruteForceSummary, PositivityError> {
    let m = pair.num_facets();
    if m > BRUTE_FORCE_MAX_FACETS {
        return Err(PositivityError::TooLarge(m));
    }
    let mut count = 0u64;
    let mut first = None;
    for bits in 0..1u64 << (m + 1) {
        let omni = Omniorientation::from_bits(bits, m);
        if pair.is_positive(&omni) {
            count += 1;
            first.get_or_insert(omni);
        }
    }
    Ok(BruteForceSummary {
        satisfiable: count > 0,
        count,
        first,
    })
}
