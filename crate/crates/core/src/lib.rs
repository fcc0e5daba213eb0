//! Quasitoric manifolds described combinatorially by a simple polytope, a
//! characteristic matrix and an omniorientation.
//!
//! The crate decides whether a positive omniorientation exists (equivalently,
//! whether the manifold carries a torus-invariant almost complex structure),
//! builds standard examples, and computes Euler characteristic, top Chern
//! number and, for surfaces, the intersection form, signature and Todd genus.

pub mod charpair;
pub mod cli;
pub mod constructions;
pub mod exact;
pub mod format;
pub mod gf2;
pub mod invariants;
pub mod polytope;
pub mod positivity;
pub mod sign;

pub use charpair::{CharError, CharacteristicMatrix, CharacteristicPair, Omniorientation};
pub use polytope::{OrientationClass, PolytopeError, SimplePolytope};
pub use positivity::{PositivityError, PositivityResult};
pub use sign::Sign;
