//! Combinatorial simple polytopes.
//!
//! A simple `n`-polytope with `m` facets is stored through its vertices, each
//! vertex being the set of the `n` facets that meet there. Vertex sets are kept
//! in ascending facet order and the vertex list is sorted lexicographically;
//! all determinant and orientation conventions in the crate refer to this
//! order.
//!
//! Polytopality itself is not checked. Anything whose dual is an orientable
//! simplicial pseudomanifold with connected ridge graph is accepted.

use std::collections::{BTreeMap, HashSet, VecDeque};

use thiserror::Error;

use crate::sign::Sign;

pub type Facet = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("a {dim}-polytope needs at least {} facets, got {facets}", dim + 1)]
    TooFewFacets { dim: usize, facets: usize },
    #[error("vertex {vertex:?} has {size} distinct facets, expected {dim}")]
    WrongVertexSize {
        vertex: Vec<Facet>,
        size: usize,
        dim: usize,
    },
    #[error("vertex {vertex:?} references facet {facet} outside 0..{facets}")]
    FacetOutOfRange {
        vertex: Vec<Facet>,
        facet: Facet,
        facets: usize,
    },
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(Vec<Facet>),
    #[error("facet {0} lies on no vertex")]
    UnusedFacet(Facet),
    #[error("an interval has exactly 2 facets and 2 vertices, got {facets} facets and {vertices} vertices")]
    NotAnInterval { facets: usize, vertices: usize },
    #[error("ridge {ridge:?} (vertex {vertex:?} without facet {facet}) has {partners} partner vertices, expected 1")]
    RidgeViolation {
        vertex: Vec<Facet>,
        facet: Facet,
        ridge: Vec<Facet>,
        partners: usize,
    },
    #[error("vertex graph is disconnected: vertex {0:?} is unreachable")]
    Disconnected(Vec<Facet>),
    #[error("dual sphere is not orientable: contradiction at vertex {0:?}")]
    NonOrientable(Vec<Facet>),
}

/// Coherent orientation of the dual simplicial sphere, one sign per vertex.
///
/// The sign of a vertex refers to its facets listed in ascending order.
/// Deleting the facet at position `p` induces `(-1)^p * sign` on the ridge,
/// and the two vertices sharing a ridge induce opposite orientations on it.
/// The lexicographically smallest vertex carries `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationClass {
    signs: Vec<Sign>,
}

impl OrientationClass {
    /// Wraps raw per-vertex signs without checking them; see [`is_coherent`].
    pub fn from_signs(signs: Vec<Sign>) -> OrientationClass {
        OrientationClass { signs }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, vertex: usize) -> Sign {
        self.signs[vertex]
    }

    /// The opposite orientation class.
    pub fn flipped(&self) -> OrientationClass {
        OrientationClass {
            signs: self.signs.iter().map(|&s| -s).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolytope {
    dim: usize,
    num_facets: usize,
    vertices: Vec<Vec<Facet>>,
    /// `neighbors[v][p]`: vertex across the ridge obtained by dropping the
    /// facet at ascending position `p` of vertex `v`. Empty for `dim == 1`.
    neighbors: Vec<Vec<usize>>,
    orientation: OrientationClass,
}

impl SimplePolytope {
    /// Validates raw combinatorial data. Vertex sets may be given in any
    /// order; they are canonicalized before the checks.
    pub fn new(
        dim: usize,
        num_facets: usize,
        vertices: Vec<Vec<Facet>>,
    ) -> Result<SimplePolytope, PolytopeError> {
        validate_polytope(dim, num_facets, vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.num_facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<Facet>] {
        &self.vertices
    }

    /// Facets of vertex `v`, ascending.
    pub fn vertex(&self, v: usize) -> &[Facet] {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, facets: &[Facet]) -> Option<usize> {
        let mut key = facets.to_vec();
        key.sort_unstable();
        self.vertices.binary_search(&key).ok()
    }

    pub fn orientation(&self) -> &OrientationClass {
        &self.orientation
    }

    /// The vertex sharing with `v` the ridge `S(v) \ {f}`.
    ///
    /// Panics if `f` is not a facet of `v` or the polytope is an interval
    /// (which has no ridges).
    pub fn adjacent_vertex(&self, v: usize, f: Facet) -> usize {
        let pos = self.vertices[v]
            .binary_search(&f)
            .unwrap_or_else(|_| panic!("facet {f} does not contain vertex {v}"));
        assert!(self.dim >= 2, "an interval has no edges");
        self.neighbors[v][pos]
    }

    /// Vertices containing facet `f`.
    pub fn vertices_on_facet(&self, f: Facet) -> impl Iterator<Item = usize> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.binary_search(&f).is_ok())
            .map(|(i, _)| i)
    }

    /// Whether facets `i` and `j` meet (share a vertex, or a codim-2 face).
    pub fn facets_meet(&self, i: Facet, j: Facet) -> bool {
        self.vertices
            .iter()
            .any(|s| s.binary_search(&i).is_ok() && s.binary_search(&j).is_ok())
    }

    /// `(f_0, ..., f_{n-1})`, where `f_{n-k}` counts faces of codimension `k`.
    pub fn f_vector(&self) -> Vec<u64> {
        let n = self.dim;
        let mut f = vec![0u64; n];
        for k in 1..=n {
            let mut faces: HashSet<Vec<Facet>> = HashSet::new();
            for s in &self.vertices {
                for_each_subset(s, k, &mut |sub| {
                    faces.insert(sub.to_vec());
                });
            }
            f[n - k] = faces.len() as u64;
        }
        f
    }

    /// `(h_0, ..., h_n)` with `sum h_i t^(n-i) = sum c_i (t-1)^(n-i)`, where
    /// `c_i` counts faces of codimension `i` (simplices of dimension `i - 1`
    /// in the dual sphere, with `c_0 = 1`).
    pub fn h_vector(&self) -> Vec<i64> {
        let n = self.dim;
        let f = self.f_vector();
        let f_ext: Vec<i64> = std::iter::once(1)
            .chain(f.iter().rev().map(|&x| x as i64))
            .collect();
        let mut h = vec![0i64; n + 1];
        for (i, &fi) in f_ext.iter().enumerate() {
            // (t-1)^(n-i) = sum_j C(n-i, j) t^j (-1)^(n-i-j);
            // coefficient of t^j lands in h_{n-j}.
            let e = n - i;
            for j in 0..=e {
                let term = fi * binomial(e, j) as i64;
                if (e - j).is_multiple_of(2) {
                    h[n - j] += term;
                } else {
                    h[n - j] -= term;
                }
            }
        }
        h
    }

    /// Relabels facets by `perm` (facet `j` becomes `perm[j]`) and revalidates.
    pub fn relabel(&self, perm: &[Facet]) -> Result<SimplePolytope, PolytopeError> {
        let vertices = self
            .vertices
            .iter()
            .map(|s| s.iter().map(|&f| perm[f]).collect())
            .collect();
        validate_polytope(self.dim, self.num_facets, vertices)
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn for_each_subset(set: &[Facet], k: usize, visit: &mut dyn FnMut(&[Facet])) {
    fn rec(
        set: &[Facet],
        k: usize,
        start: usize,
        cur: &mut Vec<Facet>,
        visit: &mut dyn FnMut(&[Facet]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - cur.len() {
                break;
            }
            cur.push(set[i]);
            rec(set, k, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(set, k, 0, &mut Vec::with_capacity(k), visit);
}

/// Validates raw combinatorial data into a [`SimplePolytope`].
pub fn validate_polytope(
    dim: usize,
    num_facets: usize,
    raw_vertices: Vec<Vec<Facet>>,
) -> Result<SimplePolytope, PolytopeError> {
    if dim == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    if num_facets < dim + 1 {
        return Err(PolytopeError::TooFewFacets {
            dim,
            facets: num_facets,
        });
    }
    let mut vertices = Vec::with_capacity(raw_vertices.len());
    for raw in raw_vertices {
        let mut s = raw.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != dim {
            return Err(PolytopeError::WrongVertexSize {
                vertex: raw,
                size: s.len(),
                dim,
            });
        }
        if let Some(&facet) = s.iter().find(|&&f| f >= num_facets) {
            return Err(PolytopeError::FacetOutOfRange {
                vertex: s,
                facet,
                facets: num_facets,
            });
        }
        vertices.push(s);
    }
    vertices.sort();
    if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
        return Err(PolytopeError::DuplicateVertex(w[0].clone()));
    }
    let mut used = vec![false; num_facets];
    for s in &vertices {
        for &f in s {
            used[f] = true;
        }
    }
    if let Some(f) = used.iter().position(|&u| !u) {
        return Err(PolytopeError::UnusedFacet(f));
    }

    if dim == 1 {
        if num_facets != 2 || vertices.len() != 2 {
            return Err(PolytopeError::NotAnInterval {
                facets: num_facets,
                vertices: vertices.len(),
            });
        }
        return Ok(SimplePolytope {
            dim,
            num_facets,
            neighbors: vec![Vec::new(); 2],
            vertices,
            orientation: OrientationClass {
                signs: vec![Sign::Plus, Sign::Minus],
            },
        });
    }

    let mut ridges: BTreeMap<Vec<Facet>, Vec<usize>> = BTreeMap::new();
    for (v, s) in vertices.iter().enumerate() {
        for p in 0..dim {
            ridges.entry(without(s, p)).or_default().push(v);
        }
    }
    let mut neighbors = vec![vec![usize::MAX; dim]; vertices.len()];
    for (v, s) in vertices.iter().enumerate() {
        for p in 0..dim {
            let ridge = without(s, p);
            let owners = &ridges[&ridge];
            if owners.len() != 2 {
                return Err(PolytopeError::RidgeViolation {
                    vertex: s.clone(),
                    facet: s[p],
                    ridge,
                    partners: owners.len() - 1,
                });
            }
            neighbors[v][p] = if owners[0] == v { owners[1] } else { owners[0] };
        }
    }

    let orientation = propagate_orientation(&vertices, &neighbors)?;
    Ok(SimplePolytope {
        dim,
        num_facets,
        vertices,
        neighbors,
        orientation,
    })
}

fn without(s: &[Facet], p: usize) -> Vec<Facet> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(_, &f)| f)
        .collect()
}

/// Breadth-first propagation from the lexicographically smallest vertex,
/// crossing ridges in ascending facet order.
fn propagate_orientation(
    vertices: &[Vec<Facet>],
    neighbors: &[Vec<usize>],
) -> Result<OrientationClass, PolytopeError> {
    let mut signs: Vec<Option<Sign>> = vec![None; vertices.len()];
    let mut queue = VecDeque::new();
    signs[0] = Some(Sign::Plus);
    queue.push_back(0);
    while let Some(v) = queue.pop_front() {
        let sv = signs[v].expect("queued vertices are signed");
        for (p, &w) in neighbors[v].iter().enumerate() {
            let dropped = vertices[v][p];
            let q = vertices[w]
                .iter()
                .position(|f| vertices[v].binary_search(f).is_err())
                .expect("partner differs in exactly one facet");
            debug_assert_ne!(vertices[w][q], dropped);
            let sw = -(Sign::alternating(p + q) * sv);
            match signs[w] {
                None => {
                    signs[w] = Some(sw);
                    queue.push_back(w);
                }
                Some(existing) if existing != sw => {
                    return Err(PolytopeError::NonOrientable(vertices[w].clone()));
                }
                Some(_) => {}
            }
        }
    }
    if let Some(v) = signs.iter().position(Option::is_none) {
        return Err(PolytopeError::Disconnected(vertices[v].clone()));
    }
    Ok(OrientationClass {
        signs: signs.into_iter().map(|s| s.unwrap()).collect(),
    })
}

/// Orientation class of a validated polytope.
pub fn orient_dual_sphere(polytope: &SimplePolytope) -> &OrientationClass {
    polytope.orientation()
}

/// Checks the coherence rule across every ridge, independently of the
/// propagation order used to build the class.
pub fn is_coherent(polytope: &SimplePolytope, orientation: &OrientationClass) -> bool {
    if polytope.dim() == 1 {
        return orientation.signs().len() == 2 && orientation.sign(0) != orientation.sign(1);
    }
    let mut ridges: BTreeMap<Vec<Facet>, Vec<Sign>> = BTreeMap::new();
    for (v, s) in polytope.vertices().iter().enumerate() {
        for p in 0..s.len() {
            let induced = Sign::alternating(p) * orientation.sign(v);
            ridges.entry(without(s, p)).or_default().push(induced);
        }
    }
    ridges
        .values()
        .all(|induced| induced.len() == 2 && induced[0] != induced[1])
}
