//! Exact rational polytope engine.
//!
//! Everything here works over arbitrary-precision rationals. Faces are
//! identified by the sorted set of vertex indices lying on them, so any
//! coordinate chart used internally never leaks into results.

mod hull;
mod iso;
pub mod json;
mod lattice;
pub mod linalg;
mod polytope;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use iso::{lattice_isomorphic, LatticeIso};
pub use lattice::FaceLattice;
pub use polytope::{face_lattice_from_vertices, hull_vertices, minkowski_sum, Polytope, Sense};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("input point {0} is not a vertex of the convex hull")]
    NotAVertex(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("level {0} is outside the open range of the functional on the polytope")]
    EmptySlice(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A point of `R^n` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }
}

impl AsRef<[Rat]> for Point {
    fn as_ref(&self) -> &[Rat] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Affine functional `x -> coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinForm {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl LinForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        LinForm { coeffs, constant: rat(0) }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinForm::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn eval(&self, p: &Point) -> Rat {
        linalg::dot(&self.coeffs, &p.0) + &self.constant
    }

    pub fn neg(&self) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }
}

/// A face, identified by the vertices it contains.
///
/// Ordering is by dimension first, then lexicographic on the vertex set, which
/// is the canonical order used in every serialized lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: isize,
    pub vertices: Vec<usize>,
}

impl Face {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        is_subset(&self.vertices, &other.vertices)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Subset test on sorted index lists.
pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

/// Intersection of sorted index lists.
pub fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
