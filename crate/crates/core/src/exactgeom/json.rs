//! JSON documents for polytopes and face lattices.
//!
//! Rationals are written as `"p/q"` or `"p"`, lowest terms, positive
//! denominator. Faces are listed in canonical `(dim, vertex set)` order.

use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FaceLattice, GeomError, LinForm, Point, Polytope, Rat};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllDoc {
    pub coeffs: Vec<String>,
    pub constant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub ell: EllDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub dim: isize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub faces: Vec<FaceDoc>,
    pub covers: Vec<[usize; 2]>,
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat, JsonError> {
    let bad = || JsonError::BadRational(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = num_bigint::BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = num_bigint::BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(n, d))
    } else {
        let n = num_bigint::BigInt::from_str(t).map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

impl PolytopeDoc {
    pub fn from_polytope(p: &Polytope, ell: &LinForm) -> Self {
        PolytopeDoc {
            ambient_dim: p.ambient_dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.0.iter().map(rat_to_string).collect())
                .collect(),
            ell: EllDoc {
                coeffs: ell.coeffs.iter().map(rat_to_string).collect(),
                constant: rat_to_string(&ell.constant),
            },
        }
    }

    pub fn to_polytope(&self) -> Result<(Polytope, LinForm), JsonError> {
        let n = self.ambient_dim;
        let mut pts = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != n {
                return Err(JsonError::Shape(format!(
                    "vertex {i} has {} coordinates, ambient_dim is {n}",
                    v.len()
                )));
            }
            pts.push(Point(v.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?));
        }
        if self.ell.coeffs.len() != n {
            return Err(JsonError::Shape(format!(
                "ell has {} coefficients, ambient_dim is {n}",
                self.ell.coeffs.len()
            )));
        }
        let ell = LinForm {
            coeffs: self.ell.coeffs.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()?,
            constant: parse_rat(&self.ell.constant)?,
        };
        Ok((Polytope::new(pts)?, ell))
    }
}

impl LatticeDoc {
    pub fn from_lattice(l: &FaceLattice) -> Self {
        LatticeDoc {
            faces: l
                .faces()
                .iter()
                .map(|f| FaceDoc { dim: f.dim, vertices: f.vertices.clone() })
                .collect(),
            covers: l.covers().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::ratio;

    #[test]
    fn rationals_print_in_lowest_terms() {
        assert_eq!(rat_to_string(&ratio(6, -4)), "-3/2");
        assert_eq!(rat_to_string(&ratio(4, 2)), "2");
        assert_eq!(parse_rat("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rat("6/4").unwrap(), ratio(3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn document_shape_errors() {
        let doc = PolytopeDoc {
            ambient_dim: 2,
            vertices: vec![vec!["0".into()]],
            ell: EllDoc { coeffs: vec!["1".into(), "0".into()], constant: "0".into() },
        };
        assert!(matches!(doc.to_polytope(), Err(JsonError::Shape(_))));
    }
}
