#![allow(dead_code)]

use chowtope::builders::{build_str, parse};
use chowtope::exactgeom::{hull_vertices, LinForm, Point, Polytope};
use chowtope::oriented::{orient, Analysis, OrientedPolytope};
use proptest::prelude::*;

/// Assumption-S inputs of dimension at most 4.
pub const STRATIFIED: &[&str] = &[
    "simplex(1)",
    "simplex(2)",
    "simplex(3)",
    "simplex(4)",
    "cube(2)",
    "cube(3)",
    "cube(4)",
    "ngon(3)",
    "quadSep",
    "prod(simplex(2),simplex(1))",
    "prod(cube(2),simplex(1))",
    "prod(simplex(2),simplex(2))",
    "prod(quadSep,simplex(1))",
    "pyrMin(cube(2))",
    "pyrMin(cube(3))",
    "pyrMax(cube(3))",
    "pyrMin(prod(simplex(2),simplex(1)))",
    "pyrMin(quadSep)",
    "pyrMax(quadSep)",
    "pyrMax(pyrMin(quadSep))",
    "trapezohedron(3)",
    "trapezohedron(4)",
    "trapezohedron(5)",
];

/// Inputs failing Assumption S in various ways.
pub const UNSTRATIFIED: &[&str] = &[
    "nostrat5",
    "quadAdj",
    "ngon(4)",
    "ngon(5)",
    "ngon(6)",
    "ngon(7)",
    "ngon(8)",
    "pyrMin(ngon(5))",
    "prod(quadAdj,simplex(1))",
];

pub fn setup(text: &str) -> (OrientedPolytope, Analysis) {
    let (p, ell) = build_str(text).unwrap_or_else(|e| panic!("{text}: {e}"));
    let op = orient(p, ell).unwrap_or_else(|e| panic!("{text}: {e}"));
    let a = Analysis::new(&op);
    (op, a)
}

const LEAVES: &[&str] = &[
    "simplex(1)",
    "simplex(2)",
    "simplex(3)",
    "cube(2)",
    "cube(3)",
    "ngon(3)",
    "ngon(4)",
    "ngon(5)",
    "quadSep",
    "quadAdj",
    "trapezohedron(3)",
    "trapezohedron(4)",
    "nostrat5",
];

/// Constructor expressions with at most `max_vertices` vertices.
pub fn expr(max_vertices: usize) -> impl Strategy<Value = String> {
    let leaf = prop::sample::select(LEAVES).prop_map(str::to_string);
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| format!("pyrMin({e})")),
            inner.clone().prop_map(|e| format!("pyrMax({e})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("prod({a},{b})")),
        ]
    })
    .prop_filter("too many vertices", move |e| {
        parse(e).map(|x| x.vertex_count() <= max_vertices).unwrap_or(false)
    })
}

/// Hull of random integer points with a random functional; `None` when the
/// functional is constant on an edge or the hull is lower dimensional.
pub fn random_oriented(points: &[(i64, i64, i64)], ell: (i64, i64, i64)) -> Option<OrientedPolytope> {
    let pts: Vec<Point> = points.iter().map(|&(a, b, c)| Point::from_ints(&[a, b, c])).collect();
    let verts = hull_vertices(&pts).ok()?;
    let p = Polytope::new(verts).ok()?;
    if p.dim() < 3 {
        return None;
    }
    orient(p, LinForm::from_ints(&[ell.0, ell.1, ell.2])).ok()
}

pub fn point_cloud() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::btree_set((-3i64..=3, -3i64..=3, -3i64..=3), 4..9)
        .prop_map(|s| s.into_iter().collect())
}

pub fn functional() -> impl Strategy<Value = (i64, i64, i64)> {
    (-7i64..=7, -7i64..=7, 1i64..=7)
}
