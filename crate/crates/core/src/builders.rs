//! Constructors for the example zoo and the closure operations used to grow
//! the corpus, together with a small expression language and JSON file I/O.
//!
//! Grammar:
//!
//! ```text
//! expr  := name | name "(" args ")"
//! args  := int | expr | expr "," expr
//! name  := simplex | cube | ngon | quadSep | quadAdj | nostrat5
//!        | trapezohedron | prod | pyrMin | pyrMax
//! ```

use std::fmt;
use std::path::Path;

use num_traits::Signed;
use thiserror::Error;

use crate::exactgeom::json::{JsonError, PolytopeDoc};
use crate::exactgeom::linalg::nullspace;
use crate::exactgeom::{rat, ratio, GeomError, LinForm, Point, Polytope, Rat};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("parse error at line {line}, column {col}: expected {expected}")]
    Parse { line: usize, col: usize, expected: String },
    #[error("{name} takes {expected} argument(s), got {got}")]
    BadArity { name: String, expected: usize, got: usize },
    #[error("bad parameter for {name}: {reason}")]
    BadParameter { name: String, reason: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Simplex(usize),
    Cube(usize),
    Ngon(usize),
    QuadSep,
    QuadAdj,
    Nostrat5,
    Trapezohedron(usize),
    Prod(Box<Expr>, Box<Expr>),
    PyrMin(Box<Expr>),
    PyrMax(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Simplex(n) => write!(f, "simplex({n})"),
            Expr::Cube(n) => write!(f, "cube({n})"),
            Expr::Ngon(n) => write!(f, "ngon({n})"),
            Expr::QuadSep => write!(f, "quadSep"),
            Expr::QuadAdj => write!(f, "quadAdj"),
            Expr::Nostrat5 => write!(f, "nostrat5"),
            Expr::Trapezohedron(n) => write!(f, "trapezohedron({n})"),
            Expr::Prod(a, b) => write!(f, "prod({a},{b})"),
            Expr::PyrMin(a) => write!(f, "pyrMin({a})"),
            Expr::PyrMax(a) => write!(f, "pyrMax({a})"),
        }
    }
}

impl Expr {
    /// Number of vertices the built polytope will have, saturating.
    pub fn vertex_count(&self) -> usize {
        match self {
            Expr::Simplex(n) => n.saturating_add(1),
            Expr::Cube(n) => 1usize.checked_shl(*n as u32).unwrap_or(usize::MAX),
            Expr::Ngon(n) => *n,
            Expr::QuadSep | Expr::QuadAdj => 4,
            Expr::Nostrat5 => 5,
            Expr::Trapezohedron(n) => n.saturating_mul(2).saturating_add(2),
            Expr::Prod(a, b) => a.vertex_count().saturating_mul(b.vertex_count()),
            Expr::PyrMin(a) | Expr::PyrMax(a) => a.vertex_count().saturating_add(1),
        }
    }

    /// Number of leaves of the expression tree.
    pub fn leaves(&self) -> usize {
        match self {
            Expr::Prod(a, b) => a.leaves() + b.leaves(),
            Expr::PyrMin(a) | Expr::PyrMax(a) => a.leaves(),
            _ => 1,
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

enum Arg {
    Int(usize),
    Expr(Expr),
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, expected: &str) -> BuildError {
        let before = &self.text[..at];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map_or(at, |i| at - i - 1) + 1;
        BuildError::Parse { line, col, expected: expected.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn arg(&mut self) -> Result<Arg, BuildError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let digits = self.take_while(|c| c.is_ascii_digit());
                digits
                    .parse()
                    .map(Arg::Int)
                    .map_err(|_| self.error(at, "an integer that fits in usize"))
            }
            Some('-') => Err(self.error(self.pos, "a nonnegative integer or an expression")),
            _ => self.expr().map(Arg::Expr),
        }
    }

    fn expr(&mut self) -> Result<Expr, BuildError> {
        self.skip_ws();
        let at = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if name.is_empty() {
            return Err(self.error(at, "a constructor name"));
        }
        let mut args = Vec::new();
        if self.eat('(')
            && !self.eat(')') {
                loop {
                    args.push(self.arg()?);
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.error(self.pos, "',' or ')'"));
                    }
                }
            }
        make(name, args).map_err(|e| match e {
            BuildError::Parse { expected, .. } => self.error(at, &expected),
            other => other,
        })
    }
}

fn make(name: &str, args: Vec<Arg>) -> Result<Expr, BuildError> {
    let arity = |expected: usize| {
        if args.len() == expected {
            Ok(())
        } else {
            Err(BuildError::BadArity { name: name.to_string(), expected, got: args.len() })
        }
    };
    let bad = |reason: String| BuildError::BadParameter { name: name.to_string(), reason };
    let int_arg = |args: &[Arg], min: usize| -> Result<usize, BuildError> {
        match &args[0] {
            Arg::Int(n) if *n >= min => Ok(*n),
            Arg::Int(n) => Err(bad(format!("{n} is below the minimum {min}"))),
            Arg::Expr(_) => Err(bad("expected an integer argument".into())),
        }
    };
    let expr_arg = |a: Arg| -> Result<Box<Expr>, BuildError> {
        match a {
            Arg::Expr(e) => Ok(Box::new(e)),
            Arg::Int(_) => Err(bad("expected an expression argument".into())),
        }
    };
    match name {
        "simplex" => arity(1).and_then(|_| Ok(Expr::Simplex(int_arg(&args, 1)?))),
        "cube" => arity(1).and_then(|_| Ok(Expr::Cube(int_arg(&args, 1)?))),
        "ngon" => arity(1).and_then(|_| Ok(Expr::Ngon(int_arg(&args, 3)?))),
        "trapezohedron" => arity(1).and_then(|_| Ok(Expr::Trapezohedron(int_arg(&args, 3)?))),
        "quadSep" => arity(0).map(|_| Expr::QuadSep),
        "quadAdj" => arity(0).map(|_| Expr::QuadAdj),
        "nostrat5" => arity(0).map(|_| Expr::Nostrat5),
        "prod" => {
            arity(2)?;
            let mut it = args.into_iter();
            let a = expr_arg(it.next().unwrap())?;
            let b = expr_arg(it.next().unwrap())?;
            Ok(Expr::Prod(a, b))
        }
        "pyrMin" | "pyrMax" => {
            arity(1)?;
            let a = expr_arg(args.into_iter().next().unwrap())?;
            Ok(if name == "pyrMin" { Expr::PyrMin(a) } else { Expr::PyrMax(a) })
        }
        _ => Err(BuildError::Parse { line: 0, col: 0, expected: "a constructor name".into() }),
    }
}

pub fn parse(text: &str) -> Result<Expr, BuildError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error(p.pos, "end of input"));
    }
    Ok(e)
}

pub fn build(e: &Expr) -> Result<(Polytope, LinForm), BuildError> {
    match e {
        Expr::Simplex(n) => simplex(*n),
        Expr::Cube(n) => cube(*n),
        Expr::Ngon(n) => ngon(*n),
        Expr::QuadSep => planar(&[[0, 3], [2, 2], [-1, 1], [0, 0]]),
        Expr::QuadAdj => planar(&[[0, 2], [4, 1], [4, -1], [0, -2]]),
        Expr::Nostrat5 => nostrat5(),
        Expr::Trapezohedron(n) => trapezohedron(*n),
        Expr::Prod(a, b) => {
            let (p, l1) = build(a)?;
            let (q, l2) = build(b)?;
            product(&p, &l1, &q, &l2)
        }
        Expr::PyrMin(a) => {
            let (p, l) = build(a)?;
            pyramid(&p, &l, false)
        }
        Expr::PyrMax(a) => {
            let (p, l) = build(a)?;
            pyramid(&p, &l, true)
        }
    }
}

/// Parses and builds in one step.
pub fn build_str(text: &str) -> Result<(Polytope, LinForm), BuildError> {
    build(&parse(text)?)
}

fn simplex(n: usize) -> Result<(Polytope, LinForm), BuildError> {
    let mut pts = vec![Point(vec![rat(0); n])];
    for i in 0..n {
        let mut c = vec![rat(0); n];
        c[i] = rat(1);
        pts.push(Point(c));
    }
    let ell = LinForm::new((1..=n as i64).map(rat).collect());
    Ok((Polytope::new(pts)?, ell))
}

fn cube(n: usize) -> Result<(Polytope, LinForm), BuildError> {
    if n >= usize::BITS as usize {
        return Err(BuildError::BadParameter { name: "cube".into(), reason: format!("{n} is too large") });
    }
    let pts = (0..1usize << n)
        .map(|m| Point((0..n).map(|i| rat(((m >> i) & 1) as i64)).collect()))
        .collect();
    Ok((Polytope::new(pts)?, LinForm::new(vec![rat(1); n])))
}

/// Points on the parabola `y = x^2`, functional `x`.
fn ngon(n: usize) -> Result<(Polytope, LinForm), BuildError> {
    let pts = (0..n as i64).map(|t| Point::from_ints(&[t, t * t])).collect();
    Ok((Polytope::new(pts)?, LinForm::from_ints(&[1, 0])))
}

/// Polygon with the functional `y`.
fn planar(pts: &[[i64; 2]]) -> Result<(Polytope, LinForm), BuildError> {
    let pts = pts.iter().map(|p| Point::from_ints(p)).collect();
    Ok((Polytope::new(pts)?, LinForm::from_ints(&[0, 1])))
}

/// Triangular bipyramid over `A C E` with apexes `B` (bottom) and `D` (top),
/// functional `z`. Vertices are listed as A, B, C, D, E. The value order is
/// B < A < C < E < D and the 2-faces are ABC, ABE, BCE, ACD, CDE, ADE.
fn nostrat5() -> Result<(Polytope, LinForm), BuildError> {
    let pts = vec![
        Point::from_ints(&[-3, 0, 3]),
        Point::from_ints(&[1, 0, 0]),
        Point::from_ints(&[3, -3, 6]),
        Point::from_ints(&[1, 0, 12]),
        Point::from_ints(&[3, 3, 9]),
    ];
    Ok((Polytope::new(pts)?, LinForm::from_ints(&[0, 0, 1])))
}

/// A rational point near angle `theta` on the unit circle.
fn circle_point(theta: f64) -> (Rat, Rat) {
    let quarter = std::f64::consts::FRAC_PI_2;
    let turns = (theta / quarter).round();
    let rest = theta - turns * quarter;
    let t = ratio(((rest / 2.0).tan() * 1000.0).round() as i64, 1000);
    let one = rat(1);
    let d = &one + &t * &t;
    let (mut x, mut y) = ((&one - &t * &t) / &d, (rat(2) * &t) / &d);
    for _ in 0..(turns as i64).rem_euclid(4) {
        (x, y) = (-y, x);
    }
    (x, y)
}

/// Polar dual of an antiprism over an `n`-gon. The apexes are the duals of
/// the two `n`-gon faces and the functional is the height.
fn trapezohedron(n: usize) -> Result<(Polytope, LinForm), BuildError> {
    let mut anti = Vec::with_capacity(2 * n);
    if n == 4 {
        for (x, y) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            anti.push(Point::from_ints(&[x, y, 1]));
        }
        for (x, y) in [(1, 1), (-1, 1), (-1, -1), (1, -1)] {
            anti.push(Point::from_ints(&[x, y, -1]));
        }
    } else {
        for k in 0..2 * n {
            let (x, y) = circle_point(std::f64::consts::PI * k as f64 / n as f64);
            let z = if k % 2 == 0 { rat(1) } else { rat(-1) };
            anti.push(Point(vec![x, y, z]));
        }
    }
    let anti = Polytope::new(anti)?;
    let mut duals = Vec::new();
    for (_, facet) in anti.lattice().faces_of_dim(2) {
        let rows: Vec<Vec<Rat>> = facet
            .vertices
            .iter()
            .map(|&v| {
                let mut r = anti.vertex(v).0.clone();
                r.push(rat(-1));
                r
            })
            .collect();
        let ns = nullspace(&rows, 4);
        let c = &ns[0][3];
        duals.push(Point(ns[0][..3].iter().map(|x| x / c).collect()));
    }
    duals.sort();
    let p = Polytope::new(duals)?;
    let kites = p.lattice().faces_of_dim(2).filter(|(_, f)| f.vertices.len() == 4).count();
    if p.num_vertices() != 2 * n + 2 || kites != 2 * n {
        return Err(BuildError::BadParameter {
            name: "trapezohedron".into(),
            reason: format!("rational realization for n = {n} has the wrong face lattice"),
        });
    }
    Ok((p, LinForm::from_ints(&[0, 0, 1])))
}

fn values(p: &Polytope, ell: &LinForm) -> Vec<Rat> {
    p.vertices().iter().map(|v| ell.eval(v)).collect()
}

/// Cartesian product with functional `l1 + eps * l2`, where `eps` is small
/// enough that the value order is lexicographic in `(l1, l2)`.
fn product(
    p: &Polytope,
    l1: &LinForm,
    q: &Polytope,
    l2: &LinForm,
) -> Result<(Polytope, LinForm), BuildError> {
    let v1 = values(p, l1);
    let v2 = values(q, l2);
    let gap = v1
        .iter()
        .flat_map(|a| v1.iter().map(move |b| (a - b).abs()))
        .filter(|d| d > &rat(0))
        .min();
    let spread = v2.iter().max().unwrap() - v2.iter().min().unwrap();
    let eps = match gap {
        Some(g) if spread > rat(0) => g / (rat(2) * spread),
        _ => rat(1),
    };
    let pts = p
        .vertices()
        .iter()
        .flat_map(|a| {
            q.vertices()
                .iter()
                .map(move |b| Point(a.0.iter().chain(&b.0).cloned().collect()))
        })
        .collect();
    let ell = LinForm {
        coeffs: l1.coeffs.iter().cloned().chain(l2.coeffs.iter().map(|c| c * &eps)).collect(),
        constant: &l1.constant + &l2.constant * &eps,
    };
    Ok((Polytope::new(pts)?, ell))
}

/// Pyramid in one more dimension, apex over the vertex centroid, with the
/// apex value one below the minimum (or above the maximum) of `ell`.
fn pyramid(p: &Polytope, ell: &LinForm, above: bool) -> Result<(Polytope, LinForm), BuildError> {
    let n = p.ambient_dim();
    let count = rat(p.num_vertices() as i64);
    let mut centroid = vec![rat(0); n];
    for v in p.vertices() {
        for (c, x) in centroid.iter_mut().zip(&v.0) {
            *c += x;
        }
    }
    let centroid = Point(centroid.into_iter().map(|c| c / &count).collect());
    let vals = values(p, ell);
    let target = if above {
        vals.iter().max().unwrap() + rat(1)
    } else {
        vals.iter().min().unwrap() - rat(1)
    };
    let lambda = target - ell.eval(&centroid);
    let mut pts: Vec<Point> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut c = v.0.clone();
            c.push(rat(0));
            Point(c)
        })
        .collect();
    let mut apex = centroid.0;
    apex.push(rat(1));
    pts.push(Point(apex));
    let mut coeffs = ell.coeffs.clone();
    coeffs.push(lambda);
    Ok((Polytope::new(pts)?, LinForm { coeffs, constant: ell.constant.clone() }))
}

pub fn to_json(p: &Polytope, ell: &LinForm) -> String {
    serde_json::to_string_pretty(&PolytopeDoc::from_polytope(p, ell)).expect("serializable") + "\n"
}

pub fn from_json(text: &str) -> Result<(Polytope, LinForm), BuildError> {
    let doc: PolytopeDoc = serde_json::from_str(text).map_err(JsonError::from)?;
    Ok(doc.to_polytope()?)
}

pub fn save_json(path: &Path, p: &Polytope, ell: &LinForm) -> Result<(), BuildError> {
    std::fs::write(path, to_json(p, ell))?;
    Ok(())
}

pub fn load_json(path: &Path) -> Result<(Polytope, LinForm), BuildError> {
    from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::lattice_isomorphic;

    #[test]
    fn parses_nested_expressions() {
        let e = parse("prod(cube(2),simplex(1))").unwrap();
        assert_eq!(e.leaves(), 2);
        assert_eq!(e.to_string(), "prod(cube(2),simplex(1))");
        assert_eq!(parse(" pyrMax( pyrMin(quadSep) ) ").unwrap().vertex_count(), 6);
        assert_eq!(parse("nostrat5()").unwrap(), Expr::Nostrat5);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse("prod(cube(2),\n  simplx(1))") {
            Err(BuildError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse("cube(2") {
            Err(BuildError::Parse { line: 1, col: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("cube(2) x"), Err(BuildError::Parse { .. })));
        assert!(matches!(parse("cube(-1)"), Err(BuildError::Parse { .. })));
    }

    #[test]
    fn rejects_bad_parameters_and_arity() {
        assert!(matches!(parse("cube(0)"), Err(BuildError::BadParameter { .. })));
        assert!(matches!(parse("ngon(2)"), Err(BuildError::BadParameter { .. })));
        assert!(matches!(parse("prod(cube(2))"), Err(BuildError::BadArity { .. })));
        assert!(matches!(parse("quadSep(1)"), Err(BuildError::BadArity { .. })));
        assert!(matches!(parse("pyrMin(3)"), Err(BuildError::BadParameter { .. })));
    }

    #[test]
    fn nostrat5_face_census() {
        let (p, ell) = build(&Expr::Nostrat5).unwrap();
        assert_eq!(p.lattice().f_vector(), vec![1, 5, 9, 6, 1]);
        let mut tri: Vec<Vec<usize>> =
            p.lattice().faces_of_dim(2).map(|(_, f)| f.vertices.clone()).collect();
        tri.sort();
        // A=0, B=1, C=2, D=3, E=4
        let mut expected = vec![
            vec![0, 1, 2],
            vec![0, 1, 4],
            vec![1, 2, 4],
            vec![0, 2, 3],
            vec![2, 3, 4],
            vec![0, 3, 4],
        ];
        expected.sort();
        assert_eq!(tri, expected);
        let vals = values(&p, &ell);
        assert!(vals[1] < vals[0] && vals[0] < vals[2] && vals[2] < vals[4] && vals[4] < vals[3]);
    }

    #[test]
    fn trapezohedra_have_kite_faces() {
        for n in 3..=6 {
            let (p, _) = build(&Expr::Trapezohedron(n)).unwrap();
            assert_eq!(p.lattice().f_vector(), vec![1, 2 * n + 2, 4 * n, 2 * n, 1]);
        }
        let (t3, _) = build(&Expr::Trapezohedron(3)).unwrap();
        let (c3, _) = build(&Expr::Cube(3)).unwrap();
        assert!(lattice_isomorphic(t3.lattice(), c3.lattice()).is_some());
    }

    #[test]
    fn quadrilaterals_have_expected_edges() {
        // vertices listed top to bottom: A, B, C, D
        let (sep, _) = build(&Expr::QuadSep).unwrap();
        assert!(!sep.lattice().edges().contains(&(0, 3)));
        let (adj, _) = build(&Expr::QuadAdj).unwrap();
        assert!(adj.lattice().edges().contains(&(0, 3)));
    }

    #[test]
    fn product_values_are_lexicographic() {
        let (p, ell) = build_str("prod(simplex(1),simplex(1))").unwrap();
        let mut v = values(&p, &ell);
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 4);
        assert_eq!(p.lattice().f_vector(), vec![1, 4, 4, 1]);
    }

    #[test]
    fn pyramids_put_apex_at_the_extremes() {
        let (p, ell) = build_str("pyrMax(pyrMin(quadSep))").unwrap();
        assert_eq!(p.dim(), 4);
        let v = values(&p, &ell);
        let apex_hi = &v[5];
        let apex_lo = &v[4];
        assert!(v.iter().all(|x| x <= apex_hi && x >= apex_lo));
    }

    #[test]
    fn json_round_trip() {
        let (p, ell) = build(&Expr::Trapezohedron(4)).unwrap();
        let text = to_json(&p, &ell);
        let (q, ell2) = from_json(&text).unwrap();
        assert_eq!(ell, ell2);
        assert_eq!(p.vertices(), q.vertices());
        assert!(lattice_isomorphic(p.lattice(), q.lattice()).is_some());
        assert_eq!(to_json(&q, &ell2), text);
    }
}
