use std::collections::BTreeSet;

use super::hull;
use super::linalg::{affine_chart, affine_dim};
use super::{intersect, Face, FaceLattice, GeomError, LinForm, Point, Rat};

/// Which extremum of a functional to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

/// A convex polytope given by its vertices together with its face lattice.
#[derive(Clone, Debug)]
pub struct Polytope {
    vertices: Vec<Point>,
    lattice: FaceLattice,
    ambient_dim: usize,
}

fn check_points(points: &[Point]) -> Result<usize, GeomError> {
    let first = points
        .first()
        .ok_or_else(|| GeomError::DegenerateInput("no points".into()))?;
    let n = first.dim();
    for p in points {
        if p.dim() != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: p.dim() });
        }
    }
    Ok(n)
}

/// Computes the face lattice of `conv(vertices)`.
///
/// Every input point must be a vertex of the hull; duplicates and points in
/// the hull of the others are rejected with [`GeomError::NotAVertex`].
pub fn face_lattice_from_vertices(vertices: &[Point]) -> Result<FaceLattice, GeomError> {
    check_points(vertices)?;
    let mut seen = BTreeSet::new();
    for (i, p) in vertices.iter().enumerate() {
        if !seen.insert(p) {
            return Err(GeomError::NotAVertex(i));
        }
    }
    let chart = affine_chart(vertices);
    let dim = chart[0].len() as isize;
    let facets = hull::facets(&chart);
    if let Some(bad) = non_vertices(vertices.len(), &facets, dim).first() {
        return Err(GeomError::NotAVertex(*bad));
    }
    Ok(FaceLattice::from_facets(vertices.len(), dim, &facets, |vs| {
        affine_dim(&vs.iter().map(|&i| &chart[i]).collect::<Vec<_>>())
    }))
}

/// Indices of points whose minimal face (intersection of facets through them)
/// is bigger than the point itself.
fn non_vertices(n: usize, facets: &[Vec<usize>], dim: isize) -> Vec<usize> {
    if dim == 0 {
        return Vec::new();
    }
    (0..n)
        .filter(|&i| {
            let mut meet: Option<Vec<usize>> = None;
            for f in facets.iter().filter(|f| f.binary_search(&i).is_ok()) {
                meet = Some(match meet {
                    None => f.clone(),
                    Some(m) => intersect(&m, f),
                });
            }
            meet.is_none_or(|m| m.len() != 1)
        })
        .collect()
}

/// The vertices of `conv(points)`, in the input order, duplicates removed.
pub fn hull_vertices(points: &[Point]) -> Result<Vec<Point>, GeomError> {
    check_points(points)?;
    let unique: Vec<Point> = points
        .iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .cloned()
        .collect();
    let chart = affine_chart(&unique);
    let dim = chart[0].len() as isize;
    let facets = hull::facets(&chart);
    let bad: BTreeSet<usize> = non_vertices(unique.len(), &facets, dim).into_iter().collect();
    Ok(unique
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !bad.contains(i))
        .map(|(_, p)| p)
        .collect())
}

/// Minkowski sum of the summands, as the hull of all vertex sums.
pub fn minkowski_sum(summands: &[Polytope]) -> Result<Polytope, GeomError> {
    let first = summands
        .first()
        .ok_or_else(|| GeomError::DegenerateInput("no summands".into()))?;
    let n = first.ambient_dim;
    for p in summands {
        if p.ambient_dim != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: p.ambient_dim });
        }
    }
    let mut acc: Vec<Point> = first.vertices.clone();
    for p in &summands[1..] {
        let mut cands = Vec::with_capacity(acc.len() * p.vertices.len());
        for a in &acc {
            for b in &p.vertices {
                cands.push(Point(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()));
            }
        }
        acc = hull_vertices(&cands)?;
    }
    acc.sort();
    Polytope::new(acc)
}

impl Polytope {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let lattice = face_lattice_from_vertices(&vertices)?;
        let ambient_dim = vertices[0].dim();
        Ok(Polytope { vertices, lattice, ambient_dim })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> isize {
        self.lattice.dim()
    }

    /// The face of `self` on which `mu` is minimized or maximized.
    pub fn face_of_linform(&self, mu: &LinForm, sense: Sense) -> Face {
        let values: Vec<Rat> = self.vertices.iter().map(|p| mu.eval(p)).collect();
        let best = match sense {
            Sense::Min => values.iter().min(),
            Sense::Max => values.iter().max(),
        }
        .expect("polytope is nonempty");
        let opt: Vec<usize> = (0..values.len()).filter(|&i| &values[i] == best).collect();
        let idx = self
            .lattice
            .index_of(&opt)
            .expect("optimal vertex set of a functional is a face");
        self.lattice.face(idx).clone()
    }

    /// `self ∩ {ell = c}` for `c` strictly between the extreme values of `ell`.
    pub fn slice_at_level(&self, ell: &LinForm, c: &Rat) -> Result<Polytope, GeomError> {
        let values: Vec<Rat> = self.vertices.iter().map(|p| ell.eval(p)).collect();
        let lo = values.iter().min().unwrap();
        let hi = values.iter().max().unwrap();
        if !(lo < c && c < hi) {
            return Err(GeomError::EmptySlice(c.to_string()));
        }
        let mut pts: BTreeSet<Point> = (0..values.len())
            .filter(|&i| &values[i] == c)
            .map(|i| self.vertices[i].clone())
            .collect();
        for (a, b) in self.lattice.edges() {
            let (va, vb) = (&values[a], &values[b]);
            if (va < c && c < vb) || (vb < c && c < va) {
                let t = (c - va) / (vb - va);
                let p = self.vertices[a]
                    .0
                    .iter()
                    .zip(&self.vertices[b].0)
                    .map(|(x, y)| x + &t * (y - x))
                    .collect();
                pts.insert(Point(p));
            }
        }
        Polytope::new(pts.into_iter().collect())
    }

    /// The face with lattice index `g` as a polytope in its own right. Vertex
    /// `i` of the result is vertex `face.vertices[i]` of `self`.
    pub fn face_polytope(&self, g: usize) -> Polytope {
        let face = self.lattice.face(g);
        Polytope {
            vertices: face.vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            lattice: self.lattice.restrict(g),
            ambient_dim: self.ambient_dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{ratio, rat};

    fn cube3() -> Polytope {
        let pts = (0..8)
            .map(|m| Point::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect();
        Polytope::new(pts).unwrap()
    }

    fn triangle() -> Polytope {
        Polytope::new(vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[0, 1]),
        ])
        .unwrap()
    }

    #[test]
    fn triangle_f_vector() {
        assert_eq!(triangle().lattice().f_vector(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn cube_f_vector() {
        let c = cube3();
        assert_eq!(c.lattice().f_vector(), vec![1, 8, 12, 6, 1]);
        c.lattice().validate().unwrap();
    }

    #[test]
    fn rejects_interior_and_duplicate_points() {
        let mut pts: Vec<Point> = triangle().vertices().to_vec();
        pts.push(Point(vec![ratio(1, 4), ratio(1, 4)]));
        assert_eq!(face_lattice_from_vertices(&pts), Err(GeomError::NotAVertex(3)));
        let mut dup = triangle().vertices().to_vec();
        dup.push(dup[0].clone());
        assert_eq!(face_lattice_from_vertices(&dup), Err(GeomError::NotAVertex(3)));
        let on_edge = vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[2, 0]),
            Point::from_ints(&[1, 0]),
        ];
        assert_eq!(face_lattice_from_vertices(&on_edge), Err(GeomError::NotAVertex(2)));
        assert!(matches!(
            face_lattice_from_vertices(&[]),
            Err(GeomError::DegenerateInput(_))
        ));
    }

    #[test]
    fn single_point_lattice() {
        let p = Polytope::new(vec![Point::from_ints(&[3, 4])]).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.lattice().f_vector(), vec![1, 1]);
    }

    #[test]
    fn faces_of_axis_and_diagonal_functionals() {
        let c = cube3();
        let f = c.face_of_linform(&LinForm::from_ints(&[1, 0, 0]), Sense::Min);
        assert_eq!(f.dim, 2);
        let top = c.face_of_linform(&LinForm::from_ints(&[1, 1, 1]), Sense::Max);
        assert_eq!(top.dim, 0);
        assert_eq!(c.vertex(top.vertices[0]), &Point::from_ints(&[1, 1, 1]));
        let mu = LinForm::from_ints(&[2, -1, 5]);
        assert_eq!(c.face_of_linform(&mu, Sense::Min), c.face_of_linform(&mu.neg(), Sense::Max));
    }

    #[test]
    fn midlevel_cube_slice_is_hexagon() {
        let s = cube3()
            .slice_at_level(&LinForm::from_ints(&[1, 1, 1]), &ratio(3, 2))
            .unwrap();
        assert_eq!(s.num_vertices(), 6);
        assert_eq!(s.dim(), 2);
        assert!(matches!(
            cube3().slice_at_level(&LinForm::from_ints(&[1, 1, 1]), &rat(3)),
            Err(GeomError::EmptySlice(_))
        ));
    }

    #[test]
    fn minkowski_of_two_segments_is_square() {
        let seg = |a: &[i64]| {
            Polytope::new(vec![Point::from_ints(&[0, 0]), Point::from_ints(a)]).unwrap()
        };
        let sq = minkowski_sum(&[seg(&[1, 0]), seg(&[0, 1])]).unwrap();
        assert_eq!(sq.lattice().f_vector(), vec![1, 4, 4, 1]);
        let one = minkowski_sum(&[seg(&[1, 0])]).unwrap();
        assert_eq!(one.num_vertices(), 2);
        let other = Polytope::new(vec![Point::from_ints(&[0, 0, 0])]).unwrap();
        assert!(matches!(
            minkowski_sum(&[seg(&[1, 0]), other]),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cube_level_slices_sum_to_hexagon() {
        let c = cube3();
        let ell = LinForm::from_ints(&[1, 1, 1]);
        let slices: Vec<Polytope> = [ratio(1, 2), ratio(3, 2), ratio(5, 2)]
            .iter()
            .map(|t| c.slice_at_level(&ell, t).unwrap())
            .collect();
        let sum = minkowski_sum(&slices).unwrap();
        assert_eq!(sum.lattice().f_vector(), vec![1, 6, 6, 1]);
    }
}
