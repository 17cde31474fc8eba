//! Exact facet enumeration for a full-dimensional point set.
//!
//! Facets are found by pivoting: an initial supporting hyperplane is rotated
//! until its contact set spans a hyperplane, and every further facet is reached
//! by rotating a known facet about one of its ridges. Ridges are the facets of
//! a facet, computed recursively inside that facet's own affine chart.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use super::linalg::{affine_chart, affine_dim, dot, nullspace, sub};
use super::Rat;

struct Facet {
    members: Vec<usize>,
    normal: Vec<Rat>,
    offset: Rat,
}

/// Facets of `conv(points)`, each as the sorted list of point indices lying on
/// it. `points` must be pairwise distinct and affinely span `R^r` where `r` is
/// the coordinate length.
pub fn facets(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let r = points.first().map_or(0, |p| p.len());
    debug_assert_eq!(affine_dim(points), r as isize);
    match r {
        0 => Vec::new(),
        1 => {
            let min = points.iter().map(|p| &p[0]).min().unwrap();
            let max = points.iter().map(|p| &p[0]).max().unwrap();
            let lo = (0..points.len()).filter(|&i| &points[i][0] == min).collect();
            let hi = (0..points.len()).filter(|&i| &points[i][0] == max).collect();
            vec![lo, hi]
        }
        _ => pivot_facets(points, r),
    }
}

fn pivot_facets(points: &[Vec<Rat>], r: usize) -> Vec<Vec<usize>> {
    let first = initial_facet(points, r);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(first.members.clone());
    let mut queue = VecDeque::from([first]);
    let mut out = Vec::new();
    while let Some(facet) = queue.pop_front() {
        for ridge in ridges_of(points, &facet) {
            let next = rotate_about_ridge(points, &facet, &ridge, r);
            if seen.insert(next.members.clone()) {
                queue.push_back(next);
            }
        }
        out.push(facet.members);
    }
    out.sort();
    out
}

fn contact(points: &[Vec<Rat>], normal: &[Rat], offset: &Rat) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| &dot(normal, &points[i]) == offset)
        .collect()
}

fn directions(points: &[Vec<Rat>], idx: &[usize]) -> Vec<Vec<Rat>> {
    idx[1..]
        .iter()
        .map(|&i| sub(&points[i], &points[idx[0]]))
        .collect()
}

/// Rotates `normal` by `t * dir` with the smallest `t > 0` that makes a new
/// point tight. Points currently tight must stay tight and `dir` must be
/// constant on them. Returns `None` when no point ever becomes tight.
fn rotate_step(
    points: &[Vec<Rat>],
    normal: &[Rat],
    offset: &Rat,
    anchor: &[Rat],
    dir: &[Rat],
) -> Option<(Vec<Rat>, Rat)> {
    let anchor_dir = dot(dir, anchor);
    let mut best: Option<Rat> = None;
    for p in points {
        let gap = offset - dot(normal, p);
        let delta = dot(dir, p) - &anchor_dir;
        if gap.is_positive() && delta.is_positive() {
            let t = gap / delta;
            if best.as_ref().is_none_or(|b| &t < b) {
                best = Some(t);
            }
        }
    }
    let t = best?;
    let new_normal: Vec<Rat> = normal.iter().zip(dir).map(|(a, u)| a + &t * u).collect();
    let new_offset = dot(&new_normal, anchor);
    Some((new_normal, new_offset))
}

/// Turns the supporting hyperplane `(normal, offset)` towards `dir` about the
/// affine span of `tight` until its contact set grows. The turn goes through
/// `normal + t dir`, then `dir` itself, then `dir - t normal`, covering every
/// angle in `(0, pi)`.
fn rotate(
    points: &[Vec<Rat>],
    normal: &[Rat],
    offset: &Rat,
    tight: &[usize],
    dir: &[Rat],
) -> (Vec<Rat>, Rat) {
    let anchor = &points[tight[0]];
    if let Some(found) = rotate_step(points, normal, offset, anchor, dir) {
        return found;
    }
    let dir_offset = dot(dir, anchor);
    if contact(points, dir, &dir_offset).len() > tight.len() {
        return (dir.to_vec(), dir_offset);
    }
    let back: Vec<Rat> = normal.iter().map(|x| -x).collect();
    rotate_step(points, dir, &dir_offset, anchor, &back)
        .expect("a full-dimensional point set cannot be supported in every direction")
}

fn initial_facet(points: &[Vec<Rat>], r: usize) -> Facet {
    let mut normal = vec![Rat::zero(); r];
    normal[0] = Rat::from_integer(1.into());
    let mut offset = points.iter().map(|p| p[0].clone()).max().unwrap();
    let mut members = contact(points, &normal, &offset);
    while affine_dim(&members.iter().map(|&i| &points[i][..]).collect::<Vec<_>>()) < r as isize - 1 {
        let mut cons = directions(points, &members);
        cons.push(normal.clone());
        let dir = nullspace(&cons, r)
            .into_iter()
            .next()
            .expect("rotation direction exists below facet dimension");
        let (n, o) = rotate(points, &normal, &offset, &members, &dir);
        normal = n;
        offset = o;
        members = contact(points, &normal, &offset);
    }
    Facet { members, normal, offset }
}

fn ridges_of(points: &[Vec<Rat>], facet: &Facet) -> Vec<Vec<usize>> {
    let sub_points: Vec<Vec<Rat>> = facet.members.iter().map(|&i| points[i].clone()).collect();
    let chart = affine_chart(&sub_points);
    facets(&chart)
        .into_iter()
        .map(|ridge| ridge.into_iter().map(|j| facet.members[j]).collect())
        .collect()
}

fn rotate_about_ridge(points: &[Vec<Rat>], facet: &Facet, ridge: &[usize], r: usize) -> Facet {
    let mut cons = directions(points, ridge);
    cons.push(facet.normal.clone());
    let mut dir = nullspace(&cons, r)
        .into_iter()
        .next()
        .expect("ridge has a one-dimensional normal direction inside its facet");
    let anchor = &points[ridge[0]];
    let off_ridge = facet
        .members
        .iter()
        .find(|i| !ridge.contains(i))
        .expect("facet strictly contains its ridge");
    if dot(&dir, &sub(&points[*off_ridge], anchor)).is_positive() {
        dir.iter_mut().for_each(|x| *x = -x.clone());
    }
    let (normal, offset) = rotate(points, &facet.normal, &facet.offset, ridge, &dir);
    let members = contact(points, &normal, &offset);
    Facet { members, normal, offset }
}
