mod common;

use chowtope::exactgeom::{
    hull_vertices, intersect, minkowski_sum, rat, ratio, FaceLattice, LinForm, Point, Polytope, Sense,
};
use common::{setup, STRATIFIED, UNSTRATIFIED};
use proptest::prelude::*;

fn check_lattice(lat: &FaceLattice) -> Result<(), String> {
    lat.validate()?;
    let faces = lat.faces();
    let euler: i64 = lat
        .f_vector()
        .iter()
        .enumerate()
        .map(|(i, &f)| if i % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum();
    if euler != 0 {
        return Err(format!("Euler sum {euler}"));
    }
    if faces.iter().filter(|f| f.dim == -1).count() != 1 || faces.iter().filter(|f| f.dim == lat.dim()).count() != 1 {
        return Err("no unique bottom and top".into());
    }
    for f in faces {
        for g in faces {
            if !lat.contains_face(&intersect(&f.vertices, &g.vertices)) {
                return Err(format!("{:?} ∩ {:?} is not a face", f.vertices, g.vertices));
            }
        }
    }
    let facets: Vec<&Vec<usize>> = lat.faces_of_dim(lat.dim() - 1).map(|(_, f)| &f.vertices).collect();
    for f in faces.iter().filter(|f| f.dim < lat.dim() - 1) {
        let meet = facets
            .iter()
            .filter(|g| f.vertices.iter().all(|v| g.contains(v)))
            .fold((0..lat.num_vertices()).collect::<Vec<_>>(), |acc, g| intersect(&acc, g));
        if meet != f.vertices {
            return Err(format!("{:?} is not cut out by its facets", f.vertices));
        }
    }
    Ok(())
}

#[test]
fn corpus_lattices_are_sound() {
    for name in STRATIFIED.iter().chain(UNSTRATIFIED) {
        let (op, _) = setup(name);
        check_lattice(op.base().lattice()).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn slices_drop_one_dimension() {
    for name in STRATIFIED.iter().chain(UNSTRATIFIED) {
        let (op, _) = setup(name);
        let mut levels = op.values().to_vec();
        levels.sort();
        levels.dedup();
        for w in levels.windows(2) {
            let c = (&w[0] + &w[1]) / rat(2);
            let s = op.base().slice_at_level(op.ell(), &c).unwrap();
            assert_eq!(s.dim(), op.dim() - 1, "{name} at {c}");
            check_lattice(s.lattice()).unwrap();
        }
    }
}

#[test]
fn minkowski_of_skew_segments_and_triangles() {
    let seg = |a: &[i64], b: &[i64]| Polytope::new(vec![Point::from_ints(a), Point::from_ints(b)]).unwrap();
    let tri = Polytope::new(vec![
        Point::from_ints(&[0, 0, 0]),
        Point::from_ints(&[1, 0, 0]),
        Point::from_ints(&[0, 1, 0]),
    ])
    .unwrap();
    // a segment leaving the plane of the triangle: a prism
    let prism = minkowski_sum(&[tri.clone(), seg(&[0, 0, 0], &[1, 1, 1])]).unwrap();
    assert_eq!(prism.dim(), 3);
    assert_eq!(prism.lattice().f_vector(), vec![1, 6, 9, 5, 1]);
    // a segment inside that plane: a quadrilateral or pentagon, dimension does not add
    let flat = minkowski_sum(&[tri, seg(&[0, 0, 0], &[1, 1, 0])]).unwrap();
    assert_eq!(flat.dim(), 2);
}

fn cloud() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::btree_set((-3i64..=3, -3i64..=3, -3i64..=3), 4..10)
        .prop_map(|s| s.into_iter().map(|(a, b, c)| Point::from_ints(&[a, b, c])).collect())
}

fn hull(points: &[Point]) -> Option<Polytope> {
    Polytope::new(hull_vertices(points).ok()?).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_hulls_are_sound(points in cloud()) {
        let p = hull(&points);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        prop_assert_eq!(check_lattice(p.lattice()), Ok(()));
    }

    #[test]
    fn min_and_max_are_dual(points in cloud(), mu in (-4i64..=4, -4i64..=4, -4i64..=4)) {
        let p = hull(&points);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        let mu = LinForm::from_ints(&[mu.0, mu.1, mu.2]);
        prop_assert_eq!(p.face_of_linform(&mu, Sense::Min), p.face_of_linform(&mu.neg(), Sense::Max));
    }

    #[test]
    fn minkowski_dimension_is_subadditive(a in cloud(), b in cloud()) {
        let (pa, pb) = (hull(&a), hull(&b));
        prop_assume!(pa.is_some() && pb.is_some());
        let (pa, pb) = (pa.unwrap(), pb.unwrap());
        let sum = minkowski_sum(&[pa.clone(), pb.clone()]).unwrap();
        prop_assert!(sum.dim() <= pa.dim() + pb.dim());
        prop_assert!(sum.dim() >= pa.dim().max(pb.dim()));
        prop_assert_eq!(check_lattice(sum.lattice()), Ok(()));
    }

    #[test]
    fn slices_of_random_hulls(points in cloud(), num in 1i64..8) {
        let p = hull(&points);
        prop_assume!(p.as_ref().is_some_and(|p| p.dim() == 3));
        let p = p.unwrap();
        let ell = LinForm::from_ints(&[1, 2, 5]);
        let mut vals: Vec<_> = p.vertices().iter().map(|v| ell.eval(v)).collect();
        vals.sort();
        let (lo, hi) = (vals[0].clone(), vals[vals.len() - 1].clone());
        let c = &lo + (&hi - &lo) * ratio(num, 8);
        let s = p.slice_at_level(&ell, &c).unwrap();
        prop_assert_eq!(s.dim(), 2);
    }
}
