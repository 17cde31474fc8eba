//! Incidence algebras over `Z[x]`, kernels, Kazhdan-Lusztig-Stanley
//! functions and Chow polynomials, with the polytope-specific kernel on the
//! vertex poset and the check that its Chow polynomial is the h-polynomial of
//! the dual monotone path polytope.

mod incidence;
mod poly;

use serde::Serialize;
use thiserror::Error;

pub use incidence::{
    char_kernel, chow_polynomial, invert, is_kernel, kls_functions, mobius, multiply,
    reduced_kernel, rev, GradedPoset, IncElem, KernelCheck, PosetError,
};
pub use poly::{gamma_vector, shape_checks, IntPoly, NotPalindromic, ShapeFlags};

use crate::exactgeom::{is_subset, FaceLattice};
use crate::monopath::{ch_faces, ChError};
use crate::oriented::{vertex_poset, Analysis, OrientError, OrientedPolytope, VertexPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error(transparent)]
    NotStratified(#[from] OrientError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Ch(#[from] ChError),
}

impl GradedPoset {
    pub fn from_vertex_poset(vp: &VertexPoset) -> Self {
        GradedPoset::new(vp.le.clone(), vp.rank.iter().map(|&r| r as i64).collect())
            .expect("vertex poset is a ranked partial order")
    }
}

/// `kappa_vw = sum (x - 1)^{dim F}` over faces with minimum `v` and maximum
/// `w`. On the diagonal the only such face is the vertex itself, giving 1.
pub fn polytope_kernel(op: &OrientedPolytope, x: &GradedPoset) -> IncElem {
    let lat = op.base().lattice();
    x.filled(|v, w| {
        op.faces_between(v, w).iter().fold(IntPoly::zero(), |acc, &f| {
            &acc + &IntPoly::x_minus_one_pow(lat.face(f).dim as usize)
        })
    })
}

/// The vertex poset and the polytope kernel on it. Requires Assumption S.
pub fn vertex_kernel(
    op: &OrientedPolytope,
    analysis: &Analysis,
) -> Result<(VertexPoset, GradedPoset, IncElem), AlgError> {
    let vp = vertex_poset(op, analysis)?;
    let x = GradedPoset::from_vertex_poset(&vp);
    let k = polytope_kernel(op, &x);
    Ok((vp, x, k))
}

/// Face poset including the empty face, ranked by dimension, with the kernel
/// `lambda_FG = (x - 1)^{dim G - dim F}`.
pub fn face_poset(lat: &FaceLattice) -> (GradedPoset, IncElem) {
    let faces = lat.faces();
    let le = faces
        .iter()
        .map(|f| faces.iter().map(|g| is_subset(&f.vertices, &g.vertices)).collect())
        .collect();
    let x = GradedPoset::new(le, faces.iter().map(|f| f.dim as i64).collect())
        .expect("face lattice is ranked by dimension");
    let lambda = x.filled(|s, t| IntPoly::x_minus_one_pow(x.rho(s, t)));
    (x, lambda)
}

/// `h` of the dual of a `d`-polytope with face numbers `f_{-1}, ..., f_d`:
/// `sum_{j=0}^{d} f_j (x - 1)^j`.
pub fn h_polynomial_dual(f_vector: &[usize]) -> IntPoly {
    f_vector
        .iter()
        .skip(1)
        .enumerate()
        .fold(IntPoly::zero(), |acc, (j, &fj)| {
            &acc + &IntPoly::x_minus_one_pow(j).scale(&fj.into())
        })
}

/// One interval of the main-theorem comparison.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IntervalCheck {
    pub v: usize,
    pub w: usize,
    pub chow: IntPoly,
    pub h_dual: IntPoly,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub intervals: Vec<IntervalCheck>,
    pub all_pass: bool,
}

/// `h` of the dual of `CH(F+(v) ∩ F-(w))`. A single vertex has the empty
/// monotone path polytope, whose h-polynomial is 1.
pub fn interval_h(op: &OrientedPolytope, analysis: &Analysis, v: usize, w: usize) -> Result<IntPoly, AlgError> {
    if v == w {
        return Ok(IntPoly::one());
    }
    let g = analysis
        .interval_face(op, v, w)
        .ok_or_else(|| OrientError::NotStratified(format!("no face between {v} and {w}")))?;
    let sub = op.induced_on_face(g);
    let sub_analysis = Analysis::new(&sub);
    let ch = ch_faces(&sub, &sub_analysis)?;
    Ok(h_polynomial_dual(&ch.f_vector()))
}

/// Compares `H_vw` with the h-polynomial of the dual monotone path polytope
/// of `F+(v) ∩ F-(w)` on every interval of the vertex poset.
pub fn verify_main_theorem(op: &OrientedPolytope, analysis: &Analysis) -> Result<MainTheoremReport, AlgError> {
    let (_, x, k) = vertex_kernel(op, analysis)?;
    let h = chow_polynomial(&x, &k)?;
    let mut intervals = Vec::new();
    for (v, w) in x.intervals() {
        let h_dual = interval_h(op, analysis, v, w)?;
        let chow = h.get(v, w).clone();
        intervals.push(IntervalCheck { v, w, pass: chow == h_dual, chow, h_dual });
    }
    Ok(MainTheoremReport { all_pass: intervals.iter().all(|c| c.pass), intervals })
}

/// Checks that the KLS functions of the vertex kernel are the face-poset
/// KLS polynomials `f_vw = F_{v, F[v,w]}` and `g_vw = F_{w, F[v,w]}`.
pub fn kls_match_face_poset(
    op: &OrientedPolytope,
    analysis: &Analysis,
    x: &GradedPoset,
    f: &IncElem,
    g: &IncElem,
) -> Result<bool, AlgError> {
    let lat = op.base().lattice();
    let (fx, lambda) = face_poset(lat);
    let (face_f, _) = kls_functions(&fx, &lambda)?;
    let vertex_face = |v: usize| lat.index_of(&[v]).expect("vertex is a face");
    for (v, w) in x.intervals() {
        let top = if v == w {
            vertex_face(v)
        } else {
            analysis.interval_face(op, v, w).expect("interval face")
        };
        if face_f.get(vertex_face(v), top) != f.get(v, w)
            || face_f.get(vertex_face(w), top) != g.get(v, w)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which kernel the polynomial report is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelChoice {
    /// Face counts between the interval's ends, weighted by `(x - 1)^dim`.
    #[serde(rename = "paper")]
    Polytope,
    Chi,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalPolys {
    pub v: usize,
    pub w: usize,
    pub rho: usize,
    pub kappa: IntPoly,
    pub kappa_bar: IntPoly,
    pub chi: IntPoly,
    #[serde(rename = "H")]
    pub h: IntPoly,
    pub f: Option<IntPoly>,
    pub g: Option<IntPoly>,
    pub flags: ShapeFlags,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyReport {
    pub kernel: KernelChoice,
    pub is_kernel: bool,
    pub failing_interval: Option<(usize, usize)>,
    pub intervals: Vec<IntervalPolys>,
    pub main_theorem: Option<MainTheoremReport>,
}

/// Per-interval polynomials of the vertex poset.
pub fn poly_report(
    op: &OrientedPolytope,
    analysis: &Analysis,
    choice: KernelChoice,
    verify_main: bool,
) -> Result<PolyReport, AlgError> {
    let (_, x, kappa) = vertex_kernel(op, analysis)?;
    let chi = char_kernel(&x);
    let k = match choice {
        KernelChoice::Polytope => kappa,
        KernelChoice::Chi => chi.clone(),
    };
    let check = is_kernel(&x, &k);
    let kb = reduced_kernel(&x, &k)?;
    let h = chow_polynomial(&x, &k)?;
    let kls = if check.is_kernel { kls_functions(&x, &k).ok() } else { None };
    let intervals = x
        .intervals()
        .into_iter()
        .map(|(v, w)| {
            let rho = x.rho(v, w);
            IntervalPolys {
                v,
                w,
                rho,
                kappa: k.get(v, w).clone(),
                kappa_bar: kb.get(v, w).clone(),
                chi: chi.get(v, w).clone(),
                h: h.get(v, w).clone(),
                f: kls.as_ref().map(|(f, _)| f.get(v, w).clone()),
                g: kls.as_ref().map(|(_, g)| g.get(v, w).clone()),
                flags: shape_checks(h.get(v, w), rho.saturating_sub(1)),
            }
        })
        .collect();
    let main_theorem = if verify_main { Some(verify_main_theorem(op, analysis)?) } else { None };
    Ok(PolyReport {
        kernel: choice,
        is_kernel: check.is_kernel,
        failing_interval: check.failing,
        intervals,
        main_theorem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build_str;
    use crate::oriented::orient;

    fn setup(text: &str) -> (OrientedPolytope, Analysis) {
        let (p, ell) = build_str(text).unwrap();
        let op = orient(p, ell).unwrap();
        let a = Analysis::new(&op);
        (op, a)
    }

    #[test]
    fn h_of_small_duals() {
        assert_eq!(h_polynomial_dual(&[1, 1]), IntPoly::one());
        assert_eq!(h_polynomial_dual(&[1, 2, 1]), IntPoly::from_ints(&[1, 1]));
        assert_eq!(h_polynomial_dual(&[1, 6, 6, 1]), IntPoly::from_ints(&[1, 4, 1]));
    }

    #[test]
    fn segment_kernel() {
        let (op, a) = setup("simplex(1)");
        let (_, x, k) = vertex_kernel(&op, &a).unwrap();
        assert_eq!(k.get(0, 1), &IntPoly::from_ints(&[-1, 1]));
        let kb = reduced_kernel(&x, &k).unwrap();
        assert_eq!(kb.get(0, 1), &IntPoly::one());
        assert_eq!(kb.get(0, 0), &IntPoly::constant(-1));
        assert_eq!(chow_polynomial(&x, &k).unwrap().get(0, 1), &IntPoly::one());
    }

    #[test]
    fn cube_chow_polynomial() {
        let (op, a) = setup("cube(3)");
        let (_, x, k) = vertex_kernel(&op, &a).unwrap();
        assert!(is_kernel(&x, &k).is_kernel);
        let h = chow_polynomial(&x, &k).unwrap();
        assert_eq!(h.get(op.source(), op.sink()), &IntPoly::from_ints(&[1, 4, 1]));
        let (f, g) = kls_functions(&x, &k).unwrap();
        assert_eq!(f.get(op.source(), op.sink()), &IntPoly::one());
        assert_eq!(g.get(op.source(), op.sink()), &IntPoly::one());
        assert!(kls_match_face_poset(&op, &a, &x, &f, &g).unwrap());
        assert!(verify_main_theorem(&op, &a).unwrap().all_pass);
    }

    #[test]
    fn trapezohedron_kernel_is_not_characteristic() {
        let (op, a) = setup("trapezohedron(4)");
        let (_, x, k) = vertex_kernel(&op, &a).unwrap();
        let (s, t) = (op.source(), op.sink());
        assert_eq!(k.get(s, t), &IntPoly::x_minus_one_pow(3));
        assert_ne!(char_kernel(&x).get(s, t), k.get(s, t));
    }

    #[test]
    fn face_poset_lambda_is_a_kernel() {
        let (op, _) = setup("pyrMin(quadSep)");
        let (x, lambda) = face_poset(op.base().lattice());
        assert!(is_kernel(&x, &lambda).is_kernel);
        let (f, _) = kls_functions(&x, &lambda).unwrap();
        // the apex of a square pyramid is not simple: its f-polynomial is 1 + x
        let apex = op.source();
        let v = op.base().lattice().index_of(&[apex]).unwrap();
        assert_eq!(f.get(v, op.base().lattice().top()), &IntPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn report_refuses_unstratified() {
        let (op, a) = setup("nostrat5");
        assert!(matches!(
            poly_report(&op, &a, KernelChoice::Polytope, false),
            Err(AlgError::NotStratified(_))
        ));
    }
}
