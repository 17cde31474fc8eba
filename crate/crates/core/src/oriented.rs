//! Directed 1-skeleton, Białynicki-Birula cells and the vertex relations.
//!
//! A generic functional `ell` orients every edge from lower to higher value.
//! For a vertex `v`, the cell `O-(v)` is the union of relative interiors of
//! faces whose `ell`-maximum is `v`; its closure `F-(v)` is the union of those
//! faces. Both are represented by face sets, never point sets. `O+`/`F+` use
//! the minimum instead.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::exactgeom::{is_subset, Face, LinForm, Polytope, Rat};
#[cfg(test)]
use crate::exactgeom::Point;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrientError {
    #[error("functional is constant on edge {0:?}")]
    EllConstantOnEdge((usize, usize)),
    #[error("functional attains its {0} on a positive-dimensional face")]
    NonSimpleExtremum(&'static str),
    #[error("functional has {got} coefficients, polytope lives in dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Assumption S fails: {0}")]
    NotStratified(String),
}

/// Minus cells use the `ell`-maximum of a face, plus cells the minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

/// A polytope with a functional that is nonconstant on every edge.
#[derive(Clone, Debug)]
pub struct OrientedPolytope {
    base: Polytope,
    ell: LinForm,
    values: Vec<Rat>,
    directed_edges: Vec<(usize, usize)>,
    source: usize,
    sink: usize,
    face_min: Vec<usize>,
    face_max: Vec<usize>,
}

pub fn orient(base: Polytope, ell: LinForm) -> Result<OrientedPolytope, OrientError> {
    if ell.coeffs.len() != base.ambient_dim() {
        return Err(OrientError::DimensionMismatch {
            expected: base.ambient_dim(),
            got: ell.coeffs.len(),
        });
    }
    let values: Vec<Rat> = base.vertices().iter().map(|p| ell.eval(p)).collect();
    let mut directed_edges = Vec::new();
    for (a, b) in base.lattice().edges() {
        match values[a].cmp(&values[b]) {
            std::cmp::Ordering::Less => directed_edges.push((a, b)),
            std::cmp::Ordering::Greater => directed_edges.push((b, a)),
            std::cmp::Ordering::Equal => return Err(OrientError::EllConstantOnEdge((a, b))),
        }
    }
    directed_edges.sort();
    let lo = values.iter().min().expect("nonempty");
    let hi = values.iter().max().expect("nonempty");
    let argmin: Vec<usize> = (0..values.len()).filter(|&i| &values[i] == lo).collect();
    let argmax: Vec<usize> = (0..values.len()).filter(|&i| &values[i] == hi).collect();
    if argmin.len() != 1 {
        return Err(OrientError::NonSimpleExtremum("minimum"));
    }
    if argmax.len() != 1 {
        return Err(OrientError::NonSimpleExtremum("maximum"));
    }
    let extreme = |f: &Face, pick_max: bool| -> usize {
        if f.is_empty() {
            return usize::MAX;
        }
        let mut best = f.vertices[0];
        for &v in &f.vertices[1..] {
            if (pick_max && values[v] > values[best]) || (!pick_max && values[v] < values[best]) {
                best = v;
            }
        }
        best
    };
    let face_min = base.lattice().faces().iter().map(|f| extreme(f, false)).collect();
    let face_max = base.lattice().faces().iter().map(|f| extreme(f, true)).collect();
    Ok(OrientedPolytope {
        source: argmin[0],
        sink: argmax[0],
        base,
        ell,
        values,
        directed_edges,
        face_min,
        face_max,
    })
}

impl OrientedPolytope {
    pub fn base(&self) -> &Polytope {
        &self.base
    }

    pub fn ell(&self) -> &LinForm {
        &self.ell
    }

    pub fn value(&self, v: usize) -> &Rat {
        &self.values[v]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn directed_edges(&self) -> &[(usize, usize)] {
        &self.directed_edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.directed_edges.binary_search(&(a, b)).is_ok()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn num_vertices(&self) -> usize {
        self.values.len()
    }

    pub fn dim(&self) -> isize {
        self.base.dim()
    }

    /// `ell`-minimal vertex of a nonempty face (by lattice index).
    pub fn face_min(&self, f: usize) -> usize {
        self.face_min[f]
    }

    pub fn face_max(&self, f: usize) -> usize {
        self.face_max[f]
    }

    /// Vertices sorted by `ell`, ties broken by index.
    pub fn vertices_by_value(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.num_vertices()).collect();
        order.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]).then(a.cmp(&b)));
        order
    }

    /// Faces (lattice indices) with minimum `v` and maximum `w`.
    pub fn faces_between(&self, v: usize, w: usize) -> Vec<usize> {
        (1..self.base.lattice().len())
            .filter(|&f| self.face_min[f] == v && self.face_max[f] == w)
            .collect()
    }

    /// Restriction of the functional to a face. Vertex `i` of the result is
    /// vertex `face.vertices[i]` of `self`.
    pub fn induced_on_face(&self, g: usize) -> OrientedPolytope {
        orient(self.base.face_polytope(g), self.ell.clone())
            .expect("restriction of an edge-generic functional stays edge-generic")
    }

    /// Graphviz rendering of the directed 1-skeleton.
    pub fn skeleton_dot(&self) -> String {
        let mut s = String::from("digraph skeleton {\n  rankdir=BT;\n");
        for v in 0..self.num_vertices() {
            let _ = writeln!(s, "  v{v} [label=\"{v} ({})\"];", self.values[v]);
        }
        for (a, b) in &self.directed_edges {
            let _ = writeln!(s, "  v{a} -> v{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// The face sets whose relative interiors make up each cell.
#[derive(Clone, Debug)]
pub struct BBData {
    minus: Vec<Vec<usize>>,
    plus: Vec<Vec<usize>>,
    minus_dim: Vec<isize>,
    plus_dim: Vec<isize>,
    minus_closure: Vec<BTreeSet<usize>>,
    plus_closure: Vec<BTreeSet<usize>>,
    minus_vertices: Vec<Vec<usize>>,
    plus_vertices: Vec<Vec<usize>>,
}

pub fn bb_data(op: &OrientedPolytope) -> BBData {
    let lat = op.base.lattice();
    let n = op.num_vertices();
    let mut minus = vec![Vec::new(); n];
    let mut plus = vec![Vec::new(); n];
    for f in 1..lat.len() {
        minus[op.face_max[f]].push(f);
        plus[op.face_min[f]].push(f);
    }
    let dim_of = |fs: &Vec<usize>| fs.iter().map(|&f| lat.face(f).dim).max().unwrap_or(-1);
    let closure = |fs: &Vec<usize>| -> BTreeSet<usize> {
        (1..lat.len())
            .filter(|&g| fs.iter().any(|&f| is_subset(&lat.face(g).vertices, &lat.face(f).vertices)))
            .collect()
    };
    let union = |fs: &Vec<usize>| -> Vec<usize> {
        let set: BTreeSet<usize> = fs.iter().flat_map(|&f| lat.face(f).vertices.iter().copied()).collect();
        set.into_iter().collect()
    };
    BBData {
        minus_dim: minus.iter().map(dim_of).collect(),
        plus_dim: plus.iter().map(dim_of).collect(),
        minus_closure: minus.iter().map(closure).collect(),
        plus_closure: plus.iter().map(closure).collect(),
        minus_vertices: minus.iter().map(union).collect(),
        plus_vertices: plus.iter().map(union).collect(),
        minus,
        plus,
    }
}

impl BBData {
    /// Faces whose relative interiors form the cell of `v`.
    pub fn cell_faces(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::Minus => &self.minus[v],
            Side::Plus => &self.plus[v],
        }
    }

    /// Every face contained in the closed cell `F(v)`.
    pub fn closed_faces(&self, side: Side, v: usize) -> &BTreeSet<usize> {
        match side {
            Side::Minus => &self.minus_closure[v],
            Side::Plus => &self.plus_closure[v],
        }
    }

    /// Vertices lying in `F(v)`.
    pub fn closed_vertices(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::Minus => &self.minus_vertices[v],
            Side::Plus => &self.plus_vertices[v],
        }
    }

    /// Dimension of the union `F(v)`.
    pub fn dim(&self, side: Side, v: usize) -> isize {
        match side {
            Side::Minus => self.minus_dim[v],
            Side::Plus => self.plus_dim[v],
        }
    }

    /// The single face equal to `F(v)` when it is irreducible.
    pub fn irreducible_face(&self, side: Side, v: usize, op: &OrientedPolytope) -> Option<usize> {
        let lat = op.base.lattice();
        let cell = self.cell_faces(side, v);
        cell.iter().copied().find(|&g| {
            cell.iter()
                .all(|&f| is_subset(&lat.face(f).vertices, &lat.face(g).vertices))
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.minus.len()
    }
}

pub type BoolMatrix = Vec<Vec<bool>>;

/// The relations 𝒪, ℬ⁻, ℬ⁺ and 𝒞 on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRelations {
    pub witness: BoolMatrix,
    pub bruhat_minus: BoolMatrix,
    pub bruhat_plus: BoolMatrix,
    pub chain: BoolMatrix,
    /// One witnessing face (lattice index) per related pair.
    pub witnesses: BTreeMap<(usize, usize), usize>,
}

pub fn transitive_closure(rel: &BoolMatrix) -> BoolMatrix {
    let n = rel.len();
    let mut c = rel.clone();
    for k in 0..n {
        for i in 0..n {
            if c[i][k] {
                for j in 0..n {
                    if c[k][j] {
                        c[i][j] = true;
                    }
                }
            }
        }
    }
    c
}

pub fn relations(op: &OrientedPolytope, bb: &BBData) -> VertexRelations {
    let n = op.num_vertices();
    let lat = op.base.lattice();
    let mut witness = vec![vec![false; n]; n];
    let mut witnesses = BTreeMap::new();
    for f in 1..lat.len() {
        let (v, w) = (op.face_min[f], op.face_max[f]);
        if !witness[v][w] {
            witness[v][w] = true;
            witnesses.insert((v, w), f);
        }
    }
    let mut bruhat_minus = vec![vec![false; n]; n];
    let mut bruhat_plus = vec![vec![false; n]; n];
    for v in 0..n {
        for w in 0..n {
            bruhat_minus[v][w] = bb.closed_vertices(Side::Minus, w).binary_search(&v).is_ok();
            bruhat_plus[v][w] = bb.closed_vertices(Side::Plus, v).binary_search(&w).is_ok();
        }
    }
    let mut step = vec![vec![false; n]; n];
    for (v, row) in step.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(a, b) in op.directed_edges() {
        step[a][b] = true;
    }
    VertexRelations {
        witness,
        bruhat_minus,
        bruhat_plus,
        chain: transitive_closure(&step),
        witnesses,
    }
}

impl VertexRelations {
    pub fn bitstrings(m: &BoolMatrix) -> Vec<String> {
        m.iter()
            .map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }
}

/// A pair `(v, w)` and a face of the cell of `v` meeting `F(w)` without
/// lying inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratViolation {
    pub v: usize,
    pub w: usize,
    pub face: usize,
}

/// Direct check of the stratification property for the cells on one side.
pub fn is_stratification(bb: &BBData, side: Side) -> Result<(), StratViolation> {
    let n = bb.num_vertices();
    for v in 0..n {
        for w in 0..n {
            let closed_w = bb.closed_faces(side, w);
            let meets = bb.cell_faces(side, v).iter().any(|f| closed_w.contains(f));
            if !meets {
                continue;
            }
            if let Some(&face) = bb.closed_faces(side, v).iter().find(|f| !closed_w.contains(f)) {
                return Err(StratViolation { v, w, face });
            }
        }
    }
    Ok(())
}

/// Assumption I: every `F-(v)` and `F+(v)` is a single face. Returns the first
/// violating vertex otherwise.
pub fn assumption_i(op: &OrientedPolytope, bb: &BBData) -> Result<(), usize> {
    for v in 0..op.num_vertices() {
        if bb.irreducible_face(Side::Minus, v, op).is_none()
            || bb.irreducible_face(Side::Plus, v, op).is_none()
        {
            return Err(v);
        }
    }
    Ok(())
}

/// Literal evaluations of the eight conditions of the stratification theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub conditions: [bool; 8],
    pub minus_violation: Option<StratViolation>,
    pub plus_violation: Option<StratViolation>,
}

impl EquivalenceReport {
    pub fn all_true(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }

    pub fn constant(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }
}

fn is_partial_order(rel: &BoolMatrix) -> bool {
    let n = rel.len();
    (0..n).all(|i| rel[i][i])
        && (0..n).all(|i| (0..n).all(|j| i == j || !(rel[i][j] && rel[j][i])))
        && transitive_closure(rel) == *rel
}

/// Cover pairs of a partial order.
pub fn covers(rel: &BoolMatrix) -> Vec<(usize, usize)> {
    let n = rel.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rel[a][b] && !(0..n).any(|c| c != a && c != b && rel[a][c] && rel[c][b]) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn equivalence_report(
    op: &OrientedPolytope,
    bb: &BBData,
    rel: &VertexRelations,
) -> EquivalenceReport {
    let n = op.num_vertices();
    let minus = is_stratification(bb, Side::Minus);
    let plus = is_stratification(bb, Side::Plus);
    let no_incoming = (0..n).all(|v| {
        let fv = bb.closed_vertices(Side::Minus, v);
        op.directed_edges()
            .iter()
            .all(|&(a, b)| !(fv.binary_search(&b).is_ok() && fv.binary_search(&a).is_err()))
    });
    let no_outgoing = (0..n).all(|v| {
        let fv = bb.closed_vertices(Side::Plus, v);
        op.directed_edges()
            .iter()
            .all(|&(a, b)| !(fv.binary_search(&a).is_ok() && fv.binary_search(&b).is_err()))
    });
    let o_is_c = rel.witness == rel.chain;
    let poset = is_partial_order(&rel.witness);
    let graded = poset
        && covers(&rel.witness)
            .iter()
            .all(|&(a, b)| bb.dim(Side::Minus, b) == bb.dim(Side::Minus, a) + 1);
    let closures_agree = (0..n).all(|v| {
        (0..n).all(|w| {
            let between: Vec<usize> = op.faces_between(v, w);
            let lat = op.base.lattice();
            let lhs: BTreeSet<usize> = (1..lat.len())
                .filter(|&g| {
                    between
                        .iter()
                        .any(|&f| is_subset(&lat.face(g).vertices, &lat.face(f).vertices))
                })
                .collect();
            let rhs: BTreeSet<usize> = bb
                .closed_faces(Side::Plus, v)
                .intersection(bb.closed_faces(Side::Minus, w))
                .copied()
                .collect();
            lhs == rhs
        })
    });
    EquivalenceReport {
        conditions: [
            minus.is_ok(),
            plus.is_ok(),
            no_incoming,
            no_outgoing,
            o_is_c,
            poset,
            graded,
            closures_agree,
        ],
        minus_violation: minus.err(),
        plus_violation: plus.err(),
    }
}

/// Everything the stratification analysis derives from an oriented polytope.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub bb: BBData,
    pub relations: VertexRelations,
    pub assumption_i: Result<(), usize>,
    pub report: EquivalenceReport,
}

impl Analysis {
    pub fn new(op: &OrientedPolytope) -> Self {
        let bb = bb_data(op);
        let relations = relations(op, &bb);
        let assumption_i = assumption_i(op, &bb);
        let report = equivalence_report(op, &bb, &relations);
        Analysis { bb, relations, assumption_i, report }
    }

    /// Assumption I together with the eight equivalent conditions.
    pub fn assumption_s(&self) -> bool {
        self.assumption_i.is_ok() && self.report.all_true()
    }

    pub fn require_s(&self) -> Result<(), OrientError> {
        if let Err(v) = self.assumption_i {
            return Err(OrientError::NotStratified(format!("F(v) reducible at vertex {v}")));
        }
        if !self.report.all_true() {
            return Err(OrientError::NotStratified(format!(
                "conditions {:?}",
                self.report.conditions
            )));
        }
        Ok(())
    }

    /// `F+(v) ∩ F-(w)` as a face index, under Assumption I. `None` when the
    /// intersection is empty.
    pub fn interval_face(&self, op: &OrientedPolytope, v: usize, w: usize) -> Option<usize> {
        let plus = self.bb.irreducible_face(Side::Plus, v, op)?;
        let minus = self.bb.irreducible_face(Side::Minus, w, op)?;
        let lat = op.base().lattice();
        let meet = crate::exactgeom::intersect(&lat.face(plus).vertices, &lat.face(minus).vertices);
        if meet.is_empty() {
            None
        } else {
            lat.index_of(&meet)
        }
    }
}

/// The vertex poset 𝒪 with rank `dim F-(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPoset {
    pub le: BoolMatrix,
    pub rank: Vec<usize>,
    pub source: usize,
    pub sink: usize,
}

pub fn vertex_poset(op: &OrientedPolytope, analysis: &Analysis) -> Result<VertexPoset, OrientError> {
    analysis.require_s()?;
    let rank = (0..op.num_vertices())
        .map(|v| analysis.bb.dim(Side::Minus, v) as usize)
        .collect();
    Ok(VertexPoset {
        le: analysis.relations.witness.clone(),
        rank,
        source: op.source(),
        sink: op.sink(),
    })
}

impl VertexPoset {
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        covers(&self.le)
    }

    pub fn hasse_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (v, r) in self.rank.iter().enumerate() {
            let _ = writeln!(s, "  v{v} [label=\"{v} (rank {r})\"];");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  v{a} -> v{b};");
        }
        s.push_str("}\n");
        s
    }
}
