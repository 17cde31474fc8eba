//! The monotone path polytope `CH(P)`.
//!
//! Under Assumption S the faces of `CH(P)` are the monotone chains of faces
//! `(F_1, ..., F_k)`: positive-dimensional faces of `P` with `min F_1` the
//! source, `max F_k` the sink and `max F_i = min F_{i+1}`. The chain has
//! dimension `sum dim F_i - k`, and `[G] <= [F]` iff every `G_j` lies in some
//! `F_i`. Independently, `CH(P)` is realized as the Minkowski sum of the
//! level slices of `P` between consecutive vertex values; comparing the two
//! lattices is the oracle check.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::exactgeom::{
    is_subset, lattice_isomorphic, minkowski_sum, rat, Face, FaceLattice, GeomError, Polytope, Rat,
};
use crate::oriented::{Analysis, OrientError, OrientedPolytope, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChError {
    #[error(transparent)]
    NotStratified(#[from] OrientError),
    #[error("monotone path polytope needs a polytope of positive dimension")]
    PointPolytope,
    #[error("join of faces {0} and {1} has the wrong dimension")]
    JoinDimensionMismatch(usize, usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A face of `CH(P)` as the sequence of lattice indices of its faces of `P`.
/// The empty sequence stands for the empty face.
pub type Chain = Vec<usize>;

/// The face lattice of `CH(P)` assembled from monotone chains.
#[derive(Clone, Debug)]
pub struct ChLattice {
    chains: Vec<Chain>,
    dims: Vec<isize>,
    covers: Vec<(usize, usize)>,
    index: HashMap<Chain, usize>,
    dim: isize,
}

fn require(op: &OrientedPolytope, analysis: &Analysis) -> Result<(), ChError> {
    if op.dim() < 1 {
        return Err(ChError::PointPolytope);
    }
    analysis.require_s()?;
    Ok(())
}

fn chain_dim(op: &OrientedPolytope, chain: &[usize]) -> isize {
    if chain.is_empty() {
        return -1;
    }
    let lat = op.base().lattice();
    chain.iter().map(|&f| lat.face(f).dim).sum::<isize>() - chain.len() as isize
}

/// Every face of `G` lies in some face of `F`.
pub fn chain_le(lat: &FaceLattice, g: &[usize], f: &[usize]) -> bool {
    g.iter()
        .all(|&a| f.iter().any(|&b| is_subset(&lat.face(a).vertices, &lat.face(b).vertices)))
}

/// All sequences of positive-dimensional faces linked max to min from the
/// source to the sink. `edges_only` restricts to monotone paths.
fn enumerate(op: &OrientedPolytope, edges_only: bool) -> Vec<Chain> {
    let lat = op.base().lattice();
    let mut hops: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in 1..lat.len() {
        let d = lat.face(f).dim;
        if d >= 1 && (!edges_only || d == 1) {
            hops.entry(op.face_min(f)).or_default().push(f);
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn walk(
        op: &OrientedPolytope,
        hops: &BTreeMap<usize, Vec<usize>>,
        at: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Chain>,
    ) {
        if at == op.sink() {
            out.push(stack.clone());
            return;
        }
        for &f in hops.get(&at).map_or(&[][..], |v| v.as_slice()) {
            stack.push(f);
            walk(op, hops, op.face_max(f), stack, out);
            stack.pop();
        }
    }
    walk(op, &hops, op.source(), &mut stack, &mut out);
    out
}

fn chain_key(lat: &FaceLattice, c: &[usize]) -> Vec<Vec<usize>> {
    c.iter().map(|&f| lat.face(f).vertices.clone()).collect()
}

/// Builds the lattice of monotone chains. Requires Assumption S.
pub fn ch_faces(op: &OrientedPolytope, analysis: &Analysis) -> Result<ChLattice, ChError> {
    require(op, analysis)?;
    let lat = op.base().lattice();
    let mut chains = enumerate(op, false);
    chains.push(Vec::new());
    let mut keyed: Vec<(isize, Vec<Vec<usize>>, Chain)> = chains
        .into_iter()
        .map(|c| (chain_dim(op, &c), chain_key(lat, &c), c))
        .collect();
    keyed.sort();
    let dims: Vec<isize> = keyed.iter().map(|k| k.0).collect();
    let chains: Vec<Chain> = keyed.into_iter().map(|k| k.2).collect();
    let mut covers = Vec::new();
    for (i, small) in chains.iter().enumerate() {
        for (j, big) in chains.iter().enumerate() {
            if dims[j] == dims[i] + 1 && chain_le(lat, small, big) {
                covers.push((i, j));
            }
        }
    }
    let index = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    Ok(ChLattice { dim: op.dim() - 1, chains, dims, covers, index })
}

impl ChLattice {
    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn chain(&self, i: usize) -> &Chain {
        &self.chains[i]
    }

    pub fn dim_of(&self, i: usize) -> isize {
        self.dims[i]
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, c: &[usize]) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// `f_{-1}, f_0, ..., f_{dim}`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim + 2) as usize];
        for &d in &self.dims {
            f[(d + 1) as usize] += 1;
        }
        f
    }

    pub fn of_dim(&self, d: isize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.dims[i] == d)
    }

    pub fn up(&self, i: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.0 == i).map(|c| c.1).collect()
    }

    /// The chains as a polytope lattice whose atoms are the monotone paths:
    /// each chain becomes the set of paths below it.
    pub fn as_face_lattice(&self, lat: &FaceLattice) -> FaceLattice {
        let paths: Vec<usize> = self.of_dim(0).collect();
        let faces = self.chains.iter().zip(&self.dims).map(|(c, &d)| Face {
            dim: d,
            vertices: (0..paths.len())
                .filter(|&k| !c.is_empty() && chain_le(lat, &self.chains[paths[k]], c))
                .collect(),
        });
        FaceLattice::from_faces(paths.len(), faces)
    }

    /// Graphviz rendering of the 1-skeleton of `CH(P)`.
    pub fn skeleton_dot(&self, op: &OrientedPolytope) -> String {
        let mut s = String::from("graph ch {\n");
        let paths: Vec<usize> = self.of_dim(0).collect();
        let pos: HashMap<usize, usize> = paths.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        for (k, &i) in paths.iter().enumerate() {
            let label: Vec<String> = path_vertices(op, &self.chains[i])
                .iter()
                .map(|v| v.to_string())
                .collect();
            let _ = writeln!(s, "  p{k} [label=\"{}\"];", label.join("-"));
        }
        for e in self.of_dim(1) {
            let ends: Vec<usize> = self
                .covers
                .iter()
                .filter(|c| c.1 == e && self.dims[c.0] == 0)
                .map(|c| pos[&c.0])
                .collect();
            if let [a, b] = ends[..] {
                let _ = writeln!(s, "  p{a} -- p{b};");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The vertex sequence of a monotone path given as a chain of edges.
pub fn path_vertices(op: &OrientedPolytope, chain: &[usize]) -> Vec<usize> {
    std::iter::once(op.source())
        .chain(chain.iter().map(|&e| op.face_max(e)))
        .collect()
}

/// All directed source-to-sink paths, as vertex sequences.
pub fn ch_vertices(op: &OrientedPolytope, analysis: &Analysis) -> Result<Vec<Vec<usize>>, ChError> {
    require(op, analysis)?;
    let mut out: Vec<Vec<usize>> = enumerate(op, true)
        .iter()
        .map(|c| path_vertices(op, c))
        .collect();
    out.sort();
    Ok(out)
}

/// Facets of `CH(P)` split into the two kinds.
#[derive(Clone, Debug, Serialize)]
pub struct FacetClasses {
    /// Facets of `P` through the source and the sink.
    pub through_ends: Vec<Chain>,
    /// `(F-(v), F+(v))` for each vertex `v` other than the source and sink.
    pub split_at: Vec<(usize, Chain)>,
    /// The two kinds together are exactly the facets of the chain lattice.
    pub exhaustive: bool,
}

pub fn ch_facets(
    op: &OrientedPolytope,
    analysis: &Analysis,
    ch: &ChLattice,
) -> Result<FacetClasses, ChError> {
    require(op, analysis)?;
    let lat = op.base().lattice();
    let d = op.dim();
    let through_ends: Vec<Chain> = lat
        .faces_of_dim(d - 1)
        .filter(|(_, f)| f.contains(op.source()) && f.contains(op.sink()))
        .map(|(i, _)| vec![i])
        .collect();
    let mut split_at = Vec::new();
    for v in 0..op.num_vertices() {
        if v == op.source() || v == op.sink() {
            continue;
        }
        let minus = analysis.bb.irreducible_face(Side::Minus, v, op).expect("Assumption I");
        let plus = analysis.bb.irreducible_face(Side::Plus, v, op).expect("Assumption I");
        split_at.push((v, vec![minus, plus]));
    }
    let mut expected: BTreeSet<Chain> = through_ends.iter().cloned().collect();
    expected.extend(split_at.iter().map(|(_, c)| c.clone()));
    let actual: BTreeSet<Chain> = ch.of_dim(ch.dim() - 1).map(|i| ch.chain(i).clone()).collect();
    Ok(FacetClasses { through_ends, split_at, exhaustive: expected == actual })
}

/// The face of dimension `dim F1 + dim F2` containing both. Requires
/// `max F1 = min F2`.
pub fn join_faces(op: &OrientedPolytope, f1: usize, f2: usize) -> Result<usize, ChError> {
    let lat = op.base().lattice();
    let mut union = lat.face(f1).vertices.clone();
    union.extend(&lat.face(f2).vertices);
    let g = lat.smallest_containing(&union);
    if lat.face(g).dim != lat.face(f1).dim + lat.face(f2).dim {
        return Err(ChError::JoinDimensionMismatch(f1, f2));
    }
    Ok(g)
}

/// Chains that contain `chain` as a facet: merges of consecutive members and
/// enlargements of one member keeping its extreme vertices.
pub fn ch_covers(
    op: &OrientedPolytope,
    analysis: &Analysis,
    chain: &[usize],
) -> Result<Vec<Chain>, ChError> {
    require(op, analysis)?;
    let lat = op.base().lattice();
    let mut out = Vec::new();
    for i in 0..chain.len().saturating_sub(1) {
        let g = join_faces(op, chain[i], chain[i + 1])?;
        let mut c = chain[..i].to_vec();
        c.push(g);
        c.extend(&chain[i + 2..]);
        out.push(c);
    }
    for (i, &f) in chain.iter().enumerate() {
        for &g in lat.up(f) {
            if op.face_min(g) == op.face_min(f) && op.face_max(g) == op.face_max(f) {
                let mut c = chain.to_vec();
                c[i] = g;
                out.push(c);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Triangle count along one directed edge against the number a simple
/// `CH(P)` needs.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EdgeTriangles {
    pub v: usize,
    pub w: usize,
    pub triangles: usize,
    pub required: isize,
}

/// The four conditions of the simplicity theorem, evaluated independently.
#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub conditions: [bool; 4],
    pub agree: bool,
    pub edges: Vec<EdgeTriangles>,
    /// `(path index in the chain lattice, number of incident edges)`.
    pub vertex_degrees: Vec<(usize, usize)>,
}

impl SimplicityReport {
    pub fn simple(&self) -> bool {
        self.conditions[0]
    }
}

/// Number of faces of `within` covering `f`.
fn covering_count(lat: &FaceLattice, f: usize, within: usize) -> usize {
    lat.up(f)
        .iter()
        .filter(|&&g| is_subset(&lat.face(g).vertices, &lat.face(within).vertices))
        .count()
}

pub fn ch_is_simple(
    op: &OrientedPolytope,
    analysis: &Analysis,
    ch: &ChLattice,
) -> Result<SimplicityReport, ChError> {
    require(op, analysis)?;
    let lat = op.base().lattice();
    let d = op.dim();

    let vertex_degrees: Vec<(usize, usize)> = ch.of_dim(0).map(|p| (p, ch.up(p).len())).collect();
    let c1 = vertex_degrees.iter().all(|&(_, k)| k as isize == d - 1);

    let mut edges = Vec::new();
    let mut c3 = true;
    for &(v, w) in op.directed_edges() {
        let triangles = lat
            .faces_of_dim(2)
            .filter(|(_, f)| {
                f.vertices.len() == 3
                    && f.contains(v)
                    && f.contains(w)
                    && f.vertices
                        .iter()
                        .any(|&x| x != v && x != w && op.has_edge(v, x) && op.has_edge(x, w))
            })
            .count();
        let g = analysis.interval_face(op, v, w).expect("edge lies in F+(v) ∩ F-(w)");
        let gd = lat.face(g).dim;
        edges.push(EdgeTriangles { v, w, triangles, required: gd - 1 });
        let e = lat.index_of(&[v.min(w), v.max(w)]).expect("edge is a face");
        let two_faces = lat
            .up(e)
            .iter()
            .filter(|&&h| is_subset(&lat.face(h).vertices, &lat.face(g).vertices))
            .count();
        c3 &= two_faces as isize == gd - 1;
    }
    let c2 = edges.iter().all(|e| e.triangles as isize == e.required);

    let c4 = (1..lat.len()).filter(|&f| lat.face(f).dim >= 1).all(|f| {
        let g = analysis
            .interval_face(op, op.face_min(f), op.face_max(f))
            .expect("face lies in F+(min) ∩ F-(max)");
        covering_count(lat, f, g) as isize == lat.face(g).dim - lat.face(f).dim
    });

    let conditions = [c1, c2, c3, c4];
    Ok(SimplicityReport {
        agree: conditions.iter().all(|&c| c == c1),
        conditions,
        edges,
        vertex_degrees,
    })
}

/// `CH(P)` as the Minkowski sum of slices at the midpoints between
/// consecutive distinct vertex values. Needs no stratification hypothesis.
pub fn ch_geometric(op: &OrientedPolytope) -> Result<Polytope, ChError> {
    if op.dim() < 1 {
        return Err(ChError::PointPolytope);
    }
    let mut levels: Vec<Rat> = op.values().to_vec();
    levels.sort();
    levels.dedup();
    let slices = levels
        .windows(2)
        .map(|w| op.base().slice_at_level(op.ell(), &((&w[0] + &w[1]) / rat(2))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(minkowski_sum(&slices)?)
}

/// Outcome of comparing the chain lattice with the Minkowski-sum lattice.
#[derive(Clone, Debug, Serialize)]
pub struct OracleVerdict {
    pub isomorphic: bool,
    pub combinatorial_f_vector: Vec<usize>,
    pub geometric_f_vector: Vec<usize>,
}

pub fn ch_verify(
    op: &OrientedPolytope,
    analysis: &Analysis,
    ch: &ChLattice,
) -> Result<OracleVerdict, ChError> {
    require(op, analysis)?;
    let geo = ch_geometric(op)?;
    let comb = ch.as_face_lattice(op.base().lattice());
    let faithful = comb.len() == ch.len();
    Ok(OracleVerdict {
        isomorphic: faithful && lattice_isomorphic(&comb, geo.lattice()).is_some(),
        combinatorial_f_vector: ch.f_vector(),
        geometric_f_vector: geo.lattice().f_vector(),
    })
}
