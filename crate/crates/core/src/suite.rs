//! The fixed corpus and the twelve end-to-end checks run by `verify` and by
//! the acceptance test target.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::builders::{build_str, BuildError};
use crate::exactgeom::{intersect, FaceLattice, LinForm, Polytope};
use crate::monopath::{ch_faces, ch_is_simple, ch_verify, ChLattice, SimplicityReport};
use crate::oriented::{is_stratification, orient, Analysis, OrientError, OrientedPolytope, Side};
use crate::posetalg::{
    char_kernel, chow_polynomial, is_kernel, kls_functions, multiply, rev, shape_checks,
    vertex_kernel, verify_main_theorem, IntPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    /// Polytopes of dimension at most 3.
    Quick,
    /// Everything, up to dimension 5.
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    /// First failing input, if any.
    pub counterexample: Option<String>,
}

const CORPUS: &[&str] = &[
    "simplex(1)",
    "simplex(2)",
    "simplex(3)",
    "simplex(4)",
    "simplex(5)",
    "cube(2)",
    "cube(3)",
    "cube(4)",
    "prod(simplex(2),simplex(1))",
    "prod(cube(2),simplex(1))",
    "prod(simplex(2),simplex(2))",
    "pyrMin(cube(2))",
    "pyrMin(cube(3))",
    "pyrMin(prod(simplex(2),simplex(1)))",
    "prod(pyrMin(cube(2)),simplex(1))",
    "pyrMin(quadSep)",
    "pyrMax(pyrMin(quadSep))",
    "quadSep",
    "quadAdj",
    "trapezohedron(3)",
    "trapezohedron(4)",
    "trapezohedron(5)",
];

/// Built from simplices by products and lower pyramids only.
const CHAR_FAMILY: &[&str] = &[
    "simplex(1)",
    "simplex(2)",
    "simplex(3)",
    "simplex(4)",
    "simplex(5)",
    "cube(2)",
    "cube(3)",
    "cube(4)",
    "prod(simplex(2),simplex(1))",
    "prod(cube(2),simplex(1))",
    "prod(simplex(2),simplex(2))",
    "pyrMin(cube(2))",
    "pyrMin(cube(3))",
    "pyrMin(prod(simplex(2),simplex(1)))",
    "prod(pyrMin(cube(2)),simplex(1))",
];

const ORACLE_CORPUS: &[&str] = &[
    "simplex(1)",
    "simplex(2)",
    "simplex(3)",
    "simplex(4)",
    "cube(1)",
    "cube(2)",
    "cube(3)",
    "prod(simplex(2),simplex(1))",
    "prod(cube(2),simplex(1))",
    "pyrMin(quadSep)",
    "pyrMax(pyrMin(quadSep))",
    "trapezohedron(3)",
    "trapezohedron(4)",
];

const NGONS: &[&str] = &["ngon(3)", "ngon(4)", "ngon(5)", "ngon(6)", "ngon(7)", "ngon(8)"];

pub const DOUBLE_PYRAMID: &str = "pyrMax(pyrMin(quadSep))";

pub struct Entry {
    pub name: String,
    pub op: OrientedPolytope,
    pub analysis: Analysis,
}

impl Entry {
    pub fn new(text: &str) -> Result<Self, BuildError> {
        let (p, ell) = build_str(text)?;
        Entry::from_parts(text, p, ell).map_err(|e| BuildError::BadParameter {
            name: text.to_string(),
            reason: e.to_string(),
        })
    }

    pub fn from_parts(name: &str, p: Polytope, ell: LinForm) -> Result<Self, OrientError> {
        let op = orient(p, ell)?;
        let analysis = Analysis::new(&op);
        Ok(Entry { name: name.to_string(), op, analysis })
    }

    fn ch(&self) -> Option<ChLattice> {
        ch_faces(&self.op, &self.analysis).ok()
    }

    fn simplicity(&self) -> Option<SimplicityReport> {
        let ch = self.ch()?;
        ch_is_simple(&self.op, &self.analysis, &ch).ok()
    }
}

/// Builds and analyses corpus members once, on demand.
pub struct Corpus {
    kind: SuiteKind,
    entries: BTreeMap<String, Entry>,
    /// Replaces the built-in lists when set.
    custom: Option<Vec<String>>,
}

impl Corpus {
    pub fn new(kind: SuiteKind) -> Self {
        Corpus { kind, entries: BTreeMap::new(), custom: None }
    }

    /// A corpus made of the given polytopes only.
    pub fn custom(entries: Vec<Entry>) -> Self {
        let names = entries.iter().map(|e| e.name.clone()).collect();
        Corpus {
            kind: SuiteKind::Full,
            entries: entries.into_iter().map(|e| (e.name.clone(), e)).collect(),
            custom: Some(names),
        }
    }

    pub fn is_custom(&self) -> bool {
        self.custom.is_some()
    }

    pub fn get(&mut self, text: &str) -> &Entry {
        self.entries
            .entry(text.to_string())
            .or_insert_with(|| Entry::new(text).expect("corpus member builds"))
    }

    /// The members of `list` within this suite's dimension bound.
    fn members(&mut self, list: &[&str]) -> Vec<String> {
        if let Some(c) = &self.custom {
            return c.clone();
        }
        let cap = match self.kind {
            SuiteKind::Quick => 3,
            SuiteKind::Full => isize::MAX,
        };
        list.iter()
            .filter(|t| self.get(t).op.dim() <= cap)
            .map(|t| t.to_string())
            .collect()
    }
}

struct Outcome {
    checked: usize,
    failure: Option<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checked: 0, failure: None, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self, id: u8, name: &'static str, allow_empty: bool) -> CriterionResult {
        let mut detail = format!("{} checks", self.checked);
        for n in &self.notes {
            detail.push_str("; ");
            detail.push_str(n);
        }
        CriterionResult {
            id,
            name,
            pass: self.failure.is_none() && (allow_empty || self.checked > 0),
            detail,
            counterexample: self.failure,
        }
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "simplex kernel identities"),
    (2, "trapezohedron T4 kernel"),
    (3, "oracle equivalence"),
    (4, "stratification duality"),
    (5, "eight-way equivalence"),
    (6, "main theorem"),
    (7, "cube(3) monotone path polytope"),
    (8, "double pyramid non-simplicity"),
    (9, "kernel axiom and KLS identities"),
    (10, "dimension laws"),
    (11, "shape properties"),
    (12, "hull engine sanity"),
];

pub fn run(kind: SuiteKind) -> Vec<CriterionResult> {
    let mut corpus = Corpus::new(kind);
    CRITERIA.iter().map(|&(id, _)| criterion(id, &mut corpus)).collect()
}

/// Criteria that quantify over the corpus rather than name fixed members.
pub const PER_POLYTOPE: [u8; 8] = [3, 4, 5, 6, 9, 10, 11, 12];

/// Runs the per-polytope criteria on the given polytopes.
pub fn run_on(entries: Vec<Entry>) -> Vec<CriterionResult> {
    let mut corpus = Corpus::custom(entries);
    PER_POLYTOPE.iter().map(|&id| criterion(id, &mut corpus)).collect()
}

pub fn criterion(id: u8, corpus: &mut Corpus) -> CriterionResult {
    let name = CRITERIA[(id - 1) as usize].1;
    let out = match id {
        1 => simplex_identities(corpus),
        2 => trapezohedron(corpus),
        3 => oracle(corpus),
        4 => duality(corpus),
        5 => equivalence(corpus),
        6 => main_theorem(corpus),
        7 => cube3(corpus),
        8 => double_pyramid(corpus),
        9 => kernel_axiom(corpus),
        10 => dimension_laws(corpus),
        11 => shapes(corpus),
        12 => hull_sanity(corpus),
        _ => panic!("no criterion {id}"),
    };
    // a built-in criterion that checked nothing is a broken corpus, not a pass
    out.finish(id, name, corpus.is_custom())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Möbius values `mu(s, t)` by the defining recursion on the relation.
fn mobius_recursive(le: &[Vec<bool>], rank: &[usize], s: usize) -> Vec<i64> {
    let n = le.len();
    let mut order: Vec<usize> = (0..n).filter(|&t| le[s][t]).collect();
    order.sort_by_key(|&t| rank[t]);
    let mut mu = vec![0i64; n];
    for &t in &order {
        mu[t] = if t == s {
            1
        } else {
            -order.iter().filter(|&&u| u != t && le[u][t]).map(|&u| mu[u]).sum::<i64>()
        };
    }
    mu
}

/// `chi_st = sum_{s <= u <= t} mu(s, u) x^{rho(u, t)}`, from scratch.
fn chi_oracle(le: &[Vec<bool>], rank: &[usize], s: usize, t: usize) -> IntPoly {
    let mu = mobius_recursive(le, rank, s);
    (0..le.len())
        .filter(|&u| le[s][u] && le[u][t])
        .fold(IntPoly::zero(), |acc, u| {
            &acc + &IntPoly::monomial(rank[t] - rank[u]).scale(&mu[u].into())
        })
}

fn simplex_identities(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=6usize {
        let e = corpus.get(&format!("simplex({n})"));
        let (vp, x, k) = vertex_kernel(&e.op, &e.analysis).expect("simplex is stratified");
        let expected = &IntPoly::monomial(n) - &IntPoly::monomial(n - 1);
        out.check(k.get(vp.source, vp.sink) == &expected, || {
            format!("simplex({n}): kappa = {}", k.get(vp.source, vp.sink))
        });
        for (s, t) in x.intervals() {
            let chi = chi_oracle(&vp.le, &vp.rank, s, t);
            out.check(k.get(s, t) == &chi, || format!("simplex({n}) interval ({s},{t})"));
        }
    }
    out
}

fn trapezohedron(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    let e = corpus.get("trapezohedron(4)");
    let (vp, x, k) = vertex_kernel(&e.op, &e.analysis).expect("T4 is stratified");
    let (s, t) = (vp.source, vp.sink);
    out.check(k.get(s, t) == &IntPoly::x_minus_one_pow(3), || format!("kappa = {}", k.get(s, t)));
    let chi = chi_oracle(&vp.le, &vp.rank, s, t);
    out.check(char_kernel(&x).get(s, t) == &chi, || "chi disagrees with Möbius recursion".into());
    out.check(k.get(s, t) != &chi, || "kappa equals chi".into());
    let stated = IntPoly::from_ints(&[0, 0, -4, 1]);
    out.notes.push(format!(
        "kappa = {}; chi = {}; stated chi {} {}",
        k.get(s, t),
        chi,
        stated,
        if chi == stated { "matches" } else { "differs" }
    ));
    out
}

fn oracle(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for name in corpus.members(ORACLE_CORPUS) {
        let custom = corpus.is_custom();
        let e = corpus.get(&name);
        if custom && !e.analysis.assumption_s() {
            continue;
        }
        let verdict = e
            .ch()
            .and_then(|ch| ch_verify(&e.op, &e.analysis, &ch).ok())
            .map(|v| v.isomorphic);
        out.check(verdict == Some(true), || format!("{name}: oracle verdict {verdict:?}"));
    }
    out
}

fn full_list(corpus: &mut Corpus) -> Vec<String> {
    if let Some(c) = &corpus.custom {
        return c.clone();
    }
    let mut names = corpus.members(CORPUS);
    names.extend(NGONS.iter().map(|s| s.to_string()));
    names.push("nostrat5".into());
    names
}

fn duality(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for name in full_list(corpus) {
        let bb = &corpus.get(&name).analysis.bb;
        let minus = is_stratification(bb, Side::Minus).is_ok();
        let plus = is_stratification(bb, Side::Plus).is_ok();
        out.check(minus == plus, || format!("{name}: minus {minus}, plus {plus}"));
    }
    out
}

fn equivalence(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for name in full_list(corpus) {
        let a = &corpus.get(&name).analysis;
        if a.assumption_i.is_ok() {
            out.check(a.report.constant(), || format!("{name}: {:?}", a.report.conditions));
        }
    }
    if corpus.is_custom() {
        return out;
    }
    let c = corpus.get("nostrat5").analysis.report.conditions;
    out.check(c == [false, false, true, true, true, true, false, false], || {
        format!("nostrat5: {c:?}")
    });
    out
}

fn main_theorem(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    let mut names = corpus.members(CORPUS);
    if !corpus.is_custom() && !names.iter().any(|n| n == DOUBLE_PYRAMID) {
        names.push(DOUBLE_PYRAMID.into());
    }
    for name in names {
        let e = corpus.get(&name);
        if !e.analysis.assumption_s() {
            continue;
        }
        match verify_main_theorem(&e.op, &e.analysis) {
            Ok(r) => {
                let bad = r.intervals.iter().find(|c| !c.pass);
                out.check(bad.is_none(), || {
                    let c = bad.unwrap();
                    format!("{name} [{},{}]: H = {}, h = {}", c.v, c.w, c.chow, c.h_dual)
                });
            }
            Err(err) => out.check(false, || format!("{name}: {err}")),
        }
    }
    out
}

fn cube3(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    let e = corpus.get("cube(3)");
    let ch = e.ch().expect("cube is stratified");
    out.check(ch.f_vector() == [1, 6, 6, 1], || format!("f-vector {:?}", ch.f_vector()));
    let (vp, x, k) = vertex_kernel(&e.op, &e.analysis).expect("cube is stratified");
    let h = chow_polynomial(&x, &k).expect("kernel inverts");
    // a hexagon's dual is a hexagon: h = 1 + (6 - 2) x + x^2
    let hexagon = IntPoly::from_ints(&[1, 4, 1]);
    out.check(h.get(vp.source, vp.sink) == &hexagon, || format!("H = {}", h.get(vp.source, vp.sink)));
    let r = ch_is_simple(&e.op, &e.analysis, &ch).expect("stratified");
    out.check(r.conditions == [true; 4] && r.agree, || format!("simplicity {:?}", r.conditions));
    out
}

fn double_pyramid(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    let e = corpus.get(DOUBLE_PYRAMID);
    let r = e.simplicity().expect("double pyramid is stratified");
    out.check(!r.simple() && r.agree, || format!("simplicity {:?}", r.conditions));
    let (v, w) = (e.op.source(), e.op.sink());
    match r.edges.iter().find(|t| t.v == v && t.w == w) {
        Some(t) => {
            out.check(t.triangles == 4, || format!("{} triangles on the source-sink edge", t.triangles));
            let g = e.analysis.interval_face(&e.op, v, w).expect("interval face");
            let required = e.op.base().lattice().face(g).dim - 1;
            out.check(t.required == required && t.triangles as isize != required, || {
                format!("required {} vs {}", t.required, required)
            });
            out.notes.push(format!("{} triangles, {} required for simplicity", t.triangles, t.required));
        }
        None => out.check(false, || "no source-sink edge".into()),
    }
    out
}

fn kernel_axiom(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for name in corpus.members(CORPUS) {
        let e = corpus.get(&name);
        if !e.analysis.assumption_s() || !e.simplicity().is_some_and(|r| r.simple()) {
            continue;
        }
        let (_, x, k) = vertex_kernel(&e.op, &e.analysis).expect("stratified");
        let check = is_kernel(&x, &k);
        out.check(check.is_kernel, || format!("{name}: not a kernel at {:?}", check.failing));
        if !check.is_kernel {
            continue;
        }
        let Ok((f, g)) = kls_functions(&x, &k) else {
            out.check(false, || format!("{name}: no KLS solution"));
            continue;
        };
        let identities = rev(&x, &f).ok() == Some(multiply(&x, &k, &f))
            && rev(&x, &g).ok() == Some(multiply(&x, &g, &k));
        out.check(identities, || format!("{name}: rev identity fails"));
        let bounded = x.intervals().into_iter().all(|(s, t)| {
            let (fd, gd) = (f.get(s, t).degree(), g.get(s, t).degree());
            if s == t {
                f.get(s, t) == &IntPoly::one() && g.get(s, t) == &IntPoly::one()
            } else {
                let rho = x.rho(s, t);
                fd.is_none_or(|d| 2 * d < rho) && gd.is_none_or(|d| 2 * d < rho)
            }
        });
        out.check(bounded, || format!("{name}: degree bound fails"));
    }
    out
}

fn dimension_laws(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for name in full_list(corpus) {
        let e = corpus.get(&name);
        let d = e.op.dim();
        let stratified = is_stratification(&e.analysis.bb, Side::Minus).is_ok();
        for v in 0..e.op.num_vertices() {
            let sum = e.analysis.bb.dim(Side::Minus, v) + e.analysis.bb.dim(Side::Plus, v);
            out.check(sum >= d && (!stratified || sum == d), || {
                format!("{name} vertex {v}: {sum} vs dim {d}")
            });
        }
        let (s, t) = (e.op.source(), e.op.sink());
        if e.analysis.assumption_s() && e.op.has_edge(s, t) {
            let lat = e.op.base().lattice();
            let triangles = lat
                .faces_of_dim(2)
                .filter(|(_, f)| f.vertices.len() == 3 && f.contains(s) && f.contains(t))
                .count();
            out.check(triangles as isize >= d - 1, || {
                format!("{name}: {triangles} triangles on the source-sink edge")
            });
        }
    }
    out
}

fn shapes(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for name in corpus.members(CORPUS) {
        let e = corpus.get(&name);
        if !e.analysis.assumption_s() || !e.simplicity().is_some_and(|r| r.simple()) {
            continue;
        }
        let (vp, x, k) = vertex_kernel(&e.op, &e.analysis).expect("stratified");
        let h = chow_polynomial(&x, &k).expect("kernel inverts");
        let top = h.get(vp.source, vp.sink);
        let flags = shape_checks(top, (e.op.dim() - 1) as usize);
        out.check(flags.palindromic && flags.unimodal && flags.nonnegative, || {
            format!("{name}: H = {top}")
        });
        if CHAR_FAMILY.contains(&name.as_str()) {
            let chi = char_kernel(&x);
            out.check(chi == k, || format!("{name}: kappa differs from chi"));
            out.check(flags.gamma_positive, || format!("{name}: H = {top} not gamma-positive"));
        }
    }
    out
}

fn closed_under_intersection(lat: &FaceLattice) -> bool {
    let faces = lat.faces();
    faces.iter().enumerate().all(|(i, f)| {
        faces[i..]
            .iter()
            .all(|g| lat.contains_face(&intersect(&f.vertices, &g.vertices)))
    })
}

fn hull_sanity(corpus: &mut Corpus) -> Outcome {
    let mut out = Outcome::new();
    for name in full_list(corpus) {
        let lat = corpus.get(&name).op.base().lattice();
        let euler: i64 = lat
            .f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum();
        out.check(euler == 0, || format!("{name}: Euler sum {euler}"));
        out.check(closed_under_intersection(lat), || format!("{name}: not intersection-closed"));
    }
    if corpus.is_custom() {
        return out;
    }
    for n in 1..=4usize {
        let cube = corpus.get(&format!("cube({n})")).op.base().lattice().f_vector();
        let expected: Vec<usize> = std::iter::once(1)
            .chain((0..=n).map(|k| binomial(n, k) << (n - k)))
            .collect();
        out.check(cube == expected, || format!("cube({n}): {cube:?}"));
        let simplex = corpus.get(&format!("simplex({n})")).op.base().lattice().f_vector();
        let expected: Vec<usize> = (0..=n + 1).map(|k| binomial(n + 1, k)).collect();
        out.check(simplex == expected, || format!("simplex({n}): {simplex:?}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posetalg::GradedPoset;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn chi_oracle_on_chain() {
        let x = GradedPoset::chain(3);
        let rank: Vec<usize> = (0..4).collect();
        assert_eq!(chi_oracle(x.relation(), &rank, 0, 3), IntPoly::from_ints(&[0, 0, -1, 1]));
    }
}
