//! Isomorphism of polytope face lattices.
//!
//! A polytope lattice is atomistic, so an isomorphism is determined by a
//! bijection of vertices that carries the family of face vertex sets onto the
//! other family. We search for such a bijection by backtracking over vertices
//! in breadth-first edge order, pruned by per-vertex incidence signatures and
//! edge adjacency, and check the full face family at the leaves.

use std::collections::{HashSet, VecDeque};

use super::FaceLattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    /// `vertex_map[v]` is the image in the second lattice of vertex `v`.
    pub vertex_map: Vec<usize>,
    /// `face_map[i]` is the image of face `i` (lattice index).
    pub face_map: Vec<usize>,
}

fn signature(l: &FaceLattice, v: usize) -> Vec<usize> {
    let mut sig = vec![0; (l.dim() + 2).max(0) as usize];
    for f in l.faces() {
        if f.contains(v) {
            sig[(f.dim + 1) as usize] += 1;
        }
    }
    sig
}

/// Returns a witness isomorphism when the lattices are isomorphic.
pub fn lattice_isomorphic(a: &FaceLattice, b: &FaceLattice) -> Option<LatticeIso> {
    if a.f_vector() != b.f_vector() || a.num_vertices() != b.num_vertices() {
        return None;
    }
    let n = a.num_vertices();
    let sig_a: Vec<Vec<usize>> = (0..n).map(|v| signature(a, v)).collect();
    let sig_b: Vec<Vec<usize>> = (0..n).map(|v| signature(b, v)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let adj_a = adjacency(a);
    let edges_b: HashSet<(usize, usize)> = b.edges().into_iter().collect();
    let order = bfs_order(&adj_a, n);
    let mut search = Search {
        a,
        b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        adj_a: &adj_a,
        edges_b: &edges_b,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !search.extend(0) {
        return None;
    }
    let vertex_map = search.map;
    let face_map = a
        .faces()
        .iter()
        .map(|f| {
            let mut img: Vec<usize> = f.vertices.iter().map(|&v| vertex_map[v]).collect();
            img.sort_unstable();
            b.index_of(&img).expect("checked at leaf")
        })
        .collect();
    Some(LatticeIso { vertex_map, face_map })
}

fn adjacency(l: &FaceLattice) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); l.num_vertices()];
    for (u, v) in l.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn bfs_order(adj: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    a: &'a FaceLattice,
    b: &'a FaceLattice,
    sig_a: &'a [Vec<usize>],
    sig_b: &'a [Vec<usize>],
    adj_a: &'a [Vec<usize>],
    edges_b: &'a HashSet<(usize, usize)>,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn edge_b(&self, x: usize, y: usize) -> bool {
        self.edges_b.contains(&(x.min(y), x.max(y)))
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.full_check();
        }
        let v = self.order[depth];
        for cand in 0..self.map.len() {
            if self.used[cand] || self.sig_a[v] != self.sig_b[cand] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let adjacent = self.adj_a[v].contains(&u);
                adjacent == self.edge_b(self.map[u], cand)
            });
            if !consistent {
                continue;
            }
            self.map[v] = cand;
            self.used[cand] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[cand] = false;
            self.map[v] = usize::MAX;
        }
        false
    }

    fn full_check(&self) -> bool {
        self.a.faces().iter().all(|f| {
            let mut img: Vec<usize> = f.vertices.iter().map(|&v| self.map[v]).collect();
            img.sort_unstable();
            self.b.index_of(&img).is_some_and(|j| self.b.face(j).dim == f.dim)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{Point, Polytope};

    fn polygon(pts: &[[i64; 2]]) -> Polytope {
        Polytope::new(pts.iter().map(|p| Point::from_ints(p)).collect()).unwrap()
    }

    #[test]
    fn hexagons_match_and_pentagon_does_not() {
        let h1 = polygon(&[[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]]);
        let h2 = polygon(&[[0, 0], [3, 0], [4, 1], [4, 3], [1, 3], [0, 2]]);
        let iso = lattice_isomorphic(h1.lattice(), h2.lattice()).expect("isomorphic");
        assert_eq!(iso.face_map.len(), h1.lattice().len());
        let pent = polygon(&[[0, 0], [2, 0], [3, 2], [1, 3], [-1, 2]]);
        assert!(lattice_isomorphic(h1.lattice(), pent.lattice()).is_none());
    }

    #[test]
    fn square_pyramid_versus_triangular_bipyramid() {
        let pyr = Polytope::new(vec![
            Point::from_ints(&[0, 0, 0]),
            Point::from_ints(&[2, 0, 0]),
            Point::from_ints(&[2, 2, 0]),
            Point::from_ints(&[0, 2, 0]),
            Point::from_ints(&[1, 1, 1]),
        ])
        .unwrap();
        let bip = Polytope::new(vec![
            Point::from_ints(&[0, 0, 0]),
            Point::from_ints(&[3, 0, 0]),
            Point::from_ints(&[0, 3, 0]),
            Point::from_ints(&[1, 1, 2]),
            Point::from_ints(&[1, 1, -2]),
        ])
        .unwrap();
        assert!(lattice_isomorphic(pyr.lattice(), bip.lattice()).is_none());
        assert!(lattice_isomorphic(pyr.lattice(), pyr.lattice()).is_some());
    }
}
