use std::collections::{BTreeSet, HashMap};

use super::{intersect, is_subset, Face};

/// The face lattice of a polytope, faces held in canonical `(dim, vertices)`
/// order. Index 0 is always the empty face and the last index the polytope.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, usize>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    dim: isize,
    num_vertices: usize,
}

impl PartialEq for FaceLattice {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl FaceLattice {
    /// Builds the lattice from a complete list of faces. The empty face and
    /// duplicates are handled here; covers are derived from inclusion.
    pub fn from_faces(num_vertices: usize, faces: impl IntoIterator<Item = Face>) -> Self {
        let mut set: BTreeSet<Face> = faces.into_iter().collect();
        set.insert(Face { dim: -1, vertices: Vec::new() });
        let faces: Vec<Face> = set.into_iter().collect();
        let dim = faces.last().map_or(-1, |f| f.dim);
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let mut by_dim: HashMap<isize, Vec<usize>> = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            by_dim.entry(f.dim).or_default().push(i);
        }
        let mut covers = Vec::new();
        let mut up = vec![Vec::new(); faces.len()];
        let mut down = vec![Vec::new(); faces.len()];
        for (g, big) in faces.iter().enumerate() {
            if let Some(cands) = by_dim.get(&(big.dim - 1)) {
                for &f in cands {
                    if is_subset(&faces[f].vertices, &big.vertices) {
                        covers.push((f, g));
                        up[f].push(g);
                        down[g].push(f);
                    }
                }
            }
        }
        covers.sort();
        FaceLattice { faces, index, covers, up, down, dim, num_vertices }
    }

    /// Closes a family of facets under intersection. `dim_of` gives the affine
    /// dimension of a vertex set.
    pub fn from_facets(
        num_vertices: usize,
        dim: isize,
        facets: &[Vec<usize>],
        dim_of: impl Fn(&[usize]) -> isize,
    ) -> Self {
        let top: Vec<usize> = (0..num_vertices).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(top.clone());
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for f in facets {
            if found.insert(f.clone()) {
                frontier.push(f.clone());
            }
        }
        while let Some(g) = frontier.pop() {
            for f in facets {
                let meet = intersect(&g, f);
                if !meet.is_empty() && found.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let faces = found.into_iter().map(|vertices| {
            let d = if vertices.len() == num_vertices { dim } else { dim_of(&vertices) };
            Face { dim: d, vertices }
        });
        FaceLattice::from_faces(num_vertices, faces)
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Faces having face `i` as a facet.
    pub fn up(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Facets of face `i`.
    pub fn down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn contains_face(&self, vertices: &[usize]) -> bool {
        self.index.contains_key(vertices)
    }

    /// `f_{-1}, f_0, ..., f_d`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim + 2).max(1) as usize];
        for face in &self.faces {
            f[(face.dim + 1) as usize] += 1;
        }
        f
    }

    pub fn faces_of_dim(&self, d: isize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == d)
    }

    /// Vertex pairs of the 1-dimensional faces.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces_of_dim(1)
            .map(|(_, f)| (f.vertices[0], f.vertices[1]))
            .collect()
    }

    /// Smallest face containing every listed vertex.
    pub fn smallest_containing(&self, vertices: &[usize]) -> usize {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.faces
            .iter()
            .position(|f| is_subset(&sorted, &f.vertices))
            .expect("the polytope itself contains every vertex")
    }

    /// Faces contained in face `g`, reindexed to the vertices of `g`.
    pub fn restrict(&self, g: usize) -> FaceLattice {
        let verts = &self.faces[g].vertices;
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let faces = self
            .faces
            .iter()
            .filter(|f| is_subset(&f.vertices, verts))
            .map(|f| Face {
                dim: f.dim,
                vertices: f.vertices.iter().map(|v| local[v]).collect(),
            });
        FaceLattice::from_faces(verts.len(), faces)
    }

    /// Checks the structural laws every polytope face lattice satisfies.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.faces.len();
        if self.faces[0].dim != -1 || !self.faces[0].vertices.is_empty() {
            return Err("missing empty face".into());
        }
        if self.faces[n - 1].vertices.len() != self.num_vertices {
            return Err("maximum is not the whole polytope".into());
        }
        if self.faces.iter().filter(|f| f.dim == self.dim).count() != 1 {
            return Err("maximum is not unique".into());
        }
        let euler: i64 = self
            .f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum();
        if euler != 0 {
            return Err(format!("Euler relation fails: {euler}"));
        }
        for v in 0..self.num_vertices {
            if !self.contains_face(&[v]) {
                return Err(format!("vertex {v} is not a 0-face"));
            }
        }
        for a in &self.faces {
            for b in &self.faces {
                if !self.contains_face(&intersect(&a.vertices, &b.vertices)) {
                    return Err(format!("{:?} meet {:?} is not a face", a.vertices, b.vertices));
                }
            }
        }
        let facets: Vec<&Face> = self.faces.iter().filter(|f| f.dim == self.dim - 1).collect();
        for f in &self.faces {
            if f.dim < 0 || f.dim >= self.dim - 1 {
                continue;
            }
            let mut meet: Option<Vec<usize>> = None;
            for fc in facets.iter().filter(|fc| is_subset(&f.vertices, &fc.vertices)) {
                meet = Some(match meet {
                    None => fc.vertices.clone(),
                    Some(m) => intersect(&m, &fc.vertices),
                });
            }
            if meet.as_deref() != Some(&f.vertices[..]) {
                return Err(format!("face {:?} is not cut out by facets", f.vertices));
            }
        }
        for &(a, b) in &self.covers {
            if self.faces[b].dim != self.faces[a].dim + 1 {
                return Err("cover does not raise dimension by one".into());
            }
        }
        Ok(())
    }
}
