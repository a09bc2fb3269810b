//! Finite balls in the Cayley complex of a cactus group.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::rewrite::RewriteSystem;
use crate::words::{GenId, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub gen: GenId,
}

/// A square 2-cell, listed starting at its least vertex and continuing towards
/// that vertex's lesser face neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertices: [usize; 4],
}

impl Face {
    fn oriented(cycle: [usize; 4]) -> Face {
        let start = (0..4).min_by_key(|&i| cycle[i]).unwrap();
        let next = cycle[(start + 1) % 4];
        let prev = cycle[(start + 3) % 4];
        let step = if next < prev { 1 } else { 3 };
        let mut vertices = [0; 4];
        for (k, v) in vertices.iter_mut().enumerate() {
            *v = cycle[(start + k * step) % 4];
        }
        Face { vertices }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// The two face neighbours of `v`.
    pub fn neighbours_of(&self, v: usize) -> Option<(usize, usize)> {
        let i = self.vertices.iter().position(|&x| x == v)?;
        Some((self.vertices[(i + 1) % 4], self.vertices[(i + 3) % 4]))
    }
}

#[derive(Clone, Debug)]
pub struct CayleyBall {
    radius: usize,
    vertices: Vec<Word>,
    labels: Vec<String>,
    index: HashMap<Word, usize>,
    dist: Vec<usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, GenId)>>,
    faces: Vec<Face>,
    interior: Vec<bool>,
}

impl CayleyBall {
    /// Vertices of word length at most `radius`, the edges between them and the
    /// square cells all of whose corners lie in the ball.
    pub fn build(sys: &RewriteSystem, radius: usize) -> Result<Self> {
        if radius < 1 {
            return Err(Error::InvalidArgument("radius must be at least 1".into()));
        }
        let group = sys.group();
        let spheres = sys.spheres(radius)?;
        let mut vertices = Vec::new();
        let mut dist = Vec::new();
        for (d, s) in spheres.iter().enumerate() {
            for w in s {
                vertices.push(w.clone());
                dist.push(d);
            }
        }
        let index: HashMap<Word, usize> = vertices.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let step = |i: usize, g: GenId| -> Result<Option<usize>> {
            let mut w = vertices[i].clone();
            w.0.push(Letter::pos(g));
            Ok(index.get(&sys.canonical_form(&w)?).copied())
        };

        let mut edges = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, adj) in adjacency.iter_mut().enumerate() {
            for &g in group.generators() {
                if let Some(j) = step(i, g)? {
                    adj.push((j, g));
                    edges.insert(Edge { u: i.min(j), v: i.max(j), gen: g });
                }
            }
        }

        let mut faces = BTreeSet::new();
        let mut interior = vec![true; vertices.len()];
        for i in 0..vertices.len() {
            if adjacency[i].len() < group.generators().len() {
                interior[i] = false;
            }
            for r in group.relators() {
                for rot in r.rotations() {
                    let mut cycle = [i; 4];
                    let mut cur = Some(i);
                    for (k, l) in rot.0.iter().enumerate() {
                        cur = match cur {
                            Some(c) => step(c, l.gen)?,
                            None => None,
                        };
                        if k < 3 {
                            if let Some(c) = cur {
                                cycle[k + 1] = c;
                            }
                        }
                    }
                    match cur {
                        Some(c) if c == i => {
                            faces.insert(Face::oriented(cycle));
                        }
                        Some(_) => {
                            return Err(Error::Inconsistent(format!(
                                "relator {} does not close at {}",
                                group.format(r),
                                group.format(&vertices[i])
                            )))
                        }
                        None => interior[i] = false,
                    }
                }
            }
        }
        let labels = vertices.iter().map(|w| group.format(w)).collect();
        Ok(CayleyBall {
            radius,
            vertices,
            labels,
            index,
            dist,
            edges: edges.into_iter().collect(),
            adjacency,
            faces: faces.into_iter().collect(),
            interior,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Word {
        &self.vertices[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn distance_from_identity(&self, i: usize) -> usize {
        self.dist[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbours(&self, i: usize) -> &[(usize, GenId)] {
        &self.adjacency[i]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_at(&self, v: usize) -> Vec<Face> {
        self.faces.iter().filter(|f| f.contains(v)).copied().collect()
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.interior[v]).collect()
    }

    /// Removes a face; used to build negative controls.
    pub fn without_face(&self, face: usize) -> CayleyBall {
        let mut b = self.clone();
        b.faces.remove(face);
        b
    }

    /// Neighbours of `v` in the cyclic order induced by shared faces, starting
    /// from the least neighbour towards its lesser link neighbour.
    pub fn vertex_link(&self, v: usize) -> Result<Vec<usize>> {
        if !self.interior[v] {
            return Err(Error::PartialLink(self.label(v)));
        }
        let nbrs: BTreeSet<usize> = self.adjacency[v].iter().map(|&(j, _)| j).collect();
        let mut link: BTreeMap<usize, Vec<usize>> = nbrs.iter().map(|&j| (j, Vec::new())).collect();
        for f in self.faces_at(v) {
            let (a, b) = f.neighbours_of(v).unwrap();
            link.entry(a).or_default().push(b);
            link.entry(b).or_default().push(a);
        }
        if link.len() != nbrs.len() || link.values().any(|adj| adj.len() != 2) {
            return Err(Error::PartialLink(self.label(v)));
        }
        let start = *nbrs.iter().next().unwrap();
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = *link[&start].iter().min().unwrap();
        while cur != start {
            order.push(cur);
            let next = if link[&cur][0] == prev { link[&cur][1] } else { link[&cur][0] };
            prev = cur;
            cur = next;
            if order.len() > nbrs.len() {
                return Err(Error::PartialLink(self.label(v)));
            }
        }
        if order.len() != nbrs.len() {
            return Err(Error::PartialLink(self.label(v)));
        }
        Ok(order)
    }

    pub fn label(&self, v: usize) -> String {
        self.labels[v].clone()
    }

    /// Checks the local structure at every interior vertex.
    pub fn check_tiling(&self, degree: usize) -> TilingReport {
        let mut violations = Vec::new();
        let interior = self.interior_vertices();
        for &v in &interior {
            let deg = self.adjacency[v].len();
            if deg != degree {
                violations.push(Violation { vertex: Some(v), message: format!("degree {deg}") });
            }
            let nf = self.faces_at(v).len();
            if nf != degree {
                violations.push(Violation { vertex: Some(v), message: format!("{nf} faces") });
            }
            if self.vertex_link(v).is_err() {
                violations.push(Violation { vertex: Some(v), message: "link is not a single cycle".into() });
            }
        }
        let edge_set: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        for f in &self.faces {
            let distinct: BTreeSet<usize> = f.vertices.iter().copied().collect();
            let closed = (0..4).all(|k| {
                let (a, b) = (f.vertices[k], f.vertices[(k + 1) % 4]);
                edge_set.contains(&(a.min(b), a.max(b)))
            });
            if distinct.len() != 4 || !closed {
                violations.push(Violation { vertex: None, message: format!("face {:?} is not a square", f.vertices) });
            }
        }
        TilingReport {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            faces: self.faces.len(),
            interior_vertices: interior.len(),
            violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: Option<usize>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub interior_vertices: usize,
    pub violations: Vec<Violation>,
}

impl TilingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cactus::CactusGroup;

    fn w(s: &str) -> Word {
        CactusGroup::j4().parse(s).unwrap()
    }

    #[test]
    fn radius_two_counts() {
        let sys = RewriteSystem::j4_prime();
        let b = CayleyBall::build(&sys, 2).unwrap();
        assert_eq!(b.vertices().len(), 21);
        assert_eq!(b.edges().len(), 25);
    }

    #[test]
    fn radius_one_is_a_star() {
        let sys = RewriteSystem::j4_prime();
        let b = CayleyBall::build(&sys, 1).unwrap();
        assert_eq!(b.edges().len(), 5);
        assert!(b.faces().is_empty());
        assert!(CayleyBall::build(&sys, 0).is_err());
    }

    #[test]
    fn faces_at_identity() {
        let sys = RewriteSystem::j4_prime();
        let b = CayleyBall::build(&sys, 2).unwrap();
        let e = b.index_of(&Word::empty()).unwrap();
        let got: BTreeSet<BTreeSet<Word>> =
            b.faces_at(e).iter().map(|f| f.vertices.iter().map(|&i| b.vertex(i).clone()).collect()).collect();
        let want: BTreeSet<BTreeSet<Word>> = [
            ["e", "s12", "s12 s13", "s13"],
            ["e", "s13", "s13 s12", "s23"],
            ["e", "s23", "s23 s24", "s24"],
            ["e", "s24", "s24 s23", "s34"],
            ["e", "s34", "s34 s12", "s12"],
        ]
        .iter()
        .map(|f| f.iter().map(|s| sys.canonical_form(&w(s)).unwrap()).collect())
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn link_of_identity_and_neighbour() {
        let sys = RewriteSystem::j4_prime();
        let b = CayleyBall::build(&sys, 3).unwrap();
        let e = b.index_of(&Word::empty()).unwrap();
        let link: Vec<Word> = b.vertex_link(e).unwrap().into_iter().map(|i| b.vertex(i).clone()).collect();
        let want: Vec<Word> = ["s12", "s13", "s23", "s24", "s34"].iter().map(|s| w(s)).collect();
        assert_eq!(link, want);
        let s12 = b.index_of(&w("s12")).unwrap();
        assert_eq!(b.vertex_link(s12).unwrap().len(), 5);
        let far = b.index_of(&w("s12 s13 s12")).unwrap();
        assert!(matches!(b.vertex_link(far), Err(Error::PartialLink(_))));
    }

    #[test]
    fn tiling_checks() {
        let sys = RewriteSystem::j4_prime();
        let b = CayleyBall::build(&sys, 3).unwrap();
        let rep = b.check_tiling(5);
        assert!(rep.ok(), "{:?}", rep.violations);
        assert_eq!(rep.interior_vertices, 6);
        let e = b.index_of(&Word::empty()).unwrap();
        assert_eq!(b.faces_at(e).len(), 5);
        let f = b.faces().iter().position(|f| f.contains(e)).unwrap();
        let broken = b.without_face(f).check_tiling(5);
        assert!(!broken.ok());
        assert!(broken.violations.iter().any(|v| v.vertex == Some(e)));
    }

    #[test]
    fn radius_four_interior() {
        let sys = RewriteSystem::j4_prime();
        let b = CayleyBall::build(&sys, 4).unwrap();
        let rep = b.check_tiling(5);
        assert!(rep.ok(), "{:?}", rep.violations);
        assert_eq!(rep.vertices, 166);
        let interior: BTreeSet<usize> = b.interior_vertices().into_iter().collect();
        let inner: BTreeSet<usize> = (0..b.vertices().len()).filter(|&v| b.distance_from_identity(v) <= 2).collect();
        assert!(inner.is_subset(&interior));
    }
}
