//! Hypergraph representation and the structural queries the greedy analysis
//! relies on: degrees, linearity, Berge girth and path neighbourhoods.

mod girth;
mod io;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

pub use girth::{berge_girth, BergeCycle, Girth, GirthResult};
pub use io::{load_hypergraph, parse_hypergraph, write_hypergraph};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {edge} has {size} vertices; edges need at least 2")]
    EdgeTooSmall { edge: usize, size: usize },
    #[error("vertex {vertex} in edge {edge} is out of range (n = {n})")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge} repeats vertex {vertex}")]
    RepeatedVertex { edge: usize, vertex: usize },
    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("vertex {vertex} is out of range (n = {n})")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

/// An immutable hypergraph on vertices `0..n`.
///
/// Edges are stored as sorted vertex lists; the vertex-to-edge incidence is
/// built once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<VertexId>>,
    incidence: Vec<Vec<EdgeId>>,
    uniformity: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub is_regular: bool,
}

/// Mapping between the vertices of an induced subhypergraph and its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    /// `to_parent[i]` is the parent id of sub-vertex `i`.
    pub to_parent: Vec<VertexId>,
    /// `to_sub[v]` is the sub id of parent vertex `v`, if it was kept.
    pub to_sub: Vec<Option<VertexId>>,
}

impl Hypergraph {
    /// Builds and validates a hypergraph. Edges may be given in any vertex
    /// order; they are sorted internally.
    pub fn new<E>(n: usize, edges: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator,
        E::Item: AsRef<[VertexId]>,
    {
        let mut sorted = Vec::new();
        for (idx, edge) in edges.into_iter().enumerate() {
            let mut e = edge.as_ref().to_vec();
            if e.len() < 2 {
                return Err(HypergraphError::EdgeTooSmall { edge: idx, size: e.len() });
            }
            if let Some(&vertex) = e.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: idx, vertex, n });
            }
            e.sort_unstable();
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex { edge: idx, vertex: w[0] });
            }
            sorted.push(e);
        }
        let mut seen = HashMap::with_capacity(sorted.len());
        for (idx, e) in sorted.iter().enumerate() {
            if let Some(&first) = seen.get(e.as_slice()) {
                return Err(HypergraphError::DuplicateEdge { edge: idx, first });
            }
            seen.insert(e.as_slice(), idx);
        }
        drop(seen);

        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in sorted.iter().enumerate() {
            for &v in e {
                incidence[v].push(idx);
            }
        }
        let uniformity = match sorted.first() {
            Some(first) if sorted.iter().all(|e| e.len() == first.len()) => Some(first.len()),
            _ => None,
        };
        Ok(Self { n, edges: sorted, incidence, uniformity })
    }

    /// A hypergraph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), incidence: vec![Vec::new(); n], uniformity: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &[VertexId] {
        &self.edges[e]
    }

    /// Edges containing `v`.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Common edge size, present iff all edges have the same size.
    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    /// `r` such that every edge has `r + 1` vertices.
    pub fn rank_r(&self) -> Option<usize> {
        self.uniformity.map(|k| k - 1)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = self.incidence.iter().map(Vec::len).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let is_regular = degrees.windows(2).all(|w| w[0] == w[1]);
        DegreeProfile { degrees, max_degree, is_regular }
    }

    pub fn is_linear(&self) -> bool {
        self.first_nonlinear_pair().is_none()
    }

    /// Two distinct edges sharing at least two vertices, with two of the
    /// shared vertices.
    pub(crate) fn first_nonlinear_pair(&self) -> Option<(EdgeId, EdgeId, VertexId, VertexId)> {
        // For each edge, mark partners seen through any of its vertices; a
        // partner seen twice shares two vertices.
        let mut via: Vec<Option<VertexId>> = vec![None; self.edges.len()];
        let mut touched = Vec::new();
        for (e, verts) in self.edges.iter().enumerate() {
            for &v in verts {
                for &f in &self.incidence[v] {
                    if f == e {
                        continue;
                    }
                    match via[f] {
                        Some(u) => return Some((e, f, u, v)),
                        None => {
                            via[f] = Some(v);
                            touched.push(f);
                        }
                    }
                }
            }
            for f in touched.drain(..) {
                via[f] = None;
            }
        }
        None
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v < self.n
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), HypergraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(HypergraphError::UnknownVertex { vertex: v, n: self.n })
        }
    }

    /// True iff no edge is a subset of `set`.
    pub fn is_independent(&self, set: &[VertexId]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            if v < self.n {
                member[v] = true;
            }
        }
        self.is_independent_mask(&member)
    }

    pub fn is_independent_mask(&self, member: &[bool]) -> bool {
        !self.edges.iter().any(|e| e.iter().all(|&v| member[v]))
    }

    /// Vertices within edge-BFS distance `h` of `v`.
    ///
    /// Stepping from a vertex through an incident edge reaches every other
    /// vertex of that edge at distance +1. On linear hypergraphs this is the
    /// same set as [`Hypergraph::path_neighborhood`]; with short cycles it may
    /// be larger.
    pub fn neighborhood(&self, v: VertexId, h: usize) -> Result<Vec<VertexId>, HypergraphError> {
        self.check_vertex(v)?;
        let dist = self.bfs_distances(v, Some(h));
        Ok((0..self.n).filter(|&u| dist[u].is_some()).collect())
    }

    /// Membership mask of [`Hypergraph::neighborhood`].
    pub fn neighborhood_mask(&self, v: VertexId, h: usize) -> Result<Vec<bool>, HypergraphError> {
        self.check_vertex(v)?;
        Ok(self.bfs_distances(v, Some(h)).into_iter().map(|d| d.is_some()).collect())
    }

    /// Edge-step distances from `source`, optionally cut off at `limit`.
    pub fn bfs_distances(&self, source: VertexId, limit: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut edge_seen = vec![false; self.edges.len()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            if limit.is_some_and(|l| dx >= l) {
                continue;
            }
            for &e in &self.incidence[x] {
                if std::mem::replace(&mut edge_seen[e], true) {
                    continue;
                }
                for &y in &self.edges[e] {
                    if dist[y].is_none() {
                        dist[y] = Some(dx + 1);
                        queue.push_back(y);
                    }
                }
            }
        }
        dist
    }

    /// Vertices reachable from `v` by a loose path of at most `h` edges:
    /// distinct edges, consecutive edges meeting exactly in the joint vertex,
    /// and no other repeated vertex. Exponential; meant for small instances.
    pub fn path_neighborhood(&self, v: VertexId, h: usize) -> Result<Vec<VertexId>, HypergraphError> {
        self.check_vertex(v)?;
        let mut reached = vec![false; self.n];
        reached[v] = true;
        let mut used = vec![false; self.n];
        used[v] = true;
        let mut edge_used = vec![false; self.edges.len()];
        self.extend_paths(v, h, &mut used, &mut edge_used, &mut reached);
        Ok((0..self.n).filter(|&u| reached[u]).collect())
    }

    fn extend_paths(
        &self,
        end: VertexId,
        budget: usize,
        used: &mut [bool],
        edge_used: &mut [bool],
        reached: &mut [bool],
    ) {
        if budget == 0 {
            return;
        }
        for &e in &self.incidence[end] {
            if edge_used[e] {
                continue;
            }
            let verts = &self.edges[e];
            if verts.iter().any(|&x| x != end && used[x]) {
                continue;
            }
            edge_used[e] = true;
            for &x in verts {
                used[x] = true;
                reached[x] = true;
            }
            for &next in verts {
                if next != end {
                    self.extend_paths(next, budget - 1, used, edge_used, reached);
                }
            }
            for &x in verts {
                if x != end {
                    used[x] = false;
                }
            }
            edge_used[e] = false;
        }
    }

    /// The subhypergraph induced by `set`: its vertices, and every edge fully
    /// inside it. Sub-vertex ids follow the sorted order of `set`.
    pub fn induced(&self, set: &[VertexId]) -> Result<(Hypergraph, VertexMap), HypergraphError> {
        let mut to_sub = vec![None; self.n];
        let mut to_parent: Vec<VertexId> = Vec::with_capacity(set.len());
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            self.check_vertex(v)?;
        }
        for (i, &v) in sorted.iter().enumerate() {
            to_sub[v] = Some(i);
            to_parent.push(v);
        }
        let edges: Vec<Vec<VertexId>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| to_sub[v].is_some()))
            .map(|e| e.iter().map(|&v| to_sub[v].unwrap()).collect())
            .collect();
        let sub = Hypergraph::new(sorted.len(), edges)?;
        Ok((sub, VertexMap { to_parent, to_sub }))
    }

    /// True when every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0, None).iter().all(Option::is_some)
    }

    /// Edge ids whose vertex sets lie inside `member`.
    pub fn edges_within(&self, member: &[bool]) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].iter().all(|&v| member[v]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    fn loose_path() -> Hypergraph {
        Hypergraph::new(5, [[0, 1, 2], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn construction_rejects_invalid_edges() {
        assert!(matches!(
            Hypergraph::new(3, [vec![0, 0, 1]]),
            Err(HypergraphError::RepeatedVertex { vertex: 0, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, [vec![0, 3]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, [vec![0, 1], vec![1, 0]]),
            Err(HypergraphError::DuplicateEdge { edge: 1, first: 0 })
        ));
        assert!(matches!(Hypergraph::new(3, [vec![2]]), Err(HypergraphError::EdgeTooSmall { .. })));
    }

    #[test]
    fn uniformity_detection() {
        assert_eq!(triangle().uniformity(), Some(2));
        assert_eq!(loose_path().rank_r(), Some(2));
        let mixed = Hypergraph::new(4, [vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(mixed.uniformity(), None);
        assert_eq!(Hypergraph::empty(4).uniformity(), None);
    }

    #[test]
    fn degree_profiles() {
        let single = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let p = single.degree_profile();
        assert_eq!(p.degrees, vec![1, 1, 1]);
        assert!(p.is_regular);

        let p = triangle().degree_profile();
        assert_eq!((p.max_degree, p.is_regular), (2, true));

        let p = loose_path().degree_profile();
        assert_eq!(p.degrees, vec![1, 1, 2, 1, 1]);
        assert!(!p.is_regular);
    }

    #[test]
    fn linearity() {
        assert!(loose_path().is_linear());
        assert!(!Hypergraph::new(4, [[0, 1, 2], [0, 1, 3]]).unwrap().is_linear());
        assert!(Hypergraph::empty(5).is_linear());
    }

    #[test]
    fn neighborhoods() {
        let g = triangle();
        assert_eq!(g.neighborhood(1, 0).unwrap(), vec![1]);
        let single = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(single.neighborhood(0, 1).unwrap(), vec![0, 1, 2]);
        let p = loose_path();
        assert_eq!(p.neighborhood(0, 1).unwrap(), vec![0, 1, 2]);
        assert_eq!(p.neighborhood(0, 2).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(matches!(p.neighborhood(9, 1), Err(HypergraphError::UnknownVertex { .. })));
    }

    #[test]
    fn path_neighborhood_differs_on_shared_pairs() {
        // The second edge meets the first in two vertices, so no loose path
        // of length 2 starts 0 -> {0,1,2} -> {1,2,3}.
        let g = Hypergraph::new(4, [[0, 1, 2], [1, 2, 3]]).unwrap();
        assert_eq!(g.neighborhood(0, 2).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(g.path_neighborhood(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(loose_path().path_neighborhood(0, 2).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn induced_subhypergraphs() {
        let (sub, map) = triangle().induced(&[0, 1]).unwrap();
        assert_eq!(sub.edges(), &[vec![0, 1]]);
        assert_eq!(map.to_parent, vec![0, 1]);

        let single = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(single.induced(&[0, 1]).unwrap().0.edge_count(), 0);

        let g = loose_path();
        let (all, _) = g.induced(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(all, g);
        assert!(g.induced(&[7]).is_err());
    }

    #[test]
    fn independence() {
        let single = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert!(single.is_independent(&[0, 1]));
        assert!(!single.is_independent(&[0, 1, 2]));
        assert!(single.is_independent(&[]));
    }
}
