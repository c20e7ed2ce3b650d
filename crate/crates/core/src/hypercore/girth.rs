//! Berge girth via shortest cycles in the vertex/edge incidence graph.
//!
//! A cycle of length `2k` in the (simple, bipartite) incidence graph is exactly
//! a Berge `k`-cycle with distinct vertices and distinct edges, so the girth is
//! half the incidence girth. Non-linear inputs are answered directly with a
//! shared-pair witness.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::{EdgeId, Hypergraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Girth {
    Finite(usize),
    /// No Berge cycle at all.
    Acyclic,
}

impl Girth {
    pub fn value(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }

    /// `true` when every Berge cycle has length at least `g`.
    pub fn at_least(self, g: usize) -> bool {
        match self {
            Girth::Finite(k) => k >= g,
            Girth::Acyclic => true,
        }
    }
}

impl PartialOrd for Girth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Girth {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Girth::Finite(a), Girth::Finite(b)) => a.cmp(b),
            (Girth::Finite(_), Girth::Acyclic) => Ordering::Less,
            (Girth::Acyclic, Girth::Finite(_)) => Ordering::Greater,
            (Girth::Acyclic, Girth::Acyclic) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

/// Certificate `v1, e1, v2, e2, ..., vk, ek`: `edges[i]` contains
/// `vertices[i]` and `vertices[(i + 1) % k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BergeCycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl BergeCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Re-checks the certificate against `g`.
    pub fn validate(&self, g: &Hypergraph) -> bool {
        let k = self.vertices.len();
        if k < 2 || self.edges.len() != k {
            return false;
        }
        let distinct = |xs: &[usize]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if !distinct(&self.vertices) || !distinct(&self.edges) {
            return false;
        }
        (0..k).all(|i| {
            let e = self.edges[i];
            e < g.edge_count() && {
                let verts = g.edge(e);
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % k];
                verts.binary_search(&a).is_ok() && verts.binary_search(&b).is_ok()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GirthResult {
    pub girth: Girth,
    pub witness: Option<BergeCycle>,
}

pub fn berge_girth(g: &Hypergraph) -> GirthResult {
    if let Some((e, f, u, v)) = g.first_nonlinear_pair() {
        return GirthResult {
            girth: Girth::Finite(2),
            witness: Some(BergeCycle { vertices: vec![u, v], edges: vec![e, f] }),
        };
    }
    let inc = IncidenceGraph::new(g);
    match inc.shortest_cycle() {
        Some(cycle) => {
            let witness = inc.to_berge(&cycle);
            GirthResult { girth: Girth::Finite(witness.len()), witness: Some(witness) }
        }
        None => GirthResult { girth: Girth::Acyclic, witness: None },
    }
}

/// Nodes `0..n` are vertices, `n..n+m` are edges.
struct IncidenceGraph<'a> {
    g: &'a Hypergraph,
}

impl<'a> IncidenceGraph<'a> {
    fn new(g: &'a Hypergraph) -> Self {
        Self { g }
    }

    fn node_count(&self) -> usize {
        self.g.n() + self.g.edge_count()
    }

    fn for_each_neighbor(&self, node: usize, mut f: impl FnMut(usize)) {
        let n = self.g.n();
        if node < n {
            for &e in self.g.incident(node) {
                f(n + e);
            }
        } else {
            for &v in self.g.edge(node - n) {
                f(v);
            }
        }
    }

    /// A shortest cycle as a node sequence, or `None` for a forest.
    fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let total = self.node_count();
        let mut best: Option<Vec<usize>> = None;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut visited = Vec::new();
        let mut queue = VecDeque::new();

        // Every cycle passes through a vertex node.
        for source in 0..self.g.n() {
            if self.g.degree(source) < 2 {
                continue;
            }
            for &x in &visited {
                dist[x] = usize::MAX;
                parent[x] = usize::MAX;
            }
            visited.clear();
            queue.clear();
            dist[source] = 0;
            visited.push(source);
            queue.push_back(source);

            while let Some(x) = queue.pop_front() {
                let bound = best.as_ref().map_or(usize::MAX, Vec::len);
                if 2 * dist[x] >= bound {
                    break;
                }
                let mut found: Option<usize> = None;
                self.for_each_neighbor(x, |y| {
                    if y == parent[x] {
                        return;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        visited.push(y);
                        queue.push_back(y);
                    } else if dist[x] + dist[y] + 1 < bound
                        && found.is_none_or(|f| dist[y] < dist[f])
                    {
                        found = Some(y);
                    }
                });
                if let Some(y) = found {
                    let cycle = close_cycle(x, y, &dist, &parent);
                    if cycle.len() < bound {
                        best = Some(cycle);
                    }
                }
            }
        }
        best
    }

    fn to_berge(&self, cycle: &[usize]) -> BergeCycle {
        let n = self.g.n();
        let start = cycle.iter().position(|&x| x < n).expect("cycle contains a vertex node");
        let rotated: Vec<usize> = cycle[start..].iter().chain(&cycle[..start]).copied().collect();
        let vertices = rotated.iter().step_by(2).copied().collect();
        let edges = rotated.iter().skip(1).step_by(2).map(|&e| e - n).collect();
        BergeCycle { vertices, edges }
    }
}

/// Cycle formed by the BFS tree paths to `x` and `y` plus the edge `x - y`.
fn close_cycle(x: usize, y: usize, dist: &[usize], parent: &[usize]) -> Vec<usize> {
    let mut left = vec![x];
    let mut right = vec![y];
    let (mut a, mut b) = (x, y);
    while dist[a] > dist[b] {
        a = parent[a];
        left.push(a);
    }
    while dist[b] > dist[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // Both lists end at the common ancestor; keep it once.
    right.pop();
    left.reverse();
    left.extend(right);
    // left: ancestor ... x, then y ... (child of ancestor)
    left
}
