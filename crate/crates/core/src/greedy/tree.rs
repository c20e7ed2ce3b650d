//! Rooted hypertrees and the bonus function `S_T`.

use crate::hypercore::{berge_girth, EdgeId, Girth, Hypergraph, VertexId};

use super::{GreedyError, WeightAssignment};

/// A linear, Berge-acyclic, connected hypergraph with a designated root. Every
/// edge is oriented away from the root: it descends from its unique vertex of
/// minimum depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedHypertree {
    tree: Hypergraph,
    root: VertexId,
    depth: Vec<usize>,
    parent_edge: Vec<Option<EdgeId>>,
    descending: Vec<Vec<EdgeId>>,
    /// Breadth-first order from the root.
    bfs_order: Vec<VertexId>,
}

impl RootedHypertree {
    pub fn new(tree: Hypergraph, root: VertexId) -> Result<Self, GreedyError> {
        let n = tree.n();
        if root >= n {
            return Err(GreedyError::UnknownVertex { vertex: root, n });
        }
        if !tree.is_linear() {
            return Err(GreedyError::NotAHypertree("not linear".into()));
        }
        if berge_girth(&tree).girth != Girth::Acyclic {
            return Err(GreedyError::NotAHypertree("contains a Berge cycle".into()));
        }

        let mut depth = vec![usize::MAX; n];
        let mut parent_edge = vec![None; n];
        let mut descending = vec![Vec::new(); n];
        let mut oriented = vec![false; tree.edge_count()];
        let mut bfs_order = Vec::with_capacity(n);
        depth[root] = 0;
        bfs_order.push(root);
        let mut cursor = 0;
        while cursor < bfs_order.len() {
            let x = bfs_order[cursor];
            cursor += 1;
            for &e in tree.incident(x) {
                if std::mem::replace(&mut oriented[e], true) {
                    continue;
                }
                descending[x].push(e);
                for &y in tree.edge(e) {
                    if y == x {
                        continue;
                    }
                    if depth[y] != usize::MAX {
                        return Err(GreedyError::NotAHypertree("contains a Berge cycle".into()));
                    }
                    depth[y] = depth[x] + 1;
                    parent_edge[y] = Some(e);
                    bfs_order.push(y);
                }
            }
        }
        if bfs_order.len() != n {
            return Err(GreedyError::NotAHypertree("not connected".into()));
        }
        Ok(Self { tree, root, depth, parent_edge, descending, bfs_order })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.tree
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.tree
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn descending_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.descending[v]
    }

    /// The edge joining `v` to its parent; `None` only for the root.
    pub fn ascending_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.descending[v].is_empty()
    }

    pub fn bfs_order(&self) -> &[VertexId] {
        &self.bfs_order
    }

    /// `S_T` for every vertex. Leaves take their weight; an internal vertex
    /// keeps its weight only if it is heavier than the smallest bonus among
    /// the other vertices of each descending edge, and is 0 otherwise.
    ///
    /// Evaluated bottom-up in reverse breadth-first order.
    pub fn bonus_function(&self, w: &WeightAssignment) -> Result<Vec<f64>, GreedyError> {
        if w.len() != self.n() {
            return Err(GreedyError::SizeMismatch { weights: w.len(), vertices: self.n() });
        }
        if let Some((vertex, &value)) = w.weights().iter().enumerate().find(|(_, &x)| x <= 0.0) {
            return Err(GreedyError::NonPositiveWeight { vertex, value });
        }
        let mut bonus = vec![0.0; self.n()];
        for &v in self.bfs_order.iter().rev() {
            let wv = w.weight(v);
            let survives = self.descending[v].iter().all(|&e| {
                let smallest = self
                    .tree
                    .edge(e)
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| bonus[u])
                    .fold(f64::INFINITY, f64::min);
                wv > smallest
            });
            bonus[v] = if survives { wv } else { 0.0 };
        }
        Ok(bonus)
    }
}
