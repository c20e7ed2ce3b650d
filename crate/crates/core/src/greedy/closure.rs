//! Influence-blocking subhypergraphs and the minimal closure `B(A)`.
//!
//! An induced subhypergraph on `S` is influence-blocking when no vertex of `S`
//! is the lightest vertex of an edge leaving `S`. The closure starts from the
//! seed set and absorbs every edge whose lightest vertex has been absorbed.

use crate::hypercore::{Hypergraph, VertexId, VertexMap};

use super::{GreedyError, WeightAssignment};

pub fn is_influence_blocking(g: &Hypergraph, w: &WeightAssignment, member: &[bool]) -> bool {
    g.edges().iter().all(|e| {
        if e.iter().all(|&v| member[v]) {
            return true;
        }
        !member[w.lightest(e)]
    })
}

/// Vertex set of `B(seeds)`, sorted.
pub fn closure_vertices(
    g: &Hypergraph,
    w: &WeightAssignment,
    seeds: &[VertexId],
) -> Result<Vec<VertexId>, GreedyError> {
    if seeds.is_empty() {
        return Err(GreedyError::EmptySeedSet);
    }
    w.check_covers(g)?;
    if let Some(&v) = seeds.iter().find(|&&v| v >= g.n()) {
        return Err(GreedyError::UnknownVertex { vertex: v, n: g.n() });
    }
    let mut scratch = ClosureScratch::new(g.n());
    scratch.grow(g, w.ranks(), seeds, |_| true);
    let mut out = scratch.members.clone();
    out.sort_unstable();
    Ok(out)
}

/// `B(seeds)` as an induced subhypergraph with its vertex map.
pub fn influence_blocking_closure(
    g: &Hypergraph,
    w: &WeightAssignment,
    seeds: &[VertexId],
) -> Result<(Hypergraph, VertexMap), GreedyError> {
    let verts = closure_vertices(g, w, seeds)?;
    Ok(g.induced(&verts)?)
}

/// Reusable buffers for computing closures inside Monte Carlo loops.
#[derive(Debug, Clone)]
pub struct ClosureScratch {
    in_set: Vec<bool>,
    members: Vec<VertexId>,
}

impl ClosureScratch {
    pub fn new(n: usize) -> Self {
        Self { in_set: vec![false; n], members: Vec::new() }
    }

    fn reset(&mut self, n: usize) {
        if self.in_set.len() != n {
            self.in_set = vec![false; n];
        } else {
            for &v in &self.members {
                self.in_set[v] = false;
            }
        }
        self.members.clear();
    }

    /// Grows the closure of `seeds` under ranks `rank` (0 = heaviest). Stops
    /// early, returning `false`, as soon as a vertex with `!allowed(v)` is
    /// absorbed.
    pub fn grow<F>(&mut self, g: &Hypergraph, rank: &[usize], seeds: &[VertexId], allowed: F) -> bool
    where
        F: Fn(VertexId) -> bool,
    {
        self.reset(g.n());
        for &s in seeds {
            if !self.in_set[s] {
                self.in_set[s] = true;
                self.members.push(s);
                if !allowed(s) {
                    return false;
                }
            }
        }
        let mut cursor = 0;
        while cursor < self.members.len() {
            let x = self.members[cursor];
            cursor += 1;
            for &e in g.incident(x) {
                let verts = g.edge(e);
                let lightest = *verts.iter().max_by_key(|&&v| rank[v]).unwrap();
                if lightest != x {
                    continue;
                }
                for &y in verts {
                    if !self.in_set[y] {
                        self.in_set[y] = true;
                        self.members.push(y);
                        if !allowed(y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Members of the last closure, in absorption order.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rk(order: &[usize]) -> WeightAssignment {
        WeightAssignment::from_ranking(order.to_vec()).unwrap()
    }

    #[test]
    fn vertex_defeating_everything_stays_alone() {
        let g = Hypergraph::new(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let w = rk(&[2, 0, 1, 3, 4]);
        assert_eq!(closure_vertices(&g, &w, &[2]).unwrap(), vec![2]);
        let (b, _) = influence_blocking_closure(&g, &w, &[2]).unwrap();
        assert_eq!((b.n(), b.edge_count()), (1, 0));
    }

    #[test]
    fn lightest_vertex_absorbs_its_edge() {
        let g = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let w = rk(&[0, 1, 2]);
        assert_eq!(closure_vertices(&g, &w, &[2]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn two_absorption_steps() {
        let g = Hypergraph::new(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let w = rk(&[0, 1, 3, 4, 2]);
        let verts = closure_vertices(&g, &w, &[2]).unwrap();
        assert_eq!(verts, vec![0, 1, 2, 3, 4]);
        let mut member = vec![false; 5];
        verts.iter().for_each(|&v| member[v] = true);
        assert!(is_influence_blocking(&g, &w, &member));
    }

    #[test]
    fn closure_errors() {
        let g = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let w = rk(&[0, 1, 2]);
        assert!(matches!(closure_vertices(&g, &w, &[]), Err(GreedyError::EmptySeedSet)));
        assert!(matches!(closure_vertices(&g, &w, &[5]), Err(GreedyError::UnknownVertex { .. })));
    }

    #[test]
    fn early_exit_on_disallowed_vertex() {
        let g = Hypergraph::new(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let w = rk(&[0, 1, 3, 4, 2]);
        let mut scratch = ClosureScratch::new(5);
        assert!(!scratch.grow(&g, w.ranks(), &[2], |v| v != 4));
        assert!(scratch.grow(&g, w.ranks(), &[0], |_| true));
        assert_eq!(scratch.members(), &[0]);
    }
}
