//! The randomized greedy independent-set algorithm.
//!
//! A trial is driven by a [`WeightAssignment`]: distinct vertex weights, or
//! equivalently the ranking of vertices by decreasing weight. The law of the
//! outcome depends only on the ranking, so randomness is drawn as uniform
//! permutations.

mod closure;
mod tree;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hypercore::{EdgeId, Hypergraph, HypergraphError, VertexId, VertexMap};

pub use closure::{
    closure_vertices, influence_blocking_closure, is_influence_blocking, ClosureScratch,
};
pub use tree::RootedHypertree;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GreedyError {
    #[error("weight assignment covers {weights} vertices but the hypergraph has {vertices}")]
    SizeMismatch { weights: usize, vertices: usize },
    #[error("ranking is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("weight of vertex {vertex} is {value}; weights must lie in [0, 1]")]
    WeightOutOfRange { vertex: usize, value: f64 },
    #[error("vertices {a} and {b} share weight {value}; weights must be distinct")]
    DuplicateWeight { a: usize, b: usize, value: f64 },
    #[error("weight of vertex {vertex} is {value}; the bonus function needs positive weights")]
    NonPositiveWeight { vertex: usize, value: f64 },
    #[error("vertex {vertex} is not in edge {edge}")]
    VertexNotInEdge { vertex: usize, edge: usize },
    #[error("edge {edge} does not exist")]
    UnknownEdge { edge: usize },
    #[error("vertex {vertex} does not exist (n = {n})")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("seed set must be non-empty")]
    EmptySeedSet,
    #[error("not a rooted hypertree: {0}")]
    NotAHypertree(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Distinct per-vertex weights together with the induced ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightAssignment {
    weights: Vec<f64>,
    /// Vertices by decreasing weight.
    order: Vec<VertexId>,
    /// `rank[v]` is the position of `v` in `order`; 0 is the heaviest.
    rank: Vec<usize>,
}

impl WeightAssignment {
    /// From a ranking listing vertices by decreasing weight. Weights are
    /// derived as `(n - position) / (n + 1)`, all in `(0, 1)`.
    pub fn from_ranking(order: Vec<VertexId>) -> Result<Self, GreedyError> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(GreedyError::NotAPermutation { n });
            }
            rank[v] = pos;
        }
        let denom = (n + 1) as f64;
        let weights = rank.iter().map(|&p| (n - p) as f64 / denom).collect();
        Ok(Self { weights, order, rank })
    }

    pub fn from_weights(weights: Vec<f64>) -> Result<Self, GreedyError> {
        for (vertex, &value) in weights.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(GreedyError::WeightOutOfRange { vertex, value });
            }
        }
        let mut order: Vec<VertexId> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));
        if let Some(w) = order.windows(2).find(|w| weights[w[0]] == weights[w[1]]) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(GreedyError::DuplicateWeight { a, b, value: weights[a] });
        }
        let mut rank = vec![0; weights.len()];
        for (pos, &v) in order.iter().enumerate() {
            rank[v] = pos;
        }
        Ok(Self { weights, order, rank })
    }

    /// Uniformly random ranking of `n` vertices.
    pub fn random_ranking<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<VertexId> = (0..n).collect();
        order.shuffle(rng);
        Self::from_ranking(order).expect("shuffle yields a permutation")
    }

    /// I.i.d. uniform weights in `(0, 1)`, redrawn on the (measure-zero) event
    /// of a tie.
    pub fn random_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let weights: Vec<f64> = (0..n)
                .map(|_| loop {
                    let x: f64 = rng.random();
                    if x > 0.0 {
                        break x;
                    }
                })
                .collect();
            if let Ok(w) = Self::from_weights(weights) {
                return w;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: VertexId) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn rank(&self, v: VertexId) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertex of minimum weight in `edge`.
    pub fn lightest(&self, edge: &[VertexId]) -> VertexId {
        *edge.iter().max_by_key(|&&v| self.rank[v]).expect("edges are non-empty")
    }

    /// Weights restricted to the kept vertices of an induced subhypergraph.
    pub fn restrict(&self, map: &VertexMap) -> WeightAssignment {
        Self::from_weights(map.to_parent.iter().map(|&v| self.weights[v]).collect())
            .expect("a restriction of distinct weights stays distinct")
    }

    fn check_covers(&self, g: &Hypergraph) -> Result<(), GreedyError> {
        if self.len() == g.n() {
            Ok(())
        } else {
            Err(GreedyError::SizeMismatch { weights: self.len(), vertices: g.n() })
        }
    }
}

/// Result of one greedy run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyOutcome {
    /// The independent set, sorted by id.
    pub selected: Vec<VertexId>,
    /// Vertices in the order they were selected.
    pub selection_order: Vec<VertexId>,
    /// For each deleted vertex, the edge that deleted it.
    pub deletion_witness: BTreeMap<VertexId, EdgeId>,
}

impl GreedyOutcome {
    pub fn size(&self) -> usize {
        self.selected.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.selected.binary_search(&v).is_ok()
    }

    /// Checks independence, coverage of all vertices and every witness.
    pub fn validate(&self, g: &Hypergraph) -> bool {
        let mut member = vec![false; g.n()];
        for &v in &self.selected {
            member[v] = true;
        }
        if !g.is_independent_mask(&member) {
            return false;
        }
        if self.selected.len() + self.deletion_witness.len() != g.n() {
            return false;
        }
        self.deletion_witness.iter().all(|(&v, &e)| {
            !member[v]
                && e < g.edge_count()
                && g.edge(e).contains(&v)
                && g.edge(e).iter().all(|&u| u == v || member[u])
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Remaining,
    Selected,
    Deleted,
}

/// Reusable buffers for repeated greedy runs on one hypergraph.
///
/// After each selection only the edges through the new vertex are touched: an
/// edge becomes deadly exactly when all but one of its vertices are selected.
#[derive(Debug, Clone, Default)]
pub struct GreedyRunner {
    state: Vec<State>,
    selected_in_edge: Vec<u32>,
    witness: Vec<EdgeId>,
    selection_order: Vec<VertexId>,
}

impl GreedyRunner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs greedy with vertices processed in `order` (heaviest first).
    pub fn run(&mut self, g: &Hypergraph, order: &[VertexId]) {
        debug_assert_eq!(order.len(), g.n());
        self.state.clear();
        self.state.resize(g.n(), State::Remaining);
        self.selected_in_edge.clear();
        self.selected_in_edge.resize(g.edge_count(), 0);
        self.witness.clear();
        self.witness.resize(g.n(), usize::MAX);
        self.selection_order.clear();

        for &v in order {
            if self.state[v] != State::Remaining {
                continue;
            }
            self.state[v] = State::Selected;
            self.selection_order.push(v);
            for &e in g.incident(v) {
                self.selected_in_edge[e] += 1;
                let verts = g.edge(e);
                if self.selected_in_edge[e] as usize + 1 == verts.len() {
                    let last = verts
                        .iter()
                        .copied()
                        .find(|&u| self.state[u] != State::Selected)
                        .expect("one vertex of the edge is unselected");
                    if self.state[last] == State::Remaining {
                        self.state[last] = State::Deleted;
                        self.witness[last] = e;
                    }
                }
            }
        }
    }

    pub fn selected_count(&self) -> usize {
        self.selection_order.len()
    }

    pub fn is_selected(&self, v: VertexId) -> bool {
        self.state[v] == State::Selected
    }

    pub fn selection_order(&self) -> &[VertexId] {
        &self.selection_order
    }

    pub fn outcome(&self) -> GreedyOutcome {
        let mut selected = self.selection_order.clone();
        selected.sort_unstable();
        let deletion_witness = self
            .state
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == State::Deleted)
            .map(|(v, _)| (v, self.witness[v]))
            .collect();
        GreedyOutcome { selected, selection_order: self.selection_order.clone(), deletion_witness }
    }
}

/// Greedy driven by a weight assignment: repeatedly select the heaviest
/// remaining vertex, then delete every remaining `v` with an edge `e ∋ v`
/// whose other vertices are all selected.
pub fn greedy_by_ranking(g: &Hypergraph, w: &WeightAssignment) -> Result<GreedyOutcome, GreedyError> {
    w.check_covers(g)?;
    let mut runner = GreedyRunner::new();
    runner.run(g, w.order());
    Ok(runner.outcome())
}

/// Greedy on a uniformly random ranking drawn from `seed`.
pub fn greedy_uniform(g: &Hypergraph, seed: u64) -> GreedyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = WeightAssignment::random_ranking(g.n(), &mut rng);
    greedy_by_ranking(g, &w).expect("ranking covers the hypergraph")
}

/// The sequential formulation: `choose` picks an index into the current list
/// of remaining vertices (sorted by id); that vertex is selected and every
/// remaining vertex that now completes an edge with the selection is deleted.
///
/// Deletions are found by rescanning all remaining vertices after each step,
/// independently of [`GreedyRunner`]'s counters.
pub fn greedy_sequential<F>(g: &Hypergraph, mut choose: F) -> GreedyOutcome
where
    F: FnMut(&[VertexId]) -> usize,
{
    let mut remaining: Vec<VertexId> = (0..g.n()).collect();
    let mut selected = vec![false; g.n()];
    let mut selection_order = Vec::new();
    let mut deletion_witness = BTreeMap::new();

    while !remaining.is_empty() {
        let idx = choose(&remaining);
        let v = remaining.remove(idx);
        selected[v] = true;
        selection_order.push(v);
        remaining.retain(|&u| {
            let deadly = g
                .incident(u)
                .iter()
                .copied()
                .find(|&e| g.edge(e).iter().all(|&x| x == u || selected[x]));
            match deadly {
                Some(e) => {
                    deletion_witness.insert(u, e);
                    false
                }
                None => true,
            }
        });
    }
    let mut sel: Vec<VertexId> = selection_order.clone();
    sel.sort_unstable();
    GreedyOutcome { selected: sel, selection_order, deletion_witness }
}

/// Sequential formulation with a uniformly random choice at every step.
pub fn greedy_sequential_random(g: &Hypergraph, seed: u64) -> GreedyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    greedy_sequential(g, |rem| rng.random_range(0..rem.len()))
}

/// The static rule: keep every vertex that is not the lightest vertex of any
/// edge containing it.
pub fn static_min_select(g: &Hypergraph, w: &WeightAssignment) -> Result<Vec<VertexId>, GreedyError> {
    w.check_covers(g)?;
    Ok((0..g.n())
        .filter(|&v| g.incident(v).iter().all(|&e| w.lightest(g.edge(e)) != v))
        .collect())
}

/// `v` defeats `e` when some other vertex of `e` is lighter than `v`.
pub fn defeats(
    g: &Hypergraph,
    w: &WeightAssignment,
    v: VertexId,
    e: EdgeId,
) -> Result<bool, GreedyError> {
    w.check_covers(g)?;
    if e >= g.edge_count() {
        return Err(GreedyError::UnknownEdge { edge: e });
    }
    let verts = g.edge(e);
    if !verts.contains(&v) {
        return Err(GreedyError::VertexNotInEdge { vertex: v, edge: e });
    }
    Ok(verts.iter().any(|&u| u != v && w.rank(u) > w.rank(v)))
}
