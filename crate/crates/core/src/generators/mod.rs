//! Instance families: complete rooted hypertrees, loose paths and cycles, and
//! random linear / regular high-girth hypergraphs.

mod spec;

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::greedy::{GreedyError, RootedHypertree};
use crate::hypercore::{berge_girth, parse_hypergraph, Hypergraph, HypergraphError, VertexId};

pub use spec::{GeneratorSpec, Instance};

/// Hard cap on generated tree sizes.
pub const MAX_TREE_VERTICES: u128 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("tree would have {0} vertices (limit {MAX_TREE_VERTICES})")]
    TooLarge(u128),
    #[error("no instance found after {attempts} attempts")]
    Exhausted { attempts: usize },
    #[error("invalid generator spec `{spec}`: {message}")]
    Spec { spec: String, message: String },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Greedy(#[from] GreedyError),
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParameters(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeVariant {
    /// `T(d, h)`: every non-leaf has `d` descending edges.
    Full,
    /// `T~(d, h)`: the root has `d` descending edges, other non-leaves `d - 1`.
    RootHeavy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TreeSpec {
    pub r: usize,
    pub d: usize,
    pub h: usize,
    pub variant: TreeVariant,
}

impl TreeSpec {
    pub fn new(r: usize, d: usize, h: usize, variant: TreeVariant) -> Result<Self, GeneratorError> {
        if r == 0 || d == 0 {
            return Err(invalid("tree needs r >= 1 and d >= 1"));
        }
        Ok(Self { r, d, h, variant })
    }

    pub fn full(r: usize, d: usize, h: usize) -> Result<Self, GeneratorError> {
        Self::new(r, d, h, TreeVariant::Full)
    }

    pub fn root_heavy(r: usize, d: usize, h: usize) -> Result<Self, GeneratorError> {
        Self::new(r, d, h, TreeVariant::RootHeavy)
    }

    /// Exact vertex count.
    pub fn vertex_count(&self) -> u128 {
        let (r, d) = (self.r as u128, self.d as u128);
        let mut total: u128 = 1;
        let mut level: u128 = 1;
        for depth in 0..self.h {
            let branching = match (self.variant, depth) {
                (TreeVariant::Full, _) | (TreeVariant::RootHeavy, 0) => d,
                (TreeVariant::RootHeavy, _) => d - 1,
            };
            level = level.saturating_mul(branching * r);
            total = total.saturating_add(level);
        }
        total
    }
}

/// Builds `T(d, h)` or `T~(d, h)` with `(r+1)`-edges. Vertex 0 is the root and
/// ids increase in breadth-first order.
pub fn make_tree(spec: TreeSpec) -> Result<RootedHypertree, GeneratorError> {
    let count = spec.vertex_count();
    if count > MAX_TREE_VERTICES {
        return Err(GeneratorError::TooLarge(count));
    }
    let n = count as usize;
    let mut edges = Vec::new();
    let mut next = 1;
    // (vertex, depth) in BFS order; vertices are created in that order
    let mut cursor = 0;
    let mut depth = vec![0usize; n];
    while cursor < next {
        let v = cursor;
        cursor += 1;
        if depth[v] == spec.h {
            continue;
        }
        let branching = match spec.variant {
            TreeVariant::RootHeavy if v != 0 => spec.d - 1,
            _ => spec.d,
        };
        for _ in 0..branching {
            let mut e = Vec::with_capacity(spec.r + 1);
            e.push(v);
            for _ in 0..spec.r {
                depth[next] = depth[v] + 1;
                e.push(next);
                next += 1;
            }
            edges.push(e);
        }
    }
    debug_assert_eq!(next, n);
    let g = Hypergraph::new(n, edges)?;
    Ok(RootedHypertree::new(g, 0)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoosePath {
    pub graph: Hypergraph,
    pub start: VertexId,
    pub end: VertexId,
}

/// Vertices `v_0..v_{lr}` with edges `{v_{kr}, ..., v_{(k+1)r}}`.
pub fn make_loose_path(r: usize, l: usize) -> Result<LoosePath, GeneratorError> {
    if r == 0 || l == 0 {
        return Err(invalid("loose path needs r >= 1 and l >= 1"));
    }
    let edges: Vec<Vec<usize>> = (0..l).map(|k| (k * r..=(k + 1) * r).collect()).collect();
    let graph = Hypergraph::new(l * r + 1, edges)?;
    Ok(LoosePath { graph, start: 0, end: l * r })
}

/// `k` edges of size `r + 1` arranged cyclically. For `k >= 3` consecutive
/// edges share one vertex (junctions are `0..k`); for `k = 2` the two edges
/// share two vertices, which needs `r >= 2`.
pub fn make_loose_berge_cycle(r: usize, k: usize) -> Result<Hypergraph, GeneratorError> {
    if r == 0 || k < 2 {
        return Err(invalid("Berge cycle needs r >= 1 and k >= 2"));
    }
    if k == 2 {
        if r < 2 {
            return Err(invalid("a Berge 2-cycle of 2-edges would repeat an edge; needs r >= 2"));
        }
        // shared pair {0, 1}, then r - 1 private vertices per edge
        let a: Vec<usize> = [0, 1].into_iter().chain(2..r + 1).collect();
        let b: Vec<usize> = [0, 1].into_iter().chain(r + 1..2 * r).collect();
        return Ok(Hypergraph::new(2 * r, [a, b])?);
    }
    let mut edges = Vec::with_capacity(k);
    let mut next = k;
    for i in 0..k {
        let mut e = vec![i, (i + 1) % k];
        e.extend(next..next + r - 1);
        next += r - 1;
        edges.push(e);
    }
    Ok(Hypergraph::new(next, edges)?)
}

/// The cycle graph `C_n`.
pub fn cycle_graph(n: usize) -> Result<Hypergraph, GeneratorError> {
    if n < 3 {
        return Err(invalid("cycle graph needs n >= 3"));
    }
    make_loose_berge_cycle(1, n)
}

/// Random `(r+1)`-uniform linear hypergraph on `n` vertices with maximum
/// degree at most `d`, grown by random edge proposals among vertices with
/// spare degree; proposals that would share two vertices with an existing
/// edge are rejected. Stops after a fixed proposal budget.
pub fn random_linear_bounded_degree(
    r: usize,
    d: usize,
    n: usize,
    seed: u64,
) -> Result<Hypergraph, GeneratorError> {
    if r == 0 || d == 0 || n < r + 1 {
        return Err(invalid("need r >= 1, d >= 1 and n >= r + 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = r + 1;
    let mut spare = vec![d; n];
    let mut avail: Vec<VertexId> = (0..n).collect();
    let mut slot: Vec<usize> = (0..n).collect();
    let mut covered: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut edges: Vec<Vec<VertexId>> = Vec::new();

    let budget = 20 * n * d + 100;
    for _ in 0..budget {
        if avail.len() < k {
            break;
        }
        let picks = index::sample(&mut rng, avail.len(), k);
        let mut e: Vec<VertexId> = picks.iter().map(|i| avail[i]).collect();
        e.sort_unstable();
        let clash = (0..k).any(|i| (i + 1..k).any(|j| covered.contains(&(e[i], e[j]))));
        if clash {
            continue;
        }
        for i in 0..k {
            for j in i + 1..k {
                covered.insert((e[i], e[j]));
            }
        }
        for &v in &e {
            spare[v] -= 1;
            if spare[v] == 0 {
                let pos = slot[v];
                let last = *avail.last().unwrap();
                avail.swap_remove(pos);
                if last != v {
                    slot[last] = pos;
                }
            }
        }
        edges.push(e);
    }
    Ok(Hypergraph::new(n, edges)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularInstance {
    pub graph: Hypergraph,
    /// Number of construction attempts used, including the successful one.
    pub attempts: usize,
}

/// Random `d`-regular `(r+1)`-uniform hypergraph with Berge girth at least
/// `g_min`, by configuration-model pairing of vertex stubs. Each new edge is
/// rejected on the spot if it would close a Berge cycle shorter than `g_min`;
/// an attempt that gets stuck restarts from scratch.
///
/// Only small girths are reachable at small `n`; failure after
/// `max_attempts` is reported as [`GeneratorError::Exhausted`].
pub fn random_regular_girth(
    r: usize,
    d: usize,
    n: usize,
    g_min: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<RegularInstance, GeneratorError> {
    let k = r + 1;
    if r == 0 || d == 0 || n < k {
        return Err(invalid("need r >= 1, d >= 1 and n >= r + 1"));
    }
    if !(n * d).is_multiple_of(k) {
        return Err(invalid(format!("n*d = {} is not divisible by r+1 = {k}", n * d)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        if let Some(edges) = try_regular(&mut rng, k, d, n, g_min) {
            let graph = Hypergraph::new(n, edges)?;
            if berge_girth(&graph).girth.at_least(g_min) {
                return Ok(RegularInstance { graph, attempts: attempt });
            }
        }
    }
    Err(GeneratorError::Exhausted { attempts: max_attempts })
}

fn try_regular<R: Rng>(rng: &mut R, k: usize, d: usize, n: usize, g_min: usize) -> Option<Vec<Vec<VertexId>>> {
    const TRIES_PER_EDGE: usize = 64;
    let mut stubs: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(n * d / k);
    let mut seen_edges: HashSet<Vec<VertexId>> = HashSet::new();
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();

    while !stubs.is_empty() {
        let mut placed = false;
        for _ in 0..TRIES_PER_EDGE {
            let picks = index::sample(rng, stubs.len(), k).into_vec();
            let mut e: Vec<VertexId> = picks.iter().map(|&i| stubs[i]).collect();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) || seen_edges.contains(&e) {
                continue;
            }
            if g_min >= 3
                && closes_short_cycle(&e, &edges, &incidence, g_min, &mut dist, &mut touched)
            {
                continue;
            }
            let mut picks = picks;
            picks.sort_unstable_by(|a, b| b.cmp(a));
            for i in picks {
                stubs.swap_remove(i);
            }
            let id = edges.len();
            for &v in &e {
                incidence[v].push(id);
            }
            seen_edges.insert(e.clone());
            edges.push(e);
            placed = true;
            break;
        }
        if !placed {
            return None;
        }
    }
    Some(edges)
}

/// Whether adding `e` creates a Berge cycle of length `< g_min`, i.e. whether
/// two of its vertices are already within `g_min - 2` edge steps.
fn closes_short_cycle(
    e: &[VertexId],
    edges: &[Vec<VertexId>],
    incidence: &[Vec<usize>],
    g_min: usize,
    dist: &mut [usize],
    touched: &mut Vec<VertexId>,
) -> bool {
    let limit = g_min - 2;
    for (i, &src) in e.iter().enumerate() {
        for &x in touched.iter() {
            dist[x] = usize::MAX;
        }
        touched.clear();
        dist[src] = 0;
        touched.push(src);
        let mut cursor = 0;
        while cursor < touched.len() {
            let x = touched[cursor];
            cursor += 1;
            if dist[x] >= limit {
                continue;
            }
            for &f in &incidence[x] {
                for &y in &edges[f] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        touched.push(y);
                    }
                }
            }
        }
        if e[i + 1..].iter().any(|&y| dist[y] != usize::MAX) {
            for &x in touched.iter() {
                dist[x] = usize::MAX;
            }
            touched.clear();
            return true;
        }
    }
    for &x in touched.iter() {
        dist[x] = usize::MAX;
    }
    touched.clear();
    false
}

/// A random rooted hypertree with `(r+1)`-edges, `r` in `1..=max_r`, where
/// each vertex draws between 0 and `max_d` descending edges while the vertex
/// budget lasts.
pub fn random_hypertree<R: Rng + ?Sized>(
    max_r: usize,
    max_d: usize,
    max_vertices: usize,
    rng: &mut R,
) -> Result<RootedHypertree, GeneratorError> {
    if max_r == 0 || max_vertices == 0 {
        return Err(invalid("need max_r >= 1 and max_vertices >= 1"));
    }
    let r = rng.random_range(1..=max_r);
    let mut edges = Vec::new();
    let mut n = 1;
    let mut cursor = 0;
    while cursor < n {
        let v = cursor;
        cursor += 1;
        let want = rng.random_range(0..=max_d);
        for _ in 0..want {
            if n + r > max_vertices {
                break;
            }
            let mut e = vec![v];
            e.extend(n..n + r);
            n += r;
            edges.push(e);
        }
    }
    Ok(RootedHypertree::new(Hypergraph::new(n, edges)?, 0)?)
}

const PETERSEN: &str = include_str!("../../data/petersen.hg");

/// The Petersen graph: 3-regular, girth 5, 10 vertices.
pub fn petersen() -> Hypergraph {
    parse_hypergraph(PETERSEN).expect("bundled fixture parses")
}
