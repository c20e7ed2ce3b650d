//! Exhaustive ground truth for small instances. Every probability is an exact
//! rational over all `n!` rankings.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::Serialize;
use thiserror::Error;

use crate::greedy::{greedy_by_ranking, ClosureScratch, GreedyRunner, WeightAssignment};
use crate::hypercore::{Hypergraph, VertexId};

pub const MAX_PERMUTATION_N: usize = 10;
pub const MAX_ALPHA_N: usize = 24;
pub const MAX_SEQUENTIAL_N: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} needs n <= {limit}, got {n}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("{0}")]
    Invalid(String),
}

fn refuse(what: &'static str, n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { what, n, limit })
    } else {
        Ok(())
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Rearranges `xs` into the next permutation in lexicographic order; returns
/// false (leaving `xs` sorted) after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Calls `visit` on every ranking of `0..n` whose first entry is `first`, in
/// lexicographic order.
fn for_each_with_prefix(n: usize, first: usize, mut visit: impl FnMut(&[VertexId])) {
    let mut order: Vec<VertexId> = std::iter::once(first).chain((0..n).filter(|&v| v != first)).collect();
    loop {
        visit(&order);
        if !next_permutation(&mut order[1..]) {
            break;
        }
    }
}

/// Runs `work` once per first element and sums the per-partition results.
/// Partitions are combined in index order, so the result does not depend on
/// scheduling.
fn partitioned<T, W, M>(n: usize, work: W, merge: M) -> T
where
    T: Send + Default,
    W: Fn(usize) -> T + Sync + Send,
    M: Fn(T, T) -> T,
{
    #[cfg(feature = "parallel")]
    let parts: Vec<T> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(&work).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<T> = (0..n).map(&work).collect();
    parts.into_iter().fold(T::default(), merge)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactGreedyStats {
    /// Serialized as `[numerator, denominator]`.
    pub expected_size: Ratio<u64>,
    pub selection_prob: Vec<Ratio<u64>>,
    pub permutations: u64,
}

/// Expected greedy output size and per-vertex selection probabilities over
/// all `n!` rankings.
pub fn exact_greedy_stats(g: &Hypergraph) -> Result<ExactGreedyStats, OracleError> {
    let n = g.n();
    refuse("exact greedy enumeration", n, MAX_PERMUTATION_N)?;
    let total = factorial(n);
    if n == 0 {
        return Ok(ExactGreedyStats {
            expected_size: Ratio::from_integer(0),
            selection_prob: Vec::new(),
            permutations: 1,
        });
    }
    let counts = partitioned(
        n,
        |first| {
            let mut runner = GreedyRunner::new();
            let mut counts = vec![0u64; n];
            for_each_with_prefix(n, first, |order| {
                runner.run(g, order);
                for &v in runner.selection_order() {
                    counts[v] += 1;
                }
            });
            counts
        },
        |acc: Vec<u64>, part: Vec<u64>| {
            if acc.is_empty() {
                part
            } else {
                acc.iter().zip(&part).map(|(a, b)| a + b).collect()
            }
        },
    );
    let size_sum: u64 = counts.iter().sum();
    Ok(ExactGreedyStats {
        expected_size: Ratio::new(size_sum, total),
        selection_prob: counts.iter().map(|&c| Ratio::new(c, total)).collect(),
        permutations: total,
    })
}

/// Expected output of the rescanning formulation (choose a uniformly random
/// remaining vertex), by memoized recursion over the selected set. An
/// independent route to the same expectation as [`exact_greedy_stats`].
pub fn exact_sequential_expected_size(g: &Hypergraph) -> Result<BigRational, OracleError> {
    let n = g.n();
    refuse("sequential recursion", n, MAX_SEQUENTIAL_N)?;
    let masks: Vec<u32> = g.edges().iter().map(|e| e.iter().fold(0u32, |m, &v| m | (1 << v))).collect();
    let mut memo: HashMap<u32, BigRational> = HashMap::new();
    Ok(expected_from(0, n, &masks, &mut memo))
}

fn expected_from(selected: u32, n: usize, edges: &[u32], memo: &mut HashMap<u32, BigRational>) -> BigRational {
    if let Some(v) = memo.get(&selected) {
        return v.clone();
    }
    let remaining: Vec<usize> = (0..n)
        .filter(|&v| {
            let bit = 1u32 << v;
            selected & bit == 0 && !edges.iter().any(|&e| e & bit != 0 && (e & !bit) & !selected == 0)
        })
        .collect();
    let value = if remaining.is_empty() {
        BigRational::from_integer(BigInt::from(selected.count_ones()))
    } else {
        let k = remaining.len();
        let sum = remaining
            .iter()
            .map(|&v| expected_from(selected | (1 << v), n, edges, memo))
            .fold(BigRational::from_integer(BigInt::from(0)), |a, b| a + b);
        sum / BigRational::from_integer(BigInt::from(k))
    };
    memo.insert(selected, value.clone());
    value
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaResult {
    pub alpha: usize,
    pub witness: Vec<VertexId>,
}

/// Independence number by branch and bound over vertices.
pub fn exact_alpha(g: &Hypergraph) -> Result<AlphaResult, OracleError> {
    let n = g.n();
    refuse("exact independence number", n, MAX_ALPHA_N)?;
    let edges: Vec<u32> = g.edges().iter().map(|e| e.iter().fold(0u32, |m, &v| m | (1 << v))).collect();
    // edges indexed by their largest vertex, checked when that vertex is decided
    let mut closing: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (&m, e) in edges.iter().zip(g.edges()) {
        closing[*e.iter().max().unwrap()].push(m);
    }
    let mut best = (0usize, 0u32);
    search(0, 0, n, &closing, &mut best);
    let witness: Vec<VertexId> = (0..n).filter(|&v| best.1 & (1 << v) != 0).collect();
    Ok(AlphaResult { alpha: best.0, witness })
}

fn search(v: usize, chosen: u32, n: usize, closing: &[Vec<u32>], best: &mut (usize, u32)) {
    let size = chosen.count_ones() as usize;
    if size + (n - v) <= best.0 {
        return;
    }
    if v == n {
        *best = (size, chosen);
        return;
    }
    let with = chosen | (1 << v);
    if closing[v].iter().all(|&e| e & with != e) {
        search(v + 1, with, n, closing, best);
    }
    search(v + 1, chosen, n, closing, best);
}

/// Number of assignments of the weights `0..=lr` to a loose path of length `l`
/// under which every edge has its left endpoint as its lightest vertex.
pub fn count_increasing_assignments(r: usize, l: usize) -> Result<u64, OracleError> {
    if r == 0 || l == 0 {
        return Err(OracleError::Invalid("paths need r >= 1 and l >= 1".into()));
    }
    let n = l * r + 1;
    refuse("increasing-path enumeration", n, MAX_PERMUTATION_N)?;
    let mut weight: Vec<usize> = (0..n).collect();
    let mut count = 0;
    loop {
        let increasing = (0..l).all(|k| {
            let left = weight[k * r];
            (k * r + 1..=(k + 1) * r).all(|v| weight[v] > left)
        });
        if increasing {
            count += 1;
        }
        if !next_permutation(&mut weight) {
            break;
        }
    }
    Ok(count)
}

/// Probability over all rankings that the closure `B({v})` leaves the
/// radius-`h` neighbourhood of `v`.
pub fn exact_escape_probability(g: &Hypergraph, v: VertexId, h: usize) -> Result<Ratio<u64>, OracleError> {
    let n = g.n();
    refuse("exact escape enumeration", n, MAX_PERMUTATION_N)?;
    let inside = g.neighborhood_mask(v, h).map_err(|e| OracleError::Invalid(e.to_string()))?;
    let escapes = partitioned(
        n,
        |first| {
            let mut scratch = ClosureScratch::new(n);
            let mut rank = vec![0usize; n];
            let mut escapes = 0u64;
            for_each_with_prefix(n, first, |order| {
                for (pos, &x) in order.iter().enumerate() {
                    rank[x] = pos;
                }
                if !scratch.grow(g, &rank, &[v], |x| inside[x]) {
                    escapes += 1;
                }
            });
            escapes
        },
        |a, b| a + b,
    );
    Ok(Ratio::new(escapes, factorial(n)))
}

/// The smallest influence-blocking vertex set containing `seeds`, found by
/// filtering all supersets of `seeds`. Returns `None` if the blocking
/// supersets have no unique minimum.
pub fn minimal_blocking_set_exhaustive(
    g: &Hypergraph,
    w: &WeightAssignment,
    seeds: &[VertexId],
) -> Result<Option<Vec<VertexId>>, OracleError> {
    let n = g.n();
    refuse("exhaustive blocking-set search", n, 16)?;
    let seed_mask = seeds.iter().fold(0u32, |m, &v| m | (1 << v));
    let edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|e| (e.iter().fold(0u32, |m, &v| m | (1 << v)), 1u32 << w.lightest(e)))
        .collect();
    let blocking = |s: u32| edges.iter().all(|&(e, low)| e & s == e || low & s == 0);
    let mut found: Vec<u32> = Vec::new();
    for s in 0u32..(1 << n) {
        if s & seed_mask == seed_mask && blocking(s) {
            found.push(s);
        }
    }
    let meet = found.iter().fold(u32::MAX >> (32 - n.max(1)), |a, &b| a & b);
    if !found.contains(&meet) {
        return Ok(None);
    }
    Ok(Some((0..n).filter(|&v| meet & (1 << v) != 0).collect()))
}

/// Checks that greedy on the induced subhypergraph `sub` agrees with greedy on
/// `g` restricted to the vertices of `sub`, under ranking `w`.
pub fn restriction_agrees(g: &Hypergraph, w: &WeightAssignment, vertices: &[VertexId]) -> bool {
    let Ok((sub, map)) = g.induced(vertices) else {
        return false;
    };
    let full = match greedy_by_ranking(g, w) {
        Ok(o) => o,
        Err(_) => return false,
    };
    let local = match greedy_by_ranking(&sub, &w.restrict(&map)) {
        Ok(o) => o,
        Err(_) => return false,
    };
    map.to_parent.iter().enumerate().all(|(i, &v)| local.contains(i) == full.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_loose_berge_cycle, make_tree, TreeSpec};
    use num_traits::ToPrimitive;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    #[test]
    fn permutations_in_order() {
        let mut xs = [0, 1, 2];
        let mut seen = vec![xs];
        while next_permutation(&mut xs) {
            seen.push(xs);
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], [0, 2, 1]);
        assert_eq!(seen[5], [2, 1, 0]);
    }

    #[test]
    fn greedy_stats_examples() {
        let s = exact_greedy_stats(&triangle()).unwrap();
        assert_eq!(s.expected_size, Ratio::from_integer(1));
        assert!(s.selection_prob.iter().all(|p| *p == Ratio::new(1, 3)));
        assert_eq!(s.permutations, 6);

        let edge = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let s = exact_greedy_stats(&edge).unwrap();
        assert_eq!(s.expected_size, Ratio::from_integer(2));
        assert!(s.selection_prob.iter().all(|p| *p == Ratio::new(2, 3)));

        let star = make_tree(TreeSpec::full(1, 2, 1).unwrap()).unwrap();
        let s = exact_greedy_stats(star.hypergraph()).unwrap();
        assert_eq!(s.selection_prob[0], Ratio::new(1, 3));
        let total: Ratio<u64> = s.selection_prob.iter().sum();
        assert_eq!(total, s.expected_size);

        assert!(matches!(
            exact_greedy_stats(&Hypergraph::empty(11)),
            Err(OracleError::TooLarge { limit: 10, .. })
        ));
    }

    #[test]
    fn sequential_route_agrees() {
        for g in [triangle(), make_loose_berge_cycle(2, 3).unwrap(), make_loose_berge_cycle(1, 7).unwrap()] {
            let a = exact_greedy_stats(&g).unwrap().expected_size;
            let b = exact_sequential_expected_size(&g).unwrap();
            let a = BigRational::new(BigInt::from(*a.numer()), BigInt::from(*a.denom()));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(exact_alpha(&triangle()).unwrap().alpha, 1);
        assert_eq!(exact_alpha(&Hypergraph::new(3, [[0, 1, 2]]).unwrap()).unwrap().alpha, 2);
        let c = make_loose_berge_cycle(2, 5).unwrap();
        // five edges, each vertex meets at most two of them: a hitting set
        // needs three vertices
        let a = exact_alpha(&c).unwrap();
        assert_eq!(a.alpha, 7);
        assert!(c.is_independent(&a.witness));
        assert_eq!(a.witness.len(), 7);
    }

    #[test]
    fn increasing_assignments() {
        assert_eq!(count_increasing_assignments(2, 1).unwrap(), 2);
        assert_eq!(count_increasing_assignments(2, 2).unwrap(), 8);
        assert_eq!(count_increasing_assignments(1, 3).unwrap(), 1);
        assert_eq!(count_increasing_assignments(1, 2).unwrap(), 1);
        assert!(count_increasing_assignments(3, 4).is_err());
    }

    #[test]
    fn escape_examples() {
        let iso = Hypergraph::empty(3);
        assert_eq!(exact_escape_probability(&iso, 1, 0).unwrap(), Ratio::from_integer(0));
        let edge = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(exact_escape_probability(&edge, 0, 0).unwrap(), Ratio::new(1, 3));
        assert_eq!(exact_escape_probability(&edge, 0, 1).unwrap(), Ratio::from_integer(0));
        let bound = crate::theory::escape_probability_bound(2, 2, 0).unwrap();
        assert!(exact_escape_probability(&edge, 0, 0).unwrap().to_f64().unwrap() <= bound);
    }

    #[test]
    fn exhaustive_minimum_matches_closure() {
        let g = Hypergraph::new(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let mut order: Vec<usize> = (0..5).collect();
        loop {
            let w = WeightAssignment::from_ranking(order.clone()).unwrap();
            for v in 0..5 {
                let closure = crate::greedy::closure_vertices(&g, &w, &[v]).unwrap();
                let min = minimal_blocking_set_exhaustive(&g, &w, &[v]).unwrap();
                assert_eq!(min, Some(closure.clone()));
                assert!(restriction_agrees(&g, &w, &closure));
            }
            if !next_permutation(&mut order) {
                break;
            }
        }
    }
}
