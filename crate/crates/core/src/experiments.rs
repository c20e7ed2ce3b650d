//! Seeded Monte Carlo harness.
//!
//! Trial `i` draws its ranking from a ChaCha8 stream selected by `i` under the
//! base seed, and all aggregates are exact integer sums, so a summary depends
//! only on the plan and never on thread count or scheduling.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{Beta, ContinuousCDF};
use thiserror::Error;

use crate::generators::{make_tree, GeneratorError, TreeSpec, TreeVariant};
use crate::greedy::{ClosureScratch, GreedyError, GreedyRunner};
use crate::hypercore::{berge_girth, Girth, Hypergraph, VertexId};
use crate::oracle::{exact_greedy_stats, OracleError, MAX_PERMUTATION_N};
use crate::theory::{epsilon_bound, escape_probability_bound, f_value, variance_bound_per_n, TheoryError};

/// Trials per work unit. Fixed so chunk boundaries never depend on the pool.
const CHUNK: u64 = 1024;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Greedy(#[from] GreedyError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialPlan {
    pub trials: u64,
    pub base_seed: u64,
    /// Worker cap; `None` uses the global pool. Never changes results.
    pub threads: Option<usize>,
    pub size: bool,
    /// Track whether this vertex is selected.
    pub root: Option<VertexId>,
    /// Track whether `B({v})` leaves the radius-`h` neighbourhood of `v`.
    pub escape: Option<(VertexId, usize)>,
    pub per_vertex: bool,
    /// Keep every trial's output size, in trial order.
    pub keep_sizes: bool,
}

impl TrialPlan {
    pub fn new(trials: u64, base_seed: u64) -> Self {
        Self {
            trials,
            base_seed,
            threads: None,
            size: true,
            root: None,
            escape: None,
            per_vertex: false,
            keep_sizes: false,
        }
    }

    pub fn with_threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_root(mut self, root: VertexId) -> Self {
        self.root = Some(root);
        self
    }

    pub fn with_escape(mut self, v: VertexId, h: usize) -> Self {
        self.escape = Some((v, h));
        self
    }

    pub fn with_per_vertex(mut self) -> Self {
        self.per_vertex = true;
        self
    }

    pub fn with_sizes(mut self) -> Self {
        self.keep_sizes = true;
        self
    }

    fn validate(&self, g: &Hypergraph) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::InvalidPlan("trials must be at least 1".into()));
        }
        if !(self.size || self.root.is_some() || self.escape.is_some() || self.per_vertex) {
            return Err(ExperimentError::InvalidPlan("no observable requested".into()));
        }
        if self.threads == Some(0) {
            return Err(ExperimentError::InvalidPlan("threads must be at least 1".into()));
        }
        let n = g.n();
        if let Some(v) = self.root.filter(|&v| v >= n) {
            return Err(ExperimentError::InvalidPlan(format!("root {v} is not a vertex (n = {n})")));
        }
        if let Some((v, _)) = self.escape.filter(|&(v, _)| v >= n) {
            return Err(ExperimentError::InvalidPlan(format!("escape vertex {v} is not a vertex (n = {n})")));
        }
        Ok(())
    }
}

/// A rate with its normal-approximation standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl Estimate {
    fn from_count(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        let var = if trials > 1 { p * (1.0 - p) / (trials - 1) as f64 } else { 0.0 };
        Self { value: p, stderr: var.sqrt(), trials }
    }

    /// Whether `target` lies within `k` standard errors, with a `floor` for
    /// degenerate (zero-variance) samples.
    pub fn covers(&self, target: f64, k: f64, floor: f64) -> bool {
        (self.value - target).abs() <= k * self.stderr + floor
    }

    pub fn hits(&self) -> u64 {
        (self.value * self.trials as f64).round() as u64
    }

    /// Clopper-Pearson interval at the given two-sided confidence level.
    pub fn exact_interval(&self, confidence: f64) -> (f64, f64) {
        let (x, n) = (self.hits(), self.trials);
        if n == 0 {
            return (0.0, 1.0);
        }
        let a = (1.0 - confidence) / 2.0;
        let lo = if x == 0 { 0.0 } else { Beta::new(x as f64, (n - x + 1) as f64).unwrap().inverse_cdf(a) };
        let hi = if x == n { 1.0 } else { Beta::new((x + 1) as f64, (n - x) as f64).unwrap().inverse_cdf(1.0 - a) };
        (lo, hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean_size: f64,
    pub mean_size_per_n: f64,
    /// Standard error of `mean_size_per_n`.
    pub stderr: f64,
    /// Sample variance of the output size, divided by `n`.
    pub empirical_variance_per_n: f64,
    pub root_selected: Option<Estimate>,
    pub escape: Option<Estimate>,
    pub per_vertex_rate: Option<Vec<f64>>,
    #[serde(skip)]
    pub sizes: Option<Vec<u32>>,
    pub size_sum: u64,
    pub size_sq_sum: u128,
}

#[derive(Debug, Default, Clone)]
struct Partial {
    size_sum: u64,
    size_sq_sum: u128,
    root_hits: u64,
    escapes: u64,
    per_vertex: Vec<u64>,
    sizes: Vec<u32>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.size_sum += other.size_sum;
        self.size_sq_sum += other.size_sq_sum;
        self.root_hits += other.root_hits;
        self.escapes += other.escapes;
        if self.per_vertex.is_empty() {
            self.per_vertex = other.per_vertex;
        } else {
            for (a, b) in self.per_vertex.iter_mut().zip(other.per_vertex) {
                *a += b;
            }
        }
        self.sizes.extend(other.sizes);
        self
    }
}

fn run_chunk(g: &Hypergraph, plan: &TrialPlan, inside: Option<&[bool]>, start: u64, end: u64) -> Partial {
    let n = g.n();
    let base = ChaCha8Rng::seed_from_u64(plan.base_seed);
    let mut runner = GreedyRunner::new();
    let mut scratch = plan.escape.map(|_| ClosureScratch::new(n));
    let mut order: Vec<VertexId> = (0..n).collect();
    let mut rank = vec![0usize; n];
    let mut part = Partial {
        per_vertex: if plan.per_vertex { vec![0; n] } else { Vec::new() },
        ..Partial::default()
    };
    for i in start..end {
        let mut rng = base.clone();
        rng.set_stream(i);
        for (k, slot) in order.iter_mut().enumerate() {
            *slot = k;
        }
        order.shuffle(&mut rng);
        runner.run(g, &order);
        let size = runner.selected_count() as u64;
        part.size_sum += size;
        part.size_sq_sum += (size as u128) * (size as u128);
        if plan.keep_sizes {
            part.sizes.push(size as u32);
        }
        if let Some(root) = plan.root {
            part.root_hits += runner.is_selected(root) as u64;
        }
        if plan.per_vertex {
            for &v in runner.selection_order() {
                part.per_vertex[v] += 1;
            }
        }
        if let (Some((v, _)), Some(scratch), Some(inside)) = (plan.escape, scratch.as_mut(), inside) {
            for (pos, &x) in order.iter().enumerate() {
                rank[x] = pos;
            }
            if !scratch.grow(g, &rank, &[v], |x| inside[x]) {
                part.escapes += 1;
            }
        }
    }
    part
}

fn run_chunks(g: &Hypergraph, plan: &TrialPlan, inside: Option<&[bool]>) -> Partial {
    let chunks: Vec<(u64, u64)> =
        (0..plan.trials.div_ceil(CHUNK)).map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(plan.trials))).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let work = || -> Vec<Partial> {
            chunks.par_iter().map(|&(s, e)| run_chunk(g, plan, inside, s, e)).collect()
        };
        let parts = match plan.threads {
            Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
                Ok(pool) => pool.install(work),
                Err(_) => work(),
            },
            None => work(),
        };
        parts.into_iter().fold(Partial::default(), Partial::merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        chunks.iter().map(|&(s, e)| run_chunk(g, plan, inside, s, e)).fold(Partial::default(), Partial::merge)
    }
}

/// Runs `plan.trials` independent greedy trials on `g`.
pub fn run_trials(g: &Hypergraph, plan: &TrialPlan) -> Result<TrialSummary, ExperimentError> {
    plan.validate(g)?;
    let inside = match plan.escape {
        Some((v, h)) => Some(g.neighborhood_mask(v, h).map_err(GreedyError::from)?),
        None => None,
    };
    let part = run_chunks(g, plan, inside.as_deref());
    Ok(summarize(g.n(), plan, part))
}

/// Sequential reference path, available in every build.
pub fn run_trials_sequential(g: &Hypergraph, plan: &TrialPlan) -> Result<TrialSummary, ExperimentError> {
    plan.validate(g)?;
    let inside = match plan.escape {
        Some((v, h)) => Some(g.neighborhood_mask(v, h).map_err(GreedyError::from)?),
        None => None,
    };
    let part = (0..plan.trials.div_ceil(CHUNK))
        .map(|c| run_chunk(g, plan, inside.as_deref(), c * CHUNK, ((c + 1) * CHUNK).min(plan.trials)))
        .fold(Partial::default(), Partial::merge);
    Ok(summarize(g.n(), plan, part))
}

fn summarize(n: usize, plan: &TrialPlan, part: Partial) -> TrialSummary {
    let t = plan.trials;
    let nf = n.max(1) as f64;
    let mean = part.size_sum as f64 / t as f64;
    // T * sum(x^2) - (sum x)^2, exact in integers
    let spread = (t as u128) * part.size_sq_sum - (part.size_sum as u128) * (part.size_sum as u128);
    let var = if t > 1 { spread as f64 / (t as f64 * (t - 1) as f64) } else { 0.0 };
    TrialSummary {
        n,
        trials: t,
        seed: plan.base_seed,
        mean_size: mean,
        mean_size_per_n: mean / nf,
        stderr: (var / t as f64).sqrt() / nf,
        empirical_variance_per_n: var / nf,
        root_selected: plan.root.map(|_| Estimate::from_count(part.root_hits, t)),
        escape: plan.escape.map(|_| Estimate::from_count(part.escapes, t)),
        per_vertex_rate: plan.per_vertex.then(|| part.per_vertex.iter().map(|&c| c as f64 / t as f64).collect()),
        sizes: plan.keep_sizes.then_some(part.sizes),
        size_sum: part.size_sum,
        size_sq_sum: part.size_sq_sum,
    }
}

/// Monte Carlo estimate of the probability that the root of the tree is
/// selected.
pub fn estimate_root_probability(spec: TreeSpec, trials: u64, seed: u64) -> Result<Estimate, ExperimentError> {
    let tree = make_tree(spec)?;
    let plan = TrialPlan { size: false, ..TrialPlan::new(trials, seed) }.with_root(tree.root());
    let summary = run_trials(tree.hypergraph(), &plan)?;
    Ok(summary.root_selected.expect("root observable requested"))
}

pub fn estimate_escape_probability(
    g: &Hypergraph,
    v: VertexId,
    h: usize,
    trials: u64,
    seed: u64,
) -> Result<Estimate, ExperimentError> {
    let plan = TrialPlan { size: false, ..TrialPlan::new(trials, seed) }.with_escape(v, h);
    Ok(run_trials(g, &plan)?.escape.expect("escape observable requested"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailScale {
    /// `b(n) = ln n`
    Log,
    /// `b(n) = n^(1/4)`
    QuarterPower,
    /// `b(n) = sqrt(ln n)`
    SqrtLog,
}

impl TailScale {
    pub fn eval(self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            TailScale::Log => nf.ln(),
            TailScale::QuarterPower => nf.powf(0.25),
            TailScale::SqrtLog => nf.ln().sqrt(),
        }
    }
}

impl std::str::FromStr for TailScale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log" => Ok(TailScale::Log),
            "quarter" | "n^1/4" => Ok(TailScale::QuarterPower),
            "sqrtlog" => Ok(TailScale::SqrtLog),
            other => Err(format!("unknown tail scale `{other}` (expected log, quarter or sqrtlog)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub trials: u64,
    pub mean_per_n: f64,
    pub var_per_n: f64,
    /// `sqrt(n) * b(n)`.
    pub threshold: f64,
    pub tail: Estimate,
}

/// Tail frequency of `|size - mean| > sqrt(n) b(n)` for each instance size,
/// where `mean` is the sample mean at that size.
pub fn concentration_sweep<F>(
    mut family: F,
    ns: &[usize],
    trials: u64,
    seed: u64,
    scale: TailScale,
    threads: Option<usize>,
) -> Result<Vec<ConcentrationRow>, ExperimentError>
where
    F: FnMut(usize, u64) -> Result<Hypergraph, ExperimentError>,
{
    let mut rows = Vec::with_capacity(ns.len());
    for (i, &n) in ns.iter().enumerate() {
        let g = family(n, seed.wrapping_add(i as u64))?;
        if !g.is_linear() {
            return Err(ExperimentError::Precondition("concentration needs linear instances".into()));
        }
        let plan = TrialPlan::new(trials, seed).with_sizes().with_threads(threads);
        let s = run_trials(&g, &plan)?;
        let threshold = (n as f64).sqrt() * scale.eval(n);
        let sizes = s.sizes.as_ref().expect("sizes requested");
        let hits = sizes.iter().filter(|&&x| (x as f64 - s.mean_size).abs() > threshold).count() as u64;
        rows.push(ConcentrationRow {
            n,
            edges: g.edge_count(),
            max_degree: g.degree_profile().max_degree,
            trials,
            mean_per_n: s.mean_size_per_n,
            var_per_n: s.empirical_variance_per_n,
            threshold,
            tail: Estimate::from_count(hits, trials),
        });
    }
    Ok(rows)
}

/// Per-vertex variance bound for the concentration table.
pub fn variance_bound(d: usize, r: usize) -> f64 {
    variance_bound_per_n(d as u64, r as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// `epsilon >= f`: the interval says nothing.
    Vacuous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YieldReport {
    pub instance: String,
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub girth: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean_per_n: f64,
    pub stderr: f64,
    pub var_per_n: f64,
    pub f: f64,
    pub epsilon: f64,
    /// `|mean_per_n - f|`.
    pub distance: f64,
    /// Exact expectation per vertex when the instance is small enough.
    pub exact_mean_per_n: Option<f64>,
    pub verdict: Verdict,
}

pub const YIELD_CSV_HEADER: &str =
    "instance,n,d,r,girth,trials,seed,mean_per_n,stderr,var_per_n,f,epsilon,verdict";

impl YieldReport {
    pub fn csv_row(&self) -> String {
        use crate::fmt::sig9;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.instance,
            self.n,
            self.d,
            self.r,
            self.girth,
            self.trials,
            self.seed,
            sig9(self.mean_per_n),
            sig9(self.stderr),
            sig9(self.var_per_n),
            sig9(self.f),
            sig9(self.epsilon),
            self.verdict
        )
    }
}

/// Compares the Monte Carlo yield of a regular uniform instance with
/// `[f - epsilon, f + epsilon]`, widened by three standard errors.
pub fn yield_check(
    g: &Hypergraph,
    label: &str,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<YieldReport, ExperimentError> {
    let params = regular_parameters(g)?;
    let s = run_trials(g, &TrialPlan::new(trials, seed).with_threads(threads))?;
    assess(g, label, params, &s)
}

/// The same comparison for trials that have already been run on `g`.
pub fn yield_assess(g: &Hypergraph, label: &str, summary: &TrialSummary) -> Result<YieldReport, ExperimentError> {
    if summary.n != g.n() {
        return Err(ExperimentError::InvalidPlan("summary belongs to a different instance".into()));
    }
    assess(g, label, regular_parameters(g)?, summary)
}

/// `(d, r, girth)` of a regular uniform instance, or the failed precondition.
pub fn regular_parameters(g: &Hypergraph) -> Result<(usize, usize, usize), ExperimentError> {
    let k = g
        .uniformity()
        .ok_or_else(|| ExperimentError::Precondition("instance is not uniform".into()))?;
    let profile = g.degree_profile();
    if !profile.is_regular {
        return Err(ExperimentError::Precondition("instance is not regular".into()));
    }
    let (d, r) = (profile.max_degree, k - 1);
    if d < 2 {
        return Err(ExperimentError::Precondition(format!("degree must be at least 2, got {d}")));
    }
    let girth = match berge_girth(g).girth {
        Girth::Finite(x) if x >= 4 => x,
        Girth::Finite(x) => return Err(ExperimentError::Precondition(format!("girth must be at least 4, got {x}"))),
        Girth::Acyclic => return Err(ExperimentError::Precondition("instance has no cycle".into())),
    };
    Ok((d, r, girth))
}

fn assess(
    g: &Hypergraph,
    label: &str,
    (d, r, girth): (usize, usize, usize),
    s: &TrialSummary,
) -> Result<YieldReport, ExperimentError> {
    let f = f_value(d as u64, r as u64, crate::theory::DEFAULT_TOL)?;
    let epsilon = epsilon_bound(girth as u64, d as u64, r as u64)?;
    let exact_mean_per_n = if g.n() <= MAX_PERMUTATION_N {
        let e = exact_greedy_stats(g)?.expected_size;
        Some(*e.numer() as f64 / *e.denom() as f64 / g.n() as f64)
    } else {
        None
    };
    let verdict = if epsilon >= f {
        Verdict::Vacuous
    } else if (s.mean_size_per_n - f).abs() <= epsilon + 3.0 * s.stderr {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(YieldReport {
        instance: label.to_string(),
        n: g.n(),
        d,
        r,
        girth,
        trials: s.trials,
        seed: s.seed,
        mean_per_n: s.mean_size_per_n,
        stderr: s.stderr,
        var_per_n: s.empirical_variance_per_n,
        f,
        epsilon,
        distance: (s.mean_size_per_n - f).abs(),
        exact_mean_per_n,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalComparison {
    pub vertex: VertexId,
    pub h: usize,
    pub vertex_rate: Estimate,
    pub tree_rate: Estimate,
    pub bound: f64,
    /// `|vertex - tree| <= bound + 3 * combined stderr`.
    pub within: bool,
}

/// Selection frequency of `v` in a `d`-regular girth-`g` instance against the
/// root of the root-heavy tree of depth `h0 + 1`, where `h0 = floor((g-3)/2)`.
pub fn local_comparison(
    g: &Hypergraph,
    v: VertexId,
    trials: u64,
    seed: u64,
) -> Result<LocalComparison, ExperimentError> {
    let k = g.uniformity().ok_or_else(|| ExperimentError::Precondition("instance is not uniform".into()))?;
    let profile = g.degree_profile();
    if !profile.is_regular || profile.max_degree < 2 {
        return Err(ExperimentError::Precondition("instance must be d-regular with d >= 2".into()));
    }
    let girth = berge_girth(g)
        .girth
        .value()
        .filter(|&x| x >= 4)
        .ok_or_else(|| ExperimentError::Precondition("girth must be at least 4".into()))?;
    let (d, r) = (profile.max_degree, k - 1);
    let h0 = (girth - 3) / 2;
    let tree_spec = TreeSpec::new(r, d, h0 + 1, TreeVariant::RootHeavy)?;
    let vertex_rate = run_trials(g, &TrialPlan { size: false, ..TrialPlan::new(trials, seed) }.with_root(v))?
        .root_selected
        .expect("root observable requested");
    let tree_rate = estimate_root_probability(tree_spec, trials, seed.wrapping_add(1))?;
    let bound = escape_probability_bound(d as u64, r as u64, h0 as u64)?;
    let slack = 3.0 * (vertex_rate.stderr.powi(2) + tree_rate.stderr.powi(2)).sqrt();
    Ok(LocalComparison {
        vertex: v,
        h: h0 + 1,
        within: (vertex_rate.value - tree_rate.value).abs() <= bound + slack,
        vertex_rate,
        tree_rate,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, make_loose_berge_cycle, petersen};

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    #[test]
    fn exact_interval_brackets_rate() {
        let e = Estimate::from_count(30, 100);
        let (lo, hi) = e.exact_interval(0.95);
        // reference values for 30/100 at 95%
        assert!((lo - 0.2124).abs() < 1e-3 && (hi - 0.3998).abs() < 1e-3, "{lo} {hi}");
        assert_eq!(Estimate::from_count(0, 50).exact_interval(0.95).0, 0.0);
        assert_eq!(Estimate::from_count(50, 50).exact_interval(0.95).1, 1.0);
    }

    #[test]
    fn triangle_is_constant() {
        let s = run_trials(&triangle(), &TrialPlan::new(500, 1)).unwrap();
        assert_eq!(s.mean_size_per_n, 1.0 / 3.0);
        assert_eq!(s.empirical_variance_per_n, 0.0);
        assert_eq!(s.stderr, 0.0);
    }

    #[test]
    fn star_root_rate() {
        let e = estimate_root_probability(TreeSpec::full(1, 2, 1).unwrap(), 100_000, 3).unwrap();
        assert!(e.covers(1.0 / 3.0, 3.0, 0.0), "{e:?}");
        let single = estimate_root_probability(TreeSpec::full(2, 3, 0).unwrap(), 100, 3).unwrap();
        assert_eq!(single.value, 1.0);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let g = petersen();
        let plan = TrialPlan::new(5000, 42).with_root(0).with_per_vertex().with_escape(0, 1).with_sizes();
        let one = run_trials(&g, &plan.clone().with_threads(Some(1))).unwrap();
        let eight = run_trials(&g, &plan.clone().with_threads(Some(8))).unwrap();
        let seq = run_trials_sequential(&g, &plan).unwrap();
        assert_eq!(one, eight);
        assert_eq!(one, seq);
        assert_eq!(one.sizes, seq.sizes);
        let other = run_trials(&g, &TrialPlan::new(5000, 43)).unwrap();
        assert_ne!(one.size_sum, other.size_sum);
    }

    #[test]
    fn plan_validation() {
        let g = triangle();
        assert!(run_trials(&g, &TrialPlan::new(0, 1)).is_err());
        assert!(run_trials(&g, &TrialPlan::new(10, 1).with_root(7)).is_err());
        let none = TrialPlan { size: false, ..TrialPlan::new(10, 1) };
        assert!(run_trials(&g, &none).is_err());
    }

    #[test]
    fn escape_on_single_edge() {
        let edge = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        let e = estimate_escape_probability(&edge, 0, 0, 60_000, 9).unwrap();
        assert!(e.covers(1.0 / 3.0, 4.0, 0.0), "{e:?}");
        let iso = Hypergraph::empty(4);
        assert_eq!(estimate_escape_probability(&iso, 2, 0, 100, 9).unwrap().value, 0.0);
    }

    #[test]
    fn stderr_scales_with_trials() {
        let g = cycle_graph(30).unwrap();
        let a = run_trials(&g, &TrialPlan::new(10_000, 5)).unwrap();
        let b = run_trials(&g, &TrialPlan::new(40_000, 6)).unwrap();
        let ratio = a.stderr / b.stderr;
        assert!((0.9 * 2.0..=1.1 * 2.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn petersen_report_is_vacuous_with_exact_mean() {
        let rep = yield_check(&petersen(), "petersen", 20_000, 1, None).unwrap();
        assert_eq!(rep.verdict, Verdict::Vacuous);
        assert_eq!((rep.d, rep.r, rep.girth), (3, 1, 5));
        assert!((rep.f - 0.375).abs() < 1e-10);
        assert!((rep.epsilon - 1.0).abs() < 1e-12);
        let exact = rep.exact_mean_per_n.unwrap();
        assert!((rep.mean_per_n - exact).abs() <= 4.0 * rep.stderr);
        assert!(rep.csv_row().starts_with("petersen,10,3,1,5,20000,1,"));
    }

    #[test]
    fn yield_check_preconditions() {
        let c = make_loose_berge_cycle(2, 5).unwrap();
        assert!(matches!(yield_check(&c, "c", 10, 1, None), Err(ExperimentError::Precondition(_))));
        let tri = triangle();
        assert!(yield_check(&tri, "t", 10, 1, None).is_err());
    }

    #[test]
    fn long_cycle_approaches_f() {
        let rep = yield_check(&cycle_graph(1000).unwrap(), "c1000", 4000, 2, None).unwrap();
        let f21 = {
            let u = 1.0 - (-1f64).exp();
            u - u * u / 2.0
        };
        assert!((rep.f - f21).abs() < 1e-10);
        assert!(rep.epsilon < 1e-100);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.distance < 0.005);
    }

    #[test]
    fn concentration_table() {
        let rows = concentration_sweep(
            |n, s| Ok(crate::generators::random_linear_bounded_degree(1, 2, n, s)?),
            &[100, 1000],
            2000,
            7,
            TailScale::Log,
            None,
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!(row.var_per_n <= variance_bound(2, 1));
            assert!(row.max_degree <= 2);
        }
        // deviation beyond n is impossible
        let big = concentration_sweep(
            |n, _| Ok(Hypergraph::new(n, [[0, 1]]).unwrap()),
            &[4],
            100,
            1,
            TailScale::QuarterPower,
            None,
        )
        .unwrap();
        assert_eq!(big[0].tail.value, 0.0);
    }

    #[test]
    fn local_comparison_on_long_cycle() {
        let g = cycle_graph(12).unwrap();
        let cmp = local_comparison(&g, 0, 20_000, 3).unwrap();
        assert_eq!(cmp.h, 5);
        assert!(cmp.within);
    }
}
