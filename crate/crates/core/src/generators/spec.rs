//! Textual instance specs, e.g. `tree:d=3,r=2,h=4,variant=tilde` or
//! `regular:r=1,d=3,n=10,g=5,seed=7`.

use std::collections::HashMap;
use std::str::FromStr;

use crate::hypercore::{Hypergraph, VertexId};

use super::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Tree(TreeSpec),
    LoosePath { r: usize, l: usize },
    LooseCycle { r: usize, k: usize },
    Cycle { n: usize },
    Linear { r: usize, d: usize, n: usize, seed: u64 },
    Regular { r: usize, d: usize, n: usize, g: usize, seed: u64, attempts: usize },
    Petersen,
}

/// A generated hypergraph with an optional distinguished vertex (tree root or
/// path start).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Hypergraph,
    pub root: Option<VertexId>,
    pub label: String,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Instance, GeneratorError> {
        let label = self.to_string();
        let (graph, root) = match *self {
            GeneratorSpec::Tree(spec) => (make_tree(spec)?.into_hypergraph(), Some(0)),
            GeneratorSpec::LoosePath { r, l } => {
                let p = make_loose_path(r, l)?;
                (p.graph, Some(p.start))
            }
            GeneratorSpec::LooseCycle { r, k } => (make_loose_berge_cycle(r, k)?, None),
            GeneratorSpec::Cycle { n } => (cycle_graph(n)?, None),
            GeneratorSpec::Linear { r, d, n, seed } => (random_linear_bounded_degree(r, d, n, seed)?, None),
            GeneratorSpec::Regular { r, d, n, g, seed, attempts } => {
                (random_regular_girth(r, d, n, g, seed, attempts)?.graph, None)
            }
            GeneratorSpec::Petersen => (petersen(), None),
        };
        Ok(Instance { graph, root, label })
    }
}

impl std::fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorSpec::Tree(t) => {
                let v = match t.variant {
                    TreeVariant::Full => "full",
                    TreeVariant::RootHeavy => "tilde",
                };
                write!(f, "tree:d={},r={},h={},variant={v}", t.d, t.r, t.h)
            }
            GeneratorSpec::LoosePath { r, l } => write!(f, "loosepath:r={r},l={l}"),
            GeneratorSpec::LooseCycle { r, k } => write!(f, "loosecycle:r={r},k={k}"),
            GeneratorSpec::Cycle { n } => write!(f, "cycle:n={n}"),
            GeneratorSpec::Linear { r, d, n, seed } => write!(f, "linear:r={r},d={d},n={n},seed={seed}"),
            GeneratorSpec::Regular { r, d, n, g, seed, attempts } => {
                write!(f, "regular:r={r},d={d},n={n},g={g},seed={seed},attempts={attempts}")
            }
            GeneratorSpec::Petersen => f.write_str("petersen"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |message: String| GeneratorError::Spec { spec: s.to_string(), message };
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params: HashMap<&str, &str> = HashMap::new();
        for kv in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| fail(format!("expected key=value, got `{kv}`")))?;
            params.insert(k.trim(), v.trim());
        }
        let take = |key: &'static str, default: Option<u64>| -> Result<u64, GeneratorError> {
            match params.get(key) {
                Some(v) => v.parse().map_err(|_| fail(format!("`{key}` must be a non-negative integer"))),
                None => default.ok_or_else(|| fail(format!("missing `{key}`"))),
            }
        };
        let spec = match kind.trim() {
            "tree" => {
                let d = take("d", None)? as usize;
                let r = take("r", None)? as usize;
                let h = take("h", None)? as usize;
                let variant = match params.get("variant").copied().unwrap_or("full") {
                    "full" => TreeVariant::Full,
                    "tilde" | "root_heavy" => TreeVariant::RootHeavy,
                    other => return Err(fail(format!("unknown tree variant `{other}`"))),
                };
                GeneratorSpec::Tree(TreeSpec::new(r, d, h, variant)?)
            }
            "loosepath" => GeneratorSpec::LoosePath { r: take("r", None)? as usize, l: take("l", None)? as usize },
            "loosecycle" => GeneratorSpec::LooseCycle { r: take("r", None)? as usize, k: take("k", None)? as usize },
            "cycle" => GeneratorSpec::Cycle { n: take("n", None)? as usize },
            "linear" => GeneratorSpec::Linear {
                r: take("r", None)? as usize,
                d: take("d", None)? as usize,
                n: take("n", None)? as usize,
                seed: take("seed", Some(0))?,
            },
            "regular" => GeneratorSpec::Regular {
                r: take("r", None)? as usize,
                d: take("d", None)? as usize,
                n: take("n", None)? as usize,
                g: take("g", Some(3))? as usize,
                seed: take("seed", Some(0))?,
                attempts: take("attempts", Some(10_000))? as usize,
            },
            "petersen" => GeneratorSpec::Petersen,
            other => return Err(fail(format!("unknown family `{other}`"))),
        };
        Ok(spec)
    }
}
