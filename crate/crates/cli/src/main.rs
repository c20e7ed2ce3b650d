//! `hypergreedy`: theory tables, instance generation, girth certification,
//! Monte Carlo simulation and exact oracles from the command line.

mod table;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use hypergreedy::experiments::{regular_parameters, run_trials, yield_assess, TrialPlan, YIELD_CSV_HEADER};
use hypergreedy::fmt::sig9;
use hypergreedy::generators::{GeneratorSpec, Instance};
use hypergreedy::hypercore::{berge_girth, load_hypergraph, write_hypergraph, Girth, Hypergraph, VertexId};
use hypergreedy::oracle::{
    count_increasing_assignments, exact_alpha, exact_escape_probability, exact_greedy_stats,
    exact_sequential_expected_size, MAX_PERMUTATION_N,
};
use hypergreedy::theory::{
    asymptotic_table, escape_probability_bound, increasing_path_count, increasing_path_probability,
    iterate_to_limit, ode_g, series_h, solve_u, TheoryReport, DEFAULT_GRID, DEFAULT_TOL, REPORT_CSV_HEADER,
};
use hypergreedy::verify::{self, Scale};

use table::{Cell, Table};

#[derive(Parser, Debug)]
#[command(name = "hypergreedy", version, about = "Randomized greedy independent sets in uniform hypergraphs")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Base seed (falls back to HG_SEED, then 0).
    #[arg(long, env = "HG_SEED", default_value_t = 0, global = true)]
    seed: u64,

    /// Worker thread cap (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Output format. Each subcommand has its own default.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// u, f, epsilon and comparison bounds for every (d, r, g) combination.
    Theory(TheoryArgs),
    /// Root of H_d(u) = 1.
    SolveU(SolveUArgs),
    /// Iterate the hypertree recursion (or solve the ODE) on a grid.
    Recursion(RecursionArgs),
    /// Build an instance from a generator spec and write it in text format.
    Gen(GenArgs),
    /// Berge girth with a certificate.
    Girth(InstanceArgs),
    /// Monte Carlo trials of the greedy process.
    Simulate(SimulateArgs),
    /// Exact small-instance quantities.
    Oracle(OracleArgs),
    /// Run the acceptance checks and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct TheoryArgs {
    /// Degrees, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<u64>,
    /// Edge size minus one, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<u64>,
    /// Girths, comma separated. Omit for the girth-free columns only.
    #[arg(long, value_delimiter = ',')]
    g: Vec<u64>,
    /// Emit the asymptotic ratio table instead.
    #[arg(long)]
    asymptotic: bool,
}

#[derive(Args, Debug)]
struct SolveUArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    r: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct RecursionArgs {
    /// Exponent of the recursion (children per vertex); compare with u(d + 1, r).
    #[arg(long)]
    d: u32,
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = 200)]
    max_h: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Solve the limiting ODE instead, with d as the degree.
    #[arg(long)]
    ode: bool,
    /// Emit the final function on the grid instead of the iteration log.
    #[arg(long)]
    values: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// e.g. `tree:d=2,r=1,h=3,variant=tilde` or `regular:r=1,d=3,n=100,g=5,seed=7`.
    #[arg(long)]
    spec: String,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "spec"])))]
struct InstanceArgs {
    /// Hypergraph file in text format.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator spec.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Track how often this vertex is selected (defaults to a tree spec's root).
    #[arg(long)]
    root: Option<VertexId>,
    /// `v:h`, track how often v is killed from outside its radius-h ball.
    #[arg(long, value_parser = parse_escape)]
    escape: Option<(VertexId, usize)>,
    /// Per-vertex selection rates (a space-separated column in CSV).
    #[arg(long)]
    per_vertex: bool,
    /// Confidence level of the exact binomial interval for rates.
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OracleMode {
    /// Expected greedy size and selection probabilities over all rankings.
    Greedy,
    /// Expected size of the sequential variant.
    Sequential,
    /// Independence number with a witness.
    Alpha,
    /// Increasing weight assignments along a loose path.
    Paths,
    /// Exact escape probability of a vertex.
    Escape,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    mode: OracleMode,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    spec: Option<String>,
    /// Path mode: edge size minus one.
    #[arg(long)]
    r: Option<u64>,
    /// Path mode: number of edges.
    #[arg(long)]
    l: Option<u64>,
    /// Escape mode: the vertex.
    #[arg(long)]
    vertex: Option<VertexId>,
    /// Escape mode: the radius.
    #[arg(long)]
    h: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Reduced sample sizes.
    #[arg(long)]
    quick: bool,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

fn parse_escape(s: &str) -> Result<(VertexId, usize), String> {
    let (v, h) = s.split_once(':').ok_or("expected v:h")?;
    Ok((v.trim().parse().map_err(|_| "bad vertex")?, h.trim().parse().map_err(|_| "bad radius")?))
}

enum Output {
    Table(Table),
    /// Text form plus the table for csv/json.
    Both(Vec<String>, Table),
    Raw(String),
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ArgumentConflict, message).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let common = cli.common;
    let threads = common.threads.map(|t| t as usize);
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let (output, default, mut code) = match cli.command {
        Command::Theory(a) => (theory(&a)?, Format::Csv, ExitCode::SUCCESS),
        Command::SolveU(a) => (solve_u_cmd(&a)?, Format::Csv, ExitCode::SUCCESS),
        Command::Recursion(a) => (recursion(&a)?, Format::Csv, ExitCode::SUCCESS),
        Command::Gen(a) => (gen(&a)?, Format::Text, ExitCode::SUCCESS),
        Command::Girth(a) => (girth(&a)?, Format::Text, ExitCode::SUCCESS),
        Command::Simulate(a) => (simulate(&a, common.seed, threads)?, Format::Csv, ExitCode::SUCCESS),
        Command::Oracle(a) => (oracle(&a)?, Format::Text, ExitCode::SUCCESS),
        Command::Verify(a) => {
            let (out, ok) = verify_cmd(&a);
            (out, Format::Text, if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    };
    let format = common.format.unwrap_or(default);
    let mut sink: Box<dyn Write> = match &common.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if let Err(e) = emit(output, format, &mut sink) {
        code = ExitCode::from(1);
        eprintln!("error: {e:#}");
    }
    Ok(code)
}

fn emit(output: Output, format: Format, out: &mut dyn Write) -> Result<()> {
    match (output, format) {
        (Output::Raw(s), Format::Text) => out.write_all(s.as_bytes())?,
        (Output::Raw(_), _) => bail!("this subcommand only emits text"),
        (Output::Both(lines, _), Format::Text) => {
            for l in lines {
                writeln!(out, "{l}")?;
            }
        }
        (Output::Table(t), Format::Text) | (Output::Table(t), Format::Csv) | (Output::Both(_, t), Format::Csv) => {
            t.write_csv(&mut *out)?
        }
        (Output::Table(t), Format::Json) | (Output::Both(_, t), Format::Json) => t.write_json(&mut *out)?,
    }
    out.flush()?;
    Ok(())
}

fn load_instance(input: &Option<PathBuf>, spec: &Option<String>) -> Result<Instance> {
    match (input, spec) {
        (Some(path), None) => {
            let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let graph = load_hypergraph(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))?;
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(Instance { graph, root: None, label })
        }
        (None, Some(s)) => {
            let spec: GeneratorSpec = s.parse()?;
            Ok(spec.build()?)
        }
        (Some(_), Some(_)) => usage_error("--input and --spec are mutually exclusive"),
        (None, None) => usage_error("one of --input or --spec is required"),
    }
}

fn theory(a: &TheoryArgs) -> Result<Output> {
    if a.asymptotic {
        let mut t = Table::new(&["r", "d", "u", "f", "scale", "ratio", "f_over_u"]);
        for &r in &a.r {
            for row in asymptotic_table(r, &a.d)? {
                t.push(vec![
                    Cell::int(r),
                    Cell::int(row.d),
                    Cell::Float(row.u),
                    Cell::Float(row.f),
                    Cell::Float(row.scale),
                    Cell::Float(row.ratio),
                    Cell::Float(row.f_over_u),
                ]);
            }
        }
        return Ok(Output::Table(t));
    }
    let gs: Vec<Option<u64>> = if a.g.is_empty() { vec![None] } else { a.g.iter().map(|&g| Some(g)).collect() };
    let mut triples = Vec::new();
    for &d in &a.d {
        for &r in &a.r {
            for &g in &gs {
                triples.push((d, r, g));
            }
        }
    }
    let reports: Vec<TheoryReport> = triples
        .par_iter()
        .map(|&(d, r, g)| TheoryReport::compute(d, r, g).with_context(|| format!("d={d}, r={r}")))
        .collect::<Result<_>>()?;
    let mut t = Table::from_header_line(REPORT_CSV_HEADER);
    for rep in reports {
        t.push(vec![
            Cell::int(rep.d),
            Cell::int(rep.r),
            rep.g.map(Cell::int).unwrap_or(Cell::Empty),
            Cell::Float(rep.u),
            Cell::Float(rep.f),
            Cell::opt_float(rep.epsilon),
            Cell::opt_float(rep.lower_bound_per_n),
            Cell::Float(rep.caro_tuza_per_n),
            Cell::Float(rep.akpss_per_n),
            Cell::Float(rep.asymptotic_approx),
        ]);
    }
    Ok(Output::Table(t))
}

fn solve_u_cmd(a: &SolveUArgs) -> Result<Output> {
    let u = solve_u(a.d, a.r, a.tol)?;
    let h = series_h(a.d, a.r, u, a.tol)?;
    let f = u - u.powi(a.r as i32 + 1) / (a.r + 1) as f64;
    let mut t = Table::new(&["d", "r", "u", "f", "residual"]);
    t.push(vec![Cell::int(a.d), Cell::int(a.r), Cell::Float(u), Cell::Float(f), Cell::Float((h - 1.0).abs())]);
    Ok(Output::Table(t))
}

fn recursion(a: &RecursionArgs) -> Result<Output> {
    if a.ode {
        let sol = ode_g(a.d, a.r, a.grid)?;
        let u = solve_u(a.d as u64, a.r as u64, DEFAULT_TOL)?;
        eprintln!("G(0) = {}, u = {}, residual = {}", sig9(sol.grid.at(0)), sig9(u), sig9(sol.residual));
        let mut t = Table::new(&["x", "G"]);
        for i in 0..=sol.grid.grid_size() {
            t.push(vec![Cell::Float(sol.grid.x(i)), Cell::Float(sol.grid.at(i))]);
        }
        return Ok(Output::Table(t));
    }
    let res = iterate_to_limit(a.d, a.r, a.grid, a.max_h, a.tol)?;
    let u = solve_u(a.d as u64 + 1, a.r as u64, DEFAULT_TOL)?;
    eprintln!(
        "converged = {} after {} steps, 1 - F(0) = {}, u(d+1, r) = {}, oscillation ok = {}",
        res.converged,
        res.iterations,
        sig9(1.0 - res.limit.at(0)),
        sig9(u),
        res.oscillation_ok
    );
    if a.values {
        let mut t = Table::new(&["x", "F"]);
        for i in 0..=res.limit.grid_size() {
            t.push(vec![Cell::Float(res.limit.x(i)), Cell::Float(res.limit.at(i))]);
        }
        return Ok(Output::Table(t));
    }
    let mut t = Table::new(&["h", "f_at_zero", "change", "quadrature_error", "oscillation_violation", "oscillation_ok"]);
    for rec in &res.log {
        t.push(vec![
            Cell::int(rec.h as u64),
            Cell::Float(rec.value_at_zero),
            Cell::Float(rec.change),
            Cell::Float(rec.quadrature_error),
            Cell::Float(rec.oscillation_violation),
            Cell::Bool(rec.oscillation_ok),
        ]);
    }
    Ok(Output::Table(t))
}

fn gen(a: &GenArgs) -> Result<Output> {
    let spec: GeneratorSpec = a.spec.parse()?;
    let inst = spec.build()?;
    let mut buf = format!("# {}\n", inst.label).into_bytes();
    if let Some(root) = inst.root {
        buf.extend_from_slice(format!("# root {root}\n").as_bytes());
    }
    write_hypergraph(&inst.graph, &mut buf)?;
    Ok(Output::Raw(String::from_utf8(buf)?))
}

fn girth(a: &InstanceArgs) -> Result<Output> {
    let inst = load_instance(&a.input, &a.spec)?;
    let res = berge_girth(&inst.graph);
    let witness = match &res.witness {
        Some(w) => {
            if !w.validate(&inst.graph) {
                bail!("girth witness failed validation");
            }
            w.vertices.iter().zip(&w.edges).map(|(v, e)| format!("v{v} e{e}")).collect::<Vec<_>>().join(" ")
        }
        None => String::new(),
    };
    let mut lines = vec![format!("girth {}", res.girth)];
    if !witness.is_empty() {
        lines.push(format!("witness {witness}"));
    }
    let mut t = Table::new(&["instance", "n", "m", "girth", "witness"]);
    t.push(vec![
        Cell::text(inst.label),
        Cell::int(inst.graph.n() as u64),
        Cell::int(inst.graph.edge_count() as u64),
        match res.girth {
            Girth::Finite(g) => Cell::int(g as u64),
            Girth::Acyclic => Cell::text("acyclic"),
        },
        Cell::text(witness),
    ]);
    Ok(Output::Both(lines, t))
}

fn simulate(a: &SimulateArgs, seed: u64, threads: Option<usize>) -> Result<Output> {
    if !(0.0 < a.confidence && a.confidence < 1.0) {
        usage_error("--confidence must lie strictly between 0 and 1");
    }
    let inst = load_instance(&a.instance.input, &a.instance.spec)?;
    let g = &inst.graph;
    let mut plan = TrialPlan::new(a.trials, seed).with_threads(threads);
    if let Some(root) = a.root.or(inst.root) {
        plan = plan.with_root(root);
    }
    if let Some((v, h)) = a.escape {
        plan = plan.with_escape(v, h);
    }
    if a.per_vertex {
        plan = plan.with_per_vertex();
    }
    let s = run_trials(g, &plan)?;

    let mut t = Table::from_header_line(YIELD_CSV_HEADER);
    let mut extra = Vec::new();
    let row = match regular_parameters(g) {
        Ok(_) => {
            let rep = yield_assess(g, &inst.label, &s)?;
            extra.push(("distance", Cell::Float(rep.distance)));
            if let Some(x) = rep.exact_mean_per_n {
                extra.push(("exact_mean_per_n", Cell::Float(x)));
            }
            vec![
                Cell::text(rep.instance),
                Cell::int(rep.n),
                Cell::int(rep.d),
                Cell::int(rep.r),
                Cell::int(rep.girth),
                Cell::int(rep.trials),
                Cell::int(rep.seed),
                Cell::Float(rep.mean_per_n),
                Cell::Float(rep.stderr),
                Cell::Float(rep.var_per_n),
                Cell::Float(rep.f),
                Cell::Float(rep.epsilon),
                Cell::text(rep.verdict.to_string()),
            ]
        }
        Err(e) => {
            eprintln!("note: no yield interval for this instance: {e}");
            let r = g.uniformity().map(|k| Cell::int(k as u64 - 1)).unwrap_or(Cell::Empty);
            let girth = match berge_girth(g).girth {
                Girth::Finite(x) => Cell::int(x as u64),
                Girth::Acyclic => Cell::text("acyclic"),
            };
            vec![
                Cell::text(inst.label.clone()),
                Cell::int(s.n as u64),
                Cell::int(g.degree_profile().max_degree as u64),
                r,
                girth,
                Cell::int(s.trials),
                Cell::int(s.seed),
                Cell::Float(s.mean_size_per_n),
                Cell::Float(s.stderr),
                Cell::Float(s.empirical_variance_per_n),
                Cell::Empty,
                Cell::Empty,
                Cell::text("N/A"),
            ]
        }
    };
    let mut row = row;
    for (name, cell) in extra {
        t.headers.push(name.into());
        row.push(cell);
    }
    for (name, est) in [("root", s.root_selected), ("escape", s.escape)] {
        if let Some(est) = est {
            let (lo, hi) = est.exact_interval(a.confidence);
            t.headers.extend([format!("{name}_rate"), format!("{name}_stderr"), format!("{name}_lo"), format!("{name}_hi")]);
            row.extend([Cell::Float(est.value), Cell::Float(est.stderr), Cell::Float(lo), Cell::Float(hi)]);
        }
    }
    if let Some(rates) = s.per_vertex_rate {
        t.headers.push("per_vertex_rate".into());
        row.push(Cell::Floats(rates));
    }
    t.push(row);
    Ok(Output::Table(t))
}

fn require<T>(x: Option<T>, flag: &str, mode: &str) -> T {
    x.unwrap_or_else(|| usage_error(format!("--mode {mode} needs {flag}")))
}

fn oracle(a: &OracleArgs) -> Result<Output> {
    match a.mode {
        OracleMode::Paths => {
            let r = require(a.r, "--r", "paths");
            let l = require(a.l, "--l", "paths");
            let count = increasing_path_count(r, l)?;
            let p = increasing_path_probability(r, l)?;
            let n = (l * r + 1) as usize;
            if n <= MAX_PERMUTATION_N {
                let enumerated = count_increasing_assignments(r as usize, l as usize)?;
                if count != enumerated.into() {
                    bail!("closed form {count} disagrees with enumeration {enumerated}");
                }
            }
            let lines = vec![format!("count {count}, probability {}/{}", p.numer(), p.denom())];
            let mut t = Table::new(&["r", "l", "count", "probability"]);
            t.push(vec![Cell::int(r), Cell::int(l), Cell::int(&count), Cell::ratio(p.numer(), p.denom())]);
            Ok(Output::Both(lines, t))
        }
        OracleMode::Greedy => {
            let inst = load_instance(&a.input, &a.spec)?;
            let st = exact_greedy_stats(&inst.graph)?;
            let e = st.expected_size;
            let mut lines = vec![
                format!("permutations {}", st.permutations),
                format!("expected_size {}/{} ({})", e.numer(), e.denom(), sig9(*e.numer() as f64 / *e.denom() as f64)),
            ];
            let mut t = Table::new(&["vertex", "probability"]);
            for (v, p) in st.selection_prob.iter().enumerate() {
                lines.push(format!("vertex {v} {}/{}", p.numer(), p.denom()));
                t.push(vec![Cell::text(v.to_string()), Cell::ratio(p.numer(), p.denom())]);
            }
            t.push(vec![Cell::text("sum"), Cell::ratio(e.numer(), e.denom())]);
            Ok(Output::Both(lines, t))
        }
        OracleMode::Sequential => {
            let inst = load_instance(&a.input, &a.spec)?;
            let e = exact_sequential_expected_size(&inst.graph)?;
            let lines = vec![format!("expected_size {}/{}", e.numer(), e.denom())];
            let mut t = Table::new(&["n", "expected_size"]);
            t.push(vec![Cell::int(inst.graph.n() as u64), Cell::ratio(e.numer(), e.denom())]);
            Ok(Output::Both(lines, t))
        }
        OracleMode::Alpha => {
            let inst = load_instance(&a.input, &a.spec)?;
            let res = exact_alpha(&inst.graph)?;
            let w: Vec<String> = res.witness.iter().map(ToString::to_string).collect();
            let lines = vec![format!("alpha {}", res.alpha), format!("witness {}", w.join(" "))];
            let mut t = Table::new(&["n", "alpha", "witness"]);
            t.push(vec![Cell::int(inst.graph.n() as u64), Cell::int(res.alpha as u64), Cell::text(w.join(" "))]);
            Ok(Output::Both(lines, t))
        }
        OracleMode::Escape => {
            let inst = load_instance(&a.input, &a.spec)?;
            let v = require(a.vertex, "--vertex", "escape");
            let h = require(a.h, "--h", "escape");
            let g: &Hypergraph = &inst.graph;
            let p = exact_escape_probability(g, v, h)?;
            let bound = match g.uniformity() {
                Some(k) if k >= 2 => {
                    let d = g.degree_profile().max_degree.max(2) as u64;
                    Some(escape_probability_bound(d, k as u64 - 1, h as u64)?)
                }
                _ => None,
            };
            let mut lines = vec![format!("escape {}/{}", p.numer(), p.denom())];
            if let Some(b) = bound {
                lines.push(format!("bound {}", sig9(b)));
            }
            let mut t = Table::new(&["vertex", "h", "probability", "bound"]);
            t.push(vec![Cell::int(v as u64), Cell::int(h as u64), Cell::ratio(p.numer(), p.denom()), Cell::opt_float(bound)]);
            Ok(Output::Both(lines, t))
        }
    }
}

fn verify_cmd(a: &VerifyArgs) -> (Output, bool) {
    let scale = if a.quick { Scale::Quick } else { Scale::Full };
    let outcomes: Vec<_> = if a.only.is_empty() {
        verify::run_all(scale)
    } else {
        a.only
            .iter()
            .map(|&id| verify::run_criterion(id, scale).unwrap_or_else(|| usage_error(format!("no criterion {id}"))))
            .collect()
    };
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let ok = passed == outcomes.len();
    let mut lines: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
    lines.push(format!("{passed}/{} passed", outcomes.len()));
    let mut t = Table::new(&["id", "title", "passed", "elapsed_secs", "limit_secs", "detail"]);
    for o in outcomes {
        t.push(vec![
            Cell::int(o.id),
            Cell::text(o.title),
            Cell::Bool(o.passed),
            Cell::Float(o.elapsed_secs),
            Cell::Float(o.limit_secs),
            Cell::text(o.detail),
        ]);
    }
    (Output::Both(lines, t), ok)
}
