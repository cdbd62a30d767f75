//! Command-line front end. Every command prints one JSON document (or the
//! requested export) and maps its outcome onto the exit code.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::{Cache, CacheKey, CACHE_DIR_ENV};
use crate::error::{domain, Error, Result};
use crate::fault::{
    construct_cut, default_cut, in_theorem_domain, kappa_super_exact, theorem_value, Budget, CutCertificate,
    SearchOptions,
};
use crate::graph::{is_h_cut, vertex_connectivity, HCutVerdict};
use crate::harness::{
    grid_run, verify_oracle_only, verify_structure, verify_theorem_on, GridSpec, Status, SuiteOptions,
    VerificationReport,
};
use crate::permutation::falling;
use crate::report::{self, certificate_json, document, parse_vertex_list, search_json, search_status, vertex_names};
use crate::star::{CliqueId, EdgeKind, StarGraph, SubgraphId};
use crate::VertexSet;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_SKIPPED_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "nkstar", version, about = "(n,k)-star graphs and their h-super connectivity")]
pub struct Cli {
    /// Cache directory for completed reports.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for the exhaustive search (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct BudgetArgs {
    /// Wall-clock limit per search, in seconds.
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    /// Candidate-set limit per search.
    #[arg(long)]
    pub budget_candidates: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_duration: self.budget_seconds.map(Duration::from_secs_f64),
            max_candidates: self.budget_candidates,
        }
    }

    /// Runs cut short by a budget are never cached, so the budget itself
    /// stays out of the cache key.
    fn json(&self) -> Value {
        json!({})
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Edgelist,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Export S(n,k) as an edge list or DOT graph.
    Gen {
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Edgelist)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order, size, regularity, clique and edge-kind counts.
    Info { n: usize, k: usize },
    /// Subgraph sizes and cross-edge matrix for position t.
    Decompose {
        n: usize,
        k: usize,
        #[arg(long = "t")]
        t: usize,
    },
    /// Build or check h-cuts.
    #[command(subcommand)]
    Cut(CutCommand),
    /// Classical connectivity by disjoint paths and by exhaustive search.
    Kappa {
        n: usize,
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exact h-super connectivity with a minimality certificate.
    Skappa {
        n: usize,
        k: usize,
        h: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Do not seed the search with the constructed cut.
        #[arg(long)]
        no_hint: bool,
    },
    /// Structure suites and theorem checks for one (n,k).
    Verify {
        n: usize,
        k: usize,
        h: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Count every violation instead of stopping at the first.
        #[arg(long)]
        count_all: bool,
    },
    /// Structure suites and theorem checks over a grid of n.
    Grid {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Restrict to these k values.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        /// Also run this many h values beyond n-k (oracle only).
        #[arg(long, default_value_t = 0)]
        extra_h: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Print the aligned summary table instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Inspect or empty the report cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CutCommand {
    /// The clique-based h-cut; defaults to the first clique and its first h+1 members.
    Construct {
        n: usize,
        k: usize,
        h: usize,
        /// Clique suffix, e.g. "4,5".
        #[arg(long)]
        alpha: Option<String>,
        /// Members of X: "1,4,5;2,4,5", repeated flags, or k-symbol chunks "1,4,5,2,4,5".
        #[arg(long = "x")]
        x: Vec<String>,
    },
    /// Check a vertex set read from a file (one permutation per line).
    Verify {
        n: usize,
        k: usize,
        h: usize,
        #[arg(long = "s")]
        s: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheAction {
    Ls,
    Clear,
}

/// What a command produced: text to print and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn doc(doc: &Value, code: u8) -> Self {
        Outcome { text: report::render(doc), code }
    }
}

fn status_code(status: &str) -> u8 {
    match status {
        "fail" => EXIT_FAIL,
        "skipped-budget" => EXIT_SKIPPED_BUDGET,
        "error" => EXIT_ERROR,
        _ => EXIT_OK,
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::SkippedBudget => "skipped-budget",
    }
}

struct Context {
    cache: Option<Cache>,
    workers: usize,
}

impl Context {
    fn search(&self, budget: &BudgetArgs) -> SearchOptions {
        SearchOptions {
            budget: budget.budget(),
            workers: self.workers,
            lower_bound: 0,
        }
    }

    /// Serves `operation(parameters)` from the cache, or computes and stores
    /// it unless the run was cut short by its budget.
    fn cached(&self, operation: &str, parameters: Value, compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
        let key = CacheKey::new(operation, parameters);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(hit);
        }
        let doc = compute()?;
        if let Some(cache) = &self.cache {
            if doc["status"] != "skipped-budget" {
                cache.put(&key, &doc)?;
            }
        }
        Ok(doc)
    }
}

pub fn run(cli: Cli) -> Outcome {
    let ctx = Context {
        cache: (!cli.no_cache).then(|| Cache::new(cli.cache_dir.clone().unwrap_or_else(Cache::default_dir))),
        workers: cli.workers,
    };
    match dispatch(&ctx, cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::doc(&report::error_document(&e), EXIT_ERROR),
    }
}

pub fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    print!("{}", outcome.text);
    ExitCode::from(outcome.code)
}

fn dispatch(ctx: &Context, command: Command) -> Result<Outcome> {
    match command {
        Command::Gen { n, k, format, out } => gen(n, k, format, out),
        Command::Info { n, k } => Ok(Outcome::doc(&info(n, k)?, EXIT_OK)),
        Command::Decompose { n, k, t } => {
            let doc = decompose(n, k, t)?;
            Ok(Outcome::doc(&doc, status_code(doc["status"].as_str().unwrap_or(""))))
        }
        Command::Cut(CutCommand::Construct { n, k, h, alpha, x }) => {
            Ok(Outcome::doc(&cut_construct(n, k, h, alpha.as_deref(), &x)?, EXIT_OK))
        }
        Command::Cut(CutCommand::Verify { n, k, h, s }) => {
            let doc = cut_verify(n, k, h, &s)?;
            Ok(Outcome::doc(&doc, status_code(doc["status"].as_str().unwrap_or(""))))
        }
        Command::Kappa { n, k, budget } => {
            let doc = kappa(ctx, n, k, &budget)?;
            Ok(Outcome::doc(&doc, status_code(doc["status"].as_str().unwrap_or(""))))
        }
        Command::Skappa { n, k, h, budget, no_hint } => {
            let params = json!({"n": n, "k": k, "h": h, "hint": !no_hint, "budget": budget.json()});
            let doc = ctx.cached("skappa", params.clone(), || skappa(ctx, params, n, k, h, &budget, no_hint))?;
            Ok(Outcome::doc(&doc, status_code(doc["status"].as_str().unwrap_or(""))))
        }
        Command::Verify { n, k, h, budget, count_all } => {
            let params = json!({"n": n, "k": k, "h": h, "count_all": count_all});
            let doc = ctx.cached("verify", params.clone(), || verify(ctx, params, n, k, h, &budget, count_all))?;
            Ok(Outcome::doc(&doc, status_code(doc["status"].as_str().unwrap_or(""))))
        }
        Command::Grid { n_min, n_max, k, extra_h, budget, table } => {
            let spec = GridSpec {
                n_min,
                n_max,
                k_values: k,
                extra_h,
                search: ctx.search(&budget),
                suites: SuiteOptions::default(),
            };
            let params = json!({"n_min": n_min, "n_max": n_max, "k": spec.k_values, "extra_h": extra_h});
            let doc = ctx.cached("grid", params.clone(), || {
                let grid = grid_run(&spec)?;
                let status = status_name(grid.status());
                Ok(document(
                    "grid",
                    params,
                    status,
                    json!({"reports": grid.reports, "cells": grid.cells, "table": grid.render_table()}),
                ))
            })?;
            let code = status_code(doc["status"].as_str().unwrap_or(""));
            if table {
                Ok(Outcome { text: doc["table"].as_str().unwrap_or("").to_string(), code })
            } else {
                Ok(Outcome::doc(&doc, code))
            }
        }
        Command::Cache { action } => cache_command(ctx, action),
    }
}

fn gen(n: usize, k: usize, format: ExportFormat, out: Option<PathBuf>) -> Result<Outcome> {
    let g = StarGraph::build(n, k)?;
    let text = match format {
        ExportFormat::Edgelist => g.to_edge_list(),
        ExportFormat::Dot => g.to_dot(),
    };
    match out {
        Some(path) => {
            fs::write(&path, text)?;
            let doc = document(
                "gen",
                json!({"n": n, "k": k, "format": format!("{format:?}").to_lowercase()}),
                "ok",
                json!({"path": path.display().to_string(), "edges": g.graph().size()}),
            );
            Ok(Outcome::doc(&doc, EXIT_OK))
        }
        None => Ok(Outcome { text, code: EXIT_OK }),
    }
}

pub fn info(n: usize, k: usize) -> Result<Value> {
    let g = StarGraph::build(n, k)?;
    let gr = g.graph();
    let degree = gr.degree(0);
    let regular = (0..g.order()).all(|v| gr.degree(v) == degree);
    let (mut swap, mut unswap) = (0usize, 0usize);
    for (_, _, kind) in g.edges() {
        match kind {
            EdgeKind::Swap(_) => swap += 1,
            EdgeKind::Unswap => unswap += 1,
        }
    }
    Ok(document(
        "info",
        json!({"n": n, "k": k}),
        "ok",
        json!({
            "order": g.order(),
            "size": gr.size(),
            "regular": regular,
            "degree": regular.then_some(degree),
            "clique_count": g.cliques().len(),
            "clique_order": n - k + 1,
            "swap_edges": swap,
            "unswap_edges": unswap,
        }),
    ))
}

pub fn decompose(n: usize, k: usize, t: usize) -> Result<Value> {
    let g = StarGraph::build(n, k)?;
    let sizes = (1..=n)
        .map(|i| g.subgraph(SubgraphId { t, i }).map(|v| v.len()))
        .collect::<Result<Vec<_>>>()?;
    let expected = falling(n - 2, k - 2).unwrap_or(0) as usize;
    let mut matrix = vec![vec![0usize; n]; n];
    let mut ok = true;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let edges = g.cross_edges(t, i, j)?;
                ok &= edges.len() == expected;
                matrix[i - 1][j - 1] = edges.len();
            }
        }
    }
    Ok(document(
        "decompose",
        json!({"n": n, "k": k, "t": t}),
        if ok { "pass" } else { "fail" },
        json!({
            "subgraph_sizes": sizes,
            "cross_edges": matrix,
            "expected_cross_edges": expected,
        }),
    ))
}

/// Splits `--x` values into vertices: `;`/whitespace separated, or a flat
/// comma list whose length is a multiple of k.
fn parse_x(g: &StarGraph, values: &[String]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for value in values {
        for token in value.split(|c: char| c == ';' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let symbols: Vec<&str> = token.split(',').collect();
            if !symbols.len().is_multiple_of(g.k()) {
                return Err(domain!("{token:?} is not a list of {}-symbol vertices", g.k()));
            }
            for chunk in symbols.chunks(g.k()) {
                out.push(g.parse_vertex(&chunk.join(","))?);
            }
        }
    }
    Ok(out)
}

pub fn cut_construct(n: usize, k: usize, h: usize, alpha: Option<&str>, x: &[String]) -> Result<Value> {
    let g = StarGraph::build(n, k)?;
    let cert = match (alpha, x.is_empty()) {
        (None, true) => default_cut(&g, h)?,
        (alpha, _) => {
            let xs = parse_x(&g, x)?;
            let alpha = match alpha {
                Some(a) => CliqueId::parse(n, a)?,
                None => g.clique_of(*xs.first().ok_or_else(|| domain!("--alpha given without --x"))?),
            };
            let xs = if xs.is_empty() {
                let members = g.clique_members(&alpha)?;
                members.into_iter().take(h + 1).collect()
            } else {
                xs
            };
            construct_cut(&g, &alpha, &xs, h)?
        }
    };
    let alpha = g.clique_of(cert.witness[0]);
    Ok(document(
        "cut-construct",
        json!({"n": n, "k": k, "h": h, "alpha": alpha.to_string(), "x": vertex_names(&g, &cert.witness)}),
        "ok",
        json!({
            "value": cert.size(),
            "expected": theorem_value(n, k, h)?,
            "certificate": certificate_json(&g, &cert),
        }),
    ))
}

pub fn cut_verify(n: usize, k: usize, h: usize, path: &PathBuf) -> Result<Value> {
    let g = StarGraph::build(n, k)?;
    let text = fs::read_to_string(path)?;
    let vertices = parse_vertex_list(&g, &text)?;
    let set = VertexSet::from_iter(g.order(), vertices.iter().copied());
    let verdict = is_h_cut(g.graph(), &set, h)?;
    let body = match &verdict {
        HCutVerdict::Cut { components } => {
            let cert = CutCertificate::from_cut(g.graph(), &set, h)?;
            json!({
                "verdict": "cut",
                "components": components.len(),
                "component_sizes": components.iter().map(Vec::len).collect::<Vec<_>>(),
                "certificate": certificate_json(&g, &cert),
            })
        }
        HCutVerdict::Connected { remaining } => json!({
            "verdict": "connected",
            "diagnostic": format!("G - S is connected ({remaining} vertices remain)"),
        }),
        HCutVerdict::LowDegree { vertex, degree } => json!({
            "verdict": "low-degree",
            "vertex": g.label(*vertex).to_string(),
            "degree": degree,
            "diagnostic": format!("vertex {} keeps degree {degree} < {h}", g.label(*vertex)),
        }),
    };
    let mut body = body;
    body["size"] = json!(vertices.len());
    Ok(document(
        "cut-verify",
        json!({"n": n, "k": k, "h": h}),
        if verdict.is_cut() { "pass" } else { "fail" },
        body,
    ))
}

fn kappa(ctx: &Context, n: usize, k: usize, budget: &BudgetArgs) -> Result<Value> {
    let g = StarGraph::build(n, k)?;
    let flow = vertex_connectivity(g.graph())?;
    let hint = if k >= 2 { Some(default_cut(&g, 0)?) } else { None };
    let search = kappa_super_exact(g.graph(), 0, hint.as_ref(), &ctx.search(budget))?;
    // complete graphs have no vertex-cut; the convention value is order - 1
    let exhaustive = search.value.or((!search.budget_hit).then(|| g.order() - 1));
    let status = if search.budget_hit {
        "skipped-budget"
    } else if exhaustive == Some(flow) {
        "pass"
    } else {
        "fail"
    };
    Ok(document(
        "kappa",
        json!({"n": n, "k": k}),
        status,
        json!({
            "value": flow,
            "flow": flow,
            "exhaustive": exhaustive,
            "agree": exhaustive == Some(flow),
            "search": search_json(&g, &search),
        }),
    ))
}

fn skappa(ctx: &Context, params: Value, n: usize, k: usize, h: usize, budget: &BudgetArgs, no_hint: bool) -> Result<Value> {
    let g = StarGraph::build(n, k)?;
    let hint = (!no_hint && in_theorem_domain(n, k, h)).then(|| default_cut(&g, h)).transpose()?;
    let r = kappa_super_exact(g.graph(), h, hint.as_ref(), &ctx.search(budget))?;
    let mut body = search_json(&g, &r);
    body["expected"] = json!(theorem_value(n, k, h).ok());
    Ok(document("skappa", params, search_status(&r), body))
}

fn verify(
    ctx: &Context,
    params: Value,
    n: usize,
    k: usize,
    h: Option<usize>,
    budget: &BudgetArgs,
    count_all: bool,
) -> Result<Value> {
    let g = StarGraph::build(n, k)?;
    let mut reports: Vec<VerificationReport> = verify_structure(n, k, SuiteOptions { count_all })?;
    let structure_ok = reports.iter().all(|r| r.status == Status::Pass);
    let hs: Vec<usize> = match h {
        Some(h) => vec![h],
        None => (0..=n - k).collect(),
    };
    if structure_ok {
        let opts = ctx.search(budget);
        for h in hs {
            let (report, _) = if in_theorem_domain(n, k, h) {
                verify_theorem_on(&g, h, &opts)?
            } else {
                verify_oracle_only(&g, h, &opts)?
            };
            reports.push(report);
        }
    }
    let overall = if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::SkippedBudget) {
        Status::SkippedBudget
    } else {
        Status::Pass
    };
    Ok(document("verify", params, status_name(overall), json!({"reports": reports})))
}

fn cache_command(ctx: &Context, action: CacheAction) -> Result<Outcome> {
    let cache = ctx
        .cache
        .as_ref()
        .ok_or_else(|| Error::Domain("cache commands need the cache enabled".into()))?;
    let doc = match action {
        CacheAction::Ls => {
            let entries: Vec<Value> = cache
                .list()?
                .into_iter()
                .map(|(digest, e)| {
                    json!({
                        "digest": digest,
                        "operation": e.key.operation,
                        "parameters": e.key.parameters,
                        "version": e.key.version,
                        "created-at": e.created_at,
                    })
                })
                .collect();
            document(
                "cache-ls",
                json!({"dir": cache.dir().display().to_string()}),
                "ok",
                json!({"entries": entries}),
            )
        }
        CacheAction::Clear => document(
            "cache-clear",
            json!({"dir": cache.dir().display().to_string()}),
            "ok",
            json!({"removed": cache.clear()?}),
        ),
    };
    Ok(Outcome::doc(&doc, EXIT_OK))
}
