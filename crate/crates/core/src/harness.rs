//! End-to-end runs: pick a method, remove its edges, and report how many
//! reachable pairs were cut.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::betweenness::ScoreMethod;
use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph};
use crate::greedy::{select_greedy, SelectionConfig};
use crate::optimizer::{optimize, Mode, OptimizerConfig};
use crate::oracle::exhaustive_optimum;
use crate::reachability::{reachable_pair_count, reachable_pairs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Top edges by global betweenness; batch defaults to the whole budget.
    Bt,
    Lb,
    Sb,
    Omo,
    Omw,
    /// Like `Bt`, but rescoring after every edge unless a batch is given.
    GreedyBt,
    GreedyLb,
    GreedySb,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Bt,
        Method::Lb,
        Method::Sb,
        Method::Omw,
        Method::Omo,
        Method::GreedyBt,
        Method::GreedyLb,
        Method::GreedySb,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bt => "bt",
            Method::Lb => "lb",
            Method::Sb => "sb",
            Method::Omo => "omo",
            Method::Omw => "omw",
            Method::GreedyBt => "greedy-bt",
            Method::GreedyLb => "greedy-lb",
            Method::GreedySb => "greedy-sb",
            Method::Oracle => "oracle",
        }
    }

    fn score(self) -> Option<(ScoreMethod, bool)> {
        match self {
            Method::Bt => Some((ScoreMethod::Bt, false)),
            Method::Lb => Some((ScoreMethod::Lb, false)),
            Method::Sb => Some((ScoreMethod::Sb, false)),
            Method::GreedyBt => Some((ScoreMethod::Bt, true)),
            Method::GreedyLb => Some((ScoreMethod::Lb, true)),
            Method::GreedySb => Some((ScoreMethod::Sb, true)),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown method {s:?}")))
    }
}

/// Parameters shared by every method of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunParams {
    pub k: u32,
    pub budget: usize,
    /// Edges per scoring pass for score-based methods; `None` picks the
    /// method default (whole budget, or 1 for the `greedy-*` variants).
    pub batch: Option<usize>,
    pub lambda: f64,
    pub beta: f64,
    /// Scale `beta` by the largest starting gradient (see
    /// [`OptimizerConfig::beta`]).
    pub scale_step: bool,
    pub alpha: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl RunParams {
    pub fn new(k: u32, budget: usize) -> Self {
        let defaults = OptimizerConfig::new(k, budget, Mode::Omo);
        RunParams {
            k,
            budget,
            batch: None,
            lambda: defaults.lambda,
            beta: defaults.beta,
            scale_step: defaults.scale_step,
            alpha: defaults.alpha,
            max_iters: defaults.max_iters,
            tol: defaults.tol,
            seed: 0,
        }
    }

    fn optimizer(&self, mode: Mode) -> OptimizerConfig {
        OptimizerConfig {
            lambda: self.lambda,
            beta: self.beta,
            scale_step: self.scale_step,
            max_iters: self.max_iters,
            tol: self.tol,
            alpha: self.alpha,
            rng_seed: self.seed,
            ..OptimizerConfig::new(self.k, self.budget, mode)
        }
    }
}

/// One row of the report CSV plus the removed edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub method: String,
    pub k: u32,
    #[serde(rename = "L")]
    pub budget: usize,
    pub r: Option<usize>,
    pub lambda: Option<f64>,
    pub beta: Option<f64>,
    pub alpha: Option<f64>,
    pub vertices: usize,
    pub edges: usize,
    pub pairs_before: u64,
    pub pairs_after: u64,
    pub pairs_cut: u64,
    /// Pairs cut per removed edge.
    pub delta: f64,
    pub iterations: u64,
    pub runtime_ms: u64,
    #[serde(skip)]
    pub removed_edges: Vec<(usize, usize)>,
}

/// Runs `method` on `graph` and measures the result from scratch.
pub fn run(graph: &Graph, method: Method, params: &RunParams) -> Result<RunReport> {
    let view = graph.view();
    let pairs_before = reachable_pairs(&view, params.k)?.count();
    let started = Instant::now();

    let mut report = RunReport {
        method: method.name().to_string(),
        k: params.k,
        budget: params.budget,
        r: None,
        lambda: None,
        beta: None,
        alpha: None,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        pairs_before,
        pairs_after: 0,
        pairs_cut: 0,
        delta: 0.0,
        iterations: 0,
        runtime_ms: 0,
        removed_edges: Vec::new(),
    };

    let selected: EdgeSubset = match method {
        Method::Omo | Method::Omw => {
            let mode = if method == Method::Omo {
                Mode::Omo
            } else {
                Mode::Omw
            };
            let cfg = params.optimizer(mode);
            let out = optimize(&view, &cfg)?;
            report.lambda = Some(cfg.lambda);
            report.beta = Some(cfg.beta);
            if mode == Mode::Omw {
                report.alpha = Some(cfg.alpha);
            }
            report.iterations = out.trace.iterations() as u64;
            out.selected
        }
        Method::Oracle => {
            let out = exhaustive_optimum(&view, params.k, params.budget)?;
            report.iterations = out.evaluated;
            out.best_subset
        }
        _ => {
            let (score, greedy) = method.score().expect("score-based method");
            let default_batch = if greedy { 1 } else { params.budget };
            let batch = params.batch.unwrap_or(default_batch);
            let cfg = SelectionConfig {
                method: score,
                budget: params.budget,
                batch,
                k: params.k,
            };
            report.r = Some(batch);
            report.iterations = params.budget.div_ceil(batch.max(1)) as u64;
            select_greedy(&view, &cfg)?
        }
    };
    report.runtime_ms = started.elapsed().as_millis() as u64;

    let pairs_after = reachable_pair_count(&graph.remove_edges(&selected)?, params.k)?;
    report.pairs_after = pairs_after;
    report.pairs_cut = pairs_before - pairs_after;
    report.delta = report.pairs_cut as f64 / params.budget as f64;
    report.removed_edges = selected.iter().map(|e| graph.endpoints(e)).collect();
    log::info!(
        "{method}: cut {} of {} pairs with {} edges (delta {:.3}) in {} ms",
        report.pairs_cut,
        pairs_before,
        params.budget,
        report.delta,
        report.runtime_ms
    );
    Ok(report)
}

/// Runs every method on the same instance. Reports come back in input order.
pub fn compare(graph: &Graph, methods: &[Method], params: &RunParams) -> Result<Vec<RunReport>> {
    methods.iter().map(|&m| run(graph, m, params)).collect()
}

/// Method names ordered by decreasing delta; ties keep input order.
pub fn ranking(reports: &[RunReport]) -> Vec<&str> {
    let mut order: Vec<&RunReport> = reports.iter().collect();
    order.sort_by(|a, b| b.delta.total_cmp(&a.delta));
    order.into_iter().map(|r| r.method.as_str()).collect()
}

/// Writes the report CSV with its fixed header.
pub fn write_reports<W: Write>(reports: &[RunReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r)?;
    }
    if reports.is_empty() {
        w.write_record(REPORT_HEADER)?;
    }
    w.flush()?;
    Ok(())
}

pub const REPORT_HEADER: [&str; 15] = [
    "method",
    "k",
    "L",
    "r",
    "lambda",
    "beta",
    "alpha",
    "vertices",
    "edges",
    "pairs_before",
    "pairs_after",
    "pairs_cut",
    "delta",
    "iterations",
    "runtime_ms",
];

/// Writes removed edges one `u v` per line, translating vertex ids through
/// `labels` when given.
pub fn write_removed_edges<W: Write>(
    report: &RunReport,
    labels: Option<&[u64]>,
    mut out: W,
) -> Result<()> {
    for &(u, v) in &report.removed_edges {
        match labels {
            Some(l) => writeln!(out, "{} {}", l[u], l[v])?,
            None => writeln!(out, "{u} {v}")?,
        }
    }
    Ok(())
}
