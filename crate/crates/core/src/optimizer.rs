//! Relaxed edge-removal optimizer.
//!
//! Every edge gets a variable `x_e` in `[0, 1]` (1 = kept, 0 = removed) and
//! the smooth objective
//!
//! ```text
//! F(x) = sum over pairs (u, v) of exp(-lambda * P(u, v))
//! ```
//!
//! is maximized by projected gradient ascent with an active set, subject to
//! the budget `sum x_e >= |C| - L` over the candidate variables `C`. The `L`
//! smallest variables at the end are the edges to remove.
//!
//! Two modes are supported: all edges are candidates, or only the edges with
//! the highest short betweenness are, in which case the objective is
//! restricted to the pairs those edges can cut and irrelevant edges are pruned.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use crate::betweenness::short_betweenness;
use crate::error::{check_k, Error, Result};
use crate::graph::{EdgeSubset, GraphView};
use crate::paths::{check_vars, sweep_pairs, EdgeVariables, PathWalker};
use crate::reachability::{cut_pairs, reachable_pairs, ReachablePairSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Optimize over every edge.
    Omo,
    /// Optimize over the short-betweenness candidate set.
    Omw,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Omo => "OMO",
            Mode::Omw => "OMW",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub k: u32,
    pub budget: usize,
    /// Sharpness of the exponential penalty.
    pub lambda: f64,
    /// Gradient step size. With `scale_step`, the step actually used is
    /// `beta / max |g(x_e)|` at the starting point, so that no variable moves
    /// by more than `beta` in the first iteration.
    pub beta: f64,
    pub scale_step: bool,
    pub max_iters: usize,
    /// Convergence threshold on the largest per-variable change.
    pub tol: f64,
    pub mode: Mode,
    /// Candidate set size as a multiple of the budget (OMW only).
    pub alpha: f64,
    /// Unused by the deterministic optimizer; kept for report provenance.
    pub rng_seed: u64,
}

impl OptimizerConfig {
    pub fn new(k: u32, budget: usize, mode: Mode) -> Self {
        OptimizerConfig {
            k,
            budget,
            lambda: 1.0,
            beta: 0.05,
            scale_step: true,
            max_iters: 200,
            tol: 1e-4,
            mode,
            alpha: 5.0,
            rng_seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        check_k(self.k)?;
        let positive = [
            ("lambda", self.lambda),
            ("beta", self.beta),
            ("tol", self.tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.max_iters == 0 {
            return Err(Error::Parameter("max_iters must be positive".into()));
        }
        if self.mode == Mode::Omw && !(self.alpha >= 1.0 && self.alpha.is_finite()) {
            return Err(Error::Parameter(format!(
                "alpha must be at least 1, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Objective value and gradient at one point.
struct Evaluation {
    objective: f64,
    gradient: Vec<f64>,
}

/// `F(x)` and, optionally, its gradient, over `pairs` or over every pair
/// with a short path when `pairs` is `None`.
fn evaluate(
    view: &GraphView<'_>,
    k: u32,
    lambda: f64,
    x: &[f64],
    pairs: Option<&ReachablePairSet>,
    with_gradient: bool,
) -> (f64, Option<Vec<f64>>) {
    let coef = with_gradient.then_some(move |p: f64| -lambda * (-lambda * p).exp());
    // Sum 1 - exp(-lambda P) over reached pairs; unreached pairs contribute 1.
    let sweep = sweep_pairs(view, k, Some(x), pairs, |p| -(-lambda * p).exp_m1(), coef);
    let total = pairs.map_or(sweep.reached, |s| s.count()) as f64;
    (total - sweep.pair_total, sweep.edge_total)
}

fn evaluate_full(
    view: &GraphView<'_>,
    k: u32,
    lambda: f64,
    x: &[f64],
    pairs: Option<&ReachablePairSet>,
) -> Evaluation {
    let (objective, gradient) = evaluate(view, k, lambda, x, pairs, true);
    Evaluation {
        objective,
        gradient: gradient.unwrap_or_default(),
    }
}

/// `sum over pairs of exp(-lambda * P(u, v))`.
pub fn objective(
    view: &GraphView<'_>,
    k: u32,
    lambda: f64,
    x: &EdgeVariables,
    pairs: &ReachablePairSet,
) -> Result<f64> {
    check_k(k)?;
    check_vars(view, x)?;
    if pairs.k() != k {
        return Err(Error::KMismatch {
            expected: pairs.k(),
            got: k,
        });
    }
    Ok(evaluate(view, k, lambda, x.as_slice(), Some(pairs), false).0)
}

/// `g(x_e) = -lambda * sum over reachable pairs of P(u,v,e) exp(-lambda P(u,v))`
/// for every edge id. Masked edges get 0.
pub fn gradients(view: &GraphView<'_>, k: u32, lambda: f64, x: &EdgeVariables) -> Result<Vec<f64>> {
    check_k(k)?;
    check_vars(view, x)?;
    Ok(evaluate_full(view, k, lambda, x.as_slice(), None).gradient)
}

/// The short-betweenness candidate set and what it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    /// `E_s`: the highest short-betweenness edges.
    pub edges: EdgeSubset,
    /// `R_s`: reachable pairs cut when all of `E_s` is removed. Only these
    /// can be cut by a subset of `E_s`.
    pub pairs: ReachablePairSet,
    /// `E_P`: edges on some short path of a pair in `R_s`. Other edges never
    /// influence the restricted objective.
    pub support: EdgeSubset,
}

pub fn candidate_set(
    view: &GraphView<'_>,
    k: u32,
    budget: usize,
    alpha: f64,
) -> Result<CandidateSet> {
    check_k(k)?;
    let size = candidate_size(budget, alpha);
    let available = view.active_edge_count();
    if size > available {
        return Err(Error::Budget(format!(
            "candidate set of {size} edges (alpha={alpha}, L={budget}) exceeds {available} edges"
        )));
    }
    let sb = short_betweenness(view, k)?;
    let edges: EdgeSubset = sb.top(size, &view.removed_edges()).into_iter().collect();
    let all_pairs = reachable_pairs(view, k)?;
    let pairs = cut_pairs(view, k, &edges, &all_pairs)?;
    let support = short_path_edges(view, k, &pairs);
    Ok(CandidateSet {
        edges,
        pairs,
        support,
    })
}

fn candidate_size(budget: usize, alpha: f64) -> usize {
    (alpha * budget as f64).ceil() as usize
}

/// Union of the edges on short paths joining pairs of `pairs`.
fn short_path_edges(view: &GraphView<'_>, k: u32, pairs: &ReachablePairSet) -> EdgeSubset {
    let n = view.vertex_count();
    let marks: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map_init(
            || (PathWalker::new(view, k, None), vec![false; n]),
            |(walker, wanted), u| {
                let partners: Vec<usize> = pairs.partners_above(u).collect();
                if partners.is_empty() {
                    return Vec::new();
                }
                for &v in &partners {
                    wanted[v] = true;
                }
                let mut found = Vec::new();
                walker.walk(u, |step| {
                    if wanted[step.target] {
                        found.extend_from_slice(step.edges);
                    }
                });
                for &v in &partners {
                    wanted[v] = false;
                }
                found.sort_unstable();
                found.dedup();
                found
            },
        )
        .collect();
    marks.into_iter().flatten().collect()
}

/// Why the iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Largest variable change fell below `tol`.
    Converged,
    /// Active set unchanged and objective change below `tol`.
    Stalled,
    /// No step size kept the objective from decreasing.
    NoAscent,
    /// Every candidate variable is pinned in the active set.
    AllActive,
    MaxIterations,
    /// Nothing to optimize: the objective has no pairs.
    NoPairs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub objective: f64,
    /// Sum of the candidate variables.
    pub sum_x: f64,
    pub active_count: usize,
    pub max_dx: f64,
    /// Step size actually taken.
    pub step: f64,
    /// Whether the budget-restoring update was used.
    pub bound_mode: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OptimizerTrace {
    pub records: Vec<TraceRecord>,
}

impl OptimizerTrace {
    pub fn iterations(&self) -> usize {
        self.records.len().saturating_sub(1)
    }

    /// Largest decrease of the objective between consecutive records.
    pub fn max_decrease(&self) -> f64 {
        self.records
            .windows(2)
            .map(|w| w[0].objective - w[1].objective)
            .fold(0.0, f64::max)
    }

    pub fn is_monotone(&self, tolerance: f64) -> bool {
        self.max_decrease() <= tolerance
    }

    /// `iteration,objective,sum_x,active_count,max_dx` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["iteration", "objective", "sum_x", "active_count", "max_dx"])?;
        for r in &self.records {
            w.write_record([
                r.iteration.to_string(),
                r.objective.to_string(),
                r.sum_x.to_string(),
                r.active_count.to_string(),
                r.max_dx.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizerOutcome {
    /// The `L` edges with the smallest final variables.
    pub selected: EdgeSubset,
    pub x: EdgeVariables,
    pub trace: OptimizerTrace,
    pub stop: StopReason,
    /// Present in OMW mode.
    pub candidates: Option<CandidateSet>,
}

/// Objective decreases smaller than this are treated as rounding noise when
/// accepting a step.
const ASCENT_SLACK: f64 = 1e-12;
/// Monotonicity tolerance enforced on the finished trace.
pub const MONOTONE_TOLERANCE: f64 = 1e-9;
const MAX_HALVINGS: usize = 40;

pub fn optimize(view: &GraphView<'_>, cfg: &OptimizerConfig) -> Result<OptimizerOutcome> {
    cfg.validate()?;
    let available = view.active_edge_count();
    if cfg.budget == 0 || cfg.budget >= available {
        return Err(Error::Budget(format!(
            "budget must be in 1..{available}, got {}",
            cfg.budget
        )));
    }

    let (candidates, work_view, pairs) = match cfg.mode {
        Mode::Omo => (None, view.clone(), None),
        Mode::Omw => {
            let cs = candidate_set(view, cfg.k, cfg.budget, cfg.alpha)?;
            let pruned = view.restricted_to(&cs.support)?;
            let pairs = cs.pairs.clone();
            (Some(cs), pruned, Some(pairs))
        }
    };
    let candidate_ids: Vec<usize> = match &candidates {
        Some(cs) => cs.edges.iter().collect(),
        None => view.active_edges().collect(),
    };

    let m = view.edge_count();
    let mut x = vec![1.0f64; m];
    let mut active = vec![false; m];
    let limit = candidate_ids.len() as f64 - cfg.budget as f64;
    let sum_c = |x: &[f64]| candidate_ids.iter().map(|&e| x[e]).sum::<f64>();

    let mut eval = evaluate_full(&work_view, cfg.k, cfg.lambda, &x, pairs.as_ref());
    let mut trace = OptimizerTrace::default();
    trace.records.push(TraceRecord {
        iteration: 0,
        objective: eval.objective,
        sum_x: sum_c(&x),
        active_count: 0,
        max_dx: 0.0,
        step: 0.0,
        bound_mode: false,
    });

    let pair_count = pairs.as_ref().map_or(1, |p| p.count());
    let mut stop = if pair_count == 0 {
        log::warn!("no cuttable pairs; selection falls back to edge order");
        StopReason::NoPairs
    } else {
        StopReason::MaxIterations
    };

    let base_step = if cfg.scale_step {
        let g_max = candidate_ids
            .iter()
            .map(|&e| eval.gradient[e].abs())
            .fold(0.0, f64::max);
        if g_max > 0.0 {
            cfg.beta / g_max
        } else {
            cfg.beta
        }
    } else {
        cfg.beta
    };

    let mut iteration = 0;
    while stop == StopReason::MaxIterations && iteration < cfg.max_iters {
        iteration += 1;
        let free: Vec<usize> = candidate_ids
            .iter()
            .copied()
            .filter(|&e| !active[e])
            .collect();
        if free.is_empty() {
            stop = StopReason::AllActive;
            break;
        }
        let g = &eval.gradient;
        let g_bar = free.iter().map(|&e| g[e]).sum::<f64>() / free.len() as f64;
        // Budget test uses the sum before this iteration's update.
        let bound_mode = sum_c(&x) < limit;
        let direction: Vec<f64> = free
            .iter()
            .map(|&e| if bound_mode { g[e] - g_bar } else { g[e] })
            .collect();

        let mut step = base_step;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let mut trial = x.clone();
            for (&e, d) in free.iter().zip(&direction) {
                trial[e] = (x[e] + step * d).clamp(0.0, 1.0);
            }
            let next = evaluate_full(&work_view, cfg.k, cfg.lambda, &trial, pairs.as_ref());
            if next.objective >= eval.objective - ASCENT_SLACK {
                accepted = Some((trial, next));
                break;
            }
            step *= 0.5;
        }
        let Some((trial, next)) = accepted else {
            stop = StopReason::NoAscent;
            break;
        };

        let max_dx = free
            .iter()
            .map(|&e| (trial[e] - x[e]).abs())
            .fold(0.0, f64::max);
        let before = active.clone();
        for &e in &free {
            if trial[e] == 0.0 || trial[e] == 1.0 {
                active[e] = true;
            }
        }
        // Release uses the gradient and average that drove this update.
        for &e in &candidate_ids {
            if active[e]
                && ((trial[e] == 0.0 && g[e] <= g_bar) || (trial[e] == 1.0 && g[e] >= g_bar))
            {
                active[e] = false;
            }
        }
        let objective_change = next.objective - eval.objective;
        x = trial;
        eval = next;

        trace.records.push(TraceRecord {
            iteration,
            objective: eval.objective,
            sum_x: sum_c(&x),
            active_count: candidate_ids.iter().filter(|&&e| active[e]).count(),
            max_dx,
            step,
            bound_mode,
        });

        if max_dx < cfg.tol {
            stop = StopReason::Converged;
        } else if before == active && objective_change.abs() < cfg.tol * 1e-3 {
            stop = StopReason::Stalled;
        }
    }

    if !trace.is_monotone(MONOTONE_TOLERANCE) {
        return Err(Error::Numerical(format!(
            "objective decreased by {:e}",
            trace.max_decrease()
        )));
    }

    let mut order = candidate_ids.clone();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then_with(|| a.cmp(&b)));
    let selected: EdgeSubset = order.into_iter().take(cfg.budget).collect();
    log::debug!(
        "{} stopped after {} iterations ({:?}), sum x = {:.3}",
        cfg.mode,
        trace.iterations(),
        stop,
        sum_c(&x)
    );

    Ok(OptimizerOutcome {
        selected,
        x: EdgeVariables::new(x)?,
        trace,
        stop,
        candidates,
    })
}
