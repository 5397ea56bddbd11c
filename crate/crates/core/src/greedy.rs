//! Batch-greedy edge selection by betweenness-style scores.

use crate::betweenness::{score, ScoreMethod};
use crate::error::{check_k, Error, Result};
use crate::graph::{EdgeSubset, GraphView};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectionConfig {
    pub method: ScoreMethod,
    /// Number of edges to remove.
    pub budget: usize,
    /// Edges taken per scoring pass.
    pub batch: usize,
    pub k: u32,
}

impl SelectionConfig {
    /// One scoring pass that takes the top `budget` edges at once.
    pub fn single_pass(method: ScoreMethod, budget: usize, k: u32) -> Self {
        SelectionConfig {
            method,
            budget,
            batch: budget,
            k,
        }
    }
}

/// Repeatedly scores the graph with the selected edges masked and takes the
/// `batch` best remaining edges, until `budget` edges are chosen.
pub fn select_greedy(view: &GraphView<'_>, cfg: &SelectionConfig) -> Result<EdgeSubset> {
    check_k(cfg.k)?;
    let available = view.active_edge_count();
    if cfg.budget == 0 || cfg.budget >= available {
        return Err(Error::Budget(format!(
            "budget must be in 1..{available}, got {}",
            cfg.budget
        )));
    }
    if cfg.batch == 0 || cfg.batch > cfg.budget {
        return Err(Error::Parameter(format!(
            "batch size must be in 1..={}, got {}",
            cfg.budget, cfg.batch
        )));
    }

    let already = view.removed_edges();
    let mut selected = EdgeSubset::empty();
    while selected.len() < cfg.budget {
        let masked = view.without(&selected)?;
        let scores = score(&masked, cfg.method, cfg.k)?;
        let take = cfg.batch.min(cfg.budget - selected.len());
        let picked = scores.top(take, &selected.union(&already));
        log::debug!(
            "{} batch: picked {} edges ({} of {})",
            cfg.method,
            picked.len(),
            selected.len() + picked.len(),
            cfg.budget
        );
        selected = EdgeSubset::new(selected.iter().chain(picked));
    }
    Ok(selected)
}
