//! Enumeration of short simple paths and their path-algebra sums.
//!
//! For a source `u`, every simple path of at most `k` edges is visited by a
//! depth-first walk. Each edge carries a variable `x_e` in `[0, 1]`; a path
//! contributes the product of its variables to `P(u, v)`, and the product of
//! all *other* variables on it to `P(u, v, e)` for each of its edges `e`.
//! Products that exclude one edge are formed from prefix and suffix products,
//! so variables equal to zero need no special casing.
//!
//! Enumerating `|V|` sources costs `O(|V| d^k)` for average degree `d`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{check_k, Error, Result};
use crate::graph::GraphView;
use crate::reachability::ReachablePairSet;

/// Relaxed edge variables, one per edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeVariables {
    x: Vec<f64>,
}

impl EdgeVariables {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if let Some((e, v)) = x
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::Parameter(format!(
                "edge variable {e} = {v} outside [0, 1]"
            )));
        }
        Ok(EdgeVariables { x })
    }

    pub fn ones(edge_count: usize) -> Self {
        EdgeVariables {
            x: vec![1.0; edge_count],
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn get(&self, e: usize) -> f64 {
        self.x[e]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn sum(&self) -> f64 {
        self.x.iter().sum()
    }

    /// Sets `x_e`, clamping into `[0, 1]`.
    pub fn set_clamped(&mut self, e: usize, value: f64) {
        self.x[e] = value.clamp(0.0, 1.0);
    }
}

/// Path sums from one source: `p_sum[v] = P(u, v)` and
/// `pe_sum[(v, e)] = P(u, v, e)`. Only targets with at least one path of
/// length `<= k` appear.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PathAlgebraState {
    pub source: usize,
    pub p_sum: BTreeMap<usize, f64>,
    pub pe_sum: BTreeMap<(usize, usize), f64>,
}

impl PathAlgebraState {
    pub fn p(&self, v: usize) -> f64 {
        self.p_sum.get(&v).copied().unwrap_or(0.0)
    }

    pub fn pe(&self, v: usize, e: usize) -> f64 {
        self.pe_sum.get(&(v, e)).copied().unwrap_or(0.0)
    }
}

/// Computes `P(u, *)` and `P(u, *, *)` under the variables `x`.
///
/// Targets on both sides of `u` are reported; callers aggregating unordered
/// pairs must keep one orientation.
pub fn compute_puve(
    view: &GraphView<'_>,
    u: usize,
    k: u32,
    x: &EdgeVariables,
) -> Result<PathAlgebraState> {
    check_k(k)?;
    check_source(view, u)?;
    check_vars(view, x)?;
    let mut state = PathAlgebraState {
        source: u,
        ..Default::default()
    };
    let mut walker = PathWalker::new(view, k, Some(x.as_slice()));
    walker.walk(u, |step| {
        *state.p_sum.entry(step.target).or_default() += step.weight;
        step.for_each_excluding(|e, rest| {
            *state.pe_sum.entry((step.target, e)).or_default() += rest;
        });
    });
    Ok(state)
}

/// Path counts `|P(u, v)|` and `|P(u, v, e)|` for every unordered pair
/// `(u, v)`, `u < v`, joined by at least one simple path of length `<= k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathCounts {
    pub pairs: BTreeMap<(usize, usize), u64>,
    pub pair_edges: BTreeMap<(usize, usize, usize), u64>,
}

impl PathCounts {
    pub fn paths(&self, u: usize, v: usize) -> u64 {
        self.pairs.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn paths_through(&self, u: usize, v: usize, e: usize) -> u64 {
        self.pair_edges
            .get(&(u.min(v), u.max(v), e))
            .copied()
            .unwrap_or(0)
    }
}

/// The `x = 1` specialization of [`compute_puve`] over all sources, with
/// each unordered pair recorded once from its lower endpoint. Intended for
/// small graphs; large graphs should use the streaming scores in
/// [`crate::betweenness`].
pub fn path_counts(view: &GraphView<'_>, k: u32) -> Result<PathCounts> {
    check_k(k)?;
    let mut counts = PathCounts::default();
    let mut walker = PathWalker::new(view, k, None);
    for u in 0..view.vertex_count() {
        walker.walk(u, |step| {
            if step.target < u {
                return;
            }
            *counts.pairs.entry((u, step.target)).or_default() += 1;
            for &e in step.edges {
                *counts.pair_edges.entry((u, step.target, e)).or_default() += 1;
            }
        });
    }
    Ok(counts)
}

fn check_source(view: &GraphView<'_>, u: usize) -> Result<()> {
    if u >= view.vertex_count() {
        return Err(Error::InvalidVertex {
            id: u,
            vertex_count: view.vertex_count(),
        });
    }
    Ok(())
}

pub(crate) fn check_vars(view: &GraphView<'_>, x: &EdgeVariables) -> Result<()> {
    if x.len() != view.edge_count() {
        return Err(Error::Parameter(format!(
            "{} edge variables for a graph with {} edges",
            x.len(),
            view.edge_count()
        )));
    }
    Ok(())
}

/// One visited path: the walk reached `target` along `edges`.
pub(crate) struct PathStep<'s> {
    pub target: usize,
    /// Product of the variables along the path.
    pub weight: f64,
    pub edges: &'s [usize],
    /// `prefix[i]` is the product of the first `i` variables.
    prefix: &'s [f64],
    x: Option<&'s [f64]>,
}

impl PathStep<'_> {
    /// Calls `f(e, product of all variables on the path except x_e)` for
    /// every edge `e` on the path.
    #[inline]
    pub fn for_each_excluding<F: FnMut(usize, f64)>(&self, mut f: F) {
        match self.x {
            None => self.edges.iter().for_each(|&e| f(e, 1.0)),
            Some(x) => {
                let mut suffix = 1.0;
                for i in (0..self.edges.len()).rev() {
                    let e = self.edges[i];
                    f(e, self.prefix[i] * suffix);
                    suffix *= x[e];
                }
            }
        }
    }
}

/// Depth-first walker over simple paths of length `1..=k`.
pub(crate) struct PathWalker<'a, 'g> {
    view: &'a GraphView<'g>,
    k: usize,
    x: Option<&'a [f64]>,
    on_path: Vec<bool>,
    edges: Vec<usize>,
    prefix: Vec<f64>,
}

impl<'a, 'g> PathWalker<'a, 'g> {
    /// `x = None` means every variable is 1 and weights are path counts.
    pub(crate) fn new(view: &'a GraphView<'g>, k: u32, x: Option<&'a [f64]>) -> Self {
        PathWalker {
            view,
            k: k as usize,
            x,
            on_path: vec![false; view.vertex_count()],
            edges: Vec::with_capacity(k as usize),
            prefix: Vec::with_capacity(k as usize + 1),
        }
    }

    pub(crate) fn walk<F: FnMut(&PathStep<'_>)>(&mut self, source: usize, mut visit: F) {
        self.edges.clear();
        self.prefix.clear();
        self.prefix.push(1.0);
        self.on_path[source] = true;
        self.extend(source, &mut visit);
        self.on_path[source] = false;
    }

    fn extend<F: FnMut(&PathStep<'_>)>(&mut self, z: usize, visit: &mut F) {
        let view = self.view;
        for (v, e) in view.neighbors(z) {
            if self.on_path[v] {
                continue;
            }
            let xe = self.x.map_or(1.0, |x| x[e]);
            let weight = self.prefix[self.edges.len()] * xe;
            self.edges.push(e);
            self.prefix.push(weight);
            self.on_path[v] = true;

            visit(&PathStep {
                target: v,
                weight,
                edges: &self.edges,
                prefix: &self.prefix,
                x: self.x,
            });
            if self.edges.len() < self.k {
                self.extend(v, visit);
            }

            self.on_path[v] = false;
            self.prefix.pop();
            self.edges.pop();
        }
    }
}

/// Sources are split into this many fixed chunks; partial sums are reduced
/// in chunk order so results are identical for any thread count.
const SWEEP_CHUNKS: usize = 64;

/// Result of [`sweep_pairs`].
pub(crate) struct PairSweep {
    /// Sum of `pair_value(P(u, v))` over the covered pairs.
    pub pair_total: f64,
    /// Covered pairs that were reached by at least one path.
    pub reached: u64,
    /// Per-edge sum of `edge_coef(P(u, v)) * P(u, v, e)`, when requested.
    pub edge_total: Option<Vec<f64>>,
}

/// Streams over every unordered pair `(u, v)`, `u < v`, with a short path in
/// `view`, optionally restricted to `pairs`.
///
/// Each source is walked once to obtain `P(u, *)` and, when `edge_coef` is
/// given, a second time to spread `edge_coef(P(u, v)) * P(u, v, e)` over the
/// path edges. No per-pair-per-edge table is stored.
pub(crate) fn sweep_pairs<V, C>(
    view: &GraphView<'_>,
    k: u32,
    x: Option<&[f64]>,
    pairs: Option<&ReachablePairSet>,
    pair_value: V,
    edge_coef: Option<C>,
) -> PairSweep
where
    V: Fn(f64) -> f64 + Sync,
    C: Fn(f64) -> f64 + Sync,
{
    let n = view.vertex_count();
    let m = view.edge_count();
    let chunk = n.div_ceil(SWEEP_CHUNKS).max(1);

    let partials: Vec<PairSweep> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut walker = PathWalker::new(view, k, x);
            let mut p = vec![0.0f64; n];
            let mut hit = vec![false; n];
            let mut wanted = vec![pairs.is_none(); n];
            let mut touched: Vec<usize> = Vec::new();
            let mut out = PairSweep {
                pair_total: 0.0,
                reached: 0,
                edge_total: edge_coef.as_ref().map(|_| vec![0.0; m]),
            };

            for u in c * chunk..((c + 1) * chunk).min(n) {
                let restrict: Option<Vec<usize>> = pairs.map(|set| set.partners_above(u).collect());
                if let Some(targets) = &restrict {
                    if targets.is_empty() {
                        continue;
                    }
                    for &v in targets {
                        wanted[v] = true;
                    }
                }

                walker.walk(u, |step| {
                    let v = step.target;
                    if v > u && wanted[v] {
                        if !hit[v] {
                            hit[v] = true;
                            touched.push(v);
                        }
                        p[v] += step.weight;
                    }
                });
                touched.sort_unstable();
                for &v in &touched {
                    out.pair_total += pair_value(p[v]);
                }
                out.reached += touched.len() as u64;

                if let (Some(coef), Some(acc)) = (&edge_coef, out.edge_total.as_mut()) {
                    for &v in &touched {
                        p[v] = coef(p[v]);
                    }
                    walker.walk(u, |step| {
                        let v = step.target;
                        if v > u && hit[v] {
                            let c = p[v];
                            if c != 0.0 {
                                step.for_each_excluding(|e, rest| acc[e] += c * rest);
                            }
                        }
                    });
                }

                for &v in &touched {
                    p[v] = 0.0;
                    hit[v] = false;
                }
                touched.clear();
                if let Some(targets) = &restrict {
                    for &v in targets {
                        wanted[v] = false;
                    }
                }
            }
            out
        })
        .collect();

    let mut total = PairSweep {
        pair_total: 0.0,
        reached: 0,
        edge_total: edge_coef.as_ref().map(|_| vec![0.0; m]),
    };
    for part in partials {
        total.pair_total += part.pair_total;
        total.reached += part.reached;
        if let (Some(acc), Some(src)) = (total.edge_total.as_mut(), part.edge_total) {
            for (a, s) in acc.iter_mut().zip(src) {
                *a += s;
            }
        }
    }
    total
}
