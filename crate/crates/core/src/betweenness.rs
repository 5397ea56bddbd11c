//! Edge importance scores: global betweenness, local (k-truncated)
//! betweenness, and short betweenness.
//!
//! All three count each unordered vertex pair once. Global and local
//! betweenness use dependency accumulation over shortest-path DAGs; short
//! betweenness counts every simple path of length at most `k`, shortest or
//! not.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{check_k, Error, Result};
use crate::graph::{EdgeSubset, GraphView};
use crate::optimizer;
use crate::paths::{sweep_pairs, EdgeVariables};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoreMethod {
    /// Global edge betweenness.
    Bt,
    /// Betweenness over pairs within distance `k`.
    Lb,
    /// Short betweenness.
    Sb,
}

impl fmt::Display for ScoreMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreMethod::Bt => "BT",
            ScoreMethod::Lb => "LB",
            ScoreMethod::Sb => "SB",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeScores {
    pub method: ScoreMethod,
    pub scores: Vec<f64>,
}

impl EdgeScores {
    pub fn get(&self, e: usize) -> f64 {
        self.scores[e]
    }

    /// The `r` highest-scoring edges not in `exclude`, by descending score
    /// and then ascending edge id.
    pub fn top(&self, r: usize, exclude: &EdgeSubset) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.scores.len())
            .filter(|&e| !exclude.contains(e))
            .collect();
        order.sort_by(|&a, &b| {
            self.scores[b]
                .total_cmp(&self.scores[a])
                .then_with(|| a.cmp(&b))
        });
        order.truncate(r);
        order
    }

    /// Writes `edge_id,u,v,score` rows.
    pub fn write_csv<W: Write>(&self, view: &GraphView<'_>, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["edge_id", "u", "v", "score"])?;
        for (e, s) in self.scores.iter().enumerate() {
            let (u, v) = view.graph().endpoints(e);
            w.write_record([e.to_string(), u.to_string(), v.to_string(), s.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Scores by `method`; `k` is ignored for global betweenness.
pub fn score(view: &GraphView<'_>, method: ScoreMethod, k: u32) -> Result<EdgeScores> {
    match method {
        ScoreMethod::Bt => global_betweenness(view),
        ScoreMethod::Lb => local_betweenness(view, k),
        ScoreMethod::Sb => short_betweenness(view, k),
    }
}

pub fn global_betweenness(view: &GraphView<'_>) -> Result<EdgeScores> {
    if view.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(EdgeScores {
        method: ScoreMethod::Bt,
        scores: dependency_scores(view, u32::MAX),
    })
}

pub fn local_betweenness(view: &GraphView<'_>, k: u32) -> Result<EdgeScores> {
    check_k(k)?;
    Ok(EdgeScores {
        method: ScoreMethod::Lb,
        scores: dependency_scores(view, k),
    })
}

/// `SB(e) = sum over reachable pairs of |P(u,v,e)| / |P(u,v)|`.
pub fn short_betweenness(view: &GraphView<'_>, k: u32) -> Result<EdgeScores> {
    check_k(k)?;
    let sweep = sweep_pairs(view, k, None, None, |_| 0.0, Some(|count: f64| 1.0 / count));
    Ok(EdgeScores {
        method: ScoreMethod::Sb,
        scores: sweep.edge_total.unwrap_or_default(),
    })
}

const CHUNKS: usize = 64;

/// Edge dependency accumulation from every source over shortest paths of
/// length at most `depth`, halved so that each unordered pair counts once.
fn dependency_scores(view: &GraphView<'_>, depth: u32) -> Vec<f64> {
    let n = view.vertex_count();
    let m = view.edge_count();
    let chunk = n.div_ceil(CHUNKS).max(1);

    let partials: Vec<Vec<f64>> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![0.0; m];
            let mut dist = vec![u32::MAX; n];
            let mut sigma = vec![0.0f64; n];
            let mut delta = vec![0.0f64; n];
            let mut order: Vec<usize> = Vec::new();
            for s in c * chunk..((c + 1) * chunk).min(n) {
                order.clear();
                order.push(s);
                dist[s] = 0;
                sigma[s] = 1.0;
                let mut head = 0;
                while head < order.len() {
                    let z = order[head];
                    head += 1;
                    if dist[z] == depth {
                        continue;
                    }
                    for (w, _) in view.neighbors(z) {
                        if dist[w] == u32::MAX {
                            dist[w] = dist[z] + 1;
                            order.push(w);
                        }
                        if dist[w] == dist[z] + 1 {
                            sigma[w] += sigma[z];
                        }
                    }
                }
                for &w in order.iter().rev() {
                    let dw = dist[w];
                    if dw == 0 {
                        continue;
                    }
                    let share = (1.0 + delta[w]) / sigma[w];
                    for (v, e) in view.neighbors(w) {
                        if dist[v] != u32::MAX && dist[v] + 1 == dw {
                            let c = sigma[v] * share;
                            acc[e] += c;
                            delta[v] += c;
                        }
                    }
                }
                for &v in &order {
                    dist[v] = u32::MAX;
                    sigma[v] = 0.0;
                    delta[v] = 0.0;
                }
            }
            acc
        })
        .collect();

    let mut total = vec![0.0; m];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    for t in &mut total {
        *t /= 2.0;
    }
    total
}

/// Result of checking `g(x_e) >= -SB(e)` at `x = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundReport {
    pub gradients: Vec<f64>,
    pub short_betweenness: Vec<f64>,
    /// `max_e (-SB(e) - g(x_e))`; nonpositive when the bound holds.
    pub max_violation: f64,
    /// Edges whose violation exceeds `tolerance`.
    pub violations: Vec<usize>,
}

/// Evaluates the gradient at `x = 1` and compares it against the negated
/// short betweenness of every edge.
pub fn gradient_lower_bound_check(
    view: &GraphView<'_>,
    k: u32,
    lambda: f64,
    tolerance: f64,
) -> Result<LowerBoundReport> {
    let x = EdgeVariables::ones(view.edge_count());
    let gradients = optimizer::gradients(view, k, lambda, &x)?;
    let sb = short_betweenness(view, k)?.scores;
    let mut max_violation = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    for (e, (g, s)) in gradients.iter().zip(&sb).enumerate() {
        let gap = -s - g;
        max_violation = max_violation.max(gap);
        if gap > tolerance {
            violations.push(e);
        }
    }
    Ok(LowerBoundReport {
        gradients,
        short_betweenness: sb,
        max_violation,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::graph::Graph;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn global_small_graphs() {
        let p = global_betweenness(&path(3).view()).unwrap();
        assert!(close(&p.scores, &[2.0, 2.0]));
        let t = global_betweenness(&cycle(3).view()).unwrap();
        assert!(close(&t.scores, &[1.0; 3]));
        let sq = global_betweenness(&Square::new().graph.view()).unwrap();
        assert!(close(&sq.scores, &[2.0; 4]));
    }

    #[test]
    fn local_truncates_pairs() {
        let lb = local_betweenness(&path(4).view(), 2).unwrap();
        assert!(close(&lb.scores, &[2.0, 3.0, 2.0]));
        let sq = local_betweenness(&Square::new().graph.view(), 2).unwrap();
        assert!(close(&sq.scores, &[2.0; 4]));
    }

    #[test]
    fn local_equals_global_past_diameter() {
        let g = cycle(9);
        let bt = global_betweenness(&g.view()).unwrap();
        let lb = local_betweenness(&g.view(), 4).unwrap();
        assert!(close(&bt.scores, &lb.scores));
    }

    #[test]
    fn short_betweenness_small_graphs() {
        let sq = Square::new();
        let sb = short_betweenness(&sq.graph.view(), 2).unwrap();
        assert!((sb.get(sq.e1) - 2.0).abs() < 1e-12);
        let st = short_betweenness(&star(3).view(), 2).unwrap();
        assert!(close(&st.scores, &[3.0; 3]));
        let p = short_betweenness(&path(3).view(), 2).unwrap();
        assert!((p.get(0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn k_below_two_rejected() {
        let g = path(3);
        assert!(local_betweenness(&g.view(), 1).is_err());
        assert!(short_betweenness(&g.view(), 1).is_err());
    }

    #[test]
    fn masked_edges_score_zero() {
        let g = cycle(6);
        let view = g.remove_edges(&EdgeSubset::new([2])).unwrap();
        for method in [ScoreMethod::Bt, ScoreMethod::Lb, ScoreMethod::Sb] {
            let s = score(&view, method, 2).unwrap();
            assert_eq!(s.get(2), 0.0);
        }
    }

    #[test]
    fn top_breaks_ties_by_id() {
        let s = EdgeScores {
            method: ScoreMethod::Sb,
            scores: vec![1.0, 3.0, 3.0, 2.0],
        };
        assert_eq!(s.top(3, &EdgeSubset::empty()), vec![1, 2, 3]);
        assert_eq!(s.top(2, &EdgeSubset::new([1])), vec![2, 3]);
    }

    #[test]
    fn lower_bound_on_square_and_single_edge() {
        let sq = Square::new();
        let rep = gradient_lower_bound_check(&sq.graph.view(), 2, 1.0, 1e-9).unwrap();
        let expected = -((-1.0f64).exp() + 2.0 * (-2.0f64).exp());
        assert!((rep.gradients[sq.e1] - expected).abs() < 1e-12);
        assert!(rep.violations.is_empty());

        let one = Graph::from_edges(2, [(0, 1)]).unwrap();
        let rep = gradient_lower_bound_check(&one.view(), 2, 1.0, 1e-9).unwrap();
        assert!((rep.gradients[0] + (-1.0f64).exp()).abs() < 1e-12);
        assert!(rep.max_violation <= 0.0);
    }

    #[test]
    fn csv_dump() {
        let g = path(3);
        let s = global_betweenness(&g.view()).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&g.view(), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "edge_id,u,v,score\n0,0,1,2\n1,1,2,2\n"
        );
    }
}
