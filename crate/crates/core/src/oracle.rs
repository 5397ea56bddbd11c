//! Brute-force ground truth for small instances.
//!
//! Nothing here shares code paths with the optimized modules beyond the graph
//! type itself: paths are enumerated by plain recursion over vertex ids and
//! distances by a fresh BFS per evaluation.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_k, Error, Result};
use crate::graph::{EdgeSubset, Graph, GraphView};

/// Upper bound on the number of subsets [`exhaustive_optimum`] will visit.
pub const SUBSET_LIMIT: u128 = 10_000_000;
/// Largest graph accepted by [`naive_paths`].
pub const NAIVE_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub best_subset: EdgeSubset,
    pub best_cut: u64,
    pub evaluated: u64,
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Pairs at distance `<= k` in `view`, counted with a plain BFS per source.
fn count_pairs_plain(view: &GraphView<'_>, k: u32) -> u64 {
    let n = view.vertex_count();
    let mut dist = vec![u32::MAX; n];
    let mut total = 0;
    for s in 0..n {
        dist.fill(u32::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(z) = queue.pop_front() {
            if dist[z] == k {
                continue;
            }
            for (w, _) in view.neighbors(z) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[z] + 1;
                    queue.push_back(w);
                    if w > s {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}

/// `f(s)`: reachable pairs of `view` cut by also removing `s`.
pub fn cut_value(view: &GraphView<'_>, k: u32, s: &EdgeSubset) -> Result<u64> {
    check_k(k)?;
    let before = count_pairs_plain(view, k);
    let after = count_pairs_plain(&view.without(s)?, k);
    Ok(before - after)
}

/// The best `budget`-edge removal, by enumerating every subset in
/// lexicographic order of edge ids. Ties keep the first maximizer.
pub fn exhaustive_optimum(view: &GraphView<'_>, k: u32, budget: usize) -> Result<OracleResult> {
    check_k(k)?;
    let edges: Vec<usize> = view.active_edges().collect();
    if budget == 0 || budget > edges.len() {
        return Err(Error::Budget(format!(
            "budget must be in 1..={}, got {budget}",
            edges.len()
        )));
    }
    let total = binomial(edges.len(), budget);
    if total > SUBSET_LIMIT {
        return Err(Error::TooLarge(format!(
            "C({}, {budget}) = {total} subsets exceeds the limit of {SUBSET_LIMIT}",
            edges.len()
        )));
    }

    let before = count_pairs_plain(view, k);
    let mut idx: Vec<usize> = (0..budget).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut evaluated = 0u64;
    loop {
        let subset: EdgeSubset = idx.iter().map(|&i| edges[i]).collect();
        let cut = before - count_pairs_plain(&view.without(&subset)?, k);
        evaluated += 1;
        if best.as_ref().is_none_or(|(b, _)| cut > *b) {
            best = Some((cut, idx.clone()));
        }

        // Advance to the next combination in lexicographic order.
        let Some(pos) = (0..budget)
            .rev()
            .find(|&i| idx[i] < edges.len() - budget + i)
        else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..budget {
            idx[j] = idx[j - 1] + 1;
        }
    }

    let (best_cut, best_idx) = best.expect("at least one subset");
    Ok(OracleResult {
        best_subset: best_idx.into_iter().map(|i| edges[i]).collect(),
        best_cut,
        evaluated,
    })
}

/// Every simple path from `u` to `v` with at most `k` edges, as vertex
/// sequences.
pub fn naive_paths(g: &Graph, u: usize, v: usize, k: u32) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n > NAIVE_VERTEX_LIMIT {
        return Err(Error::TooLarge(format!(
            "naive enumeration is limited to {NAIVE_VERTEX_LIMIT} vertices, graph has {n}"
        )));
    }
    for x in [u, v] {
        if x >= n {
            return Err(Error::InvalidVertex {
                id: x,
                vertex_count: n,
            });
        }
    }

    fn grow(g: &Graph, path: &mut Vec<usize>, v: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == v && path.len() > 1 {
            out.push(path.clone());
            return;
        }
        if path.len() > k {
            return;
        }
        for w in 0..g.vertex_count() {
            if !path.contains(&w) && g.find_edge(last, w).is_some() {
                path.push(w);
                grow(g, path, v, k, out);
                path.pop();
            }
        }
    }

    let mut out = Vec::new();
    if u != v {
        grow(g, &mut vec![u], v, k as usize, &mut out);
    }
    Ok(out)
}

/// Path-algebra sums recomputed directly from a list of vertex paths:
/// `(P(u, v), {e: P(u, v, e)})`.
pub fn naive_path_sums(g: &Graph, paths: &[Vec<usize>], x: &[f64]) -> (f64, BTreeMap<usize, f64>) {
    let mut p = 0.0;
    let mut pe = BTreeMap::new();
    for path in paths {
        let edges: Vec<usize> = path
            .windows(2)
            .map(|w| g.find_edge(w[0], w[1]).expect("path follows edges"))
            .collect();
        p += edges.iter().map(|&e| x[e]).product::<f64>();
        for (i, &e) in edges.iter().enumerate() {
            let rest: f64 = edges
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &f)| x[f])
                .product();
            *pe.entry(e).or_insert(0.0) += rest;
        }
    }
    (p, pe)
}

/// Edge sets `a`, `b` on `graph` breaking one direction of modularity of the
/// cut function `f` at `k = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub graph: Graph,
    pub a: EdgeSubset,
    pub b: EdgeSubset,
    pub f_a: u64,
    pub f_b: u64,
    pub f_union: u64,
    pub f_intersection: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModularityWitnesses {
    /// `f(A ∪ B) + f(A ∩ B) > f(A) + f(B)`.
    pub submodularity: Option<Witness>,
    /// `f(A) + f(B) > f(A ∪ B) + f(A ∩ B)`.
    pub supermodularity: Option<Witness>,
    pub trials: usize,
}

const WITNESS_K: u32 = 2;

/// Samples random graphs on 3 to 6 vertices and random edge sets until a
/// violation of each inequality is found or `trials` run out.
pub fn modularity_witness_search(trials: usize, rng_seed: u64) -> Result<ModularityWitnesses> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut found = ModularityWitnesses::default();
    for t in 0..trials {
        found.trials = t + 1;
        let n = rng.random_range(3..=6);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        if edges.len() < 2 {
            continue;
        }
        let g = Graph::from_edges(n, edges)?;
        let m = g.edge_count();
        let pick = |rng: &mut ChaCha8Rng| -> EdgeSubset {
            (0..m).filter(|_| rng.random_bool(0.3)).collect()
        };
        let base = pick(&mut rng);
        let e1 = rng.random_range(0..m);
        let e2 = rng.random_range(0..m);
        let a = base.union(&EdgeSubset::new([e1]));
        let b = base.union(&EdgeSubset::new([e2]));
        let inter: EdgeSubset = a.iter().filter(|&e| b.contains(e)).collect();
        let union = a.union(&b);

        let view = g.view();
        let w = Witness {
            f_a: cut_value(&view, WITNESS_K, &a)?,
            f_b: cut_value(&view, WITNESS_K, &b)?,
            f_union: cut_value(&view, WITNESS_K, &union)?,
            f_intersection: cut_value(&view, WITNESS_K, &inter)?,
            graph: g.clone(),
            a,
            b,
        };
        let lhs = w.f_a + w.f_b;
        let rhs = w.f_union + w.f_intersection;
        if rhs > lhs && found.submodularity.is_none() {
            found.submodularity = Some(w);
        } else if lhs > rhs && found.supermodularity.is_none() {
            found.supermodularity = Some(w);
        }
        if found.submodularity.is_some() && found.supermodularity.is_some() {
            break;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn star_optimum() {
        let g = star(3);
        let r = exhaustive_optimum(&g.view(), 2, 1).unwrap();
        assert_eq!(r.best_cut, 3);
        assert_eq!(r.best_subset.as_slice(), &[0]);
        assert_eq!(r.evaluated, 3);
    }

    #[test]
    fn triangle_optimum_is_zero() {
        let r = exhaustive_optimum(&cycle(3).view(), 2, 1).unwrap();
        assert_eq!(r.best_cut, 0);
        assert_eq!(r.best_subset.as_slice(), &[0]);
    }

    #[test]
    fn square_two_edges() {
        let sq = Square::new();
        let view = sq.graph.view();
        let r = exhaustive_optimum(&view, 2, 2).unwrap();
        assert_eq!(r.evaluated, 6);
        // Removing e1 and e3 isolates b: (a,b), (b,c), (b,d) are cut and
        // (a,c) keeps its path through d.
        let s = EdgeSubset::new([sq.e1, sq.e3]);
        assert_eq!(cut_value(&view, 2, &s).unwrap(), 3);
        assert_eq!(r.best_cut, 4);
        assert_eq!(r.best_subset, EdgeSubset::new([sq.e1, sq.e4]));
    }

    #[test]
    fn bridge_optimum() {
        let g = bridged_triangles();
        let r = exhaustive_optimum(&g.view(), 2, 1).unwrap();
        assert_eq!(r.best_subset.as_slice(), &[3]);
        assert_eq!(r.evaluated, 7);
    }

    #[test]
    fn guard_refuses_large_instances() {
        let g = cycle(60);
        assert!(matches!(
            exhaustive_optimum(&g.view(), 2, 6),
            Err(Error::TooLarge(_))
        ));
        assert_eq!(binomial(60, 6), 50_063_860);
    }

    #[test]
    fn naive_path_examples() {
        let sq = Square::new();
        assert_eq!(naive_paths(&sq.graph, sq.b, sq.d, 2).unwrap().len(), 2);
        assert!(naive_paths(&path(3), 0, 2, 1).unwrap().is_empty());
        assert_eq!(naive_paths(&cycle(3), 0, 1, 2).unwrap().len(), 2);
        assert!(naive_paths(&cycle(13), 0, 1, 2).is_err());
    }

    #[test]
    fn naive_sums_square() {
        let sq = Square::new();
        let x = [0.3, 0.7, 0.2, 0.9];
        let paths = naive_paths(&sq.graph, sq.b, sq.d, 2).unwrap();
        let (p, pe) = naive_path_sums(&sq.graph, &paths, &x);
        assert!((p - (0.7 * 0.3 + 0.2 * 0.9)).abs() < 1e-15);
        assert!((pe[&sq.e1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn modularity_patterns_on_fixed_graphs() {
        // Path 0-1-2: f(e1) + f(e2) = 4 > f(e1, e2) + f(∅) = 3.
        let p = path(3);
        let v = p.view();
        let f = |s: &[usize]| cut_value(&v, 2, &EdgeSubset::new(s.iter().copied())).unwrap();
        assert_eq!(f(&[0]) + f(&[1]), 4);
        assert_eq!(f(&[0, 1]) + f(&[]), 3);

        // Square: two edges at b cut more together than apart.
        let sq = Square::new();
        let v = sq.graph.view();
        let f = |s: &[usize]| cut_value(&v, 2, &EdgeSubset::new(s.iter().copied())).unwrap();
        assert_eq!(f(&[sq.e1]) + f(&[sq.e3]), 2);
        assert_eq!(f(&[sq.e1, sq.e3]), 3);
    }

    #[test]
    fn witness_search_is_deterministic() {
        let a = modularity_witness_search(2_000, 11).unwrap();
        let b = modularity_witness_search(2_000, 11).unwrap();
        assert_eq!(a, b);
        let sub = a.submodularity.expect("submodularity witness");
        assert!(sub.f_union + sub.f_intersection > sub.f_a + sub.f_b);
        let sup = a.supermodularity.expect("supermodularity witness");
        assert!(sup.f_a + sup.f_b > sup.f_union + sup.f_intersection);
    }
}
