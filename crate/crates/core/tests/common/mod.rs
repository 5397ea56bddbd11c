#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::VecDeque;

use desmallworld::Graph;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random simple graph on `n` vertices with exactly `m` edges (capped at
/// the complete graph).
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Graph {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let m = m.min(all.len());
    let picked = sample(rng, all.len(), m);
    Graph::from_edges(n, picked.iter().map(|i| all[i])).unwrap()
}

/// A random graph with `n` drawn from `vertices` and between 1 and
/// `max_edges` edges.
pub fn random_sized(
    rng: &mut ChaCha8Rng,
    vertices: std::ops::RangeInclusive<usize>,
    max_edges: usize,
) -> Graph {
    let n = rng.random_range(vertices);
    let cap = (n * (n - 1) / 2).min(max_edges).max(1);
    let m = rng.random_range(1..=cap);
    random_graph(rng, n, m)
}

/// All-pairs hop distances by BFS over the full graph; `u32::MAX` when
/// disconnected.
pub fn distances(g: &Graph, removed: &[usize]) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut out = vec![vec![u32::MAX; n]; n];
    for s in 0..n {
        let d = &mut out[s];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(z) = q.pop_front() {
            for (w, e) in g.neighbors(z) {
                if d[w] == u32::MAX && !removed.contains(&e) {
                    d[w] = d[z] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    out
}

/// Unordered pairs at distance `1..=k`.
pub fn pairs_within(dist: &[Vec<u32>], k: u32) -> u64 {
    let n = dist.len();
    let mut total = 0;
    for u in 0..n {
        for v in u + 1..n {
            if dist[u][v] <= k {
                total += 1;
            }
        }
    }
    total
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
