//! Seeded small-world generators: Watts-Strogatz rewired rings and Kleinberg
//! grids with distance-biased long-range links.

use std::collections::HashSet;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Ring lattice with random rewiring; `n` is the vertex count.
    WattsStrogatz,
    /// `n x n` grid plus long-range links; `n` is the grid side.
    Kleinberg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub model: Model,
    pub n: usize,
    pub ws_base_degree: usize,
    pub ws_rewire_prob: f64,
    pub ks_long_range_exponent: f64,
    pub ks_long_range_edges_per_vertex: usize,
    pub rng_seed: u64,
}

impl GeneratorConfig {
    pub fn watts_strogatz(n: usize) -> Self {
        GeneratorConfig {
            model: Model::WattsStrogatz,
            n,
            ..Self::defaults()
        }
    }

    pub fn kleinberg(side: usize) -> Self {
        GeneratorConfig {
            model: Model::Kleinberg,
            n: side,
            ..Self::defaults()
        }
    }

    fn defaults() -> Self {
        GeneratorConfig {
            model: Model::WattsStrogatz,
            n: 0,
            ws_base_degree: 4,
            ws_rewire_prob: 0.1,
            ks_long_range_exponent: 2.0,
            ks_long_range_edges_per_vertex: 1,
            rng_seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        match self.model {
            Model::WattsStrogatz => {
                let k = self.ws_base_degree;
                if k == 0 || !k.is_multiple_of(2) {
                    return bad(format!("base degree must be even and positive, got {k}"));
                }
                if self.n <= k {
                    return bad(format!(
                        "ring of {} vertices is too small for base degree {k}",
                        self.n
                    ));
                }
                if !(0.0..=1.0).contains(&self.ws_rewire_prob) {
                    return bad(format!(
                        "rewire probability {} outside [0, 1]",
                        self.ws_rewire_prob
                    ));
                }
            }
            Model::Kleinberg => {
                if self.n < 2 {
                    return bad(format!("grid side must be at least 2, got {}", self.n));
                }
                if self.ks_long_range_exponent.is_nan() || self.ks_long_range_exponent < 0.0 {
                    return bad(format!(
                        "long-range exponent {} must be nonnegative",
                        self.ks_long_range_exponent
                    ));
                }
            }
        }
        Ok(())
    }
}

pub fn generate(config: &GeneratorConfig) -> Result<Graph> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    match config.model {
        Model::WattsStrogatz => watts_strogatz(config, &mut rng),
        Model::Kleinberg => kleinberg(config, &mut rng),
    }
}

fn watts_strogatz(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let n = config.n;
    let half = config.ws_base_degree / 2;
    let mut edges = Vec::with_capacity(n * half);
    let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(n * half);
    let mut degree = vec![0usize; n];
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    for j in 1..=half {
        for u in 0..n {
            let v = (u + j) % n;
            edges.push((u, v));
            present.insert(key(u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
    }

    // Rewire ring by ring so that short lattice links are considered first.
    for edge in edges.iter_mut() {
        if !rng.random_bool(config.ws_rewire_prob) {
            continue;
        }
        let (u, v) = *edge;
        if degree[u] >= n - 1 {
            continue;
        }
        let w = loop {
            let w = rng.random_range(0..n);
            if w != u && !present.contains(&key(u, w)) {
                break w;
            }
        };
        present.remove(&key(u, v));
        present.insert(key(u, w));
        degree[v] -= 1;
        degree[w] += 1;
        *edge = (u, w);
    }

    Graph::from_edges(n, edges)
}

fn kleinberg(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let side = config.n;
    let n = side * side;
    let at = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::with_capacity(2 * n + n * config.ks_long_range_edges_per_vertex);

    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }

    if config.ks_long_range_edges_per_vertex > 0 {
        let max_dist = 2 * (side - 1);
        let weight_at: Vec<f64> = (0..=max_dist)
            .map(|d| {
                if d == 0 {
                    0.0
                } else {
                    (d as f64).powf(-config.ks_long_range_exponent)
                }
            })
            .collect();
        let mut weights = vec![0.0; n];
        for u in 0..n {
            let (ur, uc) = (u / side, u % side);
            for (v, w) in weights.iter_mut().enumerate() {
                let d = (v / side).abs_diff(ur) + (v % side).abs_diff(uc);
                *w = weight_at[d];
            }
            let dist = WeightedIndex::new(&weights)
                .map_err(|e| Error::Parameter(format!("long-range weights: {e}")))?;
            for _ in 0..config.ks_long_range_edges_per_vertex {
                edges.push((u, dist.sample(rng)));
            }
        }
    }

    Graph::from_edges(n, edges)
}
