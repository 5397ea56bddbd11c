mod common;

use common::{random_graph, random_sized, rel_close};
use desmallworld::generate::{generate, GeneratorConfig};
use desmallworld::harness::{run, Method, RunParams};
use desmallworld::optimizer::{
    candidate_set, gradients, objective, optimize, Mode, OptimizerConfig, MONOTONE_TOLERANCE,
};
use desmallworld::oracle::{cut_value, exhaustive_optimum};
use desmallworld::paths::EdgeVariables;
use desmallworld::reachability::{cut_pairs, reachable_pairs};
use desmallworld::EdgeSubset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = 1e-5;
    for _ in 0..10 {
        let g = random_sized(&mut rng, 5..=14, 30);
        let view = g.view();
        let pairs = reachable_pairs(&view, 3).unwrap();
        let x: Vec<f64> = (0..g.edge_count())
            .map(|_| rng.random_range(0.05..0.95))
            .collect();
        let grad = gradients(&view, 3, 1.0, &EdgeVariables::new(x.clone()).unwrap()).unwrap();
        for e in 0..g.edge_count() {
            let at = |delta: f64| {
                let mut y = x.clone();
                y[e] += delta;
                objective(&view, 3, 1.0, &EdgeVariables::new(y).unwrap(), &pairs).unwrap()
            };
            let fd = (at(h) - at(-h)) / (2.0 * h);
            assert!(
                rel_close(grad[e], fd, 1e-6),
                "edge {e}: {} vs {fd}",
                grad[e]
            );
        }
    }
}

#[test]
fn optimizer_is_deterministic() {
    let g = generate(&GeneratorConfig::watts_strogatz(150).with_seed(9)).unwrap();
    for mode in [Mode::Omo, Mode::Omw] {
        let cfg = OptimizerConfig::new(3, 10, mode);
        let a = optimize(&g.view(), &cfg).unwrap();
        let b = optimize(&g.view(), &cfg).unwrap();
        assert_eq!(a.selected, b.selected);
        assert_eq!(a.x, b.x);
        assert_eq!(a.trace, b.trace);
        assert!(a.trace.is_monotone(MONOTONE_TOLERANCE));
        assert_eq!(a.selected.len(), 10);
    }
}

#[test]
fn candidate_pairs_cover_every_omw_cut() {
    for seed in 0..4 {
        let g = generate(&GeneratorConfig::kleinberg(10).with_seed(seed)).unwrap();
        let view = g.view();
        let cfg = OptimizerConfig::new(3, 8, Mode::Omw);
        let out = optimize(&view, &cfg).unwrap();
        let cand = out.candidates.expect("candidate set in OMW mode");
        assert_eq!(cand.edges.len(), 40);
        assert!(out.selected.iter().all(|e| cand.edges.contains(e)));
        let all = reachable_pairs(&view, 3).unwrap();
        let cut = cut_pairs(&view, 3, &out.selected, &all).unwrap();
        assert!(cut.iter().all(|(u, v)| cand.pairs.contains(u, v)));

        // Restricting to the support leaves every candidate pair's short
        // paths intact.
        let restricted = view.restricted_to(&cand.support).unwrap();
        let kept = reachable_pairs(&restricted, 3).unwrap();
        assert!(cand.pairs.iter().all(|(u, v)| kept.contains(u, v)));
    }
}

#[test]
fn omw_with_every_edge_as_candidate_matches_omo() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = random_graph(&mut rng, 15, 30);
    let view = g.view();
    let omo = optimize(&view, &OptimizerConfig::new(3, 3, Mode::Omo)).unwrap();
    let cand = candidate_set(&view, 3, 3, 10.0).unwrap();
    assert_eq!(cand.edges, EdgeSubset::all(30));
    let omw = optimize(
        &view,
        &OptimizerConfig {
            alpha: 10.0,
            ..OptimizerConfig::new(3, 3, Mode::Omw)
        },
    )
    .unwrap();
    assert_eq!(
        cut_value(&view, 3, &omo.selected).unwrap(),
        cut_value(&view, 3, &omw.selected).unwrap()
    );
}

#[test]
fn oracle_bounds_every_method() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..15 {
        let g = random_sized(&mut rng, 5..=9, 14);
        if g.edge_count() < 4 {
            continue;
        }
        let best = exhaustive_optimum(&g.view(), 2, 2).unwrap();
        let params = RunParams {
            alpha: 1.0,
            ..RunParams::new(2, 2)
        };
        for m in Method::ALL {
            let r = run(&g, m, &params).unwrap();
            assert!(r.pairs_cut <= best.best_cut, "{m} beat the oracle");
            if m == Method::Oracle {
                assert_eq!(r.pairs_cut, best.best_cut);
            }
        }
    }
}
