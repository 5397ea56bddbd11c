//! k-bounded neighborhoods and the set of reachable pairs.
//!
//! A pair `(u, v)` is reachable when its shortest-path distance is at most
//! `k`. Everything here runs one breadth-first search per source, truncated at
//! depth `k`; sources are processed in parallel and merged in source order, so
//! results do not depend on the worker count.

use rayon::prelude::*;

use crate::error::{check_k, Error, Result};
use crate::graph::{EdgeSubset, GraphView};

/// Reusable scratch space for depth-bounded BFS.
pub(crate) struct BoundedBfs {
    dist: Vec<u32>,
    queue: Vec<usize>,
}

impl BoundedBfs {
    pub(crate) fn new(n: usize) -> Self {
        BoundedBfs {
            dist: vec![u32::MAX; n],
            queue: Vec::new(),
        }
    }

    /// Runs BFS from `source` to depth `k` and calls `visit(v, d)` for every
    /// other vertex reached at distance `d <= k`.
    pub(crate) fn run<F: FnMut(usize, u32)>(
        &mut self,
        view: &GraphView<'_>,
        source: usize,
        k: u32,
        mut visit: F,
    ) {
        self.queue.clear();
        self.queue.push(source);
        self.dist[source] = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let z = self.queue[head];
            head += 1;
            let dz = self.dist[z];
            if dz == k {
                continue;
            }
            for (w, _) in view.neighbors(z) {
                if self.dist[w] == u32::MAX {
                    self.dist[w] = dz + 1;
                    self.queue.push(w);
                    visit(w, dz + 1);
                }
            }
        }
        for &v in &self.queue {
            self.dist[v] = u32::MAX;
        }
    }
}

/// Per-source sweep: `per_source(bfs, u)` for every vertex, in parallel,
/// returned in source order.
fn sweep<T, F>(view: &GraphView<'_>, per_source: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut BoundedBfs, usize) -> T + Sync,
{
    let n = view.vertex_count();
    (0..n)
        .into_par_iter()
        .map_init(|| BoundedBfs::new(n), |bfs, u| per_source(bfs, u))
        .collect()
}

/// `N^k(v)` for every vertex: the number of other vertices within distance k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodProfile {
    pub k: u32,
    pub sizes: Vec<u64>,
}

impl NeighborhoodProfile {
    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// Average neighborhood size, the quantity being minimized.
    pub fn average(&self) -> f64 {
        if self.sizes.is_empty() {
            0.0
        } else {
            self.total() as f64 / self.sizes.len() as f64
        }
    }
}

pub fn neighborhood_sizes(view: &GraphView<'_>, k: u32) -> Result<NeighborhoodProfile> {
    check_k(k)?;
    let sizes = sweep(view, |bfs, u| {
        let mut count = 0u64;
        bfs.run(view, u, k, |_, _| count += 1);
        count
    });
    Ok(NeighborhoodProfile { k, sizes })
}

/// The unordered pairs at distance at most `k`, stored as sorted `(u, v)`
/// with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachablePairSet {
    k: u32,
    pairs: Vec<(u32, u32)>,
}

impl ReachablePairSet {
    /// Builds a set from arbitrary pairs; orientation and duplicates are
    /// normalized away.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(k: u32, pairs: I) -> Self {
        let mut pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v) as u32, u.max(v) as u32))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        ReachablePairSet { k, pairs }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn count(&self) -> u64 {
        self.pairs.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.pairs.binary_search(&key).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    /// The vertices `v > u` paired with `u`, ascending.
    pub fn partners_above(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let u = u as u32;
        let lo = self.pairs.partition_point(|&(a, _)| a < u);
        let hi = self.pairs.partition_point(|&(a, _)| a <= u);
        self.pairs[lo..hi].iter().map(|&(_, v)| v as usize)
    }

    /// Pairs of `self` that are absent from `other`.
    pub fn difference(&self, other: &ReachablePairSet) -> ReachablePairSet {
        ReachablePairSet {
            k: self.k,
            pairs: self
                .pairs
                .iter()
                .copied()
                .filter(|p| other.pairs.binary_search(p).is_err())
                .collect(),
        }
    }
}

pub fn reachable_pairs(view: &GraphView<'_>, k: u32) -> Result<ReachablePairSet> {
    check_k(k)?;
    let per_source = sweep(view, |bfs, u| {
        let mut out = Vec::new();
        bfs.run(view, u, k, |v, _| {
            if v > u {
                out.push((u as u32, v as u32));
            }
        });
        out.sort_unstable();
        out
    });
    Ok(ReachablePairSet {
        k,
        pairs: per_source.into_iter().flatten().collect(),
    })
}

/// Number of reachable pairs without materializing them.
pub fn reachable_pair_count(view: &GraphView<'_>, k: u32) -> Result<u64> {
    check_k(k)?;
    let per_source = sweep(view, |bfs, u| {
        let mut count = 0u64;
        bfs.run(view, u, k, |v, _| count += u64::from(v > u));
        count
    });
    Ok(per_source.into_iter().sum())
}

/// The pairs of `baseline` pushed beyond distance `k` by removing `s` from
/// `view`. A cut pair may still be connected by a longer path.
pub fn cut_pairs(
    view: &GraphView<'_>,
    k: u32,
    s: &EdgeSubset,
    baseline: &ReachablePairSet,
) -> Result<ReachablePairSet> {
    check_k(k)?;
    if baseline.k != k {
        return Err(Error::KMismatch {
            expected: baseline.k,
            got: k,
        });
    }
    let masked = view.without(s)?;
    let after = reachable_pairs(&masked, k)?;
    Ok(baseline.difference(&after))
}

/// `|R_G| - |R_{G \ s}|` restricted to the pairs in `baseline`.
pub fn pairs_cut(
    view: &GraphView<'_>,
    k: u32,
    s: &EdgeSubset,
    baseline: &ReachablePairSet,
) -> Result<u64> {
    check_k(k)?;
    if baseline.k != k {
        return Err(Error::KMismatch {
            expected: baseline.k,
            got: k,
        });
    }
    let masked = view.without(s)?;
    let still = sweep(&masked, |bfs, u| {
        let mut count = 0u64;
        bfs.run(&masked, u, k, |v, _| {
            count += u64::from(v > u && baseline.contains(u, v));
        });
        count
    });
    Ok(baseline.count() - still.into_iter().sum::<u64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::graph::Graph;

    #[test]
    fn path_neighborhoods() {
        let g = path(3);
        let prof = neighborhood_sizes(&g.view(), 2).unwrap();
        assert_eq!(prof.sizes, vec![2, 2, 2]);
    }

    #[test]
    fn star_neighborhoods() {
        let g = star(3);
        let prof = neighborhood_sizes(&g.view(), 2).unwrap();
        assert_eq!(prof.sizes, vec![3; 4]);
    }

    #[test]
    fn cycle_neighborhoods() {
        let g = cycle(10);
        let prof = neighborhood_sizes(&g.view(), 3).unwrap();
        assert_eq!(prof.sizes, vec![6; 10]);
        assert_eq!(
            prof.total(),
            2 * reachable_pairs(&g.view(), 3).unwrap().count()
        );
    }

    #[test]
    fn rejects_k_one() {
        let g = path(3);
        assert!(matches!(
            neighborhood_sizes(&g.view(), 1),
            Err(Error::Parameter(_))
        ));
        assert!(reachable_pairs(&g.view(), 0).is_err());
    }

    #[test]
    fn path_pairs() {
        let g = path(3);
        let r = reachable_pairs(&g.view(), 2).unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(r.count(), 3);
    }

    #[test]
    fn square_pairs_all_reachable() {
        let sq = Square::new();
        let r = reachable_pairs(&sq.graph.view(), 2).unwrap();
        assert_eq!(r.count(), 6);
        assert!(r.contains(sq.b, sq.d));
        assert!(r.contains(sq.c, sq.a));
    }

    #[test]
    fn disconnected_edges() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(reachable_pairs(&g.view(), 3).unwrap().count(), 2);
        assert_eq!(reachable_pair_count(&g.view(), 3).unwrap(), 2);
    }

    #[test]
    fn triangle_single_edge_cuts_nothing() {
        let g = cycle(3);
        let base = reachable_pairs(&g.view(), 2).unwrap();
        for e in 0..3 {
            let s = EdgeSubset::new([e]);
            assert_eq!(pairs_cut(&g.view(), 2, &s, &base).unwrap(), 0);
        }
    }

    #[test]
    fn star_spoke_cuts_three() {
        let g = star(3);
        let base = reachable_pairs(&g.view(), 2).unwrap();
        let s = EdgeSubset::new([0]);
        assert_eq!(pairs_cut(&g.view(), 2, &s, &base).unwrap(), 3);
        let cut = cut_pairs(&g.view(), 2, &s, &base).unwrap();
        assert_eq!(cut.iter().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn square_one_edge_cuts_its_pair() {
        let sq = Square::new();
        let base = reachable_pairs(&sq.graph.view(), 2).unwrap();
        let s = EdgeSubset::new([sq.e1]);
        assert_eq!(pairs_cut(&sq.graph.view(), 2, &s, &base).unwrap(), 1);
        let cut = cut_pairs(&sq.graph.view(), 2, &s, &base).unwrap();
        assert!(cut.contains(sq.a, sq.b));
    }

    #[test]
    fn empty_and_full_removal() {
        let g = cycle(7);
        let base = reachable_pairs(&g.view(), 2).unwrap();
        let none = pairs_cut(&g.view(), 2, &EdgeSubset::empty(), &base).unwrap();
        let all = pairs_cut(&g.view(), 2, &EdgeSubset::all(7), &base).unwrap();
        assert_eq!(none, 0);
        assert_eq!(all, base.count());
    }

    #[test]
    fn mismatched_k_is_an_error() {
        let g = cycle(5);
        let base = reachable_pairs(&g.view(), 2).unwrap();
        assert!(matches!(
            pairs_cut(&g.view(), 3, &EdgeSubset::empty(), &base),
            Err(Error::KMismatch {
                expected: 2,
                got: 3
            })
        ));
    }
}
