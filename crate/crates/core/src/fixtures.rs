//! Small named graphs used by tests, examples and the CLI smoke runs.

use crate::graph::Graph;

/// Path `0 - 1 - ... - (n-1)`; edge `i` joins `i` and `i+1`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Cycle on `n >= 3` vertices; edge `i` joins `i` and `(i+1) mod n`.
pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Star with center `0` and leaves `1..=leaves`; edge `i` is the spoke to
/// leaf `i + 1`.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
}

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by the bridge `2 - 3`
/// (edge id 3).
pub fn bridged_triangles() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap()
}

/// The four-cycle `b - a - d - c - b` with labelled vertices and edges
/// `e1 = (b,a)`, `e2 = (a,d)`, `e3 = (b,c)`, `e4 = (c,d)`.
pub struct Square {
    pub graph: Graph,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e1: usize,
    pub e2: usize,
    pub e3: usize,
    pub e4: usize,
}

impl Square {
    pub fn new() -> Self {
        let (a, b, c, d) = (0, 1, 2, 3);
        let graph = Graph::from_edges(4, [(b, a), (a, d), (b, c), (c, d)]).unwrap();
        Square {
            graph,
            a,
            b,
            c,
            d,
            e1: 0,
            e2: 1,
            e3: 2,
            e4: 3,
        }
    }
}

impl Default for Square {
    fn default() -> Self {
        Self::new()
    }
}
