//! Undirected simple graphs with dense edge ids, SNAP edge-list I/O, and
//! edge-masked views.
//!
//! Every algorithm in the crate traverses a [`GraphView`]; a plain graph is
//! viewed through [`Graph::view`] and edge removal never copies the graph.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// An undirected simple graph.
///
/// Edges are stored canonically as `(min, max)` and carry a dense id in
/// `0..edge_count()`. Adjacency is kept in CSR form as `(neighbor, edge id)`
/// entries, symmetric by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    adjacency: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph on `vertex_count` vertices. Self-loops are dropped and
    /// duplicate edges (in either orientation) are merged; edge ids follow
    /// first appearance.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = HashMap::new();
        let mut canonical = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::InvalidVertex {
                        id: x,
                        vertex_count,
                    });
                }
            }
            if u == v {
                continue;
            }
            let key = (u.min(v) as u32, u.max(v) as u32);
            if seen.insert(key, canonical.len()).is_none() {
                canonical.push(key);
            }
        }
        Ok(Self::from_canonical(vertex_count, canonical))
    }

    fn from_canonical(vertex_count: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degree = vec![0usize; vertex_count];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..vertex_count].to_vec();
        let mut adjacency = vec![(0u32, 0u32); offsets[vertex_count]];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[fill[u as usize]] = (v, id as u32);
            fill[u as usize] += 1;
            adjacency[fill[v as usize]] = (u, id as u32);
            fill[v as usize] += 1;
        }
        Graph {
            vertex_count,
            edges,
            offsets,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `id` as `(min, max)`.
    pub fn endpoints(&self, id: usize) -> (usize, usize) {
        let (u, v) = self.edges[id];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// `(neighbor, edge id)` pairs incident to `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&(w, e)| (w as usize, e as usize))
    }

    /// Id of the edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u).find(|&(w, _)| w == v).map(|(_, e)| e)
    }

    pub fn view(&self) -> GraphView<'_> {
        GraphView {
            graph: self,
            removed: None,
        }
    }

    /// View of the graph with the edges of `s` masked out.
    pub fn remove_edges(&self, s: &EdgeSubset) -> Result<GraphView<'_>> {
        self.view().without(s)
    }

    /// Writes one `u v` line per edge, in edge-id order.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Counts gathered while reading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestStats {
    /// Data lines read, i.e. the raw arc count of a directed file.
    pub data_lines: usize,
    pub self_loops: usize,
    /// Lines naming an edge already present in either orientation.
    pub duplicates: usize,
}

/// How the input lines are interpreted. Both policies produce the same
/// undirected graph; the policy only decides how repeated pairs are
/// classified in the ingest log.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Directedness {
    /// Lines are arcs; `u v` and `v u` are symmetrized into one edge.
    #[default]
    Directed,
    /// Lines are already undirected edges; a reversed repeat is a duplicate.
    Undirected,
}

/// A graph read from an edge list, plus the original vertex labels.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[i]` is the id the input used for compacted vertex `i`.
    pub labels: Vec<u64>,
    pub stats: IngestStats,
}

/// Parses a SNAP-style edge list. Lines starting with `#` and blank lines are
/// skipped; vertex ids are compacted in order of first appearance.
pub fn load_edge_list<R: BufRead>(reader: R, policy: Directedness) -> Result<LoadedGraph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    let mut stats = IngestStats::default();
    let mut reciprocal = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let mut tokens = trimmed.split_whitespace();
        let mut next = |what: &str| -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("missing {what} vertex"),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let a = next("source")?;
        let b = next("target")?;
        stats.data_lines += 1;
        if a == b {
            stats.self_loops += 1;
            continue;
        }
        let mut intern = |label: u64| {
            *ids.entry(label).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            })
        };
        let u = intern(a);
        let v = intern(b);
        pairs.push((u, v));
    }

    let mut seen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(u, v) in &pairs {
        let key = (u.min(v), u.max(v));
        match seen.get(&key) {
            None => {
                seen.insert(key, (u, v));
            }
            Some(&first) => {
                stats.duplicates += 1;
                if first != (u, v) {
                    reciprocal += 1;
                }
            }
        }
    }
    if policy == Directedness::Directed && reciprocal > 0 {
        log::debug!("symmetrized {reciprocal} reciprocal arcs");
    }

    let graph = Graph::from_edges(labels.len(), pairs)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(LoadedGraph {
        graph,
        labels,
        stats,
    })
}

/// A set of edge ids. Iteration is in ascending id order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    ids: Vec<usize>,
}

impl EdgeSubset {
    pub fn new<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        EdgeSubset { ids }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Every edge of a graph with `edge_count` edges.
    pub fn all(edge_count: usize) -> Self {
        EdgeSubset {
            ids: (0..edge_count).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.ids
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset::new(self.iter().chain(other.iter()))
    }

    pub fn validate(&self, edge_count: usize) -> Result<()> {
        match self.ids.last() {
            Some(&id) if id >= edge_count => Err(Error::InvalidEdge { id, edge_count }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for EdgeSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        EdgeSubset::new(iter)
    }
}

/// A read-only view of a [`Graph`] with some edges masked out.
#[derive(Debug, Clone)]
pub struct GraphView<'g> {
    graph: &'g Graph,
    removed: Option<Vec<bool>>,
}

impl<'g> GraphView<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count
    }

    /// Size of the edge id space; masked edges keep their ids.
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn active_edge_count(&self) -> usize {
        match &self.removed {
            None => self.graph.edge_count(),
            Some(mask) => mask.iter().filter(|&&r| !r).count(),
        }
    }

    pub fn is_removed(&self, e: usize) -> bool {
        self.removed.as_ref().is_some_and(|m| m[e])
    }

    /// Ids of the edges still present.
    pub fn active_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_count()).filter(move |&e| !self.is_removed(e))
    }

    /// Unmasked `(neighbor, edge id)` pairs incident to `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let g = self.graph;
        let mask = self.removed.as_deref();
        g.adjacency[g.offsets[v]..g.offsets[v + 1]]
            .iter()
            .filter(move |&&(_, e)| mask.is_none_or(|m| !m[e as usize]))
            .map(|&(w, e)| (w as usize, e as usize))
    }

    /// A further-restricted view; `s` may overlap already-masked edges.
    pub fn without(&self, s: &EdgeSubset) -> Result<GraphView<'g>> {
        s.validate(self.edge_count())?;
        let mut mask = self
            .removed
            .clone()
            .unwrap_or_else(|| vec![false; self.edge_count()]);
        for e in s.iter() {
            mask[e] = true;
        }
        Ok(GraphView {
            graph: self.graph,
            removed: Some(mask),
        })
    }

    /// Keeps only the edges in `keep`.
    pub fn restricted_to(&self, keep: &EdgeSubset) -> Result<GraphView<'g>> {
        keep.validate(self.edge_count())?;
        let dropped: EdgeSubset = (0..self.edge_count())
            .filter(|&e| !keep.contains(e))
            .collect();
        self.without(&dropped)
    }

    /// The masked edges, as a subset.
    pub fn removed_edges(&self) -> EdgeSubset {
        (0..self.edge_count())
            .filter(|&e| self.is_removed(e))
            .collect()
    }
}
