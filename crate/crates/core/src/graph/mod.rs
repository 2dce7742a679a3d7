//! Simple undirected graphs over dense node indices.

mod io;
pub(crate) mod stats;
mod traversal;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

pub use io::{load_graph, parse_edgelist, parse_pajek, write_edgelist, Format, LoadReport};
pub use stats::{
    clustering, distributions, stats, triangles, Distribution, DistributionKind, Distributions,
    StatsReport,
};
pub use traversal::{
    bfs_distances, bfs_geodesics, bridges, components, is_connected, largest_component,
    Components, Geodesics, LargestComponent, UNREACHABLE,
};

/// Simple undirected graph with optional edge weights, node labels and node
/// groups.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically.
/// Neighbour lists are sorted and carry the id of the connecting edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    nbrs: Vec<Vec<usize>>,
    nbr_edges: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    weights: Vec<f64>,
    weighted: bool,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    groups: Option<Vec<u32>>,
}

/// Counts of input records discarded while simplifying a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Simplification {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Simplification {
    pub fn dropped(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

/// Accumulates nodes and edges, then emits a simple [`Graph`].
///
/// Self-edges are dropped; duplicate edges are merged with summed weights.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), f64>,
    weighted: bool,
    dropped: Simplification,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder pre-populated with `n` nodes labelled `0..n`.
    pub fn with_nodes(n: usize) -> Self {
        let mut b = Self::new();
        for i in 0..n {
            b.node(&i.to_string());
        }
        b
    }

    /// Index of `label`, inserting it if unseen.
    pub fn node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.label_index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.label_index.insert(label.to_string(), i);
        i
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Relabels node `i`. Fails if the label is already used by another node.
    pub fn set_label(&mut self, i: usize, label: &str) -> Result<()> {
        if i >= self.labels.len() {
            return Err(Error::NodeOutOfRange(i));
        }
        match self.label_index.get(label) {
            Some(&j) if j != i => {
                return Err(Error::InvalidParameter(format!("duplicate node label {label:?}")))
            }
            _ => {}
        }
        let old = std::mem::replace(&mut self.labels[i], label.to_string());
        self.label_index.remove(&old);
        self.label_index.insert(label.to_string(), i);
        Ok(())
    }

    pub fn mark_weighted(&mut self) {
        self.weighted = true;
    }

    pub fn edge(&mut self, u: usize, v: usize, w: f64) {
        if u == v {
            self.dropped.self_loops += 1;
            return;
        }
        let key = (u.min(v), u.max(v));
        match self.edges.get_mut(&key) {
            Some(acc) => {
                *acc += w;
                self.dropped.duplicates += 1;
            }
            None => {
                self.edges.insert(key, w);
            }
        }
    }

    pub fn build(self) -> (Graph, Simplification) {
        let n = self.labels.len();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut weights = Vec::with_capacity(self.edges.len());
        for (&(u, v), &w) in &self.edges {
            assert!(v < n, "edge endpoint {v} outside node range {n}");
            edges.push((u, v));
            weights.push(w);
        }
        let g = Graph::assemble(n, edges, weights, self.weighted, self.labels, self.label_index, None);
        (g, self.dropped)
    }
}

impl Graph {
    fn assemble(
        n: usize,
        edges: Vec<(usize, usize)>,
        weights: Vec<f64>,
        weighted: bool,
        labels: Vec<String>,
        label_index: HashMap<String, usize>,
        groups: Option<Vec<u32>>,
    ) -> Self {
        let mut nbrs = vec![Vec::new(); n];
        let mut nbr_edges = vec![Vec::new(); n];
        // Edges are sorted by (u, v), so pushing in order keeps every
        // neighbour list sorted.
        for (e, &(u, v)) in edges.iter().enumerate() {
            nbrs[u].push(v);
            nbr_edges[u].push(e);
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            nbrs[v].push(u);
            nbr_edges[v].push(e);
        }
        for i in 0..n {
            if !nbrs[i].windows(2).all(|w| w[0] < w[1]) {
                let mut pairs: Vec<_> = nbrs[i].iter().copied().zip(nbr_edges[i].iter().copied()).collect();
                pairs.sort_unstable();
                nbrs[i] = pairs.iter().map(|p| p.0).collect();
                nbr_edges[i] = pairs.iter().map(|p| p.1).collect();
            }
        }
        Graph { nbrs, nbr_edges, edges, weights, weighted, labels, label_index, groups }
    }

    /// Unweighted graph on nodes `0..n` labelled by index. Self-edges and
    /// duplicates are silently dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::with_nodes(n);
        for (u, v) in edges {
            b.edge(u, v, 1.0);
        }
        b.build().0
    }

    pub fn n(&self) -> usize {
        self.nbrs.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.nbrs[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.nbrs.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.nbrs[u]
    }

    /// Ids of the edges incident to `u`, aligned with [`Graph::neighbors`].
    pub fn incident_edges(&self, u: usize) -> &[usize] {
        &self.nbr_edges[u]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if self.nbrs[u].len() <= self.nbrs[v].len() { (u, v) } else { (v, u) };
        self.nbrs[a].binary_search(&b).ok().map(|k| self.nbr_edges[a][k])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.edge_id(u, v).is_some()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn groups(&self) -> Option<&[u32]> {
        self.groups.as_deref()
    }

    pub fn set_groups(&mut self, groups: Vec<u32>) -> Result<()> {
        if groups.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "group vector has length {} for {} nodes",
                groups.len(),
                self.n()
            )));
        }
        self.groups = Some(groups);
        Ok(())
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        sorted_intersection_count(&self.nbrs[u], &self.nbrs[v])
    }

    /// Same node set, keeping only edges for which `keep(edge_id)` holds.
    pub fn filter_edges<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(usize) -> bool,
    {
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (e, &uv) in self.edges.iter().enumerate() {
            if keep(e) {
                edges.push(uv);
                weights.push(self.weights[e]);
            }
        }
        Graph::assemble(
            self.n(),
            edges,
            weights,
            self.weighted,
            self.labels.clone(),
            self.label_index.clone(),
            self.groups.clone(),
        )
    }

    /// Same node set and attributes with the given edge list. Edge weights
    /// are carried over for edges already present and default to 1.
    pub fn with_edge_set<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v) in edges {
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            let w = self.edge_id(key.0, key.1).map_or(1.0, |e| self.weights[e]);
            set.insert(key, w);
        }
        let (edges, weights): (Vec<_>, Vec<_>) = set.into_iter().unzip();
        Graph::assemble(
            self.n(),
            edges,
            weights,
            self.weighted,
            self.labels.clone(),
            self.label_index.clone(),
            self.groups.clone(),
        )
    }

    /// Same node set and attributes with an explicit weighted edge list.
    /// Self-edges are dropped; duplicates keep the last weight.
    pub fn with_weighted_edges<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut set: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v, w) in edges {
            if u != v {
                set.insert((u.min(v), u.max(v)), w);
            }
        }
        let (edges, weights): (Vec<_>, Vec<_>) = set.into_iter().unzip();
        Graph::assemble(
            self.n(),
            edges,
            weights,
            self.weighted,
            self.labels.clone(),
            self.label_index.clone(),
            self.groups.clone(),
        )
    }

    /// Subgraph induced by `nodes`, renumbered in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n()];
        for (new, &old) in nodes.iter().enumerate() {
            map[old] = new;
        }
        let mut kept: Vec<((usize, usize), f64)> = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let (a, b) = (map[u], map[v]);
            if a != usize::MAX && b != usize::MAX {
                kept.push(((a.min(b), a.max(b)), self.weights[e]));
            }
        }
        kept.sort_by_key(|x| x.0);
        let (edges, weights): (Vec<_>, Vec<_>) = kept.into_iter().unzip();
        let labels: Vec<String> = nodes.iter().map(|&i| self.labels[i].clone()).collect();
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let groups = self.groups.as_ref().map(|g| nodes.iter().map(|&i| g[i]).collect());
        Graph::assemble(nodes.len(), edges, weights, self.weighted, labels, label_index, groups)
    }

    /// Verifies the simple-graph and adjacency/edge-list agreement invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        let n = self.n();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u >= v || v >= n {
                return bad(format!("edge {e} = ({u}, {v}) is not canonical"));
            }
            if e > 0 && self.edges[e - 1] >= (u, v) {
                return bad(format!("edge list not strictly sorted at {e}"));
            }
        }
        let mut seen = vec![0usize; self.m()];
        for u in 0..n {
            if !self.nbrs[u].windows(2).all(|w| w[0] < w[1]) {
                return bad(format!("neighbour list of {u} not strictly sorted"));
            }
            for (&v, &e) in self.nbrs[u].iter().zip(&self.nbr_edges[u]) {
                let (a, b) = self.edges[e];
                if (a, b) != (u.min(v), u.max(v)) {
                    return bad(format!("adjacency {u}-{v} points at edge {e} = ({a}, {b})"));
                }
                seen[e] += 1;
            }
        }
        if let Some(e) = seen.iter().position(|&c| c != 2) {
            return bad(format!("edge {e} appears {} times in adjacency", seen[e]));
        }
        Ok(())
    }
}

pub(crate) fn sorted_intersection_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn builder_simplifies() {
        let mut b = GraphBuilder::new();
        let a = b.node("a");
        let bb = b.node("b");
        b.edge(a, bb, 1.0);
        b.edge(bb, a, 2.0);
        b.edge(a, a, 1.0);
        let (g, dropped) = b.build();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(dropped, Simplification { self_loops: 1, duplicates: 1 });
        assert_eq!(g.weight(0), 3.0);
        g.check_invariants().unwrap();
    }

    #[test]
    fn degree_sum_is_twice_m() {
        for seed in 0..20 {
            let g = random(12, 0.3, seed);
            g.check_invariants().unwrap();
            assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
        }
    }

    #[test]
    fn edge_lookup_is_symmetric() {
        let g = complete(5);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_id(u, v), Some(e));
            assert_eq!(g.edge_id(v, u), Some(e));
        }
        assert!(!path(3).has_edge(0, 2));
    }

    #[test]
    fn induced_keeps_labels_and_weights() {
        let mut b = GraphBuilder::new();
        for l in ["x", "y", "z", "w"] {
            b.node(l);
        }
        b.mark_weighted();
        b.edge(0, 1, 2.0);
        b.edge(1, 2, 3.0);
        b.edge(2, 3, 4.0);
        let (g, _) = b.build();
        let h = g.induced(&[2, 1]);
        assert_eq!(h.labels(), &["z".to_string(), "y".to_string()]);
        assert_eq!(h.m(), 1);
        assert_eq!(h.weight(0), 3.0);
        assert_eq!(h.index_of("y"), Some(1));
        h.check_invariants().unwrap();
    }

    #[test]
    fn filter_edges_keeps_node_set() {
        let g = complete(4);
        let h = g.filter_edges(|e| e % 2 == 0);
        assert_eq!(h.n(), 4);
        assert_eq!(h.m(), 3);
        h.check_invariants().unwrap();
    }
}
