use rand::Rng;

use crate::convexity::expansion::require_connected;
use crate::error::Result;
use crate::graph::Graph;
use crate::seed::{self, stream};

/// Uniform random spanning tree by Wilson's loop-erased random walks.
/// Labels and the weights of surviving edges are kept.
pub fn spanning_tree(g: &Graph, master_seed: u64) -> Result<Graph> {
    require_connected(g)?;
    let n = g.n();
    let mut rng = seed::task_rng(master_seed, stream::SKELETON, 0);
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n];
    in_tree[rng.gen_range(0..n)] = true;
    for start in 0..n {
        let mut u = start;
        while !in_tree[u] {
            let nb = g.neighbors(u);
            next[u] = nb[rng.gen_range(0..nb.len())];
            u = next[u];
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    let parent_edge: Vec<bool> = (0..g.m())
        .map(|e| {
            let (a, b) = g.edge(e);
            next[a] == b || next[b] == a
        })
        .collect();
    Ok(g.filter_edges(|e| parent_edge[e]))
}
