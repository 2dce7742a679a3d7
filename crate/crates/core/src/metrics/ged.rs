use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge edit distance and its share of the larger edge count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ged {
    pub distance: usize,
    pub fraction: f64,
}

/// Edges of `g` expressed in the node indices of `reference`, sorted.
fn aligned_edges(reference: &Graph, g: &Graph) -> Result<Vec<(usize, usize)>> {
    if reference.n() != g.n() {
        return Err(Error::NodeSetMismatch(format!("{} vs {} nodes", reference.n(), g.n())));
    }
    if reference.labels() == g.labels() {
        return Ok(g.edges().to_vec());
    }
    let map: Vec<usize> = g
        .labels()
        .iter()
        .map(|l| reference.index_of(l).ok_or_else(|| Error::NodeSetMismatch(format!("label {l:?} missing"))))
        .collect::<Result<_>>()?;
    let mut edges: Vec<(usize, usize)> =
        g.edges().iter().map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v]))).collect();
    edges.sort_unstable();
    Ok(edges)
}

fn symmetric_difference(a: &[(usize, usize)], b: &[(usize, usize)]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}

fn make(distance: usize, m1: usize, m2: usize) -> Ged {
    let denom = m1.max(m2);
    Ged { distance, fraction: if denom == 0 { 0.0 } else { distance as f64 / denom as f64 } }
}

/// Number of edge insertions and deletions turning `g1` into `g2`, with
/// nodes matched by label.
pub fn ged(g1: &Graph, g2: &Graph) -> Result<Ged> {
    let b = aligned_edges(g1, g2)?;
    Ok(make(symmetric_difference(g1.edges(), &b), g1.m(), g2.m()))
}

/// Pairwise distances; entry `[i][j]` compares `graphs[i]` and `graphs[j]`.
pub fn ged_matrix(graphs: &[Graph]) -> Result<Vec<Vec<Ged>>> {
    let k = graphs.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let aligned: Vec<Vec<(usize, usize)>> = graphs.iter().map(|g| aligned_edges(&graphs[0], g)).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let dists: Vec<usize> = pairs.par_iter().map(|&(i, j)| symmetric_difference(&aligned[i], &aligned[j])).collect();
    let mut out = vec![vec![make(0, 0, 0); k]; k];
    for i in 0..k {
        out[i][i] = make(0, graphs[i].m(), graphs[i].m());
    }
    for (&(i, j), &d) in pairs.iter().zip(&dists) {
        out[i][j] = make(d, graphs[i].m(), graphs[j].m());
        out[j][i] = out[i][j];
    }
    Ok(out)
}
