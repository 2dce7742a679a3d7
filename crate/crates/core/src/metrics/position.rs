use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convexity::{ccore_profile, CCoreOptions, DEFAULT_CORE_STEPS, DEFAULT_RUNS};
use crate::graph::{bfs_geodesics, clustering, Graph, UNREACHABLE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionOptions {
    pub damping: f64,
    /// L1 change at which the walk-score iteration stops.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Expansion runs for c-centrality.
    pub runs: usize,
    pub steps: usize,
}

impl Default for PositionOptions {
    fn default() -> Self {
        PositionOptions { damping: 0.85, tolerance: 1e-12, max_iterations: 10_000, runs: DEFAULT_RUNS, steps: DEFAULT_CORE_STEPS }
    }
}

/// Per-node position scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositionVectors {
    pub degree: Vec<f64>,
    pub pagerank: Vec<f64>,
    /// Mean reciprocal distance to the other nodes.
    pub closeness: Vec<f64>,
    /// Fraction of geodesics between other node pairs through the node.
    pub betweenness: Vec<f64>,
    /// Pair dependencies before normalisation.
    pub betweenness_raw: Vec<f64>,
    pub clustering: Vec<f64>,
    /// Absent when the c-profile is undefined for the graph.
    pub c: Option<Vec<f64>>,
}

impl PositionVectors {
    pub fn named(&self) -> Vec<(&'static str, &[f64])> {
        let mut v: Vec<(&'static str, &[f64])> = vec![
            ("k", &self.degree),
            ("PR", &self.pagerank),
            ("CC", &self.closeness),
            ("BC", &self.betweenness),
            ("C", &self.clustering),
        ];
        if let Some(c) = &self.c {
            v.push(("c", c));
        }
        v
    }

    /// TSV with one row per node.
    pub fn write_tsv<W: Write>(&self, g: &Graph, mut out: W) -> io::Result<()> {
        let cols = self.named();
        let header: Vec<&str> = cols.iter().map(|c| c.0).collect();
        writeln!(out, "node\t{}", header.join("\t"))?;
        for i in 0..g.n() {
            let row: Vec<String> = cols.iter().map(|c| c.1[i].to_string()).collect();
            writeln!(out, "{}\t{}", g.label(i), row.join("\t"))?;
        }
        Ok(())
    }
}

fn pagerank(g: &Graph, opts: &PositionOptions) -> Vec<f64> {
    let n = g.n();
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    for _ in 0..opts.max_iterations {
        let dangling: f64 = (0..n).filter(|&i| g.degree(i) == 0).map(|i| rank[i]).sum();
        let base = (1.0 - opts.damping) * uniform + opts.damping * dangling * uniform;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = g.neighbors(v).iter().map(|&u| rank[u] / g.degree(u) as f64).sum();
            *slot = base + opts.damping * inflow;
        }
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change < opts.tolerance {
            break;
        }
    }
    rank
}

struct SourceTerms {
    harmonic: f64,
    dependency: Vec<f64>,
}

fn source_terms(g: &Graph, s: usize) -> SourceTerms {
    let geo = bfs_geodesics(g, s);
    let mut delta = vec![0.0; g.n()];
    for &w in geo.order.iter().rev() {
        for &v in g.neighbors(w) {
            if geo.dist[v] != UNREACHABLE && geo.dist[v] + 1 == geo.dist[w] {
                delta[v] += geo.sigma[v] / geo.sigma[w] * (1.0 + delta[w]);
            }
        }
    }
    delta[s] = 0.0;
    let harmonic = geo.order.iter().filter(|&&v| v != s).map(|&v| 1.0 / geo.dist[v] as f64).sum();
    SourceTerms { harmonic, dependency: delta }
}

/// Degree, walk score, closeness, betweenness, clustering and, when the
/// c-profile is defined (connected graph, `steps < n`), c-centrality.
pub fn position_vectors(g: &Graph, opts: &PositionOptions, master_seed: u64) -> PositionVectors {
    let n = g.n();
    let terms: Vec<SourceTerms> = (0..n).into_par_iter().map(|s| source_terms(g, s)).collect();
    let mut raw = vec![0.0; n];
    for t in &terms {
        for (r, d) in raw.iter_mut().zip(&t.dependency) {
            *r += d;
        }
    }
    raw.iter_mut().for_each(|r| *r /= 2.0);
    let others = n.saturating_sub(1);
    let pairs = (others * others.saturating_sub(1) / 2) as f64;
    let betweenness = raw.iter().map(|&r| if pairs > 0.0 { r / pairs } else { 0.0 }).collect();
    let closeness = terms.iter().map(|t| if others > 0 { t.harmonic / others as f64 } else { 0.0 }).collect();
    let copts = CCoreOptions { runs: opts.runs, steps: opts.steps, majority: 0.5 };
    PositionVectors {
        degree: g.degrees().into_iter().map(|k| k as f64).collect(),
        pagerank: pagerank(g, opts),
        closeness,
        betweenness,
        betweenness_raw: raw,
        clustering: clustering(g),
        c: ccore_profile(g, &copts, master_seed).ok().map(|p| p.centrality),
    }
}

/// Pearson correlation; `None` when either vector is constant or the
/// lengths differ or are below 2.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

pub fn correlation_matrix(vectors: &[(&str, &[f64])]) -> Vec<Vec<Option<f64>>> {
    vectors.iter().map(|(_, a)| vectors.iter().map(|(_, b)| pearson(a, b)).collect()).collect()
}
