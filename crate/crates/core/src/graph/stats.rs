//! Descriptive statistics and degree/distance/weight distributions.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::traversal::{bfs_geodesics, components, UNREACHABLE};
use super::Graph;

/// Summary statistics of a graph.
///
/// `avg_distance` and `avg_geodesics` average over connected node pairs only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub avg_clustering: f64,
    pub avg_distance: f64,
    pub avg_geodesics: f64,
    pub pendant_nodes: usize,
    pub avg_weight: f64,
    pub lcc_fraction: f64,
    pub connected_pairs: u64,
    pub pair_averaging: &'static str,
}

/// Number of triangles through each node.
pub fn triangles(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut t = vec![0usize; n];
    let mut mark = vec![usize::MAX; n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            mark[v] = u;
        }
        let mut closed = 0;
        for &v in g.neighbors(u) {
            for &w in g.neighbors(v) {
                if w > v && mark[w] == u {
                    closed += 1;
                }
            }
        }
        t[u] = closed;
    }
    t
}

/// Local clustering `2 t_i / (k_i (k_i - 1))`, zero for `k_i < 2`.
pub fn clustering(g: &Graph) -> Vec<f64> {
    triangles(g)
        .into_iter()
        .enumerate()
        .map(|(i, t)| local_clustering(g.degree(i), t))
        .collect()
}

pub(crate) fn local_clustering(k: usize, t: usize) -> f64 {
    if k < 2 {
        0.0
    } else {
        2.0 * t as f64 / (k as f64 * (k as f64 - 1.0))
    }
}

struct PairSums {
    pairs: u64,
    dist: u64,
    sigma: f64,
}

fn pair_sums(g: &Graph) -> PairSums {
    // Per-source sums are collected in source order and folded sequentially,
    // so the floating-point result does not depend on the thread count.
    let per_source: Vec<(u64, u64, f64)> = (0..g.n())
        .into_par_iter()
        .map(|s| {
            let geo = bfs_geodesics(g, s);
            let (mut p, mut d, mut sg) = (0u64, 0u64, 0.0f64);
            for v in s + 1..g.n() {
                if geo.dist[v] != UNREACHABLE {
                    p += 1;
                    d += geo.dist[v] as u64;
                    sg += geo.sigma[v];
                }
            }
            (p, d, sg)
        })
        .collect();
    let mut out = PairSums { pairs: 0, dist: 0, sigma: 0.0 };
    for (p, d, s) in per_source {
        out.pairs += p;
        out.dist += d;
        out.sigma += s;
    }
    out
}

pub fn stats(g: &Graph) -> StatsReport {
    let n = g.n();
    let m = g.m();
    let avg_degree = if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 };
    let avg_clustering = if n == 0 { 0.0 } else { clustering(g).iter().sum::<f64>() / n as f64 };
    let sums = pair_sums(g);
    let (avg_distance, avg_geodesics) = if sums.pairs == 0 {
        (0.0, 1.0)
    } else {
        (sums.dist as f64 / sums.pairs as f64, sums.sigma / sums.pairs as f64)
    };
    let avg_weight = if m == 0 { 0.0 } else { g.weights().iter().sum::<f64>() / m as f64 };
    let lcc_fraction = if n == 0 {
        0.0
    } else {
        let c = components(g);
        c.sizes[c.largest()] as f64 / n as f64
    };
    StatsReport {
        n,
        m,
        avg_degree,
        avg_clustering,
        avg_distance,
        avg_geodesics,
        pendant_nodes: (0..n).filter(|&i| g.degree(i) == 1).count(),
        avg_weight,
        lcc_fraction,
        connected_pairs: sums.pairs,
        pair_averaging: "connected-pairs",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    Degree,
    Distance,
    Weight,
}

/// Probability mass over integer bins in increasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    pub kind: DistributionKind,
    pub bins: Vec<(u64, f64)>,
    /// Set when the distribution could not be computed (weights of an
    /// unweighted graph, or no observations).
    pub unavailable: bool,
}

impl Distribution {
    fn from_counts(kind: DistributionKind, counts: BTreeMap<u64, u64>) -> Self {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Distribution { kind, bins: Vec::new(), unavailable: true };
        }
        let bins = counts.into_iter().map(|(b, c)| (b, c as f64 / total as f64)).collect();
        Distribution { kind, bins, unavailable: false }
    }

    pub fn mass(&self, bin: u64) -> f64 {
        self.bins.iter().find(|b| b.0 == bin).map_or(0.0, |b| b.1)
    }

    pub fn total(&self) -> f64 {
        self.bins.iter().map(|b| b.1).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distributions {
    pub degree: Distribution,
    pub distance: Distribution,
    pub weight: Distribution,
}

/// Degree, distance (connected pairs) and weight distributions.
///
/// Weights are binned to the nearest integer.
pub fn distributions(g: &Graph) -> Distributions {
    let mut degree = BTreeMap::new();
    for i in 0..g.n() {
        *degree.entry(g.degree(i) as u64).or_insert(0) += 1;
    }
    let per_source: Vec<BTreeMap<u64, u64>> = (0..g.n())
        .into_par_iter()
        .map(|s| {
            let geo = bfs_geodesics(g, s);
            let mut h = BTreeMap::new();
            for v in s + 1..g.n() {
                if geo.dist[v] != UNREACHABLE {
                    *h.entry(geo.dist[v] as u64).or_insert(0) += 1;
                }
            }
            h
        })
        .collect();
    let mut distance = BTreeMap::new();
    for h in per_source {
        for (d, c) in h {
            *distance.entry(d).or_insert(0) += c;
        }
    }
    let weight = if g.is_weighted() {
        let mut w = BTreeMap::new();
        for &x in g.weights() {
            *w.entry(x.round().max(0.0) as u64).or_insert(0) += 1;
        }
        Distribution::from_counts(DistributionKind::Weight, w)
    } else {
        Distribution { kind: DistributionKind::Weight, bins: Vec::new(), unavailable: true }
    };
    Distributions {
        degree: Distribution::from_counts(DistributionKind::Degree, degree),
        distance: Distribution::from_counts(DistributionKind::Distance, distance),
        weight,
    }
}
