//! Edge betweenness and edge salience, and the backbones built from them.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_geodesics, Graph, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreKind {
    Betweenness,
    Salience,
}

/// One score per edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeScores {
    pub kind: ScoreKind,
    pub scores: Vec<f64>,
    /// Raw pair-dependency sums for betweenness; root counts for salience.
    pub raw: Vec<f64>,
}

impl EdgeScores {
    /// TSV `u v score` with node labels.
    pub fn write_tsv<W: Write>(&self, g: &Graph, mut out: W) -> io::Result<()> {
        writeln!(out, "u\tv\tscore\traw")?;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            writeln!(out, "{}\t{}\t{}\t{}", g.label(u), g.label(v), self.scores[e], self.raw[e])?;
        }
        Ok(())
    }
}

const CHUNK: usize = 32;

/// Sums a per-source edge vector over all sources. Chunks are fixed and
/// reduced in order, so the result is independent of the thread count.
fn per_source_sum<F>(g: &Graph, f: F) -> Vec<f64>
where
    F: Fn(usize, &mut [f64]) + Sync,
{
    let partials: Vec<Vec<f64>> = (0..g.n())
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|sources| {
            let mut acc = vec![0.0; g.m()];
            for &s in sources {
                f(s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; g.m()];
    for p in partials {
        for (t, x) in total.iter_mut().zip(p) {
            *t += x;
        }
    }
    total
}

/// Fraction of geodesics between all node pairs that pass through each
/// edge, `Σ_{u<v} σ_uv(e)/σ_uv / C(n,2)`. Pairs in different components
/// contribute nothing.
pub fn edge_betweenness(g: &Graph) -> EdgeScores {
    let raw: Vec<f64> = per_source_sum(g, |s, acc| {
        let geo = bfs_geodesics(g, s);
        let mut delta = vec![0.0; g.n()];
        for &w in geo.order.iter().rev() {
            let dw = geo.dist[w];
            if dw == 0 {
                continue;
            }
            for (&v, &e) in g.neighbors(w).iter().zip(g.incident_edges(w)) {
                if geo.dist[v] != UNREACHABLE && geo.dist[v] + 1 == dw {
                    let c = geo.sigma[v] / geo.sigma[w] * (1.0 + delta[w]);
                    acc[e] += c;
                    delta[v] += c;
                }
            }
        }
    })
    .into_iter()
    .map(|x| x / 2.0)
    .collect();
    let pairs = (g.n() * g.n().saturating_sub(1) / 2).max(1) as f64;
    EdgeScores { kind: ScoreKind::Betweenness, scores: raw.iter().map(|x| x / pairs).collect(), raw }
}

/// Shortest-path structure per root used by salience.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SptMode {
    /// Union of all geodesics from the root.
    #[default]
    All,
    /// One tree: each node keeps its smallest-index geodesic parent.
    Single,
}

/// Fraction of roots whose shortest-path structure contains each edge.
pub fn edge_salience(g: &Graph, mode: SptMode) -> EdgeScores {
    let raw = per_source_sum(g, |r, acc| {
        let geo = bfs_geodesics(g, r);
        let d = &geo.dist;
        match mode {
            SptMode::All => {
                for (e, &(u, v)) in g.edges().iter().enumerate() {
                    if d[u] != UNREACHABLE && d[v] != UNREACHABLE && d[u].abs_diff(d[v]) == 1 {
                        acc[e] += 1.0;
                    }
                }
            }
            SptMode::Single => {
                for &w in &geo.order {
                    if d[w] == 0 {
                        continue;
                    }
                    let parent = g
                        .neighbors(w)
                        .iter()
                        .zip(g.incident_edges(w))
                        .find(|(&v, _)| d[v] != UNREACHABLE && d[v] + 1 == d[w]);
                    if let Some((_, &e)) = parent {
                        acc[e] += 1.0;
                    }
                }
            }
        }
    });
    let n = g.n().max(1) as f64;
    EdgeScores { kind: ScoreKind::Salience, scores: raw.iter().map(|x| x / n).collect(), raw }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackboneMode {
    High,
    Low,
}

/// Keeps the `target` highest or lowest scoring edges; ties go to the
/// lexicographically smaller edge.
pub fn select_edges(g: &Graph, scores: &EdgeScores, target: usize, mode: BackboneMode) -> Result<Graph> {
    if target == 0 || target > g.m() {
        return Err(Error::InvalidParameter(format!("target edge count {target} outside 1..={}", g.m())));
    }
    let key = |e: usize| (scores.scores[e] * 1e12).round() as i64;
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by(|&a, &b| {
        let by_score = match mode {
            BackboneMode::High => key(b).cmp(&key(a)),
            BackboneMode::Low => key(a).cmp(&key(b)),
        };
        by_score.then(a.cmp(&b))
    });
    let mut keep = vec![false; g.m()];
    for &e in &order[..target] {
        keep[e] = true;
    }
    Ok(g.filter_edges(|e| keep[e]))
}

pub fn betweenness_backbone(g: &Graph, target: usize, mode: BackboneMode) -> Result<Graph> {
    select_edges(g, &edge_betweenness(g), target, mode)
}

/// Keeps edges whose salience exceeds `threshold`.
pub fn salience_skeleton(g: &Graph, threshold: f64, mode: SptMode) -> Result<Graph> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidParameter(format!("salience threshold {threshold} outside (0, 1)")));
    }
    let s = edge_salience(g, mode);
    Ok(g.filter_edges(|e| s.scores[e] > threshold))
}
