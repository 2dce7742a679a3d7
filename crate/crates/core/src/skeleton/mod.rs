//! Convex skeletons: sparse subgraphs with high corrected convexity, found
//! by targeted edge removal, plus uniform spanning trees as the extreme case.

mod ccentrality;
mod clustering;
mod dynamic;
mod spanning;

use std::io::{self, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::convexity::measure_corrected;
use crate::error::Result;
use crate::graph::{largest_component, Graph};
use crate::seed::{self, stream};

pub use ccentrality::{skeleton_ccentrality, CCentralityOptions};
pub use clustering::{skeleton_clustering, SkeletonOptions, StopPolicy};
pub use spanning::spanning_tree;

use dynamic::DynGraph;

/// Ordering among edges whose scores coincide.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Fresh seeded random order in every batch.
    #[default]
    Random,
    /// By `(min endpoint, max endpoint)`.
    Lexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// No non-bridge edge had a positive clustering gain.
    NoPositiveScore,
    /// Every remaining candidate edge was a bridge.
    OnlyBridges,
    TargetReached,
    MaxRemoved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Removal {
    pub step: usize,
    pub batch: usize,
    pub u: usize,
    pub v: usize,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checkpoint {
    /// Number of edges removed so far.
    pub removed: usize,
    pub frac_removed: f64,
    /// `None` when checkpoint runs are disabled.
    pub xs: Option<f64>,
    pub x: Option<f64>,
    pub s: f64,
    pub avg_clustering: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonResult {
    #[serde(skip)]
    pub graph: Graph,
    /// Removals leading to `graph`, in order.
    pub removals: Vec<Removal>,
    /// Full trajectory, including checkpoints past the chosen one.
    pub checkpoints: Vec<Checkpoint>,
    /// Index into `checkpoints` of the returned skeleton.
    pub chosen: usize,
    pub stop: StopReason,
    pub original_edges: usize,
}

impl SkeletonResult {
    pub fn chosen_checkpoint(&self) -> &Checkpoint {
        &self.checkpoints[self.chosen]
    }

    pub fn retention(&self) -> f64 {
        self.graph.m() as f64 / self.original_edges as f64
    }

    /// TSV `step batch u v score`, endpoints written as labels.
    pub fn write_removals<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "step\tbatch\tu\tv\tscore")?;
        for r in &self.removals {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                r.step,
                r.batch,
                self.graph.label(r.u),
                self.graph.label(r.v),
                r.score
            )?;
        }
        Ok(())
    }

    /// TSV `frac_removed Xs X s avgC`; missing estimates are written as `NA`.
    pub fn write_checkpoints<W: Write>(&self, mut out: W) -> io::Result<()> {
        let opt = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), |v| v.to_string());
        writeln!(out, "frac_removed\tXs\tX\ts\tavgC")?;
        for c in &self.checkpoints {
            writeln!(out, "{}\t{}\t{}\t{}\t{}", c.frac_removed, opt(c.xs), opt(c.x), c.s, c.avg_clustering)?;
        }
        Ok(())
    }
}

/// Scores are compared on a 1e-12 grid so that mathematically equal values
/// tie exactly and fall through to the tie-break.
fn quantize(score: f64) -> i64 {
    (score * 1e12).round() as i64
}

/// Candidate edges sorted by decreasing score, then by tie key.
fn ranked<I>(scored: I, tie: TieBreak, master: u64, round: usize) -> Vec<(usize, f64)>
where
    I: IntoIterator<Item = (usize, f64)>,
{
    let mut rng = seed::task_rng(master, stream::TIEBREAK, round as u64);
    let mut keyed: Vec<(i64, u64, usize, f64)> = scored
        .into_iter()
        .map(|(e, s)| {
            let t = match tie {
                TieBreak::Random => rng.gen(),
                TieBreak::Lexicographic => 0,
            };
            (quantize(s), t, e, s)
        })
        .collect();
    keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    keyed.into_iter().map(|(_, _, e, s)| (e, s)).collect()
}

fn checkpoint(dg: &DynGraph, original: usize, runs: usize, master: u64, index: usize) -> Result<Checkpoint> {
    let removed = original - dg.m();
    let snap = dg.snapshot();
    let (xs, x, s) = if runs > 0 {
        let r = measure_corrected(&snap, runs, seed::derive(master, stream::CHECKPOINT, index as u64))?;
        (Some(r.xs), Some(r.x), r.s)
    } else {
        (None, None, largest_component(&snap).fraction)
    };
    Ok(Checkpoint {
        removed,
        frac_removed: removed as f64 / original as f64,
        xs,
        x,
        s,
        avg_clustering: dg.avg_clustering(),
    })
}

/// First checkpoint with the largest Xs.
fn peak(checkpoints: &[Checkpoint]) -> usize {
    let mut best = 0;
    for (i, c) in checkpoints.iter().enumerate() {
        if c.xs.unwrap_or(f64::NEG_INFINITY) > checkpoints[best].xs.unwrap_or(f64::NEG_INFINITY) {
            best = i;
        }
    }
    best
}

/// Keeps the first `keep` removals and rebuilds the surviving graph.
fn finish(g: &Graph, mut removals: Vec<Removal>, checkpoints: Vec<Checkpoint>, chosen: usize, stop: StopReason) -> SkeletonResult {
    removals.truncate(checkpoints[chosen].removed);
    let mut present = vec![true; g.m()];
    for r in &removals {
        present[g.edge_id(r.u, r.v).expect("removed edge exists in the input")] = false;
    }
    SkeletonResult {
        graph: g.filter_edges(|e| present[e]),
        removals,
        checkpoints,
        chosen,
        stop,
        original_edges: g.m(),
    }
}
