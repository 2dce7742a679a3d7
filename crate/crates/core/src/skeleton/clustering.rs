use serde::{Deserialize, Serialize};

use super::{checkpoint, finish, peak, ranked, DynGraph, Removal, SkeletonResult, StopReason, TieBreak};
use crate::convexity::expansion::require_connected;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopPolicy {
    /// Stop once no removable edge raises endpoint clustering.
    DeltaC,
    /// Remove in score order up to a fraction of the edges and return the
    /// prefix with the largest checkpointed Xs.
    XsPeak { max_removed_fraction: f64 },
    /// Stop at the given edge count.
    TargetEdges(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkeletonOptions {
    /// Share of the original edges removed per batch, in `(0, 0.05]`.
    pub batch_fraction: f64,
    pub stop: StopPolicy,
    pub tie_break: TieBreak,
    /// Expansion runs per checkpoint; 0 records no Xs.
    pub checkpoint_runs: usize,
}

impl Default for SkeletonOptions {
    fn default() -> Self {
        SkeletonOptions {
            batch_fraction: 0.01,
            stop: StopPolicy::DeltaC,
            tie_break: TieBreak::Random,
            checkpoint_runs: 10,
        }
    }
}

fn validate(opts: &SkeletonOptions) -> Result<()> {
    if !(opts.batch_fraction > 0.0 && opts.batch_fraction <= 0.05) {
        return Err(Error::InvalidParameter(format!("batch fraction {} outside (0, 0.05]", opts.batch_fraction)));
    }
    if let StopPolicy::XsPeak { max_removed_fraction } = opts.stop {
        if !(0.0..=1.0).contains(&max_removed_fraction) {
            return Err(Error::InvalidParameter(format!("removal cap {max_removed_fraction} outside [0, 1]")));
        }
        if opts.checkpoint_runs == 0 {
            return Err(Error::InvalidParameter("xs-peak needs checkpoint runs".into()));
        }
    }
    Ok(())
}

/// Removes edges in batches by decreasing `ΔC_u + ΔC_v`, the change in the
/// endpoints' clustering were the edge removed.
///
/// Scores are taken on the graph at the start of each batch. Within a batch
/// edges go one at a time and bridges are skipped, so the graph stays
/// connected. One checkpoint is recorded before the first batch and one
/// after every batch.
pub fn skeleton_clustering(g: &Graph, opts: &SkeletonOptions, master_seed: u64) -> Result<SkeletonResult> {
    validate(opts)?;
    require_connected(g)?;
    let m0 = g.m();
    let batch_size = ((opts.batch_fraction * m0 as f64).round() as usize).max(1);
    let limit = match opts.stop {
        StopPolicy::DeltaC => m0,
        StopPolicy::XsPeak { max_removed_fraction } => (max_removed_fraction * m0 as f64).floor() as usize,
        StopPolicy::TargetEdges(target) => m0.saturating_sub(target),
    };
    let positive_only = opts.stop == StopPolicy::DeltaC;

    let mut dg = DynGraph::new(g);
    let mut removals = Vec::new();
    let mut checkpoints = vec![checkpoint(&dg, m0, opts.checkpoint_runs, master_seed, 0)?];
    let mut batch = 0;
    let stop = loop {
        if removals.len() >= limit {
            break match opts.stop {
                StopPolicy::TargetEdges(_) => StopReason::TargetReached,
                _ => StopReason::MaxRemoved,
            };
        }
        let scored: Vec<(usize, f64)> = dg
            .present_edges()
            .map(|e| (e, dg.clustering_delta(e)))
            .filter(|&(_, s)| !positive_only || super::quantize(s) > 0)
            .collect();
        let candidates = ranked(scored, opts.tie_break, master_seed, batch);
        let mut removed = 0;
        for (e, score) in candidates {
            if removed == batch_size || removals.len() == limit {
                break;
            }
            if dg.is_bridge(e) {
                continue;
            }
            dg.remove(e);
            let (u, v) = g.edge(e);
            removals.push(Removal { step: removals.len(), batch, u, v, score });
            removed += 1;
        }
        if removed == 0 {
            break if positive_only { StopReason::NoPositiveScore } else { StopReason::OnlyBridges };
        }
        batch += 1;
        checkpoints.push(checkpoint(&dg, m0, opts.checkpoint_runs, master_seed, batch)?);
    };
    let chosen = match opts.stop {
        StopPolicy::XsPeak { .. } => peak(&checkpoints),
        _ => checkpoints.len() - 1,
    };
    Ok(finish(g, removals, checkpoints, chosen, stop))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::gen_convex;
    use crate::graph::{fixtures, is_connected, largest_component, stats, triangles};

    fn quick(stop: StopPolicy) -> SkeletonOptions {
        SkeletonOptions { stop, checkpoint_runs: 0, ..SkeletonOptions::default() }
    }

    #[test]
    fn trees_are_left_alone() {
        let g = fixtures::path(20);
        let r = skeleton_clustering(&g, &SkeletonOptions::default(), 1).unwrap();
        assert_eq!(r.graph, g);
        assert!(r.removals.is_empty());
        assert_eq!(r.checkpoints.len(), 1);
        assert_eq!(r.stop, StopReason::NoPositiveScore);
        assert_eq!(r.chosen_checkpoint().xs, Some(1.0));
    }

    #[test]
    fn complete_graph_has_no_positive_gain() {
        let g = fixtures::complete(4);
        let dg = DynGraph::new(&g);
        assert!((0..6).all(|e| dg.clustering_delta(e) == 0.0));
        let r = skeleton_clustering(&g, &quick(StopPolicy::DeltaC), 1).unwrap();
        assert_eq!(r.graph, g);
        assert_eq!(r.stop, StopReason::NoPositiveScore);
    }

    #[test]
    fn removal_only_lowers_triangles_and_keeps_connectivity() {
        let g = largest_component(&fixtures::random(80, 0.12, 3)).graph;
        let r = skeleton_clustering(&g, &quick(StopPolicy::DeltaC), 5).unwrap();
        assert!(is_connected(&r.graph));
        let (before, after) = (triangles(&g), triangles(&r.graph));
        assert!(before.iter().zip(&after).all(|(b, a)| a <= b));
        assert!(r.graph.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
        assert_eq!(r.graph.m() + r.removals.len(), g.m());
        let tracked = r.chosen_checkpoint().avg_clustering;
        assert!((tracked - stats(&r.graph).avg_clustering).abs() < 1e-9);
        assert!(tracked > stats(&g).avg_clustering);
        assert!(r.removals.iter().all(|x| x.score > 0.0));
        assert!(r.checkpoints.windows(2).all(|w| w[0].frac_removed < w[1].frac_removed));
    }

    #[test]
    fn doubly_linked_cliques_lose_one_link() {
        // Two K5s joined by two disjoint edges. Dropping a link lifts both
        // endpoints from C = 0.6 to 1; the second link is then a bridge.
        let mut edges = Vec::new();
        for base in [0, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((0, 5));
        edges.push((1, 6));
        let g = Graph::from_edges(10, edges);
        let r = skeleton_clustering(&g, &quick(StopPolicy::DeltaC), 2).unwrap();
        assert_eq!(r.graph.m(), g.m() - 1);
        assert_eq!(r.removals.len(), 1);
        assert!((r.removals[0].score - 0.8).abs() < 1e-12);
        assert!(is_connected(&r.graph));
        assert!((stats(&r.graph).avg_clustering - 0.92).abs() < 1e-12);
    }

    #[test]
    fn target_edges_stops_exactly() {
        let g = largest_component(&fixtures::random(50, 0.2, 9)).graph;
        let target = g.m() - 37;
        let r = skeleton_clustering(&g, &quick(StopPolicy::TargetEdges(target)), 1).unwrap();
        assert_eq!(r.graph.m(), target);
        assert_eq!(r.stop, StopReason::TargetReached);
        let tree = skeleton_clustering(&g, &quick(StopPolicy::TargetEdges(0)), 1).unwrap();
        assert_eq!(tree.graph.m(), g.n() - 1);
        assert_eq!(tree.stop, StopReason::OnlyBridges);
    }

    #[test]
    fn xs_peak_returns_best_checkpoint() {
        let g = largest_component(&fixtures::random(40, 0.2, 2)).graph;
        let opts = SkeletonOptions {
            batch_fraction: 0.05,
            stop: StopPolicy::XsPeak { max_removed_fraction: 0.4 },
            tie_break: TieBreak::Random,
            checkpoint_runs: 5,
        };
        let r = skeleton_clustering(&g, &opts, 4).unwrap();
        let best = r.chosen_checkpoint().xs.unwrap();
        assert!(r.checkpoints.iter().all(|c| c.xs.unwrap() <= best));
        assert_eq!(r.graph.m(), g.m() - r.chosen_checkpoint().removed);
        assert!(r.checkpoints.last().unwrap().removed <= (0.4 * g.m() as f64) as usize);
    }

    #[test]
    fn removal_logs_are_reproducible() {
        let g = largest_component(&fixtures::random(60, 0.15, 1)).graph;
        let opts = SkeletonOptions { checkpoint_runs: 3, ..SkeletonOptions::default() };
        let a = skeleton_clustering(&g, &opts, 8).unwrap();
        let b = skeleton_clustering(&g, &opts, 8).unwrap();
        assert_eq!(a.removals, b.removals);
        assert_eq!(a.checkpoints, b.checkpoints);
        let lex = SkeletonOptions { tie_break: TieBreak::Lexicographic, ..opts };
        let c = skeleton_clustering(&g, &lex, 1).unwrap();
        let d = skeleton_clustering(&g, &lex, 2).unwrap();
        assert_eq!(c.graph, d.graph);
    }

    #[test]
    fn convex_graphs_keep_high_convexity() {
        let g = gen_convex(150, 0.25, 3).unwrap();
        let r = skeleton_clustering(&g, &SkeletonOptions::default(), 3).unwrap();
        assert_eq!(r.chosen_checkpoint().xs, Some(1.0));
    }

    #[test]
    fn parameters_are_checked() {
        let g = fixtures::complete(5);
        for bf in [0.0, 0.06, f64::NAN] {
            let opts = SkeletonOptions { batch_fraction: bf, ..SkeletonOptions::default() };
            assert!(skeleton_clustering(&g, &opts, 1).is_err());
        }
        let opts = SkeletonOptions { stop: StopPolicy::XsPeak { max_removed_fraction: 0.5 }, checkpoint_runs: 0, ..SkeletonOptions::default() };
        assert!(skeleton_clustering(&g, &opts, 1).is_err());
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(skeleton_clustering(&split, &SkeletonOptions::default(), 1).is_err());
    }
}
