use serde::{Deserialize, Serialize};

use super::{checkpoint, finish, peak, ranked, DynGraph, Removal, SkeletonResult, StopReason, TieBreak};
use crate::convexity::expansion::require_connected;
use crate::convexity::{ccore_profile_largest, CCoreOptions, DEFAULT_CORE_STEPS};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::{self, stream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CCentralityOptions {
    /// Expansion runs per c-profile refresh.
    pub runs: usize,
    pub steps: usize,
    /// Removals between c-profile refreshes.
    pub refresh_stride: usize,
    /// Removals between Xs checkpoints.
    pub checkpoint_stride: usize,
    pub checkpoint_runs: usize,
    pub max_removed_fraction: f64,
    /// Skip bridges. Off by default: a connected trajectory ends in a
    /// spanning tree, whose Xs of 1 would always be the peak.
    pub keep_connected: bool,
    pub tie_break: TieBreak,
}

impl Default for CCentralityOptions {
    fn default() -> Self {
        CCentralityOptions {
            runs: 20,
            steps: DEFAULT_CORE_STEPS,
            refresh_stride: 1,
            checkpoint_stride: 10,
            checkpoint_runs: 10,
            max_removed_fraction: 0.5,
            keep_connected: false,
            tie_break: TieBreak::Random,
        }
    }
}

fn validate(opts: &CCentralityOptions) -> Result<()> {
    let bad = |msg: &str| Err(Error::InvalidParameter(msg.into()));
    if opts.runs == 0 || opts.checkpoint_runs == 0 {
        return bad("profile and checkpoint runs must be positive");
    }
    if opts.refresh_stride == 0 || opts.checkpoint_stride == 0 {
        return bad("strides must be positive");
    }
    if !(0.0..=1.0).contains(&opts.max_removed_fraction) {
        return bad("removal cap must lie in [0, 1]");
    }
    Ok(())
}

/// Removes edges by decreasing `c_u + c_v`, refreshing the c-profile of the
/// current graph every `refresh_stride` removals, and returns the removal
/// prefix with the largest checkpointed Xs.
pub fn skeleton_ccentrality(g: &Graph, opts: &CCentralityOptions, master_seed: u64) -> Result<SkeletonResult> {
    validate(opts)?;
    require_connected(g)?;
    let m0 = g.m();
    let limit = (opts.max_removed_fraction * m0 as f64).floor() as usize;
    let profile_opts = CCoreOptions { runs: opts.runs, steps: opts.steps, majority: 0.5 };

    let mut dg = DynGraph::new(g);
    let mut removals: Vec<Removal> = Vec::new();
    let mut checkpoints = vec![checkpoint(&dg, m0, opts.checkpoint_runs, master_seed, 0)?];
    let mut refresh = 0;
    let mut stop = StopReason::MaxRemoved;
    while removals.len() < limit {
        let current = dg.snapshot();
        let profile = ccore_profile_largest(&current, &profile_opts, seed::derive(master_seed, stream::CCORE, refresh as u64))?;
        let c = &profile.centrality;
        let scored: Vec<(usize, f64)> = dg
            .present_edges()
            .map(|e| {
                let (u, v) = g.edge(e);
                (e, c[u] + c[v])
            })
            .collect();
        let mut removed = 0;
        for (e, score) in ranked(scored, opts.tie_break, master_seed, refresh) {
            if removed == opts.refresh_stride || removals.len() == limit {
                break;
            }
            if opts.keep_connected && dg.is_bridge(e) {
                continue;
            }
            dg.remove(e);
            let (u, v) = g.edge(e);
            removals.push(Removal { step: removals.len(), batch: refresh, u, v, score });
            removed += 1;
            if removals.len().is_multiple_of(opts.checkpoint_stride) {
                let idx = checkpoints.len();
                checkpoints.push(checkpoint(&dg, m0, opts.checkpoint_runs, master_seed, idx)?);
            }
        }
        refresh += 1;
        if removed == 0 {
            stop = StopReason::OnlyBridges;
            break;
        }
    }
    if checkpoints.last().map(|c| c.removed) != Some(removals.len()) {
        let idx = checkpoints.len();
        checkpoints.push(checkpoint(&dg, m0, opts.checkpoint_runs, master_seed, idx)?);
    }
    let chosen = peak(&checkpoints);
    Ok(finish(g, removals, checkpoints, chosen, stop))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::gen_core_periphery;
    use crate::ensembles::Reattach;
    use crate::graph::{fixtures, is_connected};

    #[test]
    fn path_is_returned_unchanged() {
        let g = fixtures::path(10);
        let r = skeleton_ccentrality(&g, &CCentralityOptions::default(), 1).unwrap();
        assert_eq!(r.graph, g);
        assert_eq!(r.chosen, 0);
        let kept = CCentralityOptions { keep_connected: true, ..CCentralityOptions::default() };
        let r = skeleton_ccentrality(&g, &kept, 1).unwrap();
        assert_eq!(r.graph, g);
        assert_eq!(r.stop, StopReason::OnlyBridges);
    }

    #[test]
    fn full_inclusion_orders_by_degree_sum() {
        // With the step threshold above n every node is always included, so
        // c_i = k_i and the first removal maximises k_u + k_v.
        let g = fixtures::random(14, 0.75, 6);
        assert!(is_connected(&g));
        let opts = CCentralityOptions {
            runs: 3,
            steps: 20,
            checkpoint_stride: 1,
            checkpoint_runs: 2,
            max_removed_fraction: 0.05,
            tie_break: TieBreak::Lexicographic,
            ..CCentralityOptions::default()
        };
        let r = skeleton_ccentrality(&g, &opts, 2).unwrap();
        let full = r.checkpoints.iter().map(|c| c.removed).max().unwrap();
        assert!(full >= 1);
        let mut dg = DynGraph::new(&g);
        let mut expected = Vec::new();
        for _ in 0..full {
            let snap = dg.snapshot();
            let best = dg
                .present_edges()
                .max_by_key(|&e| {
                    let (u, v) = g.edge(e);
                    (snap.degree(u) + snap.degree(v), std::cmp::Reverse(e))
                })
                .unwrap();
            let (u, v) = g.edge(best);
            expected.push((u, v, (snap.degree(u) + snap.degree(v)) as f64));
            dg.remove(best);
        }
        let prefix: Vec<_> = expected.iter().take(r.removals.len()).cloned().collect();
        let got: Vec<_> = r.removals.iter().map(|x| (x.u, x.v, x.score)).collect();
        assert_eq!(got, prefix);
    }

    #[test]
    fn peak_is_the_returned_prefix() {
        let g = gen_core_periphery(150, 0.3, 0.3, 0.03, 0.0, Reattach::Any, 4).unwrap();
        let g = crate::graph::largest_component(&g).graph;
        let opts = CCentralityOptions { runs: 5, checkpoint_stride: 20, checkpoint_runs: 5, ..CCentralityOptions::default() };
        let r = skeleton_ccentrality(&g, &opts, 3).unwrap();
        let best = r.chosen_checkpoint().xs.unwrap();
        assert!(r.checkpoints.iter().all(|c| c.xs.unwrap() <= best));
        assert!(best >= r.checkpoints[0].xs.unwrap());
        assert_eq!(r.graph.m() + r.removals.len(), g.m());
        let again = skeleton_ccentrality(&g, &opts, 3).unwrap();
        assert_eq!(again.removals, r.removals);
    }
}
