use rayon::prelude::*;
use serde::Serialize;

use super::expansion::{require_connected, ConvexExpansion};
use crate::error::{Error, Result};
use crate::graph::{largest_component, Graph};
use crate::seed::{self, stream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CCoreOptions {
    pub runs: usize,
    /// Expansion steps after which membership is recorded.
    pub steps: usize,
    /// Core membership requires `p_i > majority`.
    pub majority: f64,
}

impl Default for CCoreOptions {
    fn default() -> Self {
        CCoreOptions { runs: super::DEFAULT_RUNS, steps: super::DEFAULT_CORE_STEPS, majority: 0.5 }
    }
}

/// Inclusion probabilities and c-centralities.
///
/// `p_i` is the fraction of runs whose convex set contains `i` after the
/// configured number of steps; `c_i = -k_i + 2 Σ_{j ∈ N(i)} p_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CCoreProfile {
    pub inclusion: Vec<f64>,
    pub centrality: Vec<f64>,
    pub core: Vec<bool>,
    pub steps: usize,
    pub runs: usize,
}

impl CCoreProfile {
    fn from_counts(g: &Graph, counts: &[u32], opts: &CCoreOptions) -> Self {
        let inclusion: Vec<f64> = counts.iter().map(|&c| c as f64 / opts.runs as f64).collect();
        let centrality = c_centrality(g, &inclusion);
        let core = inclusion.iter().map(|&p| p > opts.majority).collect();
        CCoreProfile { inclusion, centrality, core, steps: opts.steps, runs: opts.runs }
    }

    pub fn core_size(&self) -> usize {
        self.core.iter().filter(|&&c| c).count()
    }
}

pub(crate) fn c_centrality(g: &Graph, inclusion: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|i| {
            let s: f64 = g.neighbors(i).iter().map(|&j| inclusion[j]).sum();
            -(g.degree(i) as f64) + 2.0 * s
        })
        .collect()
}

fn inclusion_counts(g: &Graph, opts: &CCoreOptions, master: u64) -> Vec<u32> {
    let sets: Vec<Vec<usize>> = (0..opts.runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = seed::task_rng(master, stream::CCORE, r as u64);
            let mut exp = ConvexExpansion::start(g, &mut rng);
            for _ in 0..opts.steps {
                if exp.step(&mut rng).is_none() {
                    break;
                }
            }
            exp.members().to_vec()
        })
        .collect();
    let mut counts = vec![0u32; g.n()];
    for set in sets {
        for u in set {
            counts[u] += 1;
        }
    }
    counts
}

fn check(opts: &CCoreOptions) -> Result<()> {
    if opts.runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    if opts.steps == 0 {
        return Err(Error::InvalidParameter("step threshold must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&opts.majority) {
        return Err(Error::InvalidParameter("majority threshold must lie in [0, 1)".into()));
    }
    Ok(())
}

/// C-core profile of a connected graph.
pub fn ccore_profile(g: &Graph, opts: &CCoreOptions, master_seed: u64) -> Result<CCoreProfile> {
    check(opts)?;
    require_connected(g)?;
    if opts.steps >= g.n() {
        return Err(Error::InvalidParameter(format!(
            "step threshold {} must be below the node count {}",
            opts.steps,
            g.n()
        )));
    }
    let counts = inclusion_counts(g, opts, master_seed);
    Ok(CCoreProfile::from_counts(g, &counts, opts))
}

/// Profile for a possibly disconnected graph: expansion runs on the largest
/// component, nodes outside it get `p = 0`. Runs that cover the component
/// before the threshold simply stop there.
pub fn ccore_profile_largest(g: &Graph, opts: &CCoreOptions, master_seed: u64) -> Result<CCoreProfile> {
    check(opts)?;
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let lcc = largest_component(g);
    let sub = inclusion_counts(&lcc.graph, opts, master_seed);
    let mut counts = vec![0u32; g.n()];
    for (k, &orig) in lcc.nodes.iter().enumerate() {
        counts[orig] = sub[k];
    }
    Ok(CCoreProfile::from_counts(g, &counts, opts))
}
