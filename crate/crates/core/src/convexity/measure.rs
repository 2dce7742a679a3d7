use rayon::prelude::*;
use serde::Serialize;

use super::expansion::{require_connected, run_to_cover, ExpansionTrace};
use crate::error::{Error, Result};
use crate::graph::{largest_component, Graph};
use crate::seed::{self, stream};

/// Two-sided 99% standard normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

/// Aggregated convexity over many expansion runs.
///
/// `X` is computed from the run-averaged growth `Δs(t)`; `X_cover` is the
/// mean per-run value `(t' + 1) / n` and `ci99` the 99% half-width of the
/// per-run values. When the input is disconnected, `X` refers to its largest
/// component and `Xs = s · X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub n: usize,
    pub m: usize,
    pub runs: usize,
    pub seed: u64,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "Xs")]
    pub xs: f64,
    pub s: f64,
    pub lcc_n: usize,
    pub pendant_bound: f64,
    pub ci99: f64,
    #[serde(rename = "X_cover")]
    pub x_cover: f64,
    pub mean_cover_step: f64,
    /// Mean `s(t)` on the measured component, `t = 0..`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(skip)]
    pub traces: Vec<ExpansionTrace>,
}

impl ConvexityReport {
    /// Mean `s(t)`, which stays at 1 beyond the recorded trace.
    pub fn mean_fraction(&self, t: usize) -> f64 {
        self.trace.get(t).copied().unwrap_or(1.0)
    }

    pub fn without_trace(mut self) -> Self {
        self.trace.clear();
        self
    }

    /// Per-run `(t' + 1) / n` values.
    pub fn per_run(&self) -> Vec<f64> {
        self.traces.iter().map(ExpansionTrace::convexity).collect()
    }
}

/// Fraction of degree-one nodes.
pub fn pendant_bound(g: &Graph) -> f64 {
    if g.n() == 0 {
        return 0.0;
    }
    (0..g.n()).filter(|&i| g.degree(i) == 1).count() as f64 / g.n() as f64
}

fn run_traces(g: &Graph, runs: usize, master: u64) -> Vec<ExpansionTrace> {
    (0..runs)
        .into_par_iter()
        .map(|r| run_to_cover(g, seed::derive(master, stream::EXPANSION, r as u64)))
        .collect()
}

struct Aggregate {
    x: f64,
    x_cover: f64,
    mean_cover: f64,
    ci99: f64,
    trace: Vec<f64>,
}

fn aggregate(n: usize, traces: &[ExpansionTrace]) -> Aggregate {
    let runs = traces.len();
    let horizon = traces.iter().map(|t| t.sizes.len()).max().unwrap_or(1);
    let size_at = |tr: &ExpansionTrace, t: usize| tr.sizes[t.min(tr.sizes.len() - 1)] as u64;
    // Integer sums keep X exact for graphs that grow one node per step.
    let mut totals = vec![0u64; horizon];
    for tr in traces {
        for (t, slot) in totals.iter_mut().enumerate() {
            *slot += size_at(tr, t);
        }
    }
    let mut excess = 0u64;
    for t in 1..horizon {
        let grown = totals[t] - totals[t - 1];
        excess += grown.saturating_sub(runs as u64);
    }
    let x = 1.0 - excess as f64 / (runs as f64 * n as f64);
    let per_run: Vec<f64> = traces.iter().map(ExpansionTrace::convexity).collect();
    let mean = per_run.iter().sum::<f64>() / runs as f64;
    let ci99 = if runs > 1 {
        let var = per_run.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
        Z99 * (var / runs as f64).sqrt()
    } else {
        0.0
    };
    let mean_cover = traces.iter().map(|t| t.cover_step() as f64).sum::<f64>() / runs as f64;
    let trace = totals.iter().map(|&s| s as f64 / (runs as f64 * n as f64)).collect();
    Aggregate { x, x_cover: mean, mean_cover, ci99, trace }
}

fn check_runs(runs: usize) -> Result<()> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    Ok(())
}

/// Convexity `X` of a connected graph.
pub fn measure_convexity(g: &Graph, runs: usize, master_seed: u64) -> Result<ConvexityReport> {
    check_runs(runs)?;
    require_connected(g)?;
    let traces = run_traces(g, runs, master_seed);
    let agg = aggregate(g.n(), &traces);
    Ok(ConvexityReport {
        n: g.n(),
        m: g.m(),
        runs,
        seed: master_seed,
        x: agg.x,
        xs: agg.x,
        s: 1.0,
        lcc_n: g.n(),
        pendant_bound: pendant_bound(g),
        ci99: agg.ci99,
        x_cover: agg.x_cover,
        mean_cover_step: agg.mean_cover,
        trace: agg.trace,
        warning: None,
        traces,
    })
}

/// Corrected convexity `Xs = s · X(LCC)`, defined for any non-empty graph.
pub fn measure_corrected(g: &Graph, runs: usize, master_seed: u64) -> Result<ConvexityReport> {
    check_runs(runs)?;
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let lcc = largest_component(g);
    let mut report = measure_convexity(&lcc.graph, runs, master_seed)?;
    report.n = g.n();
    report.m = g.m();
    report.s = lcc.fraction;
    report.xs = lcc.fraction * report.x;
    if lcc.fraction < 0.5 {
        report.warning = Some(format!(
            "largest component covers only {:.3} of the nodes; corrected convexity is not meaningful",
            lcc.fraction
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn convex_families_score_exactly_one() {
        for g in [path(15), star(20), complete(10), two_triangles_bridged()] {
            let r = measure_convexity(&g, 30, 5).unwrap();
            assert_eq!(r.x, 1.0);
            assert_eq!(r.x_cover, 1.0);
            assert_eq!(r.ci99, 0.0);
        }
    }

    #[test]
    fn per_run_convexity_matches_growth_formula() {
        let g = cycle(12);
        let r = measure_convexity(&g, 1, 3).unwrap();
        let tr = &r.traces[0];
        let n = g.n() as f64;
        let mut x = 1.0;
        for t in 1..g.n() {
            x -= (tr.fraction(t) - tr.fraction(t - 1) - 1.0 / n).max(0.0);
        }
        assert!((x - tr.convexity()).abs() < 1e-12);
        assert!((r.x - x).abs() < 1e-12);
    }

    #[test]
    fn averaged_growth_dominates_mean_per_run() {
        let g = random(30, 0.2, 4);
        if let Ok(r) = measure_convexity(&g, 50, 1) {
            assert!(r.x >= r.x_cover - 1e-12);
            assert!((0.0..=1.0).contains(&r.x));
        }
    }

    #[test]
    fn corrected_on_tree_plus_isolated_nodes() {
        // A path on 6 of 8 nodes: X(LCC) = 1, so Xs = s = 0.75.
        let g = Graph::from_edges(8, (1..6).map(|i| (i - 1, i)));
        let r = measure_corrected(&g, 10, 2).unwrap();
        assert_eq!(r.x, 1.0);
        assert_eq!(r.s, 0.75);
        assert_eq!(r.xs, 0.75);
        assert!(r.warning.is_none());
    }

    #[test]
    fn corrected_equals_plain_when_connected() {
        let g = cycle(9);
        let a = measure_convexity(&g, 20, 8).unwrap();
        let b = measure_corrected(&g, 20, 8).unwrap();
        assert_eq!(a.x, b.xs);
    }

    #[test]
    fn low_coverage_warns() {
        let g = Graph::from_edges(10, [(0, 1), (2, 3), (4, 5)]);
        let r = measure_corrected(&g, 3, 1).unwrap();
        assert_eq!(r.s, 0.2);
        assert!(r.warning.is_some());
    }

    #[test]
    fn disconnected_plain_measure_errors() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert!(matches!(measure_convexity(&g, 5, 1), Err(Error::Disconnected { .. })));
        assert!(measure_convexity(&path(3), 0, 1).is_err());
    }

    #[test]
    fn pendant_bounds() {
        assert!((pendant_bound(&star(7)) - 6.0 / 7.0).abs() < 1e-12);
        assert!((pendant_bound(&path(3)) - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(pendant_bound(&cycle(5)), 0.0);
    }

    #[test]
    fn bound_holds_on_random_graphs() {
        for s in 0..10 {
            let g = random(25, 0.12, 50 + s);
            if let Ok(r) = measure_convexity(&g, 40, s) {
                assert!(r.x >= r.pendant_bound - r.ci99 - 1e-12, "seed {s}: {} < {}", r.x, r.pendant_bound);
            }
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let g = random(40, 0.15, 77);
        if let Ok(a) = measure_corrected(&g, 25, 11) {
            let b = measure_corrected(&g, 25, 11).unwrap();
            assert_eq!(a, b);
        }
    }
}
