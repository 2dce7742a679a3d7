use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed;

/// Rewired graph plus bookkeeping on how many moves succeeded.
#[derive(Debug, Clone, Serialize)]
pub struct RewireOutcome {
    #[serde(skip)]
    pub graph: Graph,
    pub requested: usize,
    pub achieved: usize,
    pub attempts: usize,
}

impl RewireOutcome {
    pub fn is_complete(&self) -> bool {
        self.achieved == self.requested
    }
}

struct EdgePool {
    edges: Vec<(usize, usize)>,
    weights: Vec<f64>,
    present: HashSet<(usize, usize)>,
}

impl EdgePool {
    fn new(g: &Graph) -> Self {
        EdgePool {
            edges: g.edges().to_vec(),
            weights: g.weights().to_vec(),
            present: g.edges().iter().copied().collect(),
        }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.present.contains(&(u.min(v), u.max(v)))
    }

    fn replace(&mut self, e: usize, u: usize, v: usize) {
        let old = self.edges[e];
        self.present.remove(&old);
        let new = (u.min(v), u.max(v));
        self.present.insert(new);
        self.edges[e] = new;
    }

    fn into_graph(self, g: &Graph) -> Graph {
        g.with_weighted_edges(self.edges.into_iter().zip(self.weights).map(|((u, v), w)| (u, v, w)))
    }
}

fn target_moves(g: &Graph, fraction: f64) -> Result<usize> {
    if !(fraction >= 0.0 && fraction.is_finite()) {
        return Err(Error::InvalidParameter(format!("rewiring fraction {fraction} must be finite and non-negative")));
    }
    Ok((fraction * g.m() as f64).floor() as usize)
}

fn run<F>(g: &Graph, fraction: f64, mut attempt: F) -> Result<RewireOutcome>
where
    F: FnMut(&mut EdgePool) -> bool,
{
    let requested = target_moves(g, fraction)?;
    let cap = 100 * g.m();
    let mut pool = EdgePool::new(g);
    let (mut achieved, mut attempts) = (0, 0);
    while achieved < requested && attempts < cap {
        attempts += 1;
        if attempt(&mut pool) {
            achieved += 1;
        }
    }
    Ok(RewireOutcome { graph: pool.into_graph(g), requested, achieved, attempts })
}

/// Double-edge swaps `(a,b),(c,d) -> (a,d),(c,b)` that keep every degree.
///
/// `⌊fraction · m⌋` successful swaps are attempted; moves that would create a
/// self-loop or a multi-edge are rejected. Gives up after `100 · m` attempts.
pub fn rewire_degree_preserving(g: &Graph, fraction: f64, seed: u64) -> Result<RewireOutcome> {
    let mut rng = seed::rng(seed);
    let m = g.m();
    run(g, fraction, |pool| {
        if m < 2 {
            return false;
        }
        let e1 = rng.gen_range(0..m);
        let e2 = rng.gen_range(0..m);
        if e1 == e2 {
            return false;
        }
        let (a, b) = pool.edges[e1];
        let (mut c, mut d) = pool.edges[e2];
        if rng.gen::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        if a == d || c == b || pool.has(a, d) || pool.has(c, b) {
            return false;
        }
        pool.replace(e1, a, d);
        pool.replace(e2, c, b);
        true
    })
}

/// Moves one endpoint of `⌊fraction · m⌋` random edges to uniform nodes.
/// Keeps `m` but not the degree sequence.
pub fn rewire_full(g: &Graph, fraction: f64, seed: u64) -> Result<RewireOutcome> {
    let mut rng = seed::rng(seed);
    let (n, m) = (g.n(), g.m());
    run(g, fraction, |pool| {
        if m == 0 {
            return false;
        }
        let e = rng.gen_range(0..m);
        let (u, v) = pool.edges[e];
        let keep = if rng.gen::<bool>() { u } else { v };
        let w = rng.gen_range(0..n);
        if w == keep || pool.has(keep, w) {
            return false;
        }
        pool.replace(e, keep, w);
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::gen_er;
    use crate::graph::fixtures;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn swaps_preserve_degrees() {
        let g = gen_er(200, 6.0, 4).unwrap();
        let out = rewire_degree_preserving(&g, 0.5, 11).unwrap();
        assert!(out.is_complete());
        assert_eq!(out.requested, 300);
        assert_eq!(out.graph.degrees(), g.degrees());
        assert_eq!(out.graph.m(), g.m());
        assert_ne!(out.graph.edges(), g.edges());
        out.graph.check_invariants().unwrap();
    }

    #[test]
    fn star_cannot_be_swapped() {
        let g = fixtures::star(8);
        let out = rewire_degree_preserving(&g, 1.0, 1).unwrap();
        assert_eq!(out.achieved, 0);
        assert_eq!(out.attempts, 100 * g.m());
        assert_eq!(out.graph.edges(), g.edges());
    }

    #[test]
    fn full_rewiring_keeps_edge_count() {
        let g = fixtures::star(30);
        let out = rewire_full(&g, 1.0, 3).unwrap();
        assert!(out.is_complete());
        assert_eq!(out.graph.m(), g.m());
        assert_ne!(sorted_degrees(&out.graph), sorted_degrees(&g));
        out.graph.check_invariants().unwrap();
    }

    #[test]
    fn zero_fraction_is_identity() {
        let g = fixtures::random(40, 0.2, 5);
        let out = rewire_full(&g, 0.0, 1).unwrap();
        assert_eq!(out.graph, g);
        assert_eq!(out.attempts, 0);
        assert!(rewire_full(&g, -0.1, 1).is_err());
        assert!(rewire_degree_preserving(&g, f64::NAN, 1).is_err());
    }

    #[test]
    fn rewiring_is_deterministic() {
        let g = fixtures::random(60, 0.1, 8);
        let a = rewire_degree_preserving(&g, 0.3, 9).unwrap();
        let b = rewire_degree_preserving(&g, 0.3, 9).unwrap();
        assert_eq!(a.graph, b.graph);
    }
}
