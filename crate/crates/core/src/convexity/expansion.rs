use rand::Rng;
use serde::Serialize;

use super::fenwick::Fenwick;
use super::hull::HullClosure;
use crate::error::{Error, Result};
use crate::graph::{components, Graph};
use crate::seed;

/// One run of the convex expansion procedure, advanced a step at a time.
///
/// Starts from a uniformly random node; each step follows a uniformly random
/// boundary edge (so an outside node `i` is picked with probability
/// proportional to `|N(i) ∩ S|`) and replaces `S` by the hull of `S ∪ {i}`.
pub struct ConvexExpansion<'g> {
    g: &'g Graph,
    closure: HullClosure<'g>,
    boundary: Fenwick,
    pull: Vec<u64>,
    sizes: Vec<u32>,
}

impl<'g> ConvexExpansion<'g> {
    /// Starts a run. The caller guarantees `g` is connected and non-empty.
    pub fn start<R: Rng>(g: &'g Graph, rng: &mut R) -> Self {
        let n = g.n();
        let mut exp = ConvexExpansion {
            g,
            closure: HullClosure::new(g),
            boundary: Fenwick::new(n),
            pull: vec![0; n],
            sizes: Vec::new(),
        };
        let first = rng.gen_range(0..n);
        exp.closure.insert(first);
        exp.absorb_from(0);
        exp.sizes.push(exp.closure.len() as u32);
        exp
    }

    fn absorb_from(&mut self, from: usize) {
        let g = self.g;
        for k in from..self.closure.len() {
            let x = self.closure.members()[k];
            if self.pull[x] > 0 {
                self.boundary.sub(x, self.pull[x]);
                self.pull[x] = 0;
            }
            for &y in g.neighbors(x) {
                if !self.closure.contains(y) {
                    self.pull[y] += 1;
                    self.boundary.add(y, 1);
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        self.closure.len()
    }

    pub fn is_covering(&self) -> bool {
        self.closure.len() == self.g.n()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.closure.contains(u)
    }

    /// Current members in the order they joined.
    pub fn members(&self) -> &[usize] {
        self.closure.members()
    }

    /// Sizes `|S(t)|` recorded so far, starting at `t = 0`.
    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Performs one step. Returns the new size, or `None` once `S` covers the
    /// graph (or no boundary edge remains).
    pub fn step<R: Rng>(&mut self, rng: &mut R) -> Option<usize> {
        if self.is_covering() || self.boundary.total() == 0 {
            return None;
        }
        let pick = self.boundary.find(rng.gen_range(0..self.boundary.total()));
        let before = self.closure.len();
        self.closure.insert(pick);
        self.closure.close();
        self.absorb_from(before);
        self.sizes.push(self.closure.len() as u32);
        Some(self.closure.len())
    }
}

/// Subset sizes of one expansion run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTrace {
    pub seed: u64,
    pub n: usize,
    /// `|S(t)|` for `t = 0..=cover_step`.
    pub sizes: Vec<u32>,
}

impl ExpansionTrace {
    /// First step at which `S` covers the graph.
    pub fn cover_step(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Node fraction `s(t)`; stays at 1 after the cover step.
    pub fn fraction(&self, t: usize) -> f64 {
        let k = t.min(self.sizes.len() - 1);
        self.sizes[k] as f64 / self.n as f64
    }

    /// Per-run convexity, `(t' + 1) / n`.
    pub fn convexity(&self) -> f64 {
        (self.cover_step() + 1) as f64 / self.n as f64
    }
}

pub(crate) fn run_to_cover(g: &Graph, run_seed: u64) -> ExpansionTrace {
    let mut rng = seed::rng(run_seed);
    let mut exp = ConvexExpansion::start(g, &mut rng);
    while exp.step(&mut rng).is_some() {}
    ExpansionTrace { seed: run_seed, n: g.n(), sizes: exp.sizes }
}

pub(crate) fn require_connected(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let c = components(g).count();
    if c > 1 {
        return Err(Error::Disconnected { components: c });
    }
    Ok(())
}

/// Runs the expansion procedure to cover with the given RNG seed.
pub fn expansion_run(g: &Graph, run_seed: u64) -> Result<ExpansionTrace> {
    require_connected(g)?;
    Ok(run_to_cover(g, run_seed))
}
