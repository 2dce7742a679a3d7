use crate::graph::stats::{local_clustering, triangles};
use crate::graph::{sorted_intersection_count, Graph};

/// Edge-deletable copy of a graph that keeps per-node triangle counts and
/// the clustering sum current.
pub(crate) struct DynGraph<'g> {
    base: &'g Graph,
    nbrs: Vec<Vec<usize>>,
    tri: Vec<usize>,
    c_sum: f64,
    present: Vec<bool>,
    m: usize,
    mark: Vec<u32>,
    side: Vec<u8>,
    epoch: u32,
}

impl<'g> DynGraph<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let tri = triangles(g);
        let c_sum = (0..g.n()).map(|i| local_clustering(g.degree(i), tri[i])).sum();
        DynGraph {
            base: g,
            nbrs: (0..g.n()).map(|i| g.neighbors(i).to_vec()).collect(),
            tri,
            c_sum,
            present: vec![true; g.m()],
            m: g.m(),
            mark: vec![0; g.n()],
            side: vec![0; g.n()],
            epoch: 0,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn present_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.present.len()).filter(|&e| self.present[e])
    }

    pub fn avg_clustering(&self) -> f64 {
        self.c_sum / self.nbrs.len() as f64
    }

    pub fn snapshot(&self) -> Graph {
        self.base.filter_edges(|e| self.present[e])
    }

    fn local(&self, i: usize) -> f64 {
        local_clustering(self.nbrs[i].len(), self.tri[i])
    }

    /// Change `ΔC_u + ΔC_v` of the endpoint clustering coefficients if
    /// edge `e` were removed.
    pub fn clustering_delta(&self, e: usize) -> f64 {
        let (u, v) = self.base.edge(e);
        let c = sorted_intersection_count(&self.nbrs[u], &self.nbrs[v]);
        let delta = |i: usize| {
            let k = self.nbrs[i].len();
            local_clustering(k - 1, self.tri[i] - c) - local_clustering(k, self.tri[i])
        };
        delta(u) + delta(v)
    }

    /// Whether removing edge `e` would disconnect its endpoints. Searches
    /// from both ends at once so a small cut-off side ends the search early.
    pub fn is_bridge(&mut self, e: usize) -> bool {
        let (u, v) = self.base.edge(e);
        if sorted_intersection_count(&self.nbrs[u], &self.nbrs[v]) > 0 {
            return false;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|x| *x = 0);
            self.epoch = 1;
        }
        let ep = self.epoch;
        let mut queues = [vec![u], vec![v]];
        let mut heads = [0usize, 0usize];
        self.mark[u] = ep;
        self.side[u] = 0;
        self.mark[v] = ep;
        self.side[v] = 1;
        loop {
            for s in 0..2 {
                if heads[s] == queues[s].len() {
                    return true;
                }
                let x = queues[s][heads[s]];
                heads[s] += 1;
                let skip = if s == 0 { (u, v) } else { (v, u) };
                for &y in &self.nbrs[x] {
                    if x == skip.0 && y == skip.1 {
                        continue;
                    }
                    if self.mark[y] == ep {
                        if self.side[y] as usize != s {
                            return false;
                        }
                    } else {
                        self.mark[y] = ep;
                        self.side[y] = s as u8;
                        queues[s].push(y);
                    }
                }
            }
        }
    }

    pub fn remove(&mut self, e: usize) {
        debug_assert!(self.present[e]);
        let (u, v) = self.base.edge(e);
        let common: Vec<usize> = intersect(&self.nbrs[u], &self.nbrs[v]);
        for &i in &[u, v] {
            self.c_sum -= self.local(i);
        }
        for &w in &common {
            self.c_sum -= self.local(w);
            self.tri[w] -= 1;
            self.c_sum += self.local(w);
        }
        self.tri[u] -= common.len();
        self.tri[v] -= common.len();
        for (a, b) in [(u, v), (v, u)] {
            let pos = self.nbrs[a].binary_search(&b).expect("edge endpoints are adjacent");
            self.nbrs[a].remove(pos);
        }
        for &i in &[u, v] {
            self.c_sum += self.local(i);
        }
        self.present[e] = false;
        self.m -= 1;
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bridges, fixtures, stats};

    #[test]
    fn bridge_test_matches_bridge_finder() {
        for seed in 0..40 {
            let g = fixtures::random(18, 0.15, seed);
            let mut dg = DynGraph::new(&g);
            let expected = bridges(&g);
            for e in 0..g.m() {
                assert_eq!(dg.is_bridge(e), expected.binary_search(&e).is_ok(), "seed {seed} edge {e}");
            }
        }
    }

    #[test]
    fn incremental_state_matches_rebuild() {
        let g = fixtures::random(30, 0.3, 4);
        let mut dg = DynGraph::new(&g);
        for e in (0..g.m()).step_by(3) {
            let predicted = dg.clustering_delta(e);
            let snap = dg.snapshot();
            let (u, v) = g.edge(e);
            let before = stats::clustering(&snap);
            dg.remove(e);
            let after_g = dg.snapshot();
            let after = stats::clustering(&after_g);
            assert!((predicted - (after[u] - before[u] + after[v] - before[v])).abs() < 1e-12);
            assert_eq!(dg.tri, stats::triangles(&after_g));
            assert!((dg.avg_clustering() - stats::stats(&after_g).avg_clustering).abs() < 1e-12);
            assert_eq!(dg.m(), after_g.m());
        }
    }
}
