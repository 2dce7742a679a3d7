//! Breadth-first search, components and bridges.

use super::Graph;

/// Distance sentinel for nodes not reachable from the source.
pub const UNREACHABLE: u32 = u32::MAX;

/// Hop distances and geodesic counts from a single source.
///
/// Counts are kept as `f64`; they are exact below 2^53.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesics {
    pub source: usize,
    pub dist: Vec<u32>,
    pub sigma: Vec<f64>,
    /// Nodes in non-decreasing distance order (reachable ones only).
    pub order: Vec<usize>,
}

pub fn bfs_geodesics(g: &Graph, source: usize) -> Geodesics {
    let n = g.n();
    let mut dist = vec![UNREACHABLE; n];
    let mut sigma = vec![0.0; n];
    let mut order = Vec::with_capacity(n);
    dist[source] = 0;
    sigma[source] = 1.0;
    order.push(source);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        let du = dist[u];
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = du + 1;
                order.push(v);
            }
            if dist[v] == du + 1 {
                sigma[v] += sigma[u];
            }
        }
    }
    Geodesics { source, dist, sigma, order }
}

/// Fills `dist` with hop distances from `source`, reusing the buffers.
pub fn bfs_distances(g: &Graph, source: usize, dist: &mut Vec<u32>, queue: &mut Vec<usize>) {
    dist.clear();
    dist.resize(g.n(), UNREACHABLE);
    queue.clear();
    dist[source] = 0;
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let next = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = next;
                queue.push(v);
            }
        }
    }
}

/// Connected components, numbered in order of their smallest node index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub membership: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Largest component; ties go to the one with the smallest node index.
    pub fn largest(&self) -> usize {
        let mut best = 0;
        for (c, &s) in self.sizes.iter().enumerate() {
            if s > self.sizes[best] {
                best = c;
            }
        }
        best
    }

    pub fn nodes_of(&self, c: usize) -> Vec<usize> {
        (0..self.membership.len()).filter(|&i| self.membership[i] == c).collect()
    }
}

pub fn components(g: &Graph) -> Components {
    let n = g.n();
    let mut membership = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if membership[s] != usize::MAX {
            continue;
        }
        let c = sizes.len();
        membership[s] = c;
        stack.push(s);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                if membership[v] == usize::MAX {
                    membership[v] = c;
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    Components { membership, sizes }
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() > 0 && components(g).count() == 1
}

#[derive(Debug, Clone)]
pub struct LargestComponent {
    pub graph: Graph,
    /// Original indices of the component's nodes, in increasing order.
    pub nodes: Vec<usize>,
    /// Node fraction `s` of the input covered by the component.
    pub fraction: f64,
}

/// Induced subgraph on the largest connected component.
///
/// Returns the input unchanged (with `s = 1`) when it is connected.
pub fn largest_component(g: &Graph) -> LargestComponent {
    assert!(g.n() > 0, "largest_component of an empty graph");
    let comps = components(g);
    if comps.count() == 1 {
        return LargestComponent { graph: g.clone(), nodes: (0..g.n()).collect(), fraction: 1.0 };
    }
    let nodes = comps.nodes_of(comps.largest());
    let fraction = nodes.len() as f64 / g.n() as f64;
    LargestComponent { graph: g.induced(&nodes), nodes, fraction }
}

/// Ids of all bridges, in increasing order.
///
/// Iterative lowlink search, so deep graphs do not overflow the stack.
pub fn bridges(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut out = Vec::new();
    let mut time = 0u32;
    // (node, edge used to enter it, next neighbour position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != u32::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (u, parent_edge, ref mut pos)) = stack.last_mut() {
            if *pos < g.degree(u) {
                let k = *pos;
                *pos += 1;
                let v = g.neighbors(u)[k];
                let e = g.incident_edges(u)[k];
                if e == parent_edge {
                    continue;
                }
                if disc[v] == u32::MAX {
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    stack.push((v, e, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        out.push(parent_edge);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn c4_geodesics() {
        let g = cycle(4);
        let geo = bfs_geodesics(&g, 0);
        assert_eq!(geo.dist[2], 2);
        assert_eq!(geo.sigma[2], 2.0);
        assert_eq!((geo.dist[0], geo.sigma[0]), (0, 1.0));
    }

    #[test]
    fn p3_geodesics() {
        let geo = bfs_geodesics(&path(3), 0);
        assert_eq!((geo.dist[2], geo.sigma[2]), (2, 1.0));
    }

    #[test]
    fn unreachable_nodes_get_sentinel() {
        let g = Graph::from_edges(3, [(0, 1)]);
        let geo = bfs_geodesics(&g, 0);
        assert_eq!(geo.dist[2], UNREACHABLE);
        assert_eq!(geo.sigma[2], 0.0);
    }

    #[test]
    fn distances_are_symmetric_and_metric() {
        for seed in 0..15 {
            let g = random(10, 0.35, seed);
            let d: Vec<Vec<u32>> = (0..g.n()).map(|s| bfs_geodesics(&g, s).dist).collect();
            for i in 0..g.n() {
                for j in 0..g.n() {
                    assert_eq!(d[i][j], d[j][i]);
                    for k in 0..g.n() {
                        if d[i][k] != UNREACHABLE && d[k][j] != UNREACHABLE {
                            assert!(d[i][j] <= d[i][k] + d[k][j]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn largest_component_cases() {
        let lc = largest_component(&complete(4));
        assert_eq!(lc.fraction, 1.0);
        assert_eq!(lc.graph.m(), 6);

        let g = Graph::from_edges(4, [(1, 2), (2, 3), (1, 3)]);
        let lc = largest_component(&g);
        assert_eq!(lc.fraction, 0.75);
        assert_eq!(lc.graph.n(), 3);
        assert_eq!(lc.graph.m(), 3);
        assert_eq!(lc.nodes, vec![1, 2, 3]);

        // Two paths of five nodes; the one holding node 0 wins the tie.
        let g = Graph::from_edges(10, [(5, 6), (6, 7), (7, 8), (8, 9), (0, 1), (1, 2), (2, 3), (3, 4)]);
        let lc = largest_component(&g);
        assert_eq!(lc.fraction, 0.5);
        assert_eq!(lc.nodes, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn bridge_cases() {
        assert_eq!(bridges(&path(6)).len(), 5);
        assert!(bridges(&cycle(5)).is_empty());
        let g = two_triangles_bridged();
        let b = bridges(&g);
        assert_eq!(b.len(), 1);
        assert_eq!(g.edge(b[0]), (2, 3));
    }

    fn brute_force_bridges(g: &Graph) -> Vec<usize> {
        let base = components(g).count();
        (0..g.m()).filter(|&e| components(&g.filter_edges(|f| f != e)).count() > base).collect()
    }

    #[test]
    fn bridges_match_brute_force() {
        for seed in 0..200 {
            let n = 2 + (seed as usize % 11);
            let p = [0.15, 0.25, 0.4][seed as usize % 3];
            let g = random(n, p, seed);
            assert_eq!(bridges(&g), brute_force_bridges(&g), "seed {seed}");
        }
    }
}
