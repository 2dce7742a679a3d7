use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::convexity::CCoreProfile;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed;

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// Erdős–Rényi graph with exactly `round(n * avg_k / 2)` distinct edges.
pub fn gen_er(n: usize, avg_k: f64, seed: u64) -> Result<Graph> {
    if n < 2 || !(avg_k > 0.0) || avg_k > (n - 1) as f64 {
        return Err(invalid(format!("average degree {avg_k} infeasible for n = {n}")));
    }
    let m = (n as f64 * avg_k / 2.0).round() as usize;
    let mut rng = seed::rng(seed);
    let mut set = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && set.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Rect,
    Tri,
}

/// Open-boundary `side × side` lattice. The triangular variant adds the
/// down-right diagonal of every unit square.
pub fn gen_lattice(kind: LatticeKind, side: usize) -> Result<Graph> {
    if side < 2 {
        return Err(invalid(format!("lattice side must be at least 2, got {side}")));
    }
    let id = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if kind == LatticeKind::Tri && r + 1 < side && c + 1 < side {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    Ok(Graph::from_edges(side * side, edges))
}

fn random_tree_edges<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    (1..n).map(|i| (rng.gen_range(0..i), i)).collect()
}

/// Random recursive tree: node `i` attaches to a uniform earlier node.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("tree needs at least one node".into()));
    }
    let mut rng = seed::rng(seed);
    Ok(Graph::from_edges(n, random_tree_edges(n, &mut rng)))
}

/// Uniformly random labelled tree, decoded from a random Prüfer sequence.
/// Distances grow as `√n`, unlike the logarithmic growth of recursive trees.
pub fn gen_uniform_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("tree needs at least one node".into()));
    }
    if n <= 2 {
        return Ok(Graph::from_edges(n, (1..n).map(|i| (0, i))));
    }
    let mut rng = seed::rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut remaining = vec![1usize; n];
    for &c in &code {
        remaining[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| remaining[i] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    Ok(Graph::from_edges(n, edges))
}

/// Tree of cliques with roughly `n_target` nodes.
///
/// A random tree on `⌈t · n_target⌉` nodes is grown first; each tree edge is
/// then expanded into a clique of size `k`, uniform on
/// `2..=⌊2(n − 1)/(tn − 1)⌋`, by adding `k − 2` fresh nodes.
pub fn gen_convex(n_target: usize, t: f64, seed: u64) -> Result<Graph> {
    if n_target < 2 || !(t >= 2.0 / n_target as f64 - 1e-12 && t <= 1.0) {
        return Err(invalid(format!("tree fraction {t} outside [2/n, 1] for n = {n_target}")));
    }
    let tree_n = ((t * n_target as f64).ceil() as usize).clamp(2, n_target);
    let upper = (2 * (n_target - 1)) / (tree_n - 1);
    let mut rng = seed::rng(seed);
    let tree = random_tree_edges(tree_n, &mut rng);
    let mut edges = Vec::new();
    let mut next = tree_n;
    for (a, b) in tree {
        let k = rng.gen_range(2..=upper.max(2));
        let mut clique = vec![a, b];
        clique.extend(next..next + k - 2);
        next += k - 2;
        for i in 0..clique.len() {
            for j in i + 1..clique.len() {
                edges.push((clique[i], clique[j]));
            }
        }
    }
    Ok(Graph::from_edges(next, edges))
}

/// Where isolated nodes are reattached.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reattach {
    /// Uniform over all other nodes.
    #[default]
    Any,
    /// Uniform over core nodes (any node when the core is a single isolated node).
    Core,
}

/// Two-block random graph: the first `⌈c · n⌉` nodes form the core.
///
/// Pairs are linked independently with the within-core, cross and
/// within-periphery densities; afterwards every isolated node is attached by
/// one edge to a uniformly chosen other node (see [`Reattach`]).
pub fn gen_core_periphery(
    n: usize,
    core_fraction: f64,
    density_core: f64,
    density_cross: f64,
    density_periphery: f64,
    reattach: Reattach,
    seed: u64,
) -> Result<Graph> {
    if n < 2 {
        return Err(invalid("core-periphery graph needs at least two nodes".into()));
    }
    if !(core_fraction > 0.0 && core_fraction < 1.0) {
        return Err(invalid(format!("core fraction {core_fraction} outside (0, 1)")));
    }
    for (name, d) in [("core", density_core), ("cross", density_cross), ("periphery", density_periphery)] {
        if !(0.0..=1.0).contains(&d) {
            return Err(invalid(format!("{name} density {d} outside [0, 1]")));
        }
    }
    let core = ((core_fraction * n as f64).ceil() as usize).min(n);
    let mut rng = seed::rng(seed);
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            let p = match (i < core, j < core) {
                (true, true) => density_core,
                (false, false) => density_periphery,
                _ => density_cross,
            };
            if rng.gen::<f64>() < p {
                edges.push((i, j));
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    for i in 0..n {
        if degree[i] == 0 {
            let pool = match reattach {
                Reattach::Core if core > 1 || i >= core => core,
                _ => n,
            };
            let mut j = rng.gen_range(0..pool - usize::from(i < pool));
            if i < pool && j >= i {
                j += 1;
            }
            edges.push((i, j));
            degree[i] += 1;
            degree[j] += 1;
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// Block densities of an empirical graph split by its c-core.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorePeripheryFit {
    pub core_fraction: f64,
    pub density_core: f64,
    pub density_cross: f64,
    pub density_periphery: f64,
}

/// Estimates generator parameters from a graph and its c-core profile.
pub fn core_periphery_fit(g: &Graph, profile: &CCoreProfile) -> CorePeripheryFit {
    let nc = profile.core.iter().filter(|&&c| c).count() as f64;
    let np = g.n() as f64 - nc;
    let (mut ec, mut ex, mut ep) = (0.0, 0.0, 0.0);
    for &(u, v) in g.edges() {
        match (profile.core[u], profile.core[v]) {
            (true, true) => ec += 1.0,
            (false, false) => ep += 1.0,
            _ => ex += 1.0,
        }
    }
    let ratio = |e: f64, pairs: f64| if pairs > 0.0 { e / pairs } else { 0.0 };
    CorePeripheryFit {
        core_fraction: nc / g.n() as f64,
        density_core: ratio(ec, nc * (nc - 1.0) / 2.0),
        density_cross: ratio(ex, nc * np),
        density_periphery: ratio(ep, np * (np - 1.0) / 2.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Er,
    LatticeRect,
    LatticeTri,
    RandomTree,
    UniformTree,
    Convex,
    CorePeriphery,
}

/// Parameters for any generator; fields a kind does not use are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    pub n: usize,
    pub avg_k: f64,
    pub side: usize,
    pub t: f64,
    pub core_fraction: f64,
    pub density_core: f64,
    pub density_cross: f64,
    pub density_periphery: f64,
    pub reattach: Reattach,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(kind: GeneratorKind, seed: u64) -> Self {
        GeneratorConfig {
            kind,
            n: 225,
            avg_k: 10.0,
            side: 15,
            t: 0.25,
            core_fraction: 0.43,
            density_core: 0.01,
            density_cross: 0.001,
            density_periphery: 0.0,
            reattach: Reattach::Any,
            seed,
        }
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Result<Graph> {
    match cfg.kind {
        GeneratorKind::Er => gen_er(cfg.n, cfg.avg_k, cfg.seed),
        GeneratorKind::LatticeRect => gen_lattice(LatticeKind::Rect, cfg.side),
        GeneratorKind::LatticeTri => gen_lattice(LatticeKind::Tri, cfg.side),
        GeneratorKind::RandomTree => gen_random_tree(cfg.n, cfg.seed),
        GeneratorKind::UniformTree => gen_uniform_tree(cfg.n, cfg.seed),
        GeneratorKind::Convex => gen_convex(cfg.n, cfg.t, cfg.seed),
        GeneratorKind::CorePeriphery => gen_core_periphery(
            cfg.n,
            cfg.core_fraction,
            cfg.density_core,
            cfg.density_cross,
            cfg.density_periphery,
            cfg.reattach,
            cfg.seed,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::{measure_convexity, pendant_bound};
    use crate::graph::{bridges, is_connected, stats};

    #[test]
    fn er_edge_counts() {
        let g = gen_er(225, 10.0, 1).unwrap();
        assert_eq!(g.m(), 1125);
        g.check_invariants().unwrap();
        let g = gen_er(2, 1.0, 1).unwrap();
        assert_eq!(g.m(), 1);
        assert!(gen_er(5, 5.0, 1).is_err());
        assert!(gen_er(5, 0.0, 1).is_err());
    }

    #[test]
    fn lattice_degrees() {
        let r = gen_lattice(LatticeKind::Rect, 15).unwrap();
        assert_eq!(r.n(), 225);
        assert!((stats(&r).avg_degree - 3.73).abs() < 0.005);
        let t = gen_lattice(LatticeKind::Tri, 15).unwrap();
        assert!((stats(&t).avg_degree - 5.48).abs() < 0.005);
        let c4 = gen_lattice(LatticeKind::Rect, 2).unwrap();
        assert_eq!((c4.n(), c4.m()), (4, 4));
        assert!(c4.degrees().iter().all(|&k| k == 2));
        assert!(gen_lattice(LatticeKind::Rect, 1).is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        for n in [1, 2, 10, 200] {
            for g in [gen_random_tree(n, n as u64).unwrap(), gen_uniform_tree(n, n as u64).unwrap()] {
                assert_eq!(g.m(), n - 1);
                assert!(is_connected(&g));
                assert_eq!(bridges(&g).len(), n - 1);
                assert_eq!(measure_convexity(&g, 3, 1).unwrap().x, 1.0);
            }
        }
    }

    fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
        let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
        let mx = lx.iter().sum::<f64>() / lx.len() as f64;
        let my = ly.iter().sum::<f64>() / ly.len() as f64;
        let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
        let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
        cov / var
    }

    fn mean_distance_over(sizes: &[usize], reps: u64, gen: impl Fn(usize, u64) -> Graph) -> Vec<f64> {
        sizes
            .iter()
            .map(|&n| (0..reps).map(|r| stats(&gen(n, r)).avg_distance).sum::<f64>() / reps as f64)
            .collect()
    }

    #[test]
    fn uniform_trees_have_sqrt_distances() {
        let sizes = [100, 400, 1600];
        let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
        let uniform = mean_distance_over(&sizes, 8, |n, s| gen_uniform_tree(n, s).unwrap());
        let slope = log_log_slope(&xs, &uniform);
        assert!((slope - 0.5).abs() < 0.08, "uniform tree slope {slope}");
        let recursive = mean_distance_over(&sizes, 8, |n, s| gen_random_tree(n, s).unwrap());
        let slope = log_log_slope(&xs, &recursive);
        assert!(slope < 0.3, "recursive tree slope {slope}");
    }

    #[test]
    fn uniform_tree_on_four_nodes_is_uniform() {
        // Cayley: 16 labelled trees on 4 nodes, each equally likely.
        let mut counts = std::collections::HashMap::new();
        let draws = 16_000;
        for s in 0..draws {
            let g = gen_uniform_tree(4, s).unwrap();
            *counts.entry(g.edges().to_vec()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 16);
        let expected = draws as f64 / 16.0;
        let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // 15 degrees of freedom, 0.999 quantile.
        assert!(chi2 < 37.7, "chi2 {chi2}");
    }

    #[test]
    fn convex_graph_with_full_tree_fraction_is_a_tree() {
        let g = gen_convex(50, 1.0, 3).unwrap();
        assert_eq!((g.n(), g.m()), (50, 49));
    }

    #[test]
    fn convex_graph_shape() {
        let g = gen_convex(1000, 0.25, 7).unwrap();
        g.check_invariants().unwrap();
        assert!(is_connected(&g));
        assert!((g.n() as f64 - 1000.0).abs() < 150.0, "n = {}", g.n());
        let s = stats(&g);
        assert!((s.avg_clustering - 0.90).abs() < 0.05, "C = {}", s.avg_clustering);
        assert!((s.avg_degree - 5.97).abs() < 0.6, "k = {}", s.avg_degree);
        assert_eq!(measure_convexity(&g, 10, 1).unwrap().x, 1.0);
        assert!(gen_convex(100, 0.01, 1).is_err());
    }

    #[test]
    fn core_reattachment_gives_clique_plus_pendants() {
        let g = gen_core_periphery(200, 0.1, 1.0, 0.0, 0.0, Reattach::Core, 5).unwrap();
        assert_eq!(g.m(), 190 + 180);
        assert!((pendant_bound(&g) - 0.9).abs() < 1e-12);
        assert!(is_connected(&g));
    }

    #[test]
    fn uniform_reattachment_links_periphery_among_itself() {
        let g = gen_core_periphery(200, 0.1, 1.0, 0.0, 0.0, Reattach::Any, 5).unwrap();
        assert!(g.degrees().iter().all(|&k| k > 0));
        // Each reattachment can cover two isolated nodes at once, so the
        // periphery is no longer purely pendant.
        let bound = pendant_bound(&g);
        assert!(bound < 0.9 && bound > 0.4, "bound {bound}");
    }

    #[test]
    fn single_isolated_core_node_still_attaches() {
        let g = gen_core_periphery(10, 0.05, 0.0, 0.0, 0.0, Reattach::Core, 1).unwrap();
        assert!(g.degrees().iter().all(|&k| k > 0));
        g.check_invariants().unwrap();
    }

    #[test]
    fn fit_recovers_block_densities() {
        let g = gen_core_periphery(300, 0.3, 0.5, 0.02, 0.0, Reattach::Any, 2).unwrap();
        let core: Vec<bool> = (0..300).map(|i| i < 90).collect();
        let profile = CCoreProfile {
            inclusion: core.iter().map(|&c| if c { 1.0 } else { 0.0 }).collect(),
            centrality: vec![0.0; 300],
            core,
            steps: 15,
            runs: 1,
        };
        let fit = core_periphery_fit(&g, &profile);
        assert!((fit.core_fraction - 0.3).abs() < 1e-12);
        assert!((fit.density_core - 0.5).abs() < 0.05);
        assert!((fit.density_cross - 0.02).abs() < 0.01);
    }

    #[test]
    fn generators_are_deterministic() {
        for kind in [GeneratorKind::Er, GeneratorKind::RandomTree, GeneratorKind::UniformTree, GeneratorKind::Convex, GeneratorKind::CorePeriphery] {
            let mut cfg = GeneratorConfig::new(kind, 99);
            cfg.n = 120;
            let a = generate(&cfg).unwrap();
            assert_eq!(a, generate(&cfg).unwrap());
            a.check_invariants().unwrap();
        }
    }
}
