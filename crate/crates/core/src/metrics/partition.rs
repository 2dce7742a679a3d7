use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Community assignment with dense ids `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    assignment: Vec<u32>,
    count: usize,
}

impl Partition {
    /// Relabels arbitrary community keys densely, in order of first use.
    pub fn from_keys<K, I>(keys: I) -> Self
    where
        K: std::hash::Hash + Eq,
        I: IntoIterator<Item = K>,
    {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let assignment = keys
            .into_iter()
            .map(|k| {
                let next = ids.len() as u32;
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Partition { assignment, count: ids.len() }
    }

    pub fn single(n: usize) -> Self {
        Partition::from_keys(std::iter::repeat_n(0, n))
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_keys(0..n)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn community(&self, node: usize) -> u32 {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }
}

/// Reads `label community` lines (`#` starts a comment). Every node of `g`
/// must appear exactly once and no other label may appear.
pub fn parse_partition(g: &Graph, text: &str) -> Result<Partition> {
    let mut keys: Vec<Option<String>> = vec![None; g.n()];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let mut fields = line.split_whitespace();
        let (label, key) = match (fields.next(), fields.next(), fields.next()) {
            (Some(l), Some(k), None) => (l, k),
            _ => return Err(parse_err("expected `label community`".into())),
        };
        let node = g.index_of(label).ok_or_else(|| parse_err(format!("unknown node {label:?}")))?;
        if keys[node].replace(key.to_string()).is_some() {
            return Err(parse_err(format!("node {label:?} assigned twice")));
        }
    }
    if let Some(missing) = keys.iter().position(Option::is_none) {
        return Err(Error::NodeSetMismatch(format!("node {:?} has no community", g.label(missing))));
    }
    Ok(Partition::from_keys(keys.into_iter().map(Option::unwrap)))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NmiNorm {
    /// `2I / (H1 + H2)`.
    #[default]
    Arithmetic,
    /// `I / max(H1, H2)`.
    Max,
}

/// Entropy of a count distribution. Counts are summed in sorted order so
/// that equal multisets give bit-identical entropies.
fn entropy(mut counts: Vec<usize>, n: f64) -> f64 {
    counts.sort_unstable();
    -counts
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            p * p.ln()
        })
        .sum::<f64>()
}

struct Entropies {
    h1: f64,
    h2: f64,
    mutual: f64,
}

fn entropies(p1: &Partition, p2: &Partition) -> Result<Entropies> {
    if p1.len() != p2.len() {
        return Err(Error::NodeSetMismatch(format!("partitions of {} and {} nodes", p1.len(), p2.len())));
    }
    if p1.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = p1.len() as f64;
    let mut c1 = vec![0usize; p1.count];
    let mut c2 = vec![0usize; p2.count];
    let mut joint: HashMap<(u32, u32), usize> = HashMap::new();
    for (&a, &b) in p1.assignment.iter().zip(&p2.assignment) {
        c1[a as usize] += 1;
        c2[b as usize] += 1;
        *joint.entry((a, b)).or_default() += 1;
    }
    let (h1, h2) = (entropy(c1, n), entropy(c2, n));
    let h12 = entropy(joint.into_values().collect(), n);
    Ok(Entropies { h1, h2, mutual: h1 + h2 - h12 })
}

/// Normalised mutual information. Two single-community partitions give 1.
pub fn nmi(p1: &Partition, p2: &Partition, norm: NmiNorm) -> Result<f64> {
    let e = entropies(p1, p2)?;
    if e.h1 == 0.0 && e.h2 == 0.0 {
        return Ok(1.0);
    }
    let v = match norm {
        NmiNorm::Arithmetic => 2.0 * e.mutual / (e.h1 + e.h2),
        NmiNorm::Max => e.mutual / e.h1.max(e.h2),
    };
    Ok(v.clamp(0.0, 1.0))
}

/// Variation of information divided by `ln n`; 0 for a single node.
pub fn nvi(p1: &Partition, p2: &Partition) -> Result<f64> {
    let e = entropies(p1, p2)?;
    if p1.len() == 1 {
        return Ok(0.0);
    }
    Ok(((e.h1 + e.h2 - 2.0 * e.mutual) / (p1.len() as f64).ln()).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartitionComparison {
    pub nmi: f64,
    pub nvi: f64,
    pub normalization: NmiNorm,
    /// Both partitions have zero entropy; NMI is set to 1 by convention.
    pub degenerate: bool,
}

pub fn compare_partitions(p1: &Partition, p2: &Partition, norm: NmiNorm) -> Result<PartitionComparison> {
    Ok(PartitionComparison {
        nmi: nmi(p1, p2, norm)?,
        nvi: nvi(p1, p2)?,
        normalization: norm,
        degenerate: p1.count == 1 && p2.count == 1,
    })
}

fn check_sizes(g: &Graph, p: &Partition) -> Result<()> {
    if g.n() != p.len() {
        return Err(Error::NodeSetMismatch(format!("graph has {} nodes, partition {}", g.n(), p.len())));
    }
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

/// Newman–Girvan modularity on the unweighted edge set.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    check_sizes(g, p)?;
    let m = g.m() as f64;
    let mut inner = vec![0usize; p.count];
    let mut degree = vec![0usize; p.count];
    for &(u, v) in g.edges() {
        if p.assignment[u] == p.assignment[v] {
            inner[p.assignment[u] as usize] += 1;
        }
    }
    for i in 0..g.n() {
        degree[p.assignment[i] as usize] += g.degree(i);
    }
    Ok(inner.iter().zip(&degree).map(|(&e, &d)| e as f64 / m - (d as f64 / (2.0 * m)).powi(2)).sum())
}

/// Share of edges joining different communities.
pub fn inter_group_fraction(g: &Graph, p: &Partition) -> Result<f64> {
    check_sizes(g, p)?;
    let cross = g.edges().iter().filter(|&&(u, v)| p.assignment[u] != p.assignment[v]).count();
    Ok(cross as f64 / g.m() as f64)
}
