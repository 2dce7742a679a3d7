use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHABLE};

/// Sorted set of node indices with a cached induced-connectivity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    members: Vec<usize>,
    connected: bool,
}

impl NodeSet {
    pub fn new(g: &Graph, nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = nodes.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&u| u >= g.n()) {
            return Err(Error::NodeOutOfRange(bad));
        }
        let connected = induces_connected(g, &members);
        Ok(NodeSet { members, connected })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.binary_search(&u).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }
}

fn induces_connected(g: &Graph, members: &[usize]) -> bool {
    let Some(&start) = members.first() else {
        return false;
    };
    let mut inside = vec![false; g.n()];
    for &u in members {
        inside[u] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if inside[v] && !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == members.len()
}

fn same_component(g: &Graph, members: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![members[0]];
    seen[members[0]] = true;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    members.iter().all(|&u| seen[u])
}

/// Incremental geodesic closure.
///
/// Every inserted node `z` is eventually processed once: a BFS from `z`
/// (truncated once all current members are reached) followed by a backward
/// sweep over the geodesic DAG collects every node on a geodesic between `z`
/// and a member. When each member has been processed, every pair of members
/// has had its interval added, so the set is convex. Processing costs O(m)
/// per member, hence O(nm) for a full expansion run.
pub(crate) struct HullClosure<'g> {
    g: &'g Graph,
    in_set: Vec<bool>,
    members: Vec<usize>,
    processed: usize,
    dist: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    reached: Vec<u32>,
    queue: Vec<usize>,
}

impl<'g> HullClosure<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        HullClosure {
            g,
            in_set: vec![false; n],
            members: Vec::new(),
            processed: 0,
            dist: vec![UNREACHABLE; n],
            stamp: vec![0; n],
            epoch: 0,
            reached: vec![0; n],
            queue: Vec::with_capacity(n),
        }
    }

    pub fn contains(&self, u: usize) -> bool {
        self.in_set[u]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Members in insertion order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn insert(&mut self, u: usize) -> bool {
        if self.in_set[u] {
            return false;
        }
        self.in_set[u] = true;
        self.members.push(u);
        true
    }

    /// Closes the set under geodesics. Returns the number of nodes added.
    pub fn close(&mut self) -> usize {
        let before = self.members.len();
        while self.processed < self.members.len() {
            let z = self.members[self.processed];
            self.processed += 1;
            self.absorb_intervals(z);
        }
        self.members.len() - before
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.reached.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    fn absorb_intervals(&mut self, z: usize) {
        if self.members.len() == 1 {
            return;
        }
        let g = self.g;
        let ep = self.next_epoch();
        let target = self.members.len();
        self.queue.clear();
        self.queue.push(z);
        self.stamp[z] = ep;
        self.dist[z] = 0;
        let mut found = 1;
        let mut head = 0;
        // Nodes closer than the last member discovered are complete when the
        // search stops, which is all the backward sweep inspects.
        'bfs: while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let next = self.dist[u] + 1;
            for &v in g.neighbors(u) {
                if self.stamp[v] != ep {
                    self.stamp[v] = ep;
                    self.dist[v] = next;
                    self.queue.push(v);
                    if self.in_set[v] {
                        found += 1;
                        if found == target {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        for k in (0..self.queue.len()).rev() {
            let x = self.queue[k];
            if !(self.in_set[x] || self.reached[x] == ep) {
                continue;
            }
            let dx = self.dist[x];
            if dx == 0 {
                continue;
            }
            for &y in g.neighbors(x) {
                if self.stamp[y] == ep && self.dist[y] + 1 == dx {
                    self.reached[y] = ep;
                }
            }
        }
        for k in 0..self.queue.len() {
            let x = self.queue[k];
            if self.reached[x] == ep && !self.in_set[x] {
                self.in_set[x] = true;
                self.members.push(x);
            }
        }
    }
}

/// Smallest convex node set containing `seed`.
///
/// The seed need not induce a connected subgraph itself (the hull of two
/// distant nodes is the union of their geodesics), but all seed nodes must
/// lie in one connected component of `g`.
pub fn convex_hull(g: &Graph, seed: &NodeSet) -> Result<NodeSet> {
    if seed.is_empty() || !same_component(g, seed.members()) {
        return Err(Error::DisconnectedSeed);
    }
    let mut closure = HullClosure::new(g);
    for &u in seed.members() {
        closure.insert(u);
    }
    closure.close();
    let mut members = closure.members().to_vec();
    members.sort_unstable();
    Ok(NodeSet { members, connected: true })
}

/// Whether `set` is connected and equal to its own hull.
pub fn is_convex(g: &Graph, set: &NodeSet) -> bool {
    set.is_connected() && convex_hull(g, set).map(|h| h.len() == set.len()).unwrap_or(false)
}
