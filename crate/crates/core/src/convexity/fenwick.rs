/// Fenwick tree over non-negative integer weights, used to pick a node with
/// probability proportional to its weight.
#[derive(Debug, Clone)]
pub(crate) struct Fenwick {
    tree: Vec<u64>,
    total: u64,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1], total: 0 }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn add(&mut self, i: usize, delta: u64) {
        self.total += delta;
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
    }

    pub fn sub(&mut self, i: usize, delta: u64) {
        self.total -= delta;
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] -= delta;
            k += k & k.wrapping_neg();
        }
    }

    /// Smallest index whose inclusive prefix sum exceeds `r` (`r < total`).
    pub fn find(&self, mut r: u64) -> usize {
        debug_assert!(r < self.total);
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= r {
                pos = next;
                r -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}
