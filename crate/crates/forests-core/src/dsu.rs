//! Disjoint-set forests.
//!
//! `Dsu` is the plain structure for one-shot cycle tests; `RollbackDsu`
//! skips path compression and keeps an undo log so the backtracking solver
//! can retract unions in reverse order. The rollback variant also carries a
//! per-component weight, used for the component-weight bound.

use alloc::vec;
use alloc::vec::Vec;

pub struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.rank.fill(0);
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false when they were already
    /// joined (i.e. the edge closes a cycle).
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        true
    }
}

struct UnionRecord {
    child: usize,
    parent: usize,
    rank_bumped: bool,
}

pub struct RollbackDsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
    weight: Vec<u64>,
    log: Vec<UnionRecord>,
}

impl RollbackDsu {
    pub fn new(weights: &[u64]) -> RollbackDsu {
        RollbackDsu {
            parent: (0..weights.len()).collect(),
            rank: vec![0; weights.len()],
            weight: weights.to_vec(),
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        // No path compression: compressed links could not be undone.
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn component_weight(&self, x: usize) -> u64 {
        self.weight[self.find(x)]
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        let rank_bumped = self.rank[hi] == self.rank[lo];
        if rank_bumped {
            self.rank[hi] += 1;
        }
        self.weight[hi] += self.weight[lo];
        self.log.push(UnionRecord {
            child: lo,
            parent: hi,
            rank_bumped,
        });
        true
    }

    pub fn mark(&self) -> usize {
        self.log.len()
    }

    pub fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let rec = self.log.pop().unwrap();
            self.parent[rec.child] = rec.child;
            if rec.rank_bumped {
                self.rank[rec.parent] -= 1;
            }
            self.weight[rec.parent] -= self.weight[rec.child];
        }
    }
}
