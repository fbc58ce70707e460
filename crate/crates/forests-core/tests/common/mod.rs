//! Shared helpers for the randomized suites: a tiny deterministic RNG and
//! random multigraph generators. Every suite fixes its own seed so failures
//! reproduce exactly.

#![allow(dead_code)]

use forests_core::{Vertex, WeightedMultigraph};

/// splitmix64; deterministic and good enough for test sampling.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn range(&mut self, lo: u64, hi_inclusive: u64) -> u64 {
        lo + self.below(hi_inclusive - lo + 1)
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

pub struct GraphParams {
    pub n_min: usize,
    pub n_max: usize,
    pub d_min: u32,
    pub d_max: u32,
    pub max_mult: u32,
    /// Upper bound on edge classes as a multiple of n (percent).
    pub density_percent: u64,
    pub simple: bool,
    pub weighted: bool,
}

impl GraphParams {
    pub fn unit_multigraph(n_max: usize) -> GraphParams {
        GraphParams {
            n_min: 1,
            n_max,
            d_min: 1,
            d_max: 3,
            max_mult: 3,
            density_percent: 180,
            simple: false,
            weighted: false,
        }
    }

    pub fn weighted_multigraph(n_max: usize) -> GraphParams {
        GraphParams {
            weighted: true,
            ..GraphParams::unit_multigraph(n_max)
        }
    }
}

pub fn random_graph(rng: &mut Rng, p: &GraphParams) -> WeightedMultigraph {
    let n = rng.range(p.n_min as u64, p.n_max as u64) as usize;
    let d = rng.range(p.d_min as u64, p.d_max as u64) as u32;
    let weights: Vec<u32> = (0..n)
        .map(|_| {
            if p.weighted && rng.chance(1, 4) {
                rng.range(1, (d + 2) as u64) as u32
            } else {
                1
            }
        })
        .collect();
    let mut edges: Vec<(Vertex, Vertex, u32)> = Vec::new();
    if n >= 2 {
        let classes = rng.below(n as u64 * p.density_percent / 100 + 1) as usize;
        for _ in 0..classes {
            let u = rng.below(n as u64) as usize;
            let v = rng.below(n as u64) as usize;
            if u == v {
                continue;
            }
            let mult = if p.simple {
                1
            } else {
                // Mostly single edges, occasional parallels.
                match rng.below(10) {
                    0 => 3.min(p.max_mult),
                    1 | 2 => 2.min(p.max_mult),
                    _ => 1,
                }
            };
            edges.push((u, v, mult));
        }
    }
    // Merging in the constructor may push a class above the cap; clamp by
    // rebuilding from the merged classes.
    let cap = if p.simple { 1 } else { p.max_mult };
    let g = WeightedMultigraph::build(n, d, &weights, &edges).unwrap();
    let clamped: Vec<(Vertex, Vertex, u32)> = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.mult.min(cap)))
        .collect();
    WeightedMultigraph::build(n, d, &weights, &clamped).unwrap()
}

/// Rejection-samples a connected graph.
pub fn random_connected_graph(rng: &mut Rng, p: &GraphParams) -> WeightedMultigraph {
    loop {
        let g = random_graph(rng, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// A uniformly random forest (in shape) on up to `n_max` vertices, `w ≡ 1`.
pub fn random_forest(rng: &mut Rng, n_max: usize, d: u32) -> WeightedMultigraph {
    let n = rng.range(1, n_max as u64) as usize;
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.chance(4, 5) {
            let parent = rng.below(v as u64) as usize;
            edges.push((parent, v, 1));
        }
    }
    WeightedMultigraph::unweighted(n, d, &edges).unwrap()
}
