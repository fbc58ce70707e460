//! Potential functions over vertex subsets: derived constants,
//! subset potentials, boundaries, minimum-potential search, and the gap
//! audit predicates.
//!
//! A potential assigns an integer to every vertex and every edge; a subset
//! inherits `ρ(A) = Σ_{v∈A} ρ(v) − Σ_{e∈E(G[A])} ρ(e)` with edges counted by
//! multiplicity. Everything here is exact integer arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Vertex, VertexSubset, WeightedMultigraph};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum PotentialFlavor {
    /// Multigraphs, degree-bounded regime.
    MultiDegree,
    /// Simple graphs, degree-bounded regime (requires `D ≥ 2`).
    SimpleDegree,
    /// Multigraphs, component-bounded regime; the vertex formula switches on
    /// the parity of `D`.
    MultiComponent,
}

impl fmt::Display for PotentialFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialFlavor::MultiDegree => write!(f, "md"),
            PotentialFlavor::SimpleDegree => write!(f, "sd"),
            PotentialFlavor::MultiComponent => write!(f, "me"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for PotentialFlavor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The five derived scalars of a potential flavor at a given `D`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PotentialConstants {
    /// Potential of a capacity-0 vertex.
    pub rho_zero: i64,
    /// Potential of a maximum-capacity vertex.
    pub rho_plus: i64,
    /// Potential of one edge.
    pub rho_edge: i64,
    /// Bound on the potential of a critical graph on at least three vertices.
    pub rho_star: i64,
    /// Coefficient of the capacity term.
    pub alpha: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PotentialError {
    /// The flavor does not apply to this `D` or graph class.
    BadFlavorForD(&'static str),
    EmptySubset,
    TooLarge {
        n: usize,
        cap: usize,
    },
    TooSmall {
        n: usize,
        need: usize,
    },
}

impl fmt::Display for PotentialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialError::BadFlavorForD(why) => write!(f, "flavor not applicable: {why}"),
            PotentialError::EmptySubset => write!(f, "subset must be nonempty"),
            PotentialError::TooLarge { n, cap } => {
                write!(f, "graph on {n} vertices exceeds subset-search cap {cap}")
            }
            PotentialError::TooSmall { n, need } => {
                write!(f, "graph on {n} vertices is below the required {need}")
            }
        }
    }
}

pub fn potential_constants(
    flavor: PotentialFlavor,
    d: u32,
) -> Result<PotentialConstants, PotentialError> {
    if d == 0 {
        return Err(PotentialError::BadFlavorForD("D must be positive"));
    }
    let d = d as i64;
    let c = match flavor {
        PotentialFlavor::MultiDegree => PotentialConstants {
            rho_zero: 2 * d + 1,
            rho_plus: 4 * d + 3,
            rho_edge: 2 * d + 2,
            rho_star: -2,
            alpha: 2,
        },
        PotentialFlavor::SimpleDegree => {
            if d < 2 {
                return Err(PotentialError::BadFlavorForD(
                    "simple-graph flavor requires D >= 2",
                ));
            }
            PotentialConstants {
                rho_zero: 3 * d + 2,
                rho_plus: 6 * d + 5,
                rho_edge: 3 * d + 3,
                rho_star: -3,
                alpha: 3,
            }
        }
        PotentialFlavor::MultiComponent => {
            if d % 2 == 1 {
                PotentialConstants {
                    rho_zero: 2 * d + 1,
                    rho_plus: 4 * d + 3,
                    rho_edge: 2 * d + 2,
                    rho_star: -2,
                    alpha: 2,
                }
            } else {
                PotentialConstants {
                    rho_zero: 2 * d,
                    rho_plus: 4 * d + 1,
                    rho_edge: 2 * d + 1,
                    rho_star: -2,
                    alpha: 2,
                }
            }
        }
    };
    Ok(c)
}

/// The potential of a single vertex of capacity `c` under `flavor`.
pub fn vertex_potential(flavor: PotentialFlavor, d: u32, c: u32) -> i64 {
    debug_assert!(c <= d + 1);
    let (d, c) = (d as i64, c as i64);
    match flavor {
        PotentialFlavor::MultiDegree => 2 * d + 1 + 2 * c,
        PotentialFlavor::SimpleDegree => 3 * d + 2 + 3 * c,
        PotentialFlavor::MultiComponent => {
            if d % 2 == 1 {
                2 * d + 1 + 2 * c
            } else {
                // For even D the two cases c <= (D-2)/2 and c >= D/2 are
                // exhaustive over the integers.
                if 2 * c <= d - 2 {
                    2 * d + 2 * c
                } else {
                    debug_assert!(2 * c >= d);
                    2 * d + 2 * c - 1
                }
            }
        }
    }
}

pub fn edge_potential(flavor: PotentialFlavor, d: u32) -> i64 {
    let d = d as i64;
    match flavor {
        PotentialFlavor::MultiDegree => 2 * d + 2,
        PotentialFlavor::SimpleDegree => 3 * d + 3,
        PotentialFlavor::MultiComponent => {
            if d % 2 == 1 {
                2 * d + 2
            } else {
                2 * d + 1
            }
        }
    }
}

/// Checks that `flavor` applies to `g`: the simple-graph flavor needs a
/// simple graph and `D ≥ 2`.
pub fn check_flavor(g: &WeightedMultigraph, flavor: PotentialFlavor) -> Result<(), PotentialError> {
    potential_constants(flavor, g.d())?;
    if flavor == PotentialFlavor::SimpleDegree && !g.is_simple() {
        return Err(PotentialError::BadFlavorForD(
            "simple-graph flavor requires a simple graph",
        ));
    }
    Ok(())
}

/// `ρ(A)` for a nonempty subset, edges counted with multiplicity.
pub fn potential(
    g: &WeightedMultigraph,
    flavor: PotentialFlavor,
    subset: &VertexSubset,
) -> Result<i64, PotentialError> {
    check_flavor(g, flavor)?;
    if subset.is_empty() {
        return Err(PotentialError::EmptySubset);
    }
    let mut inside = vec![false; g.n()];
    for v in subset.iter() {
        assert!(v < g.n(), "subset vertex out of range");
        inside[v] = true;
    }
    let rho_e = edge_potential(flavor, g.d());
    let mut value: i64 = subset
        .iter()
        .map(|v| vertex_potential(flavor, g.d(), g.capacity(v)))
        .sum();
    for e in g.edges() {
        if inside[e.u] && inside[e.v] {
            value -= rho_e * e.mult as i64;
        }
    }
    Ok(value)
}

/// The boundary `Γ(A)`: vertices of `A` with at least one neighbor outside.
pub fn boundary(g: &WeightedMultigraph, subset: &VertexSubset) -> VertexSubset {
    let mut inside = vec![false; g.n()];
    for v in subset.iter() {
        assert!(v < g.n(), "subset vertex out of range");
        inside[v] = true;
    }
    VertexSubset::new(
        subset
            .iter()
            .filter(|&v| g.adj(v).iter().any(|&(u, _)| !inside[u]))
            .collect(),
    )
}

pub const DEFAULT_SUBSET_SEARCH_CAP: usize = 24;

/// Finds a subset of minimum potential among those with at least `min_size`
/// vertices (and at most `n-1` when `proper` is set), together with its
/// value. Exact branch-and-bound; ties break to the lexicographically least
/// vertex list.
pub fn min_potential_subset(
    g: &WeightedMultigraph,
    flavor: PotentialFlavor,
    min_size: usize,
    proper: bool,
) -> Result<(VertexSubset, i64), PotentialError> {
    min_potential_subset_capped(g, flavor, min_size, proper, DEFAULT_SUBSET_SEARCH_CAP)
}

pub fn min_potential_subset_capped(
    g: &WeightedMultigraph,
    flavor: PotentialFlavor,
    min_size: usize,
    proper: bool,
    cap: usize,
) -> Result<(VertexSubset, i64), PotentialError> {
    check_flavor(g, flavor)?;
    let n = g.n();
    if n > cap {
        return Err(PotentialError::TooLarge { n, cap });
    }
    let need = min_size + usize::from(proper);
    if n < need || min_size == 0 {
        return Err(PotentialError::TooSmall { n, need });
    }
    let rho_e = edge_potential(flavor, g.d());
    let vertex_rho: Vec<i64> = (0..n)
        .map(|v| vertex_potential(flavor, g.d(), g.capacity(v)))
        .collect();
    let mut search = SubsetSearch {
        g,
        rho_e,
        vertex_rho,
        min_size,
        proper,
        chosen: Vec::new(),
        in_chosen: vec![false; n],
        best: None,
    };
    search.descend(0, 0);
    let (vertices, value) = search.best.expect("feasible subset exists");
    Ok((VertexSubset::new(vertices), value))
}

struct SubsetSearch<'a> {
    g: &'a WeightedMultigraph,
    rho_e: i64,
    vertex_rho: Vec<i64>,
    min_size: usize,
    proper: bool,
    chosen: Vec<Vertex>,
    in_chosen: Vec<bool>,
    best: Option<(Vec<Vertex>, i64)>,
}

impl SubsetSearch<'_> {
    fn feasible_leaf(&self) -> bool {
        self.chosen.len() >= self.min_size && (!self.proper || self.chosen.len() < self.g.n())
    }

    fn record(&mut self, value: i64) {
        let better = match &self.best {
            None => true,
            Some((best_set, best_value)) => {
                value < *best_value
                    || (value == *best_value && self.chosen.as_slice() < best_set.as_slice())
            }
        };
        if better {
            self.best = Some((self.chosen.clone(), value));
        }
    }

    /// Admissible lower bound on any extension of the current subset using
    /// vertices `idx..n`: each candidate vertex contributes at least its
    /// potential minus the edge potential times all its edges into the
    /// current subset and the remaining pool.
    fn lower_bound(&self, idx: usize, value: i64) -> i64 {
        let n = self.g.n();
        let mut deltas: Vec<i64> = Vec::with_capacity(n - idx);
        for v in idx..n {
            let mut incident: i64 = 0;
            // Vertices at or beyond `idx` are all still in the pool: only
            // already-decided vertices can be excluded.
            for &(u, mult) in self.g.adj(v) {
                if self.in_chosen[u] || u >= idx {
                    incident += mult as i64;
                }
            }
            deltas.push(self.vertex_rho[v] - self.rho_e * incident);
        }
        deltas.sort_unstable();
        let needed = self.min_size.saturating_sub(self.chosen.len());
        let mut bound = value;
        for (i, d) in deltas.iter().enumerate() {
            if i < needed || *d < 0 {
                bound += d;
            }
        }
        bound
    }

    fn descend(&mut self, idx: usize, value: i64) {
        if self.feasible_leaf() {
            self.record(value);
        }
        if idx == self.g.n() {
            return;
        }
        if let Some((_, best_value)) = &self.best {
            if self.lower_bound(idx, value) > *best_value {
                return;
            }
        }
        // Include idx first so early incumbents are found on dense subsets.
        let mut added: i64 = 0;
        for &(u, mult) in self.g.adj(idx) {
            if self.in_chosen[u] {
                added += mult as i64;
            }
        }
        self.chosen.push(idx);
        self.in_chosen[idx] = true;
        self.descend(idx + 1, value + self.vertex_rho[idx] - self.rho_e * added);
        self.in_chosen[idx] = false;
        self.chosen.pop();

        self.descend(idx + 1, value);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum GapPredicate {
    /// Every proper subset `S` with `2 ≤ |S| ≤ n-1` has
    /// `ρ(S) > ρ0 + (2 + ρ*)`.
    CommonGap,
    /// Component-bounded flavor, even `D`: every such subset has `ρ(S) ≥ D`.
    WeakGap,
    /// Component-bounded flavor, even `D`: every such subset with at least
    /// two crossing edge units has `ρ(A) ≥ 2D+1`.
    StrongGap,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GapRecord {
    pub predicate: GapPredicate,
    pub threshold: i64,
    /// The inequality is strict for `CommonGap`, non-strict otherwise.
    pub strict: bool,
    /// Minimizing subset and its value; absent when no subset is in range.
    pub minimizer: Option<(VertexSubset, i64)>,
    pub holds: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GapReport {
    pub flavor_d: u32,
    pub records: Vec<GapRecord>,
}

pub const DEFAULT_GAP_AUDIT_CAP: usize = 20;

/// Evaluates the gap predicates on a concrete graph by exact subset
/// enumeration: the common gap for the degree-bounded flavors and odd-`D`
/// component flavor, the weak and strong gaps for the even-`D` component
/// flavor. Crossing edges are counted with multiplicity.
pub fn audit_gap_predicates(
    g: &WeightedMultigraph,
    flavor: PotentialFlavor,
) -> Result<GapReport, PotentialError> {
    check_flavor(g, flavor)?;
    let n = g.n();
    if n > DEFAULT_GAP_AUDIT_CAP {
        return Err(PotentialError::TooLarge {
            n,
            cap: DEFAULT_GAP_AUDIT_CAP,
        });
    }
    let consts = potential_constants(flavor, g.d())?;
    let rho_e = edge_potential(flavor, g.d());
    let even_component = flavor == PotentialFlavor::MultiComponent && g.d().is_multiple_of(2);

    // Sweep all masks once, tracking potential, inside-edge units, and the
    // degree sum incrementally over the lowest set bit.
    let total = 1usize << n;
    let mut pot = vec![0i64; total];
    let mut inside = vec![0u32; total];
    let degs: Vec<u32> = (0..n).map(|v| g.degree(v)).collect();
    let vertex_rho: Vec<i64> = (0..n)
        .map(|v| vertex_potential(flavor, g.d(), g.capacity(v)))
        .collect();

    let mut common_min: Option<(u64, i64)> = None;
    let mut strong_min: Option<(u64, i64)> = None;
    for mask in 1usize..total {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut into_rest: u32 = 0;
        for &(u, mult) in g.adj(low) {
            if rest >> u & 1 == 1 {
                into_rest += mult;
            }
        }
        pot[mask] = pot[rest] + vertex_rho[low] - rho_e * into_rest as i64;
        inside[mask] = inside[rest] + into_rest;

        let size = mask.count_ones() as usize;
        if size >= 2 && size < n {
            update_min(&mut common_min, mask as u64, pot[mask]);
            if even_component {
                let degsum: u32 = (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| degs[v])
                    .sum();
                let crossing = degsum - 2 * inside[mask];
                if crossing >= 2 {
                    update_min(&mut strong_min, mask as u64, pot[mask]);
                }
            }
        }
    }

    let mut records = Vec::new();
    if even_component {
        let d = g.d() as i64;
        records.push(gap_record(GapPredicate::WeakGap, d, false, common_min));
        records.push(gap_record(
            GapPredicate::StrongGap,
            2 * d + 1,
            false,
            strong_min,
        ));
    } else {
        let threshold = consts.rho_zero + 2 + consts.rho_star;
        records.push(gap_record(
            GapPredicate::CommonGap,
            threshold,
            true,
            common_min,
        ));
    }
    Ok(GapReport {
        flavor_d: g.d(),
        records,
    })
}

fn update_min(best: &mut Option<(u64, i64)>, mask: u64, value: i64) {
    let replace = match best {
        None => true,
        Some((best_mask, best_value)) => {
            value < *best_value || (value == *best_value && mask_lex_less(mask, *best_mask))
        }
    };
    if replace {
        *best = Some((mask, value));
    }
}

fn mask_lex_less(a: u64, b: u64) -> bool {
    VertexSubset::from_mask(a).as_slice() < VertexSubset::from_mask(b).as_slice()
}

fn gap_record(
    predicate: GapPredicate,
    threshold: i64,
    strict: bool,
    min: Option<(u64, i64)>,
) -> GapRecord {
    let minimizer = min.map(|(mask, value)| (VertexSubset::from_mask(mask), value));
    let holds = match &minimizer {
        None => true,
        Some((_, value)) => {
            if strict {
                *value > threshold
            } else {
                *value >= threshold
            }
        }
    };
    GapRecord {
        predicate,
        threshold,
        strict,
        minimizer,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedMultigraph;

    fn k_n(n: usize, d: u32) -> WeightedMultigraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 1));
            }
        }
        WeightedMultigraph::unweighted(n, d, &edges).unwrap()
    }

    #[test]
    fn constants_match_definitions() {
        let md = potential_constants(PotentialFlavor::MultiDegree, 1).unwrap();
        assert_eq!(
            (md.rho_zero, md.rho_plus, md.rho_edge, md.rho_star, md.alpha),
            (3, 7, 4, -2, 2)
        );
        let sd = potential_constants(PotentialFlavor::SimpleDegree, 2).unwrap();
        assert_eq!(
            (sd.rho_zero, sd.rho_plus, sd.rho_edge, sd.rho_star, sd.alpha),
            (8, 17, 9, -3, 3)
        );
        let me = potential_constants(PotentialFlavor::MultiComponent, 2).unwrap();
        assert_eq!(
            (me.rho_zero, me.rho_plus, me.rho_edge, me.rho_star, me.alpha),
            (4, 9, 5, -2, 2)
        );
    }

    #[test]
    fn simple_flavor_needs_d_at_least_two() {
        assert!(matches!(
            potential_constants(PotentialFlavor::SimpleDegree, 1),
            Err(PotentialError::BadFlavorForD(_))
        ));
    }

    #[test]
    fn subset_potentials() {
        let k3 = k_n(3, 1);
        assert_eq!(
            potential(&k3, PotentialFlavor::MultiDegree, &VertexSubset::full(3)).unwrap(),
            9
        );
        let triple = WeightedMultigraph::unweighted(2, 1, &[(0, 1, 3)]).unwrap();
        assert_eq!(
            potential(
                &triple,
                PotentialFlavor::MultiDegree,
                &VertexSubset::full(2)
            )
            .unwrap(),
            2
        );
        let lone = WeightedMultigraph::build(1, 2, &[4], &[]).unwrap();
        assert_eq!(
            potential(
                &lone,
                PotentialFlavor::MultiComponent,
                &VertexSubset::full(1)
            )
            .unwrap(),
            4
        );
    }

    #[test]
    fn boundary_examples() {
        let path = WeightedMultigraph::unweighted(3, 1, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(boundary(&path, &VertexSubset::full(3)).is_empty());
        assert_eq!(
            boundary(&path, &VertexSubset::new(vec![0, 1])).as_slice(),
            &[1]
        );

        let star =
            WeightedMultigraph::unweighted(4, 1, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert_eq!(
            boundary(&star, &VertexSubset::new(vec![0, 1])).as_slice(),
            &[0]
        );
    }

    #[test]
    fn min_potential_finds_the_parallel_pair() {
        // Triple-edge pair plus a pendant vertex on vertex 1.
        let g = WeightedMultigraph::unweighted(3, 1, &[(0, 1, 3), (1, 2, 1)]).unwrap();
        let (subset, value) =
            min_potential_subset(&g, PotentialFlavor::MultiDegree, 2, true).unwrap();
        assert_eq!(subset.as_slice(), &[0, 1]);
        assert_eq!(value, 2);
    }

    #[test]
    fn min_potential_on_triangle() {
        let k3 = k_n(3, 1);
        let (subset, value) =
            min_potential_subset(&k3, PotentialFlavor::MultiDegree, 2, true).unwrap();
        assert_eq!(value, 10);
        assert_eq!(subset.as_slice(), &[0, 1]);
    }

    #[test]
    fn gap_audit_on_k4() {
        // Proper subsets of K4 at D=1: triangles have potential 9, adjacent
        // pairs 10, so the common-gap minimum is 9 > 3.
        let k4 = k_n(4, 1);
        let report = audit_gap_predicates(&k4, PotentialFlavor::MultiDegree).unwrap();
        assert_eq!(report.records.len(), 1);
        let rec = &report.records[0];
        assert_eq!(rec.predicate, GapPredicate::CommonGap);
        assert_eq!(rec.threshold, 3);
        let (subset, value) = rec.minimizer.clone().unwrap();
        assert_eq!(value, 9);
        assert_eq!(subset.as_slice(), &[0, 1, 2]);
        assert!(rec.holds);
    }

    #[test]
    fn gap_audit_degenerate_range() {
        // Single edge plus isolated vertex: only 2-subsets are in range.
        let g = WeightedMultigraph::unweighted(3, 1, &[(0, 1, 1)]).unwrap();
        let report = audit_gap_predicates(&g, PotentialFlavor::MultiDegree).unwrap();
        let rec = &report.records[0];
        let (_, value) = rec.minimizer.clone().unwrap();
        assert_eq!(value, 10); // the edge pair: 7 + 7 - 4
        assert!(rec.holds);
    }
}
