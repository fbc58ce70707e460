//! Isomorphism-reduced enumeration of small multigraphs and exhaustive
//! discovery of critical graphs.
//!
//! Canonical forms minimize the column-major multiplicity code over all
//! vertex permutations; at the supported sizes the factorial cost is
//! acceptable and the check is easy to audit. Generation is orderly: a graph
//! is extended one vertex at a time and kept only while its code is
//! canonical, which is hereditary for the column code, so each isomorphism
//! class is emitted exactly once.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{is_critical_with_budget, ColorMode, CriticalVerdict, DEFAULT_NODE_BUDGET};
use crate::graph::WeightedMultigraph;
use crate::potential::{potential, potential_constants, PotentialFlavor};

pub const MAX_ENUMERATION_N: usize = 8;
pub const MAX_ENUMERATION_MULT: u32 = 3;
const MAX_CANONICAL_N: usize = 10;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CensusError {
    TooLarge {
        what: &'static str,
        value: usize,
        cap: usize,
    },
}

impl fmt::Display for CensusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusError::TooLarge { what, value, cap } => {
                write!(f, "{what} = {value} exceeds cap {cap}")
            }
        }
    }
}

/// Canonical invariant of a weighted multigraph: the lexicographically
/// least (code, weights) pair over all vertex permutations, where the code
/// lists pair multiplicities column by column.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: Vec<u8>,
    pub weights: Vec<u32>,
}

pub fn canonical_form(g: &WeightedMultigraph) -> Result<CanonicalForm, CensusError> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(CensusError::TooLarge {
            what: "canonical form order",
            value: n,
            cap: MAX_CANONICAL_N,
        });
    }
    let mut mat = vec![0u8; n * n];
    for e in g.edges() {
        mat[e.u * n + e.v] = e.mult as u8;
        mat[e.v * n + e.u] = e.mult as u8;
    }
    let mut best_code: Option<(Vec<u8>, Vec<u32>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute_all(&mut perm, 0, &mut |p| {
        let mut code = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                code.push(mat[p[i] * n + p[j]]);
            }
        }
        let weights: Vec<u32> = p.iter().map(|&old| g.weight(old)).collect();
        let candidate = (code, weights);
        if best_code.as_ref().is_none_or(|best| candidate < *best) {
            best_code = Some(candidate);
        }
    });
    let (code, weights) = best_code.expect("n >= 1");
    Ok(CanonicalForm { n, code, weights })
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumerationOptions {
    /// Exact number of vertices of each emitted graph.
    pub n: usize,
    pub max_mult: u32,
    pub connected: bool,
    pub min_degree: u32,
    pub simple: bool,
}

/// Streams one representative per isomorphism class of multigraphs on
/// exactly `opts.n` vertices with `w ≡ 1`, in a deterministic order. The
/// emitted graphs carry the parameter `d`.
pub fn enumerate_graphs_with(
    opts: EnumerationOptions,
    d: u32,
    mut emit: impl FnMut(&WeightedMultigraph),
) -> Result<(), CensusError> {
    if opts.n > MAX_ENUMERATION_N {
        return Err(CensusError::TooLarge {
            what: "enumeration order",
            value: opts.n,
            cap: MAX_ENUMERATION_N,
        });
    }
    if opts.max_mult as usize > MAX_ENUMERATION_MULT as usize {
        return Err(CensusError::TooLarge {
            what: "enumeration multiplicity",
            value: opts.max_mult as usize,
            cap: MAX_ENUMERATION_MULT as usize,
        });
    }
    if opts.n == 0 || opts.max_mult == 0 {
        return Ok(());
    }
    let max_mult = if opts.simple { 1 } else { opts.max_mult };
    let mut gen = Generator {
        opts,
        d,
        max_mult: max_mult as u8,
        mat: vec![0u8; opts.n * opts.n],
        emit: &mut emit,
    };
    gen.extend(1);
    Ok(())
}

/// Convenience wrapper collecting the stream.
pub fn enumerate_graphs(
    opts: EnumerationOptions,
    d: u32,
) -> Result<Vec<WeightedMultigraph>, CensusError> {
    let mut out = Vec::new();
    enumerate_graphs_with(opts, d, |g| out.push(g.clone()))?;
    Ok(out)
}

struct Generator<'a, F: FnMut(&WeightedMultigraph)> {
    opts: EnumerationOptions,
    d: u32,
    max_mult: u8,
    mat: Vec<u8>,
    emit: &'a mut F,
}

impl<F: FnMut(&WeightedMultigraph)> Generator<'_, F> {
    /// The first `k` vertices hold a canonical graph; extend by vertex `k`.
    fn extend(&mut self, k: usize) {
        if k == self.opts.n {
            self.finish(k);
            return;
        }
        self.column(k, 0);
    }

    /// Chooses multiplicities for the pairs `(0, k) .. (k-1, k)`.
    fn column(&mut self, k: usize, row: usize) {
        if row == k {
            if self.is_canonical(k + 1) {
                self.extend(k + 1);
            }
            return;
        }
        let n = self.opts.n;
        for mult in 0..=self.max_mult {
            self.mat[row * n + k] = mult;
            self.mat[k * n + row] = mult;
            self.column(k, row + 1);
        }
        self.mat[row * n + k] = 0;
        self.mat[k * n + row] = 0;
    }

    fn finish(&mut self, k: usize) {
        let n = self.opts.n;
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                let m = self.mat[u * n + v];
                if m > 0 {
                    edges.push((u, v, m as u32));
                }
            }
        }
        let g = WeightedMultigraph::unweighted(k, self.d, &edges)
            .expect("generator emits valid graphs");
        if self.opts.connected && !g.is_connected() {
            return;
        }
        if g.min_degree() < self.opts.min_degree {
            return;
        }
        (self.emit)(&g);
    }

    /// Lexicographic minimality of the column code over all permutations of
    /// the first `k` vertices, with early abort per permutation.
    fn is_canonical(&self, k: usize) -> bool {
        let n = self.opts.n;
        let mut perm: Vec<usize> = (0..k).collect();
        let mut stack_ok = true;
        permute_all_early(
            &mut perm,
            0,
            &mut |p| {
                // Compare code(p(G)) against code(G); smaller means not canonical.
                for j in 1..k {
                    for i in 0..j {
                        let base = self.mat[i * n + j];
                        let image = self.mat[p[i] * n + p[j]];
                        match image.cmp(&base) {
                            core::cmp::Ordering::Less => return Some(false),
                            core::cmp::Ordering::Greater => return Some(true),
                            core::cmp::Ordering::Equal => {}
                        }
                    }
                }
                None
            },
            &mut stack_ok,
        );
        stack_ok
    }
}

/// Runs `f` on every permutation until it reports a decision: `Some(false)`
/// aborts the whole scan with failure, `Some(true)` prunes nothing further
/// for that permutation, `None` means fully equal.
fn permute_all_early(
    perm: &mut Vec<usize>,
    k: usize,
    f: &mut impl FnMut(&[usize]) -> Option<bool>,
    ok: &mut bool,
) {
    if !*ok {
        return;
    }
    if k == perm.len() {
        if f(perm) == Some(false) {
            *ok = false;
        }
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all_early(perm, k + 1, f, ok);
        perm.swap(k, i);
        if !*ok {
            return;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FlavorCheck {
    pub flavor: PotentialFlavor,
    pub rho_v: i64,
    pub rho_star: i64,
    pub satisfies: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusEntry {
    pub graph: WeightedMultigraph,
    /// 2-vertex critical graphs are outside the bound's scope.
    pub exempt: bool,
    pub checks: Vec<FlavorCheck>,
}

impl CensusEntry {
    pub fn satisfies_bound(&self) -> bool {
        self.exempt || self.checks.iter().all(|c| c.satisfies)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriticalCensus {
    pub d: u32,
    pub mode: ColorMode,
    pub entries: Vec<CensusEntry>,
    pub graphs_examined: u64,
    /// Solver runs that exceeded the budget; must be zero at accepted scales.
    pub unknown: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CensusOptions {
    pub n_max: usize,
    pub max_mult: u32,
    pub simple: bool,
    /// Restrict enumeration to connected graphs of minimum degree 2 (no
    /// critical graph has a vertex of smaller degree); disable to verify
    /// that claim empirically.
    pub assume_min_degree_two: bool,
    pub budget: u64,
}

impl CensusOptions {
    pub fn new(n_max: usize) -> CensusOptions {
        CensusOptions {
            n_max,
            max_mult: MAX_ENUMERATION_MULT,
            simple: false,
            assume_min_degree_two: true,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Criticality assessment of one graph for census purposes: `Ok(Some(..))`
/// for critical graphs, `Ok(None)` otherwise, `Err` when the budget tripped.
pub fn assess_for_census(
    g: &WeightedMultigraph,
    mode: ColorMode,
    budget: u64,
) -> Result<Option<CensusEntry>, crate::coloring::SolveError> {
    let report = is_critical_with_budget(g, mode, budget)?;
    if report.verdict == CriticalVerdict::Critical {
        Ok(Some(census_entry(g.clone(), g.d(), mode)))
    } else {
        Ok(None)
    }
}

/// Enumerates all graphs up to `n_max` vertices and keeps the critical ones,
/// evaluating the potential bound for every applicable flavor. Entries on at
/// least 3 vertices are expected to satisfy `ρ(V) ≤ ρ*`.
pub fn find_critical_graphs(
    opts: CensusOptions,
    d: u32,
    mode: ColorMode,
) -> Result<CriticalCensus, CensusError> {
    let mut census = CriticalCensus {
        d,
        mode,
        entries: Vec::new(),
        graphs_examined: 0,
        unknown: 0,
    };
    for n in 1..=opts.n_max {
        let enum_opts = EnumerationOptions {
            n,
            max_mult: opts.max_mult,
            connected: opts.assume_min_degree_two,
            min_degree: if opts.assume_min_degree_two { 2 } else { 0 },
            simple: opts.simple,
        };
        let mut graphs = Vec::new();
        enumerate_graphs_with(enum_opts, d, |g| graphs.push(g.clone()))?;
        for g in graphs {
            census.graphs_examined += 1;
            match assess_for_census(&g, mode, opts.budget) {
                Ok(Some(entry)) => census.entries.push(entry),
                Ok(None) => {}
                Err(_) => census.unknown += 1,
            }
        }
    }
    Ok(census)
}

fn census_entry(g: WeightedMultigraph, d: u32, mode: ColorMode) -> CensusEntry {
    let mut flavors = Vec::new();
    match mode {
        ColorMode::DegreeBounded => {
            flavors.push(PotentialFlavor::MultiDegree);
            if g.is_simple() && d >= 2 {
                flavors.push(PotentialFlavor::SimpleDegree);
            }
        }
        ColorMode::ComponentBounded => flavors.push(PotentialFlavor::MultiComponent),
    }
    let full = crate::graph::VertexSubset::full(g.n());
    let checks: Vec<FlavorCheck> = flavors
        .into_iter()
        .map(|flavor| {
            let rho_v = potential(&g, flavor, &full).expect("flavor checked above");
            let rho_star = potential_constants(flavor, d)
                .expect("valid flavor")
                .rho_star;
            FlavorCheck {
                flavor,
                rho_v,
                rho_star,
                satisfies: rho_v <= rho_star,
            }
        })
        .collect();
    CensusEntry {
        exempt: g.n() == 2,
        graph: g,
        checks,
    }
}
