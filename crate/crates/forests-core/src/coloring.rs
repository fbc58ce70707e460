//! Exact decision, verification, and criticality testing for the two
//! forest-partition regimes.
//!
//! A partition `(M, F)` is accepted when both classes induce forests (any
//! parallel class inside one class is a 2-cycle) and the mode's extra
//! condition holds: in the degree-bounded regime every `v ∈ M` satisfies
//! `w(v) + |N(v) ∩ M| ≤ D+1`, in the component-bounded regime every
//! component of the induced subgraph on `M` has total weight at most `D+1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dsu::{Dsu, RollbackDsu};
use crate::graph::{Vertex, VertexSubset, WeightedMultigraph};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ColorMode {
    /// `(D,F)`: the first forest has bounded degree.
    DegreeBounded,
    /// `(e,F)`: components of the first forest have bounded total weight.
    ComponentBounded,
}

impl fmt::Display for ColorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorMode::DegreeBounded => write!(f, "dff"),
            ColorMode::ComponentBounded => write!(f, "eff"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ColorMode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassId {
    M,
    F,
}

impl ClassId {
    fn other(self) -> ClassId {
        match self {
            ClassId::M => ClassId::F,
            ClassId::F => ClassId::M,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Partition {
    m: VertexSubset,
    f: VertexSubset,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PartitionError {
    NotAPartition,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "the two classes do not partition the vertex set")
    }
}

impl Partition {
    pub fn new(n: usize, m: VertexSubset, f: VertexSubset) -> Result<Partition, PartitionError> {
        let mut seen = vec![false; n];
        for v in m.iter().chain(f.iter()) {
            if v >= n || seen[v] {
                return Err(PartitionError::NotAPartition);
            }
            seen[v] = true;
        }
        if seen.iter().all(|&s| s) {
            Ok(Partition { m, f })
        } else {
            Err(PartitionError::NotAPartition)
        }
    }

    /// Builds the partition whose first class is `m`; the second class is the
    /// complement in `0..n`.
    pub fn from_m_set(n: usize, m: VertexSubset) -> Partition {
        debug_assert!(m.as_slice().last().is_none_or(|&v| v < n));
        let f = VertexSubset::new((0..n).filter(|&v| !m.contains(v)).collect());
        Partition { m, f }
    }

    pub fn m(&self) -> &VertexSubset {
        &self.m
    }

    pub fn f(&self) -> &VertexSubset {
        &self.f
    }

    pub fn class_of(&self, v: Vertex) -> ClassId {
        if self.m.contains(v) {
            ClassId::M
        } else {
            ClassId::F
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum PartitionViolation {
    /// A cycle inside one class; a parallel class inside the class is
    /// witnessed by its two endpoints.
    ClassCycle { in_m: bool, cycle: Vec<Vertex> },
    /// Degree-bounded regime: `w(v) + |N(v) ∩ M| > D+1`.
    OverloadedVertex { v: Vertex, load: u32 },
    /// Component-bounded regime: a component of the first forest with total
    /// weight above `D+1`.
    OverweightComponent { vertices: Vec<Vertex>, weight: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    pub accepted: bool,
    pub violations: Vec<PartitionViolation>,
}

/// Checks a partition against the mode's constraints, listing every violated
/// constraint. Violations are data, not errors.
pub fn verify_partition(
    g: &WeightedMultigraph,
    p: &Partition,
    mode: ColorMode,
) -> VerificationReport {
    let n = g.n();
    let mut in_m = vec![false; n];
    for v in p.m().iter() {
        in_m[v] = true;
    }
    let mut violations = Vec::new();
    for &m_side in &[true, false] {
        collect_class_cycles(g, &in_m, m_side, &mut violations);
    }
    match mode {
        ColorMode::DegreeBounded => {
            for v in p.m().iter() {
                let neighbors_in_m = g.adj(v).iter().filter(|&&(u, _)| in_m[u]).count() as u32;
                let load = g.weight(v) + neighbors_in_m;
                if load > g.d() + 1 {
                    violations.push(PartitionViolation::OverloadedVertex { v, load });
                }
            }
        }
        ColorMode::ComponentBounded => {
            let mut dsu = Dsu::new(n);
            for e in g.edges() {
                if in_m[e.u] && in_m[e.v] {
                    dsu.union(e.u, e.v);
                }
            }
            let mut comp_weight = vec![0u64; n];
            for v in p.m().iter() {
                let r = dsu.find(v);
                comp_weight[r] += g.weight(v) as u64;
            }
            // Components listed by their least vertex, in label order.
            for v in p.m().iter() {
                if dsu.find(v) == v && comp_weight[v] > (g.d() + 1) as u64 {
                    let vertices: Vec<Vertex> =
                        p.m().iter().filter(|&u| dsu.find(u) == v).collect();
                    violations.push(PartitionViolation::OverweightComponent {
                        vertices,
                        weight: comp_weight[v],
                    });
                }
            }
        }
    }
    VerificationReport {
        accepted: violations.is_empty(),
        violations,
    }
}

/// One witness cycle per independent cycle of the class: every edge that
/// closes a cycle during the union-find scan yields the tree path between
/// its endpoints plus itself.
fn collect_class_cycles(
    g: &WeightedMultigraph,
    in_m: &[bool],
    m_side: bool,
    out: &mut Vec<PartitionViolation>,
) {
    let n = g.n();
    let mut dsu = Dsu::new(n);
    let mut tree_adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for e in g.edges() {
        if in_m[e.u] == m_side && in_m[e.v] == m_side {
            if e.mult >= 2 {
                out.push(PartitionViolation::ClassCycle {
                    in_m: m_side,
                    cycle: vec![e.u, e.v],
                });
            }
            if dsu.union(e.u, e.v) {
                tree_adj[e.u].push(e.v);
                tree_adj[e.v].push(e.u);
            } else if e.mult == 1 {
                let path = tree_path(&tree_adj, e.u, e.v, n);
                out.push(PartitionViolation::ClassCycle {
                    in_m: m_side,
                    cycle: path,
                });
            }
        }
    }
}

fn tree_path(tree_adj: &[Vec<Vertex>], from: Vertex, to: Vertex, n: usize) -> Vec<Vertex> {
    let mut prev = vec![usize::MAX; n];
    let mut queue = vec![from];
    prev[from] = from;
    let mut qi = 0;
    while qi < queue.len() {
        let v = queue[qi];
        qi += 1;
        if v == to {
            break;
        }
        for &u in &tree_adj[v] {
            if prev[u] == usize::MAX {
                prev[u] = v;
                queue.push(u);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    Satisfiable(Partition),
    Unsatisfiable,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoringResult {
    pub outcome: Outcome,
    /// Branch decisions explored.
    pub nodes: u64,
}

impl ColoringResult {
    pub fn witness(&self) -> Option<&Partition> {
        match &self.outcome {
            Outcome::Satisfiable(p) => Some(p),
            Outcome::Unsatisfiable => None,
        }
    }

    pub fn is_satisfiable(&self) -> bool {
        self.witness().is_some()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveError {
    /// The node budget tripped: the answer is unknown, never wrong.
    BudgetExceeded {
        nodes: u64,
    },
    TooLarge {
        n: usize,
        cap: usize,
    },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::BudgetExceeded { nodes } => {
                write!(f, "node budget exceeded after {nodes} nodes")
            }
            SolveError::TooLarge { n, cap } => {
                write!(f, "graph on {n} vertices exceeds enumeration cap {cap}")
            }
        }
    }
}

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_ENUMERATION_CAP: usize = 22;

/// Decides colorability by exhaustive backtracking with incremental forest
/// maintenance, budget pruning, and unit propagation on parallel edges.
pub fn solve(g: &WeightedMultigraph, mode: ColorMode) -> Result<ColoringResult, SolveError> {
    solve_with_budget(g, mode, DEFAULT_NODE_BUDGET)
}

pub fn solve_with_budget(
    g: &WeightedMultigraph,
    mode: ColorMode,
    budget: u64,
) -> Result<ColoringResult, SolveError> {
    let mut solver = Solver::new(g, mode, budget);
    let outcome = solver.run()?;
    let result = ColoringResult {
        outcome,
        nodes: solver.nodes,
    };
    if let Some(p) = result.witness() {
        debug_assert!(verify_partition(g, p, mode).accepted);
    }
    Ok(result)
}

struct Solver<'a> {
    g: &'a WeightedMultigraph,
    mode: ColorMode,
    limit: u32, // D + 1
    order: Vec<Vertex>,
    assign: Vec<Option<ClassId>>,
    dsu_m: RollbackDsu,
    dsu_f: RollbackDsu,
    /// Per vertex: number of distinct neighbors currently assigned to M.
    m_neighbors: Vec<u32>,
    trail: Vec<Vertex>,
    queue: Vec<(Vertex, ClassId)>,
    nodes: u64,
    budget: u64,
}

impl<'a> Solver<'a> {
    fn new(g: &'a WeightedMultigraph, mode: ColorMode, budget: u64) -> Self {
        let n = g.n();
        let mut order: Vec<Vertex> = (0..n).collect();
        // Most constrained first: descending degree, ties by label.
        order.sort_unstable_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
        let weights: Vec<u64> = (0..n).map(|v| g.weight(v) as u64).collect();
        Solver {
            g,
            mode,
            limit: g.d() + 1,
            order,
            assign: vec![None; n],
            dsu_m: RollbackDsu::new(&weights),
            dsu_f: RollbackDsu::new(&weights),
            m_neighbors: vec![0; n],
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Result<Outcome, SolveError> {
        // Capacity-0 vertices can never sit in M, in either regime.
        let forced: Vec<Vertex> = (0..self.g.n())
            .filter(|&v| self.g.capacity(v) == 0)
            .collect();
        for v in forced {
            if self.assign[v].is_none() && !self.place(v, ClassId::F) {
                return Ok(Outcome::Unsatisfiable);
            }
        }
        if self.search()? {
            let m = VertexSubset::new(
                (0..self.g.n())
                    .filter(|&v| self.assign[v] == Some(ClassId::M))
                    .collect(),
            );
            Ok(Outcome::Satisfiable(Partition::from_m_set(self.g.n(), m)))
        } else {
            Ok(Outcome::Unsatisfiable)
        }
    }

    fn search(&mut self) -> Result<bool, SolveError> {
        let next = self
            .order
            .iter()
            .copied()
            .find(|&v| self.assign[v].is_none());
        let Some(v) = next else {
            return Ok(true);
        };
        for class in [ClassId::M, ClassId::F] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SolveError::BudgetExceeded { nodes: self.nodes });
            }
            let marks = (self.trail.len(), self.dsu_m.mark(), self.dsu_f.mark());
            if self.place(v, class) && self.search()? {
                return Ok(true);
            }
            self.rollback(marks);
        }
        Ok(false)
    }

    /// Assigns `v` to `class` and runs unit propagation. Returns false on
    /// conflict; all side effects stay logged so the caller can roll back.
    fn place(&mut self, v: Vertex, class: ClassId) -> bool {
        self.queue.clear();
        self.queue.push((v, class));
        let mut qi = 0;
        while qi < self.queue.len() {
            let (x, c) = self.queue[qi];
            qi += 1;
            if let Some(cur) = self.assign[x] {
                if cur != c {
                    return false;
                }
                continue;
            }
            if c == ClassId::M && self.g.capacity(x) == 0 {
                return false;
            }
            self.assign[x] = Some(c);
            self.trail.push(x);
            if c == ClassId::M && self.mode == ColorMode::DegreeBounded {
                // Bump all neighbor counters first so rollback stays symmetric.
                for &(u, _) in self.g.adj(x) {
                    self.m_neighbors[u] += 1;
                }
            }
            let mut ok = true;
            for &(u, mult) in self.g.adj(x) {
                if self.assign[u] == Some(c) {
                    if mult >= 2 {
                        ok = false;
                    } else {
                        let dsu = match c {
                            ClassId::M => &mut self.dsu_m,
                            ClassId::F => &mut self.dsu_f,
                        };
                        if !dsu.union(x, u) {
                            ok = false;
                        }
                    }
                } else if mult >= 2 && self.assign[u].is_none() {
                    self.queue.push((u, c.other()));
                }
            }
            if !ok {
                return false;
            }
            if c == ClassId::M {
                match self.mode {
                    ColorMode::DegreeBounded => {
                        if self.g.weight(x) + self.m_neighbors[x] > self.limit {
                            return false;
                        }
                        for &(u, _) in self.g.adj(x) {
                            if self.assign[u] == Some(ClassId::M)
                                && self.g.weight(u) + self.m_neighbors[u] > self.limit
                            {
                                return false;
                            }
                        }
                        // A saturated M-vertex forces its open neighbors to F.
                        self.force_f_around(x);
                        let adj_len = self.g.adj(x).len();
                        for i in 0..adj_len {
                            let (u, _) = self.g.adj(x)[i];
                            if self.assign[u] == Some(ClassId::M) {
                                self.force_f_around(u);
                            }
                        }
                    }
                    ColorMode::ComponentBounded => {
                        if self.dsu_m.component_weight(x) > self.limit as u64 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn force_f_around(&mut self, v: Vertex) {
        if self.g.weight(v) + self.m_neighbors[v] == self.limit {
            for &(u, _) in self.g.adj(v) {
                if self.assign[u].is_none() {
                    self.queue.push((u, ClassId::F));
                }
            }
        }
    }

    fn rollback(&mut self, marks: (usize, usize, usize)) {
        let (trail_mark, m_mark, f_mark) = marks;
        while self.trail.len() > trail_mark {
            let x = self.trail.pop().unwrap();
            let class = self.assign[x].take().unwrap();
            if class == ClassId::M && self.mode == ColorMode::DegreeBounded {
                for &(u, _) in self.g.adj(x) {
                    self.m_neighbors[u] -= 1;
                }
            }
        }
        self.dsu_m.rollback(m_mark);
        self.dsu_f.rollback(f_mark);
    }
}

/// Number of ordered partitions `(M, F)` accepted by `verify_partition`,
/// by exhaustive enumeration.
pub fn count_colorings(g: &WeightedMultigraph, mode: ColorMode) -> Result<u64, SolveError> {
    count_colorings_capped(g, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn count_colorings_capped(
    g: &WeightedMultigraph,
    mode: ColorMode,
    cap: usize,
) -> Result<u64, SolveError> {
    let n = g.n();
    if n > cap {
        return Err(SolveError::TooLarge { n, cap });
    }
    let mut count = 0;
    let mut scratch = EnumScratch::new(n);
    for mask in 0..(1u64 << n) {
        if scratch.partition_ok(g, mask, mode) {
            count += 1;
        }
    }
    Ok(count)
}

/// Reusable buffers for mask-based partition checks.
pub(crate) struct EnumScratch {
    dsu: Dsu,
    load: Vec<u32>,
    weight: Vec<u64>,
}

impl EnumScratch {
    pub(crate) fn new(n: usize) -> EnumScratch {
        EnumScratch {
            dsu: Dsu::new(n),
            load: vec![0; n],
            weight: vec![0; n],
        }
    }

    /// Checks the partition with M = set bits of `mask`.
    pub(crate) fn partition_ok(
        &mut self,
        g: &WeightedMultigraph,
        mask: u64,
        mode: ColorMode,
    ) -> bool {
        let n = g.n();
        let limit = (g.d() + 1) as u64;
        self.dsu.reset();
        self.load[..n].fill(0);
        for e in g.edges() {
            if (mask >> e.u) & 1 == (mask >> e.v) & 1 {
                if e.mult >= 2 || !self.dsu.union(e.u, e.v) {
                    return false;
                }
                if (mask >> e.u) & 1 == 1 {
                    self.load[e.u] += 1;
                    self.load[e.v] += 1;
                }
            }
        }
        match mode {
            ColorMode::DegreeBounded => {
                for v in 0..n {
                    if (mask >> v) & 1 == 1 && (g.weight(v) + self.load[v]) as u64 > limit {
                        return false;
                    }
                }
            }
            ColorMode::ComponentBounded => {
                self.weight[..n].fill(0);
                for v in 0..n {
                    if (mask >> v) & 1 == 1 {
                        let r = self.dsu.find(v);
                        self.weight[r] += g.weight(v) as u64;
                        if self.weight[r] > limit {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CriticalVerdict {
    Colorable,
    Critical,
    UncolorableNotCritical,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CriticalityReport {
    pub colorable: bool,
    /// An edge whose deletion leaves the graph uncolorable, when one exists.
    pub failing_edge: Option<(Vertex, Vertex)>,
    pub verdict: CriticalVerdict,
    pub nodes: u64,
}

/// Criticality via single-edge deletions: colorability is hereditary under
/// taking subgraphs (restricting a partition keeps both classes forests and
/// only relaxes the degree and weight constraints), so a graph is critical
/// iff it is uncolorable and every single-unit edge deletion is colorable.
pub fn is_critical(
    g: &WeightedMultigraph,
    mode: ColorMode,
) -> Result<CriticalityReport, SolveError> {
    is_critical_with_budget(g, mode, DEFAULT_NODE_BUDGET)
}

pub fn is_critical_with_budget(
    g: &WeightedMultigraph,
    mode: ColorMode,
    budget: u64,
) -> Result<CriticalityReport, SolveError> {
    let base = solve_with_budget(g, mode, budget)?;
    let mut nodes = base.nodes;
    if base.is_satisfiable() {
        return Ok(CriticalityReport {
            colorable: true,
            failing_edge: None,
            verdict: CriticalVerdict::Colorable,
            nodes,
        });
    }
    // An uncolorable graph with an isolated vertex is never critical:
    // dropping the vertex leaves a proper uncolorable subgraph that no edge
    // deletion reaches.
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return Ok(CriticalityReport {
            colorable: false,
            failing_edge: None,
            verdict: CriticalVerdict::UncolorableNotCritical,
            nodes,
        });
    }
    // Deleting any unit of a parallel class yields the same subgraph, so one
    // deletion per class covers every edge unit.
    for e in g.edges() {
        let sub = g.delete_edge_unit(e.u, e.v);
        let res = solve_with_budget(&sub, mode, budget)?;
        nodes += res.nodes;
        if !res.is_satisfiable() {
            return Ok(CriticalityReport {
                colorable: false,
                failing_edge: Some((e.u, e.v)),
                verdict: CriticalVerdict::UncolorableNotCritical,
                nodes,
            });
        }
    }
    Ok(CriticalityReport {
        colorable: false,
        failing_edge: None,
        verdict: CriticalVerdict::Critical,
        nodes,
    })
}
