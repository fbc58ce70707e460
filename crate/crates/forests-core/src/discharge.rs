//! Initial charges, the single discharging rule, conservation checks, and
//! executable audits of the reducible-configuration predicates.
//!
//! The initial charge of a vertex is `ch(u) = ρ(u) − d(u)·ρe/2`; summed over
//! all vertices this telescopes to `ρ(V(G))`. The one discharging rule
//! applies in the component-bounded regime with odd `D`: every 3-vertex of
//! weight `(D+1)/2` sends `1/3` along each incident edge. Configuration
//! audits report which structural conclusions hold on a concrete graph; they
//! never infer criticality themselves.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{ColorMode, Partition};
use crate::graph::{Vertex, VertexSubset, WeightedMultigraph};
use crate::potential::{
    edge_potential, potential, vertex_potential, PotentialError, PotentialFlavor,
};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Stage {
    Initial,
    AfterR1,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ChargeLedger {
    pub stage: Stage,
    pub charges: Vec<Rational>,
    pub total: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DischargeError {
    Flavor(PotentialError),
    /// The discharging rule needs the component-bounded flavor with odd `D`.
    WrongParity,
}

impl fmt::Display for DischargeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DischargeError::Flavor(e) => write!(f, "{e}"),
            DischargeError::WrongParity => {
                write!(f, "the discharging rule applies only for odd D")
            }
        }
    }
}

impl From<PotentialError> for DischargeError {
    fn from(e: PotentialError) -> Self {
        DischargeError::Flavor(e)
    }
}

/// `ch(u) = ρ(u) − d(u)·ρe/2` for every vertex; the total is asserted to
/// equal `ρ(V(G))`.
pub fn initial_charges(
    g: &WeightedMultigraph,
    flavor: PotentialFlavor,
) -> Result<ChargeLedger, DischargeError> {
    crate::potential::check_flavor(g, flavor)?;
    let rho_e = edge_potential(flavor, g.d());
    let charges: Vec<Rational> = (0..g.n())
        .map(|v| {
            Rational::new(
                2 * vertex_potential(flavor, g.d(), g.capacity(v)) - g.degree(v) as i64 * rho_e,
                2,
            )
        })
        .collect();
    let total = charges.iter().fold(Rational::ZERO, |acc, &c| acc + c);
    let rho_v = potential(g, flavor, &VertexSubset::full(g.n()))?;
    assert_eq!(total, Rational::integer(rho_v));
    Ok(ChargeLedger {
        stage: Stage::Initial,
        charges,
        total,
    })
}

/// The set `T`: 3-vertices of weight `(D+1)/2` (odd `D` only; empty
/// otherwise by definition).
pub fn t_set(g: &WeightedMultigraph) -> VertexSubset {
    if g.d().is_multiple_of(2) {
        return VertexSubset::default();
    }
    VertexSubset::new(
        (0..g.n())
            .filter(|&v| g.degree(v) == 3 && 2 * g.weight(v) == g.d() + 1)
            .collect(),
    )
}

/// `j(v)`: edge units joining `v` to vertices of `T`.
pub fn t_incidence(g: &WeightedMultigraph, v: Vertex) -> u32 {
    let t = t_set(g);
    g.adj(v)
        .iter()
        .filter(|&&(u, _)| t.contains(u))
        .map(|&(_, m)| m)
        .sum()
}

/// Applies the discharging rule: every `T`-vertex sends `1/3` along each
/// incident edge (with multiplicity). Requires the component-bounded flavor
/// with odd `D`; conservation of the total is asserted.
pub fn discharge_r1(g: &WeightedMultigraph) -> Result<ChargeLedger, DischargeError> {
    if g.d().is_multiple_of(2) {
        return Err(DischargeError::WrongParity);
    }
    let initial = initial_charges(g, PotentialFlavor::MultiComponent)?;
    let t = t_set(g);
    let third = Rational::new(1, 3);
    let mut charges = initial.charges.clone();
    for e in g.edges() {
        let shift = third * e.mult as i64;
        if t.contains(e.u) {
            charges[e.u] = charges[e.u] - shift;
            charges[e.v] = charges[e.v] + shift;
        }
        if t.contains(e.v) {
            charges[e.v] = charges[e.v] - shift;
            charges[e.u] = charges[e.u] + shift;
        }
    }
    let total = charges.iter().fold(Rational::ZERO, |acc, &c| acc + c);
    assert_eq!(total, initial.total);
    Ok(ChargeLedger {
        stage: Stage::AfterR1,
        charges,
        total,
    })
}

/// Identifiers for the structural checks, named by what they test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CheckId {
    /// Minimum degree 2, and 2-vertices have capacity 0.
    MinDegreeTwo,
    /// 3-vertices of positive capacity avoid parallel edges.
    ThreeVertexNoMultiEdge,
    /// Adjacent 3-vertices have weights summing to at least `D+2`.
    AdjacentThreeVertexWeights,
    /// Degree-bounded regime, `D ≥ 2`: 3-vertices have capacity at most 1.
    ThreeVertexSmallCapacity,
    /// Component-bounded regime: 3-vertices weigh at least `(D+1)/2`.
    ThreeVertexMinWeight,
    /// Component-bounded, odd `D`: no light 4-vertex sees only `T`.
    FourVertexAllLightNeighbors,
    /// Component-bounded, odd `D`: every 2-vertex lies in a parallel pair.
    TwoVertexInMultiEdge,
    /// Component-bounded, even `D`: at most one cut edge.
    CutEdgeCount,
    /// Component-bounded, even `D`: cut-edge sides have potential `D`, and
    /// endpoints have weight 1 and degree at least 4.
    CutEdgeEndpoints,
    /// Component-bounded, even `D`: every coloring of a cut-edge side puts
    /// the endpoint in the bounded class with component weight at least
    /// `(D+2)/2`.
    CutEdgeSideColorings,
    /// Component-bounded, odd `D`: the deficiency sum `Σ (3 − j(v))` over
    /// subsets of the complement of `T` stays at most 3.
    DeficiencySum,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum AuditWitness {
    Vertex { v: Vertex },
    Edge { u: Vertex, v: Vertex },
    Subset { vertices: VertexSubset },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AuditEntry {
    pub check: CheckId,
    pub witnesses: Vec<AuditWitness>,
    pub holds: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConfigAudit {
    pub entries: Vec<AuditEntry>,
}

impl ConfigAudit {
    pub fn entry(&self, check: CheckId) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.check == check)
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

const SIDE_COLORING_CAP: usize = 20;

/// Runs every configuration audit applicable to the mode and parity of `D`.
/// Witness lists hold the violating items, except for `CutEdgeCount`, which
/// lists every cut edge found (the census), and holds iff there is at most
/// one.
pub fn audit_configurations(
    g: &WeightedMultigraph,
    _flavor: PotentialFlavor,
    mode: ColorMode,
) -> ConfigAudit {
    // The potential-based sub-audits always use the component flavor; the
    // flavor argument is kept for interface symmetry with the charge ops.
    let d = g.d();
    let mut entries = Vec::new();

    entries.push(vertex_check(g, CheckId::MinDegreeTwo, |g, v| {
        g.degree(v) < 2 || (g.degree(v) == 2 && g.capacity(v) != 0)
    }));
    entries.push(vertex_check(g, CheckId::ThreeVertexNoMultiEdge, |g, v| {
        g.degree(v) == 3 && g.capacity(v) >= 1 && g.adj(v).iter().any(|&(_, mult)| mult >= 2)
    }));
    entries.push(edge_check(
        g,
        CheckId::AdjacentThreeVertexWeights,
        |g, u, v| g.degree(u) == 3 && g.degree(v) == 3 && g.weight(u) + g.weight(v) < d + 2,
    ));

    match mode {
        ColorMode::DegreeBounded => {
            if d >= 2 {
                entries.push(vertex_check(
                    g,
                    CheckId::ThreeVertexSmallCapacity,
                    |g, v| g.degree(v) == 3 && g.capacity(v) > 1,
                ));
            }
        }
        ColorMode::ComponentBounded => {
            entries.push(vertex_check(g, CheckId::ThreeVertexMinWeight, |g, v| {
                g.degree(v) == 3 && 2 * g.weight(v) < d + 1
            }));
            if d % 2 == 1 {
                let t = t_set(g);
                entries.push(vertex_check(
                    g,
                    CheckId::FourVertexAllLightNeighbors,
                    |g, v| {
                        g.degree(v) == 4
                            && 2 * g.weight(v) <= d + 1
                            && g.adj(v).iter().all(|&(u, _)| t.contains(u))
                    },
                ));
                entries.push(vertex_check(g, CheckId::TwoVertexInMultiEdge, |g, v| {
                    g.degree(v) == 2 && g.adj(v).iter().all(|&(_, mult)| mult < 2)
                }));
                entries.push(deficiency_sum_entry(g, &t));
            } else {
                let cut_edges = bridges(g);
                entries.push(AuditEntry {
                    check: CheckId::CutEdgeCount,
                    holds: cut_edges.len() <= 1,
                    witnesses: cut_edges
                        .iter()
                        .map(|&(u, v)| AuditWitness::Edge { u, v })
                        .collect(),
                });
                entries.push(cut_edge_endpoint_entry(g, &cut_edges));
                entries.push(cut_edge_side_coloring_entry(g, &cut_edges));
            }
        }
    }

    ConfigAudit { entries }
}

fn vertex_check(
    g: &WeightedMultigraph,
    check: CheckId,
    violates: impl Fn(&WeightedMultigraph, Vertex) -> bool,
) -> AuditEntry {
    let witnesses: Vec<AuditWitness> = (0..g.n())
        .filter(|&v| violates(g, v))
        .map(|v| AuditWitness::Vertex { v })
        .collect();
    AuditEntry {
        check,
        holds: witnesses.is_empty(),
        witnesses,
    }
}

fn edge_check(
    g: &WeightedMultigraph,
    check: CheckId,
    violates: impl Fn(&WeightedMultigraph, Vertex, Vertex) -> bool,
) -> AuditEntry {
    let witnesses: Vec<AuditWitness> = g
        .edges()
        .iter()
        .filter(|e| violates(g, e.u, e.v))
        .map(|e| AuditWitness::Edge { u: e.u, v: e.v })
        .collect();
    AuditEntry {
        check,
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// `Q(A) = Σ_{v∈A} (3 − j(v))` is additive, so its maximum over `A ⊆ T'`
/// is attained at the vertices with `j(v) < 3`; the check holds iff that
/// maximum is at most 3.
fn deficiency_sum_entry(g: &WeightedMultigraph, t: &VertexSubset) -> AuditEntry {
    let mut max_subset = Vec::new();
    let mut max_q: i64 = 0;
    for v in 0..g.n() {
        if t.contains(v) {
            continue;
        }
        let j = t_incidence(g, v) as i64;
        if 3 - j > 0 {
            max_subset.push(v);
            max_q += 3 - j;
        }
    }
    let holds = max_q <= 3;
    AuditEntry {
        check: CheckId::DeficiencySum,
        witnesses: if holds {
            Vec::new()
        } else {
            vec![AuditWitness::Subset {
                vertices: VertexSubset::new(max_subset),
            }]
        },
        holds,
    }
}

/// Cut edges (bridges): single edges whose removal disconnects the graph.
/// Parallel classes are never bridges.
pub fn bridges(g: &WeightedMultigraph) -> Vec<(Vertex, Vertex)> {
    let n = g.n();
    // Arc list: two directed arcs per edge unit, paired by id ^ 1.
    let mut head: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (to, arc id)
    let mut arc_count = 0;
    let mut arc_class: Vec<usize> = Vec::new();
    for (ci, e) in g.edges().iter().enumerate() {
        for _ in 0..e.mult {
            head[e.u].push((e.v, arc_count));
            head[e.v].push((e.u, arc_count + 1));
            arc_class.push(ci);
            arc_class.push(ci);
            arc_count += 2;
        }
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    // Iterative DFS, skipping the arrival arc (not just the parent vertex)
    // so parallel edges cancel naturally.
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&(v, in_arc, idx)) = stack.last() {
            if idx < head[v].len() {
                stack.last_mut().unwrap().2 = idx + 1;
                let (to, arc) = head[v][idx];
                if arc ^ 1 == in_arc {
                    continue;
                }
                if disc[to] == usize::MAX {
                    disc[to] = timer;
                    low[to] = timer;
                    timer += 1;
                    stack.push((to, arc, 0));
                } else {
                    low[v] = low[v].min(disc[to]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        let e = &g.edges()[arc_class[in_arc]];
                        out.push((e.u, e.v));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn component_of(g: &WeightedMultigraph, start: Vertex, skip: (Vertex, Vertex)) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &(u, _) in g.adj(v) {
            if (v, u) == skip || (u, v) == skip {
                continue;
            }
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..g.n()).filter(|&v| seen[v]).collect()
}

fn cut_edge_endpoint_entry(g: &WeightedMultigraph, cut_edges: &[(Vertex, Vertex)]) -> AuditEntry {
    let mut witnesses = Vec::new();
    for &(x, y) in cut_edges {
        for (z, _other) in [(x, y), (y, x)] {
            let side = VertexSubset::new(component_of(g, z, (x, y)));
            let rho = potential(g, PotentialFlavor::MultiComponent, &side)
                .expect("component flavor applies to every multigraph");
            let side_ok = rho == g.d() as i64 && g.weight(z) == 1 && g.degree(z) >= 4;
            if !side_ok {
                witnesses.push(AuditWitness::Vertex { v: z });
            }
        }
    }
    AuditEntry {
        check: CheckId::CutEdgeEndpoints,
        holds: witnesses.is_empty(),
        witnesses,
    }
}

/// For each cut-edge side small enough to enumerate, every component-bounded
/// coloring must put the endpoint in the bounded class, inside a component
/// of weight at least `(D+2)/2`. The first violating coloring per side is
/// witnessed by its bounded class, in original labels.
fn cut_edge_side_coloring_entry(
    g: &WeightedMultigraph,
    cut_edges: &[(Vertex, Vertex)],
) -> AuditEntry {
    let mut witnesses = Vec::new();
    let mut holds = true;
    for &(x, y) in cut_edges {
        for (z, _other) in [(x, y), (y, x)] {
            let side_vertices = component_of(g, z, (x, y));
            if side_vertices.len() > SIDE_COLORING_CAP {
                continue;
            }
            let subset = VertexSubset::new(side_vertices);
            let (side, map) = g.induced(&subset).expect("cut side is nonempty");
            let z_local = map.iter().position(|&old| old == z).unwrap();
            if let Some(bad_mask) = first_bad_side_coloring(&side, z_local) {
                holds = false;
                let m_original: Vec<Vertex> = (0..side.n())
                    .filter(|&v| bad_mask >> v & 1 == 1)
                    .map(|v| map[v])
                    .collect();
                witnesses.push(AuditWitness::Subset {
                    vertices: VertexSubset::new(m_original),
                });
            }
        }
    }
    AuditEntry {
        check: CheckId::CutEdgeSideColorings,
        holds,
        witnesses,
    }
}

fn first_bad_side_coloring(side: &WeightedMultigraph, z: Vertex) -> Option<u64> {
    let n = side.n();
    let mut scratch = crate::coloring::EnumScratch::new(n);
    for mask in 0..(1u64 << n) {
        if !scratch.partition_ok(side, mask, ColorMode::ComponentBounded) {
            continue;
        }
        if mask >> z & 1 == 0 {
            return Some(mask); // z landed in the free forest
        }
        let m = VertexSubset::from_mask(mask);
        let p = Partition::from_m_set(n, m);
        let weight = component_weight_of(side, &p, z);
        if 2 * weight < (side.d() + 2) as u64 {
            return Some(mask);
        }
    }
    None
}

fn component_weight_of(g: &WeightedMultigraph, p: &Partition, v: Vertex) -> u64 {
    let mut dsu = crate::dsu::Dsu::new(g.n());
    for e in g.edges() {
        if p.m().contains(e.u) && p.m().contains(e.v) {
            dsu.union(e.u, e.v);
        }
    }
    let root = dsu.find(v);
    p.m()
        .iter()
        .filter(|&u| dsu.find(u) == root)
        .map(|u| g.weight(u) as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_capacity_zero_charge() {
        // d(u) = 2, c(u) = 0 at D = 1: ch = rho0 - rho_e = -1.
        let g = WeightedMultigraph::build(3, 1, &[3, 1, 1], &[(0, 1, 1), (0, 2, 1), (1, 2, 2)])
            .unwrap();
        let ledger = initial_charges(&g, PotentialFlavor::MultiDegree).unwrap();
        assert_eq!(ledger.charges[0], Rational::integer(-1));
    }

    #[test]
    fn t_vertex_charges_and_rule() {
        // Star: center of degree 3 and weight (D+1)/2 = 1 at D = 1.
        let g = WeightedMultigraph::unweighted(4, 1, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert_eq!(t_set(&g).as_slice(), &[0]);
        let initial = initial_charges(&g, PotentialFlavor::MultiComponent).unwrap();
        assert_eq!(initial.charges[0], Rational::integer(1));
        let after = discharge_r1(&g).unwrap();
        assert_eq!(after.charges[0], Rational::ZERO);
        assert_eq!(after.total, initial.total);
    }

    #[test]
    fn four_vertex_unit_weight_charge() {
        // d(u) = 4, w = 1, D = 1: ch = 7 - 2*4 = -1.
        let g = WeightedMultigraph::unweighted(5, 1, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)])
            .unwrap();
        let ledger = initial_charges(&g, PotentialFlavor::MultiDegree).unwrap();
        assert_eq!(ledger.charges[0], Rational::integer(-1));
    }

    #[test]
    fn r1_needs_odd_d() {
        let g = WeightedMultigraph::unweighted(2, 2, &[(0, 1, 1)]).unwrap();
        assert_eq!(discharge_r1(&g).unwrap_err(), DischargeError::WrongParity);
    }

    #[test]
    fn non_t_vertex_receives_thirds() {
        // Path: ends adjacent to a T-center get +1/3 each.
        let g = WeightedMultigraph::unweighted(4, 1, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let initial = initial_charges(&g, PotentialFlavor::MultiComponent).unwrap();
        let after = discharge_r1(&g).unwrap();
        for leaf in 1..4 {
            assert_eq!(
                after.charges[leaf],
                initial.charges[leaf] + Rational::new(1, 3)
            );
        }
    }

    #[test]
    fn bridges_found_and_parallel_classes_excluded() {
        // 0-1 double edge, 1-2 single bridge, 2-3-4 triangle.
        let g = WeightedMultigraph::unweighted(
            5,
            2,
            &[(0, 1, 2), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1)],
        )
        .unwrap();
        assert_eq!(bridges(&g), vec![(1, 2)]);
    }

    #[test]
    fn audit_on_triple_edge_pair() {
        // Both endpoints are 3-vertices, so the minimum-degree audit passes;
        // positive-capacity 3-vertices in a parallel class are flagged.
        let g = WeightedMultigraph::unweighted(2, 1, &[(0, 1, 3)]).unwrap();
        let audit =
            audit_configurations(&g, PotentialFlavor::MultiDegree, ColorMode::DegreeBounded);
        let min_degree = audit.entry(CheckId::MinDegreeTwo).unwrap();
        assert!(min_degree.holds);
        let multi = audit.entry(CheckId::ThreeVertexNoMultiEdge).unwrap();
        assert!(!multi.holds);
        assert_eq!(multi.witnesses.len(), 2);
    }

    #[test]
    fn deficiency_sum_is_additive_maximum() {
        // Two isolated-ish 4-vertices with no T-neighbors: Q = 3 + 3 > 3.
        let g = WeightedMultigraph::unweighted(
            4,
            1,
            &[
                (0, 1, 2),
                (0, 2, 1),
                (0, 3, 1),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 2),
            ],
        )
        .unwrap();
        let audit = audit_configurations(
            &g,
            PotentialFlavor::MultiComponent,
            ColorMode::ComponentBounded,
        );
        let q = audit.entry(CheckId::DeficiencySum).unwrap();
        assert!(!q.holds);
    }
}
