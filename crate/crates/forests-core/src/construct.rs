//! Gadget attachments, the three sharpness families, and the expansion of
//! vertex weights into explicit gadgets.
//!
//! Family vertices are labeled skeleton first (left to right), then gadget
//! vertices appended grouped by host in label order, so serialized output
//! lines up with the construction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Vertex, WeightedMultigraph};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GadgetKind {
    /// Two new vertices `x, y` with edges `vx, vy` and a parallel pair `xy`.
    TwoFundamental,
    /// A new triangle `xyz` joined to `v` by `vx, vy, vz` (a pendant K4).
    ThreeFundamental,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyId {
    /// Sharp for the degree-bounded regime on multigraphs.
    MultiDegreeFamily,
    /// Sharp for the component-bounded regime on multigraphs.
    MultiEdgesFamily,
    /// Sharp for the degree-bounded regime on simple graphs.
    SimpleDegreeFamily,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpandStyle {
    /// Extra weight becomes 2-fundamental gadgets.
    Multigraph,
    /// Extra weight becomes 3-fundamental gadgets; requires a simple graph.
    Simple,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConstructError {
    BadIndex {
        index: usize,
        n: usize,
    },
    BadParameters(&'static str),
    /// Simple-style expansion on a graph with parallel edges.
    StyleMismatch,
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::BadIndex { index, n } => {
                write!(f, "vertex index {index} out of range for n = {n}")
            }
            ConstructError::BadParameters(why) => write!(f, "bad parameters: {why}"),
            ConstructError::StyleMismatch => {
                write!(f, "simple-style expansion requires a simple graph")
            }
        }
    }
}

/// Mutable staging area for building graphs; validated once at the end.
struct Builder {
    d: u32,
    weights: Vec<u32>,
    edges: Vec<(Vertex, Vertex, u32)>,
}

impl Builder {
    fn from_graph(g: &WeightedMultigraph) -> Builder {
        Builder {
            d: g.d(),
            weights: g.weights().to_vec(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.mult)).collect(),
        }
    }

    fn empty(d: u32) -> Builder {
        Builder {
            d,
            weights: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn add_vertex(&mut self) -> Vertex {
        self.weights.push(1);
        self.weights.len() - 1
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex, mult: u32) {
        self.edges.push((u, v, mult));
    }

    fn attach_two_fundamental(&mut self, v: Vertex) {
        let x = self.add_vertex();
        let y = self.add_vertex();
        self.add_edge(v, x, 1);
        self.add_edge(v, y, 1);
        self.add_edge(x, y, 2);
    }

    fn attach_three_fundamental(&mut self, v: Vertex) {
        let x = self.add_vertex();
        let y = self.add_vertex();
        let z = self.add_vertex();
        self.add_edge(v, x, 1);
        self.add_edge(v, y, 1);
        self.add_edge(v, z, 1);
        self.add_edge(x, y, 1);
        self.add_edge(y, z, 1);
        self.add_edge(x, z, 1);
    }

    fn finish(self) -> WeightedMultigraph {
        WeightedMultigraph::build(self.weights.len(), self.d, &self.weights, &self.edges)
            .expect("constructed graphs are valid")
    }
}

/// Attaches one gadget of the given kind to `v`; new vertices have weight 1.
pub fn attach_gadget(
    g: &WeightedMultigraph,
    v: Vertex,
    kind: GadgetKind,
) -> Result<WeightedMultigraph, ConstructError> {
    if v >= g.n() {
        return Err(ConstructError::BadIndex { index: v, n: g.n() });
    }
    let mut b = Builder::from_graph(g);
    match kind {
        GadgetKind::TwoFundamental => b.attach_two_fundamental(v),
        GadgetKind::ThreeFundamental => b.attach_three_fundamental(v),
    }
    Ok(b.finish())
}

/// Per-vertex 2-fundamental gadget counts inside an M*-gadget whose K4 is
/// `[anchor, v2, v3, v4]`: every K4 vertex gets `⌊D/2⌋` gadgets, minus one
/// on the anchor when `D` is even, plus one on each of the last two vertices
/// when `D` is odd.
fn m_star_gadget_counts(d: u32) -> [u32; 4] {
    let half = d / 2;
    if d.is_multiple_of(2) {
        [half - 1, half, half, half]
    } else {
        [half, half, half + 1, half + 1]
    }
}

fn build_m_star(
    b: &mut Builder,
    anchor: Vertex,
    remove_one_gadget: bool,
) -> (Vertex, Option<Vertex>) {
    let d = b.d;
    let v2 = b.add_vertex();
    let v3 = b.add_vertex();
    let v4 = b.add_vertex();
    let k4 = [anchor, v2, v3, v4];
    for i in 0..4 {
        for j in i + 1..4 {
            b.add_edge(k4[i], k4[j], 1);
        }
    }
    let mut counts = m_star_gadget_counts(d);
    // The removal target is the least-labeled non-anchor K4 vertex that
    // carries a gadget; it exists for every D >= 1.
    let mut removed_from = None;
    if remove_one_gadget {
        let slot = (1..4)
            .find(|&i| counts[i] > 0)
            .expect("a non-anchor K4 vertex always carries a gadget");
        counts[slot] -= 1;
        removed_from = Some(k4[slot]);
    }
    for (i, &host) in k4.iter().enumerate() {
        for _ in 0..counts[i] {
            b.attach_two_fundamental(host);
        }
    }
    (anchor, removed_from)
}

/// Attaches an M*-gadget on the existing vertex `v`: a K4 through `v` whose
/// vertices carry 2-fundamental gadgets, balanced by the parity of `D`. The
/// gadget subgraph has `4D+2` vertices and `8D+2` edges for even `D`, and
/// `4D+4` vertices and `8D+6` edges for odd `D`.
pub fn attach_m_star(
    g: &WeightedMultigraph,
    v: Vertex,
) -> Result<WeightedMultigraph, ConstructError> {
    if v >= g.n() {
        return Err(ConstructError::BadIndex { index: v, n: g.n() });
    }
    let mut b = Builder::from_graph(g);
    let before_v = b.weights.len();
    let before_e: u32 = b.edges.iter().map(|&(_, _, m)| m).sum();
    build_m_star(&mut b, v, false);
    assert_m_star_counts(g.d(), b.weights.len() - before_v + 1, {
        let after: u32 = b.edges.iter().map(|&(_, _, m)| m).sum();
        after - before_e
    });
    Ok(b.finish())
}

fn assert_m_star_counts(d: u32, gadget_vertices: usize, gadget_edges: u32) {
    let (nv, ne) = if d.is_multiple_of(2) {
        (4 * d + 2, 8 * d + 2)
    } else {
        (4 * d + 4, 8 * d + 6)
    };
    assert_eq!(gadget_vertices as u32, nv);
    assert_eq!(gadget_edges, ne);
}

/// Attaches an (M*, M*)-gadget from `u` to a fresh anchor `v`: an M*-gadget
/// on `v` with one 2-fundamental gadget removed from some K4 vertex `w ≠ v`,
/// plus a parallel pair `t1 t2` and edges `t1 u`, `t2 w`. Vertex and edge
/// counts match the plain M*-gadget. Returns the new graph and `v`.
pub fn attach_mm(
    g: &WeightedMultigraph,
    u: Vertex,
) -> Result<(WeightedMultigraph, Vertex), ConstructError> {
    if u >= g.n() {
        return Err(ConstructError::BadIndex { index: u, n: g.n() });
    }
    let mut b = Builder::from_graph(g);
    let before_v = b.weights.len();
    let before_e: u32 = b.edges.iter().map(|&(_, _, m)| m).sum();
    let v = b.add_vertex();
    let (_, removed_from) = build_m_star(&mut b, v, true);
    let w = removed_from.expect("removal target exists for D >= 1");
    let t1 = b.add_vertex();
    let t2 = b.add_vertex();
    b.add_edge(t1, t2, 2);
    b.add_edge(t1, u, 1);
    b.add_edge(t2, w, 1);
    assert_m_star_counts(g.d(), b.weights.len() - before_v, {
        let after: u32 = b.edges.iter().map(|&(_, _, m)| m).sum();
        after - before_e
    });
    Ok((b.finish(), v))
}

/// Builds one of the three sharpness families with `w ≡ 1`; vertex and edge
/// counts are asserted against their closed forms on return.
pub fn build_family(
    family: FamilyId,
    d: u32,
    k: u32,
) -> Result<WeightedMultigraph, ConstructError> {
    if d == 0 {
        return Err(ConstructError::BadParameters("D must be at least 1"));
    }
    let g = match family {
        FamilyId::MultiDegreeFamily => build_multi_degree_family(d, k),
        FamilyId::MultiEdgesFamily => {
            if k == 0 {
                return Err(ConstructError::BadParameters(
                    "the component-regime family needs k >= 1",
                ));
            }
            build_multi_edges_family(d, k)
        }
        FamilyId::SimpleDegreeFamily => {
            if k == 0 {
                return Err(ConstructError::BadParameters(
                    "the simple-graph family needs k >= 1",
                ));
            }
            if d < 2 {
                return Err(ConstructError::BadParameters(
                    "the simple-graph family needs D >= 2",
                ));
            }
            build_simple_degree_family(d, k)
        }
    };
    Ok(g)
}

/// Skeleton path `x_0 .. x_{2k+1}` alternating parallel pairs and single
/// edges, with `D+1` gadgets on the ends, `D` on interior even positions,
/// none on interior odd positions.
fn build_multi_degree_family(d: u32, k: u32) -> WeightedMultigraph {
    let k = k as usize;
    let mut b = Builder::empty(d);
    let skeleton: Vec<Vertex> = (0..2 * k + 2).map(|_| b.add_vertex()).collect();
    for i in 0..2 * k + 1 {
        let mult = if i % 2 == 0 { 2 } else { 1 };
        b.add_edge(skeleton[i], skeleton[i + 1], mult);
    }
    for (i, &x) in skeleton.iter().enumerate() {
        let gadgets = if i == 0 || i == 2 * k + 1 {
            d + 1
        } else if i % 2 == 0 {
            d
        } else {
            0
        };
        for _ in 0..gadgets {
            b.attach_two_fundamental(x);
        }
    }
    let g = b.finish();
    let (dk, kk) = (d as u64, k as u64);
    let gadget_pairs = dk * kk + 2 * dk + 2;
    assert_eq!(g.n() as u64, 2 * kk + 2 + 2 * gadget_pairs);
    assert_eq!(g.edge_units(), 3 * kk + 2 + 4 * gadget_pairs);
    // Edge count meets the degree-regime critical bound with equality.
    assert_eq!(
        g.edge_units() * 2 * (dk + 1),
        (4 * dk + 3) * g.n() as u64 + 2
    );
    g
}

/// Chain of M*-gadgets: one on `v_1`, an (M*, M*)-gadget from `v_i` to
/// `v_{i+1}` for each link, and a final 2-fundamental gadget on `v_k`.
fn build_multi_edges_family(d: u32, k: u32) -> WeightedMultigraph {
    let k = k as usize;
    let mut b = Builder::empty(d);
    let chain: Vec<Vertex> = (0..k).map(|_| b.add_vertex()).collect();
    build_m_star(&mut b, chain[0], false);
    for i in 0..k - 1 {
        // Same as `attach_mm` but targeting the pre-created chain vertex.
        let v = chain[i + 1];
        let (_, removed_from) = build_m_star_on_existing(&mut b, v);
        let w = removed_from;
        let t1 = b.add_vertex();
        let t2 = b.add_vertex();
        b.add_edge(t1, t2, 2);
        b.add_edge(t1, chain[i], 1);
        b.add_edge(t2, w, 1);
    }
    b.attach_two_fundamental(chain[k - 1]);
    let g = b.finish();
    let (dk, kk) = (d as u64, k as u64);
    let (n_expect, m_expect) = if d.is_multiple_of(2) {
        ((4 * dk + 2) * kk + 2, (8 * dk + 2) * kk + 4)
    } else {
        ((4 * dk + 4) * kk + 2, (8 * dk + 6) * kk + 4)
    };
    assert_eq!(g.n() as u64, n_expect);
    assert_eq!(g.edge_units(), m_expect);
    // Edge count meets the component-regime critical bound with equality.
    if d.is_multiple_of(2) {
        assert_eq!(
            g.edge_units() * (2 * dk + 1),
            (4 * dk + 1) * g.n() as u64 + 2
        );
    } else {
        assert_eq!(
            g.edge_units() * (2 * dk + 2),
            (4 * dk + 3) * g.n() as u64 + 2
        );
    }
    g
}

fn build_m_star_on_existing(b: &mut Builder, v: Vertex) -> (Vertex, Vertex) {
    let (_, removed) = build_m_star(b, v, true);
    (v, removed.expect("removal target exists"))
}

/// Chain of triangles `x_i y_i z_i` linked by `z_i x_{i+1}`, `z_i y_{i+1}`,
/// with `D+1` 3-fundamental gadgets on `x_1, y_1, z_k` and `D` on the
/// interior `z_i`.
fn build_simple_degree_family(d: u32, k: u32) -> WeightedMultigraph {
    let k = k as usize;
    let mut b = Builder::empty(d);
    // Label order x_1, y_1, z_1, x_2, ...
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut zs = Vec::new();
    for _ in 0..k {
        xs.push(b.add_vertex());
        ys.push(b.add_vertex());
        zs.push(b.add_vertex());
    }
    for i in 0..k {
        b.add_edge(xs[i], ys[i], 1);
        b.add_edge(xs[i], zs[i], 1);
        b.add_edge(ys[i], zs[i], 1);
        if i + 1 < k {
            b.add_edge(zs[i], xs[i + 1], 1);
            b.add_edge(zs[i], ys[i + 1], 1);
        }
    }
    // Gadget hosts in label order: x_1, y_1, then every z_i.
    let mut hosts: Vec<(Vertex, u32)> = vec![(xs[0], d + 1), (ys[0], d + 1)];
    for (i, &z) in zs.iter().enumerate() {
        hosts.push((z, if i + 1 == k { d + 1 } else { d }));
    }
    for (host, count) in hosts {
        for _ in 0..count {
            b.attach_three_fundamental(host);
        }
    }
    let g = b.finish();
    assert!(g.is_simple());
    let (dk, kk) = (d as u64, k as u64);
    let gadgets = dk * kk + 2 * dk + 3;
    assert_eq!(g.n() as u64, 3 * kk + 3 * gadgets);
    assert_eq!(g.edge_units(), 5 * kk - 2 + 6 * gadgets);
    // Edge count meets the simple-graph critical bound with equality.
    assert_eq!(
        g.edge_units() * 3 * (dk + 1),
        (6 * dk + 5) * g.n() as u64 + 3
    );
    g
}

/// Rewrites every vertex of weight `1 + g` as a weight-1 vertex carrying `g`
/// gadgets of the chosen style. Colorability in both regimes is preserved.
pub fn expand_weights_to_gadgets(
    g: &WeightedMultigraph,
    style: ExpandStyle,
) -> Result<WeightedMultigraph, ConstructError> {
    if style == ExpandStyle::Simple && !g.is_simple() {
        return Err(ConstructError::StyleMismatch);
    }
    let mut b = Builder::from_graph(g);
    for v in 0..g.n() {
        let extra = g.weight(v) - 1;
        b.weights[v] = 1;
        for _ in 0..extra {
            match style {
                ExpandStyle::Multigraph => b.attach_two_fundamental(v),
                ExpandStyle::Simple => b.attach_three_fundamental(v),
            }
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{count_colorings, solve, ColorMode};
    use crate::graph::VertexSubset;

    fn single() -> WeightedMultigraph {
        WeightedMultigraph::unweighted(1, 1, &[]).unwrap()
    }

    #[test]
    fn two_fundamental_counts() {
        let g = attach_gadget(&single(), 0, GadgetKind::TwoFundamental).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_units(), 4);
        assert!(!g.is_simple());

        let twice = attach_gadget(&g, 0, GadgetKind::TwoFundamental).unwrap();
        assert_eq!(twice.n(), 5);
        assert_eq!(twice.edge_units(), 8);
    }

    #[test]
    fn three_fundamental_is_a_pendant_k4() {
        let g = attach_gadget(&single(), 0, GadgetKind::ThreeFundamental).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_units(), 6);
        assert!(g.is_simple());
        assert!(!g.is_forest(&VertexSubset::full(4)));
    }

    #[test]
    fn m_star_counts() {
        let host = WeightedMultigraph::unweighted(1, 2, &[]).unwrap();
        let g = attach_m_star(&host, 0).unwrap();
        assert_eq!((g.n(), g.edge_units()), (10, 18));

        let host = WeightedMultigraph::unweighted(1, 3, &[]).unwrap();
        let g = attach_m_star(&host, 0).unwrap();
        assert_eq!((g.n(), g.edge_units()), (16, 30));
    }

    #[test]
    fn mm_gadget_counts_and_link() {
        let host = WeightedMultigraph::unweighted(1, 2, &[]).unwrap();
        let (g, v) = attach_mm(&host, 0).unwrap();
        // 10 gadget vertices and 18 gadget edges (t1-u included) beyond the host.
        assert_eq!((g.n(), g.edge_units()), (11, 18));
        assert_eq!(v, 1);
        // t1 is adjacent to the host vertex 0.
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn family_counts() {
        let md = build_family(FamilyId::MultiDegreeFamily, 1, 0).unwrap();
        assert_eq!((md.n(), md.edge_units()), (10, 18));

        let me = build_family(FamilyId::MultiEdgesFamily, 2, 1).unwrap();
        assert_eq!((me.n(), me.edge_units()), (12, 22));

        let sd = build_family(FamilyId::SimpleDegreeFamily, 2, 1).unwrap();
        assert_eq!((sd.n(), sd.edge_units()), (30, 57));
        assert!(sd.is_simple());
    }

    #[test]
    fn two_fundamental_forcing() {
        // D+1 gadgets force the host into F in every accepted partition.
        let d = 1;
        let mut g = WeightedMultigraph::unweighted(1, d, &[]).unwrap();
        for _ in 0..=d {
            g = attach_gadget(&g, 0, GadgetKind::TwoFundamental).unwrap();
        }
        for mode in [ColorMode::DegreeBounded, ColorMode::ComponentBounded] {
            let total = count_colorings(&g, mode).unwrap();
            assert!(total > 0);
            // Re-count with the host forced heavy: forcing v into F must not
            // change the count if v is already always in F.
            let res = solve(&g, mode).unwrap();
            assert!(res.witness().unwrap().f().contains(0));
        }
    }

    #[test]
    fn expansion_identity_and_basic() {
        let plain = WeightedMultigraph::unweighted(3, 2, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let same = expand_weights_to_gadgets(&plain, ExpandStyle::Multigraph).unwrap();
        assert_eq!(plain, same);

        let weighted = WeightedMultigraph::build(1, 2, &[3], &[]).unwrap();
        let expanded = expand_weights_to_gadgets(&weighted, ExpandStyle::Multigraph).unwrap();
        assert_eq!(expanded.n(), 5);
        assert_eq!(expanded.weight(0), 1);
        assert_eq!(expanded.edge_units(), 8);
    }

    #[test]
    fn simple_style_rejects_multigraphs() {
        let g = WeightedMultigraph::unweighted(2, 1, &[(0, 1, 2)]).unwrap();
        assert_eq!(
            expand_weights_to_gadgets(&g, ExpandStyle::Simple).unwrap_err(),
            ConstructError::StyleMismatch
        );
    }

    #[test]
    fn heavy_endpoint_expansion_forces_f() {
        // K2 with weights (D+2, 1) at D=1: the heavy endpoint expands into
        // D+1 gadgets and is forced into F in every coloring.
        let g = WeightedMultigraph::build(2, 1, &[3, 1], &[(0, 1, 1)]).unwrap();
        let expanded = expand_weights_to_gadgets(&g, ExpandStyle::Multigraph).unwrap();
        assert_eq!(expanded.n(), 6);
        for mode in [ColorMode::DegreeBounded, ColorMode::ComponentBounded] {
            let mut masks_with_zero_in_m = 0;
            for mask in 0..(1u64 << expanded.n()) {
                if mask & 1 == 1 {
                    let m = VertexSubset::from_mask(mask);
                    let p = crate::coloring::Partition::from_m_set(expanded.n(), m);
                    if crate::coloring::verify_partition(&expanded, &p, mode).accepted {
                        masks_with_zero_in_m += 1;
                    }
                }
            }
            assert_eq!(masks_with_zero_in_m, 0);
            assert!(solve(&expanded, mode).unwrap().is_satisfiable());
        }
    }
}
