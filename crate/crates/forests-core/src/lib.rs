//! Exact tools for vertex partitions of loopless multigraphs into two
//! forests, where the first forest is degree-bounded or component-weight
//! bounded.
//!
//! The crate is `no_std` (with `alloc`): everything here is pure, exact
//! combinatorics — an exhaustive coloring solver, potential functions over
//! vertex subsets, `(a,b)`-sparsity certification by enumeration and by
//! minimum cut, gadget constructions, discharging ledgers, and an
//! isomorphism-free census of small critical graphs. IO, file formats, and
//! the command-line front end live in the companion `forests-cli` crate.

#![no_std]

extern crate alloc;

pub mod census;
pub mod coloring;
pub mod construct;
pub mod discharge;
mod dsu;
mod flow;
pub mod graph;
pub mod potential;
pub mod rational;
pub mod sparsity;

pub use census::{
    assess_for_census, canonical_form, enumerate_graphs, enumerate_graphs_with,
    find_critical_graphs, CanonicalForm, CensusEntry, CensusOptions, CriticalCensus,
    EnumerationOptions, FlavorCheck,
};
pub use coloring::{
    count_colorings, count_colorings_capped, is_critical, is_critical_with_budget, solve,
    solve_with_budget, verify_partition, ColorMode, ColoringResult, CriticalVerdict,
    CriticalityReport, Outcome, Partition, SolveError, VerificationReport,
};
pub use construct::{
    attach_gadget, attach_m_star, attach_mm, build_family, expand_weights_to_gadgets,
    ConstructError, ExpandStyle, FamilyId, GadgetKind,
};
pub use discharge::{
    audit_configurations, bridges, discharge_r1, initial_charges, t_incidence, t_set, AuditEntry,
    AuditWitness, ChargeLedger, CheckId, ConfigAudit, Stage,
};
pub use graph::{Edge, GraphError, Vertex, VertexSubset, WeightedMultigraph};
pub use potential::{
    audit_gap_predicates, boundary, edge_potential, min_potential_subset, potential,
    potential_constants, vertex_potential, GapPredicate, GapRecord, GapReport, PotentialConstants,
    PotentialError, PotentialFlavor,
};
pub use rational::Rational;
pub use sparsity::{
    certify_sparsity, mad, max_excess_cut, max_excess_exact, SparsityCertificate, SparsityError,
    SparsityVerdict,
};
