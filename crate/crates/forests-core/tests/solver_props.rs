//! Randomized oracle suites for the coloring engine: the backtracking
//! solver against exhaustive enumeration, heredity under edge deletion, and
//! the coincidence of the two regimes at D = 1.

mod common;

use common::{random_graph, GraphParams, Rng};
use forests_core::{
    count_colorings, is_critical, solve, verify_partition, ColorMode, CriticalVerdict, FamilyId,
    GadgetKind, VertexSubset, WeightedMultigraph,
};

const MODES: [ColorMode; 2] = [ColorMode::DegreeBounded, ColorMode::ComponentBounded];

#[test]
fn witnesses_pass_verification() {
    let mut rng = Rng::new(0x5eed_0001);
    let params = GraphParams::weighted_multigraph(14);
    for _ in 0..300 {
        let g = random_graph(&mut rng, &params);
        for mode in MODES {
            let res = solve(&g, mode).unwrap();
            if let Some(p) = res.witness() {
                let report = verify_partition(&g, p, mode);
                assert!(report.accepted, "bad witness: {:?}", report.violations);
            }
        }
    }
}

#[test]
fn solver_agrees_with_enumeration() {
    let mut rng = Rng::new(0x5eed_0002);
    let params = GraphParams::weighted_multigraph(10);
    for _ in 0..400 {
        let g = random_graph(&mut rng, &params);
        for mode in MODES {
            let solved = solve(&g, mode).unwrap().is_satisfiable();
            let counted = count_colorings(&g, mode).unwrap() > 0;
            assert_eq!(solved, counted, "disagreement on {:?} {:?}", g, mode);
        }
    }
}

#[test]
fn colorability_is_hereditary() {
    let mut rng = Rng::new(0x5eed_0003);
    let params = GraphParams::weighted_multigraph(10);
    for _ in 0..150 {
        let g = random_graph(&mut rng, &params);
        for mode in MODES {
            if !solve(&g, mode).unwrap().is_satisfiable() {
                continue;
            }
            for e in g.edges() {
                let sub = g.delete_edge_unit(e.u, e.v);
                assert!(
                    solve(&sub, mode).unwrap().is_satisfiable(),
                    "deletion broke colorability"
                );
            }
        }
    }
}

#[test]
fn modes_coincide_at_d_one_for_unit_weights() {
    let mut rng = Rng::new(0x5eed_0004);
    let params = GraphParams {
        d_min: 1,
        d_max: 1,
        ..GraphParams::unit_multigraph(9)
    };
    for _ in 0..200 {
        let g = random_graph(&mut rng, &params);
        let n = g.n();
        for mask in 0..(1u64 << n) {
            let p = forests_core::Partition::from_m_set(n, VertexSubset::from_mask(mask));
            let dff = verify_partition(&g, &p, ColorMode::DegreeBounded).accepted;
            let eff = verify_partition(&g, &p, ColorMode::ComponentBounded).accepted;
            assert_eq!(dff, eff, "mode mismatch at D=1 on {:?} mask {mask}", g);
        }
    }
}

#[test]
fn gadgets_force_the_host_into_f() {
    // With D+1 parallel-pair gadgets attached, every accepted partition has
    // the host in the free forest.
    for d in 1..=2u32 {
        let mut g = WeightedMultigraph::unweighted(1, d, &[]).unwrap();
        for _ in 0..=d {
            g = forests_core::attach_gadget(&g, 0, GadgetKind::TwoFundamental).unwrap();
        }
        for mode in MODES {
            let mut accepted = 0u64;
            let mut accepted_with_host_in_m = 0u64;
            for mask in 0..(1u64 << g.n()) {
                let p = forests_core::Partition::from_m_set(g.n(), VertexSubset::from_mask(mask));
                if verify_partition(&g, &p, mode).accepted {
                    accepted += 1;
                    if mask & 1 == 1 {
                        accepted_with_host_in_m += 1;
                    }
                }
            }
            assert!(accepted > 0);
            assert_eq!(accepted_with_host_in_m, 0);
        }
    }
}

#[test]
fn smallest_degree_family_is_uncolorable_and_loses_it_by_any_deletion() {
    let g = forests_core::build_family(FamilyId::MultiDegreeFamily, 1, 0).unwrap();
    assert_eq!(g.n(), 10);
    // Brute force over all 2^10 partitions.
    assert_eq!(count_colorings(&g, ColorMode::DegreeBounded).unwrap(), 0);
    for e in g.edges() {
        let sub = g.delete_edge_unit(e.u, e.v);
        assert!(
            count_colorings(&sub, ColorMode::DegreeBounded).unwrap() > 0,
            "deleting ({}, {}) should restore colorability",
            e.u,
            e.v
        );
    }
    let report = is_critical(&g, ColorMode::DegreeBounded).unwrap();
    assert_eq!(report.verdict, CriticalVerdict::Critical);
}

#[test]
fn unknown_is_distinct_from_unsat() {
    let g = forests_core::build_family(FamilyId::MultiDegreeFamily, 1, 0).unwrap();
    match forests_core::solve_with_budget(&g, ColorMode::DegreeBounded, 3) {
        Err(forests_core::SolveError::BudgetExceeded { nodes }) => assert!(nodes > 3),
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn hand_enumerated_counts() {
    // Path on 3 vertices at D = 1: the only rejected partitions put all
    // three vertices in the bounded class, so 7 of 8 are accepted.
    let path = WeightedMultigraph::unweighted(3, 1, &[(0, 1, 1), (1, 2, 1)]).unwrap();
    for mode in MODES {
        assert_eq!(count_colorings(&path, mode).unwrap(), 7);
    }
    // Triangle at D = 1: both monochrome partitions create a cycle; the six
    // splits are accepted.
    let k3 = WeightedMultigraph::unweighted(3, 1, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
    for mode in MODES {
        assert_eq!(count_colorings(&k3, mode).unwrap(), 6);
    }
}

#[test]
fn fast_partition_check_agrees_with_report_verification() {
    // The exhaustive counter and the report-building verifier are separate
    // implementations; they must accept exactly the same partitions.
    let mut rng = Rng::new(0x5eed_0005);
    let params = GraphParams::weighted_multigraph(7);
    for _ in 0..200 {
        let g = random_graph(&mut rng, &params);
        for mode in MODES {
            let mut by_report = 0u64;
            for mask in 0..(1u64 << g.n()) {
                let p = forests_core::Partition::from_m_set(g.n(), VertexSubset::from_mask(mask));
                if verify_partition(&g, &p, mode).accepted {
                    by_report += 1;
                }
            }
            assert_eq!(by_report, count_colorings(&g, mode).unwrap());
        }
    }
}
