use std::collections::BTreeSet;

use matchforge_core::antiforcing::{antiforcing_number_compat, antiforcing_number_oracle};
use matchforge_core::forcing::{clar_number, forcing_number_cycles, forcing_number_oracle, ForcingOracle};
use matchforge_core::matching::{alternating_cycles, enumerate_perfect_matchings};
use matchforge_core::{build_g, build_h, family_cells, from_cells, validate, GraphKind, Limits, PolyominoGraph};
use proptest::prelude::*;

/// Grow a polyomino cell by cell from the origin; `picks` choose which
/// frontier cell to add next.
fn grow(picks: &[usize]) -> Vec<(i32, i32)> {
    let mut cells = BTreeSet::from([(0, 0)]);
    for &pick in picks {
        let frontier: Vec<(i32, i32)> = cells
            .iter()
            .flat_map(|&(r, c)| [(r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)])
            .filter(|p| !cells.contains(p))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        cells.insert(frontier[pick % frontier.len()]);
    }
    cells.into_iter().collect()
}

fn random_polyomino() -> impl Strategy<Value = PolyominoGraph> {
    prop::collection::vec(any::<usize>(), 0..10)
        .prop_map(|picks| from_cells(&grow(&picks)))
        .prop_filter_map("large hole or no perfect matching", |g| {
            g.ok().filter(|g| enumerate_perfect_matchings(g).next().is_some())
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn forcing_oracle_equals_disjoint_cycles(g in random_polyomino()) {
        let limits = Limits::default();
        let oracle = ForcingOracle::new(&g, &limits);
        let mut max_f = 0;
        for m in oracle.matchings() {
            let f = oracle.forcing_number(m).unwrap();
            prop_assert_eq!(f, forcing_number_cycles(&g, m, &limits).unwrap());
            max_f = max_f.max(f);
        }
        prop_assert_eq!(max_f, clar_number(&g).unwrap());
    }

    #[test]
    fn antiforcing_oracle_equals_compatible_sets(g in random_polyomino()) {
        let limits = Limits::default();
        for m in enumerate_perfect_matchings(&g) {
            if let Ok(af) = antiforcing_number_oracle(&g, &m, &limits) {
                prop_assert_eq!(af, antiforcing_number_compat(&g, &m, &limits).unwrap());
            }
        }
    }

    #[test]
    fn cycle_flips_stay_perfect(g in random_polyomino()) {
        for m in enumerate_perfect_matchings(&g) {
            for c in alternating_cycles(&g, &m, 40).unwrap() {
                let flipped = m.symmetric_difference(&c);
                prop_assert!(flipped.is_perfect(&g));
                prop_assert_ne!(&flipped, &m);
            }
        }
    }

    #[test]
    fn generic_graphs_validate(g in random_polyomino()) {
        prop_assert!(validate(&g).is_empty());
        prop_assert_eq!(g.vertex_count() + g.faces().len(), g.edge_count() + 1);
    }
}

#[test]
fn family_layouts_round_trip() {
    for n in 1..=4 {
        for (kind, built) in [(GraphKind::G(n), build_g(n)), (GraphKind::H(n), build_h(n))] {
            let generic = from_cells(&family_cells(kind)).unwrap();
            assert_eq!(generic.coordinate_signature(), built.coordinate_signature());
            let a = enumerate_perfect_matchings(&generic).count();
            let b = enumerate_perfect_matchings(&built).count();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let g = build_g(3);
    let first: Vec<_> = enumerate_perfect_matchings(&g).collect();
    let second: Vec<_> = enumerate_perfect_matchings(&g).collect();
    assert_eq!(first, second);
    assert_eq!(first.iter().collect::<BTreeSet<_>>().len(), first.len());
}

#[test]
fn oracle_on_a_generic_graph() {
    // 2x3 block: every vertex on the boundary
    let cells: Vec<_> = (0..2).flat_map(|r| (0..3).map(move |c| (r, c))).collect();
    let g = from_cells(&cells).unwrap();
    let limits = Limits::default();
    for m in enumerate_perfect_matchings(&g) {
        assert_eq!(
            forcing_number_oracle(&g, &m, &limits).unwrap(),
            forcing_number_cycles(&g, &m, &limits).unwrap()
        );
    }
}
