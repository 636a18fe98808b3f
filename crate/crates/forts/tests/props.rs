//! Property tests for the coloring closure and forest decomposition.

mod common;

use forts::enumerate::count_minimal_forts_forest;
use forts::graph::{Graph, VertexSet};
use forts::oracle::{brute_force_minimal_forts, closure};
use proptest::prelude::*;
use rand::SeedableRng;

/// Random simple graph on up to 12 vertices from a pair-membership vector.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |picks| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if picks[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(&edges, n).unwrap()
        })
    })
}

/// Applies forces one at a time in a seed-scrambled order. The color-change
/// rule is confluent, so any application order must reach the same fixed
/// point as the simultaneous-rounds implementation.
fn sequential_closure(g: &Graph, initial: VertexSet, seed: u64) -> VertexSet {
    let mut colored = initial;
    let mut order: Vec<usize> = g.vertices().collect();
    let shift = (seed as usize) % order.len().max(1);
    order.rotate_left(shift);
    loop {
        let force = order.iter().copied().find_map(|v| {
            if !colored.contains(v) {
                return None;
            }
            let uncolored = g.neighbor_set(v) - colored;
            (uncolored.len() == 1).then(|| uncolored.first().unwrap())
        });
        match force {
            Some(u) => colored.insert(u),
            None => return colored,
        }
    }
}

proptest! {
    #[test]
    fn closure_is_order_independent(g in arb_graph(), seed_init: u64, seed_order: u64) {
        let initial = VertexSet::from_bits(seed_init) & g.full_set();
        let by_rounds = closure(&g, initial);
        prop_assert_eq!(sequential_closure(&g, initial, seed_order), by_rounds);
    }

    #[test]
    fn closure_is_monotone_and_idempotent(g in arb_graph(), seed_a: u64, seed_b: u64) {
        let full = g.full_set();
        let a = VertexSet::from_bits(seed_a) & full;
        let b = (VertexSet::from_bits(seed_b) & full) | a;
        // a is a subset of b
        let ca = closure(&g, a);
        let cb = closure(&g, b);
        prop_assert!(ca.is_subset_of(cb));
        prop_assert!(a.is_subset_of(ca));
        prop_assert_eq!(closure(&g, ca), ca);
    }

    #[test]
    fn adjacency_stays_symmetric(g in arb_graph()) {
        for u in g.vertices() {
            for &v in g.neighbors(u) {
                prop_assert!(g.neighbors(v).contains(&u));
            }
        }
    }

    #[test]
    fn components_partition_the_graph(g in arb_graph()) {
        let comps = g.components();
        let mut seen = VertexSet::EMPTY;
        let mut edge_total = 0;
        for c in &comps {
            prop_assert!(c.graph.is_connected());
            for &v in &c.to_parent {
                prop_assert!(!seen.contains(v));
                seen.insert(v);
            }
            edge_total += c.graph.edge_count();
        }
        prop_assert_eq!(seen, g.full_set());
        prop_assert_eq!(edge_total, g.edge_count());
    }

    /// Fort counts add over components: check a two-tree forest against the
    /// whole-forest oracle.
    #[test]
    fn forest_counts_add_over_components(
        n1 in 1usize..=8, n2 in 1usize..=8,
        s1: u64, s2: u64,
    ) {
        let mut rng1 = rand_chacha::ChaCha8Rng::seed_from_u64(s1);
        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(s2);
        let t1 = common::random_tree(n1, &mut rng1);
        let t2 = common::random_tree(n2, &mut rng2);
        let mut edges = t1.edges();
        for (u, v) in t2.edges() {
            edges.push((u + n1, v + n1));
        }
        let forest = Graph::from_edge_list(&edges, n1 + n2).unwrap();
        let by_components = count_minimal_forts_forest(&forest).unwrap();
        let whole = brute_force_minimal_forts(&forest).unwrap().len() as u64;
        let parts = brute_force_minimal_forts(&t1).unwrap().len() as u64
            + brute_force_minimal_forts(&t2).unwrap().len() as u64;
        prop_assert_eq!(by_components, whole);
        prop_assert_eq!(by_components, parts);
    }
}
