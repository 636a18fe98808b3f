//! Exhaustive checks of the structural description of minimal forts on
//! trees, and of the fort/failed-coloring duality.

use forts::graph::VertexSet;
use forts::oracle::{
    brute_force_minimal_forts, closure, is_fort, is_minimal_fort, satisfies_fort_conditions,
    structural_check,
};
use forts::treegen::generate_free_trees;

/// On trees, the leaf-plus-edge-conditions test selects exactly the minimal
/// forts, over every one of the 2^n subsets.
#[test]
fn conditions_select_exactly_the_minimal_forts() {
    for n in 3..=9 {
        for tree in generate_free_trees(n).unwrap() {
            for bits in 0..1u64 << n {
                let s = VertexSet::from_bits(bits);
                assert_eq!(
                    satisfies_fort_conditions(&tree, s),
                    is_minimal_fort(&tree, s),
                    "subset {s} of {tree:?}"
                );
            }
        }
    }
}

/// A nonempty set is a fort exactly when its complement is closed under the
/// color-change rule.
#[test]
fn fort_iff_complement_is_closed() {
    for n in 1..=8 {
        for tree in generate_free_trees(n).unwrap() {
            for bits in 1..1u64 << n {
                let f = VertexSet::from_bits(bits);
                let outside = f.complement(n);
                assert_eq!(
                    is_fort(&tree, f),
                    closure(&tree, outside) == outside,
                    "subset {f} of {tree:?}"
                );
            }
        }
    }
}

/// The oracle's output is a complete antichain of minimal forts: members are
/// minimal, no member contains another, and every fort contains a member.
#[test]
fn oracle_output_is_the_complete_minimal_family() {
    for n in 1..=10 {
        for tree in generate_free_trees(n).unwrap() {
            let family = brute_force_minimal_forts(&tree).unwrap();
            for &f in family.iter() {
                assert!(is_minimal_fort(&tree, f));
                for &g in family.iter() {
                    assert!(f == g || !f.is_subset_of(g));
                }
            }
            for bits in 1..1u64 << n {
                let f = VertexSet::from_bits(bits);
                if is_fort(&tree, f) {
                    assert!(
                        family.iter().any(|m| m.is_subset_of(f)),
                        "fort {f} of {tree:?} contains no minimal member"
                    );
                }
            }
        }
    }
}

/// Every minimal fort of every small tree passes all structural checks.
#[test]
fn minimal_forts_pass_structural_checks() {
    for n in 3..=10 {
        for tree in generate_free_trees(n).unwrap() {
            for &f in brute_force_minimal_forts(&tree).unwrap().iter() {
                let report = structural_check(&tree, f);
                assert!(report.all_ok(), "{:?} on {tree:?}", report.violations);
            }
        }
    }
}
