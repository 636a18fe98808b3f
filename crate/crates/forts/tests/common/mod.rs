//! Shared helpers for integration tests: labeled-tree enumeration through
//! Prüfer sequences, independent of the level-sequence generator under test.
#![allow(dead_code)] // each test binary uses its own subset

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use forts::graph::Graph;

/// Decodes a Prüfer sequence over `0..n` into its labeled tree.
pub fn tree_from_prufer(seq: &[usize], n: usize) -> Graph {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut deg = vec![1usize; n];
    for &x in seq {
        deg[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| deg[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let Reverse(u) = leaves.pop().expect("a tree always has a leaf");
        edges.push((u, x));
        deg[u] -= 1;
        deg[x] -= 1;
        if deg[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edge_list(&edges, n).unwrap()
}

/// Calls `visit` with every labeled tree on `n` vertices exactly once
/// (all `n^(n-2)` Prüfer sequences).
pub fn for_each_labeled_tree(n: usize, mut visit: impl FnMut(&Graph)) {
    if n == 1 {
        visit(&Graph::from_edge_list(&[], 1).unwrap());
        return;
    }
    let mut seq = vec![0usize; n - 2];
    loop {
        visit(&tree_from_prufer(&seq, n));
        // odometer
        let mut i = seq.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// A pseudorandom labeled tree drawn via a random Prüfer sequence.
pub fn random_tree(n: usize, rng: &mut impl rand::Rng) -> Graph {
    if n == 1 {
        return Graph::from_edge_list(&[], 1).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(&seq, n)
}
