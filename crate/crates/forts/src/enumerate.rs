//! Minimal-fort enumeration for trees.
//!
//! One round grows every minimal fort containing a chosen starting leaf by a
//! breadth-first sweep: at each visited vertex the branch table in
//! [`decide_neighbors`] extends or kills each partial fort. Rounds repeat on
//! the tree with the starting leaf's path branch deleted and the branch's
//! attachment vertex forbidden; the per-round collections are disjoint, and
//! their union is exactly the set of minimal forts avoiding the forbidden
//! set.
//!
//! Vocabulary note: "in the fort" means the vertex stays uncolored when the
//! fort's complement is colored. All membership tests below are fort
//! membership, never color membership.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{path_branch_within, FortCollection, Graph, VertexSet};

/// A fort under construction: the set of vertices committed to the fort.
/// Vertices are committed only when their BFS parent (or they themselves,
/// for the starting leaf) is processed, so membership of processed vertices
/// is final.
pub type PartialFort = VertexSet;

/// Per-call state of the enumeration: the tree, the vertices still alive
/// after branch pruning, and the forbidden (permanently colored) set.
struct EnumerationContext<'a> {
    tree: &'a Graph,
    alive: VertexSet,
    forbidden: VertexSet,
}

/// Extends one partial fort at the visited vertex `curr` whose BFS parent is
/// `prev`, appending every allowed extension to `out` (none if the branch
/// dies).
///
/// `neighbors` is the full (alive) adjacency of `curr` in ascending order;
/// `leaf_neighbors` are the unvisited neighbors of `curr` that are leaves.
/// The cases, writing F for the fort so far:
///
/// * starting leaf (`prev` absent): `F` itself, plus `F + {neighbor}` when
///   the unique neighbor is not forbidden;
/// * `curr not in F`, `prev not in F`: `F` unchanged — no further neighbor
///   of `curr` may enter the fort;
/// * `curr not in F`, `prev in F`: exactly one other neighbor must enter,
///   one extension per eligible neighbor (dead if there is none);
/// * `curr in F`, `prev not in F`: at most one other neighbor may enter, and
///   every unvisited leaf neighbor must — so two or more leaf neighbors kill
///   the branch, exactly one forces that leaf in (dead if forbidden), and
///   none leaves the choice of `F` or `F + {neighbor}` per eligible
///   neighbor;
/// * `curr in F`, `prev in F`: no other neighbor may enter; any unvisited
///   leaf neighbor kills the branch.
pub fn decide_neighbors(
    fort: PartialFort,
    curr: usize,
    prev: Option<usize>,
    neighbors: &[usize],
    leaf_neighbors: &[usize],
    forbidden: VertexSet,
    out: &mut Vec<PartialFort>,
) {
    debug_assert!(!fort.intersects(forbidden));
    let Some(prev) = prev else {
        debug_assert_eq!(neighbors.len(), 1, "starting vertex must be a leaf");
        out.push(fort);
        let nb = neighbors[0];
        if !forbidden.contains(nb) {
            out.push(fort.with(nb));
        }
        return;
    };
    match (fort.contains(curr), fort.contains(prev)) {
        (false, false) => out.push(fort),
        (false, true) => {
            for &nb in neighbors {
                if nb != prev && !forbidden.contains(nb) {
                    out.push(fort.with(nb));
                }
            }
        }
        (true, false) => match leaf_neighbors {
            [] => {
                out.push(fort);
                for &nb in neighbors {
                    if nb != prev && !forbidden.contains(nb) {
                        out.push(fort.with(nb));
                    }
                }
            }
            [leaf] if !forbidden.contains(*leaf) => out.push(fort.with(*leaf)),
            // one forbidden leaf, or two leaves that would both have to
            // join: dead branch
            _ => {}
        },
        (true, true) => {
            if leaf_neighbors.is_empty() {
                out.push(fort);
            }
        }
    }
}

impl<'a> EnumerationContext<'a> {
    /// BFS from `start_leaf`, producing every minimal fort of the alive tree
    /// that contains `start_leaf` and avoids the forbidden set.
    fn run_round(&self, start_leaf: usize, out: &mut Vec<VertexSet>) {
        let mut visited = VertexSet::singleton(start_leaf);
        let mut queue: VecDeque<(usize, Option<usize>)> = VecDeque::new();
        queue.push_back((start_leaf, None));
        let mut forts = vec![VertexSet::singleton(start_leaf)];
        let mut next = Vec::new();
        let mut neighbors = Vec::new();
        let mut leaf_neighbors = Vec::new();

        while let Some((curr, prev)) = queue.pop_front() {
            let nbr_set = self.tree.neighbor_set(curr) & self.alive;
            neighbors.clear();
            neighbors.extend(nbr_set.iter());
            leaf_neighbors.clear();
            leaf_neighbors.extend(neighbors.iter().copied().filter(|&v| {
                !visited.contains(v) && (self.tree.neighbor_set(v) & self.alive).len() == 1
            }));

            next.clear();
            for &fort in &forts {
                decide_neighbors(
                    fort,
                    curr,
                    prev,
                    &neighbors,
                    &leaf_neighbors,
                    self.forbidden,
                    &mut next,
                );
            }
            std::mem::swap(&mut forts, &mut next);
            if forts.is_empty() {
                return;
            }
            for &nb in &neighbors {
                if !visited.contains(nb) {
                    visited.insert(nb);
                    queue.push_back((nb, Some(curr)));
                }
            }
        }
        debug_assert!(
            {
                let mut seen = forts.clone();
                seen.sort();
                seen.windows(2).all(|w| w[0] != w[1])
            },
            "round produced a duplicate fort"
        );
        out.extend_from_slice(&forts);
    }

    fn enumerate(mut self, out: &mut Vec<VertexSet>) {
        loop {
            match self.alive.len() {
                0 => return,
                // below three vertices the edge conditions don't apply; the
                // fort of a lone vertex is itself, of a lone edge both ends
                1 => {
                    let v = self.alive.first().unwrap();
                    if !self.forbidden.contains(v) {
                        out.push(self.alive);
                    }
                    return;
                }
                2 => {
                    debug_assert!({
                        let mut it = self.alive.iter();
                        let (u, v) = (it.next().unwrap(), it.next().unwrap());
                        self.tree.has_edge(u, v)
                    });
                    if !self.alive.intersects(self.forbidden) {
                        out.push(self.alive);
                    }
                    return;
                }
                _ => {}
            }
            // every minimal fort contains a leaf, so once all alive leaves
            // are forbidden nothing remains to find
            let start = self.alive.iter().find(|&v| {
                (self.tree.neighbor_set(v) & self.alive).len() == 1
                    && !self.forbidden.contains(v)
            });
            let Some(leaf) = start else { return };
            self.run_round(leaf, out);

            let (branch, attachment) = path_branch_within(self.tree, self.alive, leaf);
            self.alive = self.alive - branch;
            if let Some(v) = attachment {
                self.forbidden.insert(v);
            }
            if !self.alive.is_empty() && !alive_connected(self.tree, self.alive) {
                // pruning a path branch cannot disconnect the remainder
                debug_assert!(false, "alive set disconnected after pruning");
                for comp in alive_components(self.tree, self.alive) {
                    EnumerationContext {
                        tree: self.tree,
                        alive: comp,
                        forbidden: self.forbidden,
                    }
                    .enumerate(out);
                }
                return;
            }
        }
    }
}

fn alive_components(g: &Graph, alive: VertexSet) -> Vec<VertexSet> {
    let mut remaining = alive;
    let mut out = Vec::new();
    while let Some(start) = remaining.first() {
        let mut comp = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in (g.neighbor_set(v) & alive).iter() {
                if !comp.contains(u) {
                    comp.insert(u);
                    stack.push(u);
                }
            }
        }
        out.push(comp);
        remaining = remaining - comp;
    }
    out
}

fn alive_connected(g: &Graph, alive: VertexSet) -> bool {
    match alive.first() {
        None => true,
        Some(start) => {
            let mut comp = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in (g.neighbor_set(v) & alive).iter() {
                    if !comp.contains(u) {
                        comp.insert(u);
                        stack.push(u);
                    }
                }
            }
            comp == alive
        }
    }
}

/// All minimal forts of the tree `t` that avoid `forbidden`.
pub fn enumerate_minimal_forts(t: &Graph, forbidden: VertexSet) -> Result<FortCollection> {
    if t.n() == 0 {
        return Ok(FortCollection::default());
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let mut out = Vec::new();
    EnumerationContext {
        tree: t,
        alive: t.full_set(),
        forbidden,
    }
    .enumerate(&mut out);
    Ok(FortCollection::from_unsorted(out))
}

/// Number of minimal forts of a forest: the per-component counts add up.
/// An isolated vertex contributes one (itself), a lone edge contributes one
/// (both endpoints).
pub fn count_minimal_forts_forest(g: &Graph) -> Result<u64> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let mut total = 0u64;
    for comp in g.components() {
        total += enumerate_minimal_forts(&comp.graph, VertexSet::EMPTY)?.len() as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle;
    use crate::treegen;

    fn enumerate(t: &Graph) -> FortCollection {
        enumerate_minimal_forts(t, VertexSet::EMPTY).unwrap()
    }

    #[test]
    fn decide_neighbors_branch_table() {
        let fort = VertexSet::singleton(0);
        let mut out = Vec::new();

        // starting leaf of P_3: {0} and {0, 1}
        decide_neighbors(fort, 0, None, &[1], &[], VertexSet::EMPTY, &mut out);
        assert_eq!(out, vec![fort, [0, 1].into_iter().collect()]);

        // starting leaf with a forbidden neighbor: only {0}
        out.clear();
        decide_neighbors(fort, 0, None, &[1], &[], VertexSet::singleton(1), &mut out);
        assert_eq!(out, vec![fort]);

        // curr and prev both out: pass through unchanged
        out.clear();
        let f: VertexSet = [9].into_iter().collect();
        decide_neighbors(f, 3, Some(2), &[2, 4, 5], &[], VertexSet::EMPTY, &mut out);
        assert_eq!(out, vec![f]);

        // curr out, prev in: one extension per eligible non-prev neighbor
        out.clear();
        let f: VertexSet = [2].into_iter().collect();
        decide_neighbors(f, 3, Some(2), &[2, 4, 5], &[], VertexSet::singleton(5), &mut out);
        assert_eq!(out, vec![f.with(4)]);

        // curr in, prev in, with an unvisited leaf neighbor: dead branch
        out.clear();
        let f: VertexSet = [2, 3].into_iter().collect();
        decide_neighbors(f, 3, Some(2), &[2, 4], &[4], VertexSet::EMPTY, &mut out);
        assert!(out.is_empty());

        // curr in, prev out, exactly one unvisited leaf neighbor: it joins
        out.clear();
        let f: VertexSet = [3].into_iter().collect();
        decide_neighbors(f, 3, Some(2), &[2, 4], &[4], VertexSet::EMPTY, &mut out);
        assert_eq!(out, vec![f.with(4)]);
    }

    #[test]
    fn small_family_counts() {
        assert_eq!(
            enumerate(&treegen::path(3).unwrap()).as_slice(),
            &[[0, 2].into_iter().collect()]
        );
        assert_eq!(enumerate(&treegen::star(4).unwrap()).len(), 3);
        assert_eq!(enumerate(&treegen::path(1).unwrap()).len(), 1);
        assert_eq!(enumerate(&treegen::path(2).unwrap()).len(), 1);
        assert_eq!(
            enumerate(&treegen::special_tree(19, 4, 4, 2).unwrap()).len(),
            162
        );
        assert_eq!(enumerate(&treegen::star(18).unwrap()).len(), 136);
    }

    #[test]
    fn rejects_non_trees() {
        let c3 = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0)], 3).unwrap();
        assert_eq!(
            enumerate_minimal_forts(&c3, VertexSet::EMPTY),
            Err(Error::NotATree)
        );
        let e2 = Graph::from_edge_list(&[], 2).unwrap();
        assert_eq!(
            enumerate_minimal_forts(&e2, VertexSet::EMPTY),
            Err(Error::NotATree)
        );
    }

    #[test]
    fn forest_counts() {
        let e4 = Graph::from_edge_list(&[], 4).unwrap();
        assert_eq!(count_minimal_forts_forest(&e4).unwrap(), 4);

        // P_3 + S_4 on disjoint labels
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (3, 4), (3, 5), (3, 6)], 7).unwrap();
        assert_eq!(count_minimal_forts_forest(&g).unwrap(), 1 + 3);

        let t = treegen::special_tree(10, 3, 3, 3).unwrap();
        assert_eq!(
            count_minimal_forts_forest(&t).unwrap(),
            enumerate(&t).len() as u64
        );

        let c3 = Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0)], 3).unwrap();
        assert_eq!(count_minimal_forts_forest(&c3), Err(Error::NotAForest));
    }

    #[test]
    fn forbidden_vertices_are_avoided() {
        let p4 = treegen::path(4).unwrap();
        // both minimal forts of P_4 contain vertex 3
        assert!(enumerate_minimal_forts(&p4, VertexSet::singleton(3))
            .unwrap()
            .is_empty());

        let s5 = treegen::star(5).unwrap();
        let avoided = enumerate_minimal_forts(&s5, VertexSet::singleton(1)).unwrap();
        assert_eq!(avoided.len(), 3); // leaf pairs from {2, 3, 4}
        assert!(avoided.iter().all(|f| !f.contains(1)));
    }

    #[test]
    fn path_counts_follow_the_recurrence() {
        let mut a = vec![0u64, 1, 1, 1];
        for n in 4..=20 {
            a.push(a[n - 2] + a[n - 3]);
        }
        for (n, &want) in a.iter().enumerate().skip(1) {
            let t = treegen::path(n).unwrap();
            assert_eq!(enumerate(&t).len() as u64, want, "P_{n}");
        }
    }

    #[test]
    fn every_emitted_fort_is_minimal_and_well_formed() {
        for n in 3..=9 {
            for t in treegen::generate_free_trees(n).unwrap() {
                for &f in enumerate(&t).iter() {
                    assert!(oracle::is_minimal_fort(&t, f));
                    assert!(oracle::structural_check(&t, f).all_ok());
                }
            }
        }
    }
}
