//! Generation of free (unlabeled) trees and construction of the named
//! families used throughout: paths, stars, the height-two trees
//! `T(n, k, m, p)`, and the two unicyclic regression graphs.
//!
//! Free trees are produced by successor steps on canonical level sequences
//! (the Wright–Richmond–Odlyzko–McKay scheme): a rooted-tree successor in
//! decreasing lexicographic order, with a validity test that keeps exactly
//! one rooting per isomorphism class and a jump rule that skips invalid
//! blocks in constant amortized time.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::encode_graph6;

/// Generation cap; the surveys stop well short of this.
pub const MAX_GENERATION_VERTICES: usize = 24;

/// Canonical identity of an unlabeled tree: the canonical level sequence
/// (depths in preorder, root depth 0) plus the graph6 string of the tree
/// relabeled in canonical preorder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeCode {
    pub level_sequence: Vec<usize>,
    pub graph6: String,
}

/// Iterator over all free trees on `n` vertices, one per isomorphism class.
pub struct FreeTrees {
    /// Candidate level sequence, not yet validity-checked. `None` when done.
    candidate: Option<Vec<usize>>,
}

pub fn generate_free_trees(n: usize) -> Result<FreeTrees> {
    if n == 0 {
        return Err(Error::InvalidParameters {
            reason: "tree generation needs n >= 1".into(),
        });
    }
    if n > MAX_GENERATION_VERTICES {
        return Err(Error::CapacityExceeded {
            n,
            limit: MAX_GENERATION_VERTICES,
        });
    }
    // the path graph rooted at its center comes first
    let mut layout: Vec<usize> = (0..=n / 2).collect();
    layout.extend(1..n.div_ceil(2));
    Ok(FreeTrees {
        candidate: Some(layout),
    })
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let cand = self.candidate.take()?;
        if cand.len() == 1 {
            return Some(Graph::from_edge_list(&[], 1).unwrap());
        }
        let layout = next_free_tree(cand);
        let tree = tree_from_level_sequence(&layout);
        self.candidate = next_rooted_tree(&layout, None);
        Some(tree)
    }
}

/// Rooted-tree successor in decreasing lexicographic order: chop at the last
/// vertex deeper than level one (or at `at` when given) and tile the tail
/// with copies of the pattern starting at its parent.
fn next_rooted_tree(seq: &[usize], at: Option<usize>) -> Option<Vec<usize>> {
    let p = match at {
        Some(p) => p,
        None => {
            let mut p = seq.len() - 1;
            while seq[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while seq[q] != seq[p] - 1 {
        q -= 1;
    }
    let mut next = seq.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

/// Splits a level sequence into the root's first subtree (levels shifted
/// down by one) and the remainder (root plus the other subtrees).
fn split_tree(seq: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut m = seq.len();
    let mut ones = 0;
    for (i, &lvl) in seq.iter().enumerate() {
        if lvl == 1 {
            ones += 1;
            if ones == 2 {
                m = i;
                break;
            }
        }
    }
    let left = seq[1..m].iter().map(|&l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&seq[m..]);
    (left, rest)
}

/// Validity test plus jump: returns `candidate` when it canonically encodes
/// a free tree (first subtree no taller, no larger, and lexicographically no
/// later than the rest), otherwise jumps to the next valid sequence.
fn next_free_tree(candidate: Vec<usize>) -> Vec<usize> {
    let (left, rest) = split_tree(&candidate);
    let left_height = *left.iter().max().expect("root has a child");
    let rest_height = *rest.iter().max().unwrap();
    let valid = rest_height > left_height
        || (rest_height == left_height
            && left.len() <= rest.len()
            && !(left.len() == rest.len() && left > rest));
    if valid {
        return candidate;
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p)).expect("jump point is never the root");
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let suffix_len = new_left.iter().max().unwrap() + 1;
        let start = next.len() - suffix_len;
        for (i, slot) in next[start..].iter_mut().enumerate() {
            *slot = i + 1;
        }
    }
    next
}

/// Builds the tree for a level sequence: each vertex attaches to the nearest
/// earlier vertex one level up.
pub fn tree_from_level_sequence(seq: &[usize]) -> Graph {
    let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &lvl) in seq.iter().enumerate() {
        while stack.last().is_some_and(|&j| seq[j] >= lvl) {
            stack.pop();
        }
        if let Some(&j) = stack.last() {
            edges.push((j, i));
        }
        stack.push(i);
    }
    Graph::from_edge_list(&edges, seq.len()).expect("level sequence builds a valid tree")
}

/// The path on `n` vertices, `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(&edges, n)
}

/// The star on `n` vertices with center 0.
pub fn star(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::from_edge_list(&edges, n)
}

/// The height-two tree with root 0 of degree `k` (children `1..=k`), where
/// the first `k - p` children carry `m` leaves each and the last `p` carry
/// `m - 1`. Requires `n = 1 + k + k*m - p`.
pub fn special_tree(n: usize, k: usize, m: usize, p: usize) -> Result<Graph> {
    if k < 2 || m < 3 || p > k || n != 1 + k + k * m - p {
        return Err(Error::InvalidParameters {
            reason: format!("T({n},{k},{m},{p}) needs k >= 2, m >= 3, p <= k, n = 1 + k + k*m - p"),
        });
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = k + 1;
    for child in 1..=k {
        edges.push((0, child));
        let leaf_count = if child <= k - p { m } else { m - 1 };
        for _ in 0..leaf_count {
            edges.push((child, next));
            next += 1;
        }
    }
    debug_assert_eq!(next, n);
    Graph::from_edge_list(&edges, n)
}

/// Ten-cycle `0..9` with pendant leaves 10 and 11 attached at the antipodal
/// cycle vertices 0 and 5.
pub fn pendant_cycle() -> Graph {
    let mut edges: Vec<_> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
    edges.push((0, 10));
    edges.push((5, 11));
    Graph::from_edge_list(&edges, 12).unwrap()
}

/// Eight-cycle `0..7` with the antipodal chord 0-4.
pub fn chorded_cycle() -> Graph {
    let mut edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    edges.push((0, 4));
    Graph::from_edge_list(&edges, 8).unwrap()
}

/// Centers of a tree (one or two), by iteratively stripping leaves.
fn tree_centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n == 0 {
        return vec![];
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = VertexSet::EMPTY;
    let mut remaining = n;
    let mut frontier: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &frontier {
            removed.insert(v);
            remaining -= 1;
            for &u in t.neighbors(v) {
                if !removed.contains(u) {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        frontier = next;
    }
    removed.complement(n).to_vec()
}

/// Depth sequence of the subtree at `v`, children ordered so the sequence is
/// lexicographically greatest.
fn canonical_subtree(t: &Graph, v: usize, parent: Option<usize>, depth: usize) -> Vec<usize> {
    let mut child_seqs: Vec<Vec<usize>> = t
        .neighbors(v)
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| canonical_subtree(t, u, Some(v), depth + 1))
        .collect();
    child_seqs.sort_by(|a, b| b.cmp(a));
    let mut seq = vec![depth];
    for c in child_seqs {
        seq.extend(c);
    }
    seq
}

/// Canonical level sequence of an unlabeled tree: the lexicographically
/// greatest depth sequence over rootings at the tree's center(s). Two trees
/// are isomorphic exactly when their canonical sequences agree.
pub fn canonical_level_sequence(t: &Graph) -> Result<Vec<usize>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(tree_centers(t)
        .into_iter()
        .map(|c| canonical_subtree(t, c, None, 0))
        .max()
        .expect("a tree has a center"))
}

/// Canonical code of a tree: level sequence plus the graph6 string of the
/// canonically relabeled tree. Re-encoding the decoded tree reproduces the
/// identical code.
pub fn canonical_tree_code(t: &Graph) -> Result<TreeCode> {
    let level_sequence = canonical_level_sequence(t)?;
    let graph6 = encode_graph6(&tree_from_level_sequence(&level_sequence))?;
    Ok(TreeCode {
        level_sequence,
        graph6,
    })
}

pub fn trees_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() {
        return Ok(false);
    }
    Ok(canonical_level_sequence(a)? == canonical_level_sequence(b)?)
}

/// Human name for a tree when it belongs to a named family.
pub fn family_name(t: &Graph) -> Option<String> {
    let n = t.n();
    if !t.is_tree() {
        return None;
    }
    if path(n).ok().and_then(|p| trees_isomorphic(t, &p).ok()) == Some(true) {
        return Some(format!("P_{n}"));
    }
    if star(n).ok().and_then(|s| trees_isomorphic(t, &s).ok()) == Some(true) {
        return Some(format!("S_{n}"));
    }
    for k in 2..n {
        for p in 0..=k {
            // n = 1 + k + k*m - p determines m
            if (n + p) < 1 + k || !(n + p - 1 - k).is_multiple_of(k) {
                continue;
            }
            let m = (n + p - 1 - k) / k;
            if m < 3 {
                continue;
            }
            if let Ok(candidate) = special_tree(n, k, m, p) {
                if trees_isomorphic(t, &candidate) == Ok(true) {
                    return Some(format!("T({n},{k},{m},{p})"));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_counts() {
        // 1, 1, 1, 2, 3, 6, 11, 23, 47, 106 free trees for n = 1..10
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(
                generate_free_trees(n).unwrap().count(),
                want,
                "free trees on {n} vertices"
            );
        }
        assert!(generate_free_trees(0).is_err());
        assert!(generate_free_trees(25).is_err());
    }

    #[test]
    fn generated_trees_are_trees_and_pairwise_distinct() {
        for n in 1..=9 {
            let mut codes = std::collections::HashSet::new();
            for t in generate_free_trees(n).unwrap() {
                assert!(t.is_tree());
                assert_eq!(t.n(), n);
                assert!(codes.insert(canonical_level_sequence(&t).unwrap()));
            }
        }
    }

    #[test]
    fn special_tree_examples() {
        let t = special_tree(19, 4, 4, 2).unwrap();
        assert_eq!(t.n(), 19);
        assert_eq!(t.degree(0), 4);
        let mut mids: Vec<_> = (1..=4).map(|v| t.degree(v)).collect();
        mids.sort_unstable();
        assert_eq!(mids, vec![4, 4, 5, 5]);

        assert_eq!(special_tree(20, 4, 4, 1).unwrap().n(), 20);
        assert!(special_tree(19, 4, 4, 1).is_err()); // n inconsistent
        assert!(special_tree(7, 1, 3, 0).is_err()); // k too small
        assert!(special_tree(9, 2, 2, 0).is_err()); // m too small

        let s5 = star(5).unwrap();
        assert_eq!(s5.degree(0), 4);
    }

    #[test]
    fn unicyclic_example_shapes() {
        let left = pendant_cycle();
        assert_eq!((left.n(), left.edge_count()), (12, 12));
        let mut degs: Vec<_> = (0..12).map(|v| left.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs.iter().filter(|&&d| d == 3).count(), 2);
        assert!(!left.is_tree());

        let right = chorded_cycle();
        assert_eq!((right.n(), right.edge_count()), (8, 9));
        assert_eq!((0..8).filter(|&v| right.degree(v) == 3).count(), 2);
        assert!(!right.is_tree());
    }

    #[test]
    fn canonical_codes_identify_isomorphs() {
        // same star with scrambled labels
        let a = star(6).unwrap();
        let b = Graph::from_edge_list(&[(3, 0), (3, 1), (3, 2), (3, 4), (3, 5)], 6).unwrap();
        assert!(trees_isomorphic(&a, &b).unwrap());
        assert!(!trees_isomorphic(&a, &path(6).unwrap()).unwrap());

        let code = canonical_tree_code(&b).unwrap();
        let decoded = crate::graph6::decode_graph6(&code.graph6).unwrap();
        assert_eq!(canonical_tree_code(&decoded).unwrap(), code);
    }

    #[test]
    fn family_names() {
        assert_eq!(family_name(&path(7).unwrap()).unwrap(), "P_7");
        assert_eq!(family_name(&star(8).unwrap()).unwrap(), "S_8");
        assert_eq!(
            family_name(&special_tree(19, 4, 4, 2).unwrap()).unwrap(),
            "T(19,4,4,2)"
        );
        // relabeled T(20,4,4,1) is still recognized
        let code = canonical_tree_code(&special_tree(20, 4, 4, 1).unwrap()).unwrap();
        let relabeled = crate::graph6::decode_graph6(&code.graph6).unwrap();
        assert_eq!(family_name(&relabeled).unwrap(), "T(20,4,4,1)");
        // the 5-vertex spider is in no named family
        let spider = Graph::from_edge_list(&[(0, 1), (1, 2), (0, 3), (0, 4)], 5).unwrap();
        assert_eq!(family_name(&spider), None);
    }
}
