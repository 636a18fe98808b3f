//! Small undirected simple graphs (trees, forests and the odd unicyclic
//! example) over vertex indices `0..n`, with one-word vertex sets.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Hard cap on the number of vertices: one bit per vertex in a `u64`.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices stored as a bitmask.
///
/// All set algebra downstream (forts, colored sets, forbidden sets) runs on
/// this type; iteration is always in ascending vertex order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        debug_assert!(v < MAX_VERTICES);
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | 1 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & Self::full(n).0)
    }

    /// Smallest vertex in the set, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// An undirected simple graph on `0..n`. Immutable after construction;
/// neighbor lists are sorted ascending and mirrored as bitmasks.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    masks: Vec<VertexSet>,
}

impl Graph {
    pub fn from_edge_list(edges: &[(usize, usize)], n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded {
                n,
                limit: MAX_VERTICES,
            });
        }
        let mut masks = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            // duplicate edges collapse for free in the bitmask
            masks[u].insert(v);
            masks[v].insert(u);
        }
        let adj = masks.iter().map(|m| m.to_vec()).collect();
        Ok(Graph { n, adj, masks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        self.masks[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.masks[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices of degree exactly one.
    pub fn leaves(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn is_connected(&self) -> bool {
        match self.n {
            0 => true,
            _ => self.reach_from(0) == self.full_set(),
        }
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        // acyclic <=> every component has exactly (size - 1) edges,
        // which for the whole graph means n - #components edges
        self.edge_count() + self.component_sets().len() == self.n
    }

    fn reach_from(&self, start: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn component_sets(&self) -> Vec<VertexSet> {
        let mut remaining = self.full_set();
        let mut out = Vec::new();
        while let Some(v) = remaining.first() {
            let comp = self.reach_from(v);
            out.push(comp);
            remaining = remaining - comp;
        }
        out
    }

    /// Connected components as standalone graphs, each with the map from its
    /// dense local indices back to the parent's labels.
    pub fn components(&self) -> Vec<Component> {
        self.component_sets()
            .into_iter()
            .map(|set| {
                let to_parent = set.to_vec();
                let mut local = vec![usize::MAX; self.n];
                for (i, &v) in to_parent.iter().enumerate() {
                    local[v] = i;
                }
                let mut edges = Vec::new();
                for &v in &to_parent {
                    for &u in &self.adj[v] {
                        if v < u {
                            edges.push((local[v], local[u]));
                        }
                    }
                }
                let graph = Graph::from_edge_list(&edges, to_parent.len())
                    .expect("component of a valid graph is valid");
                Component { graph, to_parent }
            })
            .collect()
    }

    /// The path branch of `leaf`: the maximal connected piece through `leaf`
    /// of vertices with degree at most two, plus its unique attachment vertex
    /// outside the branch (absent exactly when the tree is a path).
    pub fn path_branch_of(&self, leaf: usize) -> Result<PathBranch> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        if leaf >= self.n || self.degree(leaf) != 1 {
            return Err(Error::NotALeaf { vertex: leaf });
        }
        let (vertices, neighbor) = path_branch_within(self, self.full_set(), leaf);
        Ok(PathBranch {
            vertices,
            leaf,
            neighbor,
        })
    }

    /// Parses the edge-list text format: first line `n m`, then `m` lines
    /// `u v` (0-based). `#` starts a comment; blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace().map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: idx + 1,
                    reason: format!("expected an integer, got `{tok}`"),
                })
            });
            let a = it.next().ok_or(Error::Parse {
                line: idx + 1,
                reason: "expected two integers".into(),
            })??;
            let b = it.next().ok_or(Error::Parse {
                line: idx + 1,
                reason: "expected two integers".into(),
            })??;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    reason: "expected exactly two integers".into(),
                });
            }
            if header.is_none() {
                header = Some((a, b));
            } else {
                edges.push((a, b));
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            reason: "empty input".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                reason: format!("header declares {m} edges but {} were given", edges.len()),
            });
        }
        Graph::from_edge_list(&edges, n)
    }

    /// Renders the edge-list text format accepted by [`Graph::parse_edge_list`].
    pub fn to_edge_list_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A connected component extracted from a parent graph.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: Graph,
    /// `to_parent[i]` is the parent-graph label of local vertex `i`.
    pub to_parent: Vec<usize>,
}

/// The path branch for a leaf, together with its attachment vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathBranch {
    pub vertices: VertexSet,
    pub leaf: usize,
    /// The unique vertex outside the branch adjacent to it; `None` exactly
    /// when the branch is the entire tree, i.e. the tree is a path.
    pub neighbor: Option<usize>,
}

/// Walks the degree-<=2 stretch from `leaf` inside the subgraph induced by
/// `alive`. Returns the branch and the attachment vertex (degree >= 3).
pub(crate) fn path_branch_within(
    g: &Graph,
    alive: VertexSet,
    leaf: usize,
) -> (VertexSet, Option<usize>) {
    debug_assert!(alive.contains(leaf));
    let deg = |v: usize| (g.neighbor_set(v) & alive).len();
    debug_assert!(deg(leaf) <= 1);
    let mut branch = VertexSet::singleton(leaf);
    let mut prev = leaf;
    let mut cur = match (g.neighbor_set(leaf) & alive).first() {
        Some(v) => v,
        None => return (branch, None), // isolated vertex
    };
    loop {
        if deg(cur) > 2 {
            return (branch, Some(cur));
        }
        branch.insert(cur);
        let next = (g.neighbor_set(cur) & alive)
            .iter()
            .find(|&v| v != prev && !branch.contains(v));
        match next {
            Some(v) => {
                prev = cur;
                cur = v;
            }
            None => return (branch, None), // ran off the far end: a path
        }
    }
}

/// A deduplicated, canonically ordered collection of minimal forts.
///
/// Ordering is by ascending bitmask value, which is total and independent of
/// how the forts were discovered.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FortCollection {
    forts: Vec<VertexSet>,
}

impl FortCollection {
    pub fn from_unsorted(mut forts: Vec<VertexSet>) -> FortCollection {
        forts.sort();
        debug_assert!(
            forts.windows(2).all(|w| w[0] != w[1]),
            "duplicate fort produced"
        );
        FortCollection { forts }
    }

    pub fn len(&self) -> usize {
        self.forts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.forts.iter()
    }

    pub fn as_slice(&self) -> &[VertexSet] {
        &self.forts
    }

    pub fn contains(&self, f: VertexSet) -> bool {
        self.forts.binary_search(&f).is_ok()
    }
}
