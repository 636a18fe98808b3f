//! Minimal forts of trees and forests: data model, a brute-force oracle, an
//! exact tree enumerator, free-tree generation, counting formulas, and the
//! survey machinery that reproduces the reference tables.
//!
//! A *fort* of a graph is a nonempty vertex set whose outside vertices each
//! have zero or at least two neighbors inside; a fort is *minimal* when no
//! proper subset is a fort. [`oracle`] decides these notions from first
//! principles on any small graph; [`enumerate`] lists all minimal forts of a
//! tree by a leaf-driven search over the structural characterization;
//! [`survey`] runs the enumerator over every free tree of a given size.

pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod survey;
pub mod treegen;

pub use enumerate::{count_minimal_forts_forest, enumerate_minimal_forts};
pub use error::{Error, Result};
pub use graph::{FortCollection, Graph, PathBranch, VertexSet};
pub use graph6::{decode_graph6, encode_graph6};
pub use oracle::{brute_force_minimal_forts, closure, is_fort, is_minimal_fort};
pub use treegen::{generate_free_trees, TreeCode};
