//! Combinatorial model of the hyperspace of subcontinua of a finite tree
//! that contain a fixed basepoint: the cell decomposition indexed by
//! subtrees of the trimmed tree, its dimension and closure-intersection
//! calculus, reconstruction of the pointed tree from the abstract cell data,
//! and exhaustive verification of the resulting uniqueness property at small
//! scale.

pub mod complex;
mod error;
pub mod io;
pub mod reconstruct;
pub mod tree;
pub mod verify;

#[cfg(test)]
pub(crate) mod bruteforce;

pub use complex::{
    analyze, augment, build_complex, cell_of, closure_intersection_dim, order_of,
    subtrees_containing, trimmed_tree, AbstractComplex, Cell, CellComplex, Edge, Subtree,
    TrimmedTree, DEFAULT_CELL_CAP,
};
pub use error::{Error, Result};
pub use io::{
    abstract_complex_from_json, complex_parts_from_json, complex_to_json, free_tree_from_json,
    hasse_to_dot, report_table, report_to_json, signature_to_json, tree_from_json, tree_to_dot,
    tree_to_json, ComplexParts,
};
pub use reconstruct::{
    base_cell, hasse, reconstruct, same_hyperspace, signature, signature_with_cap, Cover,
    HasseDiagram, Signature,
};
pub use tree::{
    build_tree, canonical_code, enumerate_pointed, enumerate_trees, free_code, homogeneity_degree,
    midpoint_code, normalize, orbits, rooted_isomorphic, subdivide_edge, CanonicalCode, Orbits,
    PointedTree, Tree, VertexClass, VertexId, VertexKind,
};
pub use verify::{
    check_pointed, check_pointed_with, corollary_sweep, kx_size, pointed_sweep, uniqueness_sweep,
    CheckResult, VerificationReport,
};
