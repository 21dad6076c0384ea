//! Fixtures shared by the benches: a wide tree with a 30-cell complex, a
//! small caterpillar, and balanced binary trees for the encoder.

use treespace::{build_tree, PointedTree, Tree};

/// Seven branch vertices with 23 leaves spread over them; its complex has
/// 30 cells with dimensions up to 23.
pub fn wide_fixture() -> PointedTree {
    let mut edges: Vec<(String, String)> = [
        ("a", "b"),
        ("a", "e"),
        ("b", "d"),
        ("e", "f"),
        ("e", "n1"),
        ("a", "n2"),
    ]
    .into_iter()
    .map(|(x, y)| (x.to_string(), y.to_string()))
    .collect();
    for (v, leaves) in [
        ("a", 2),
        ("b", 4),
        ("e", 3),
        ("f", 2),
        ("n1", 4),
        ("n2", 4),
        ("d", 4),
    ] {
        for i in 0..leaves {
            edges.push((v.to_string(), format!("{v}L{i}")));
        }
    }
    build_tree(&edges, "a").expect("fixture builds")
}

/// Three branch vertices on a spine, basepoint at one end of the spine.
pub fn caterpillar() -> PointedTree {
    build_tree(
        &[
            ("p", "a"),
            ("a", "b"),
            ("p", "u1"),
            ("p", "u2"),
            ("a", "w1"),
            ("b", "z1"),
            ("b", "z2"),
        ],
        "p",
    )
    .expect("fixture builds")
}

/// Complete binary tree with 2^depth - 1 vertices.
pub fn binary_tree(depth: u32) -> Tree {
    let mut edges = Vec::new();
    for i in 1..(1u32 << (depth - 1)) {
        edges.push((format!("b{i}"), format!("b{}", 2 * i)));
        edges.push((format!("b{i}"), format!("b{}", 2 * i + 1)));
    }
    Tree::from_edge_names(&edges).expect("fixture builds")
}
