//! The cell decomposition of the hyperspace of basepoint-containing
//! subcontinua: trimmed tree, subtree lattice, cell dimensions, and the
//! table of pairwise closure-intersection dimensions.

use std::collections::{BTreeMap, BTreeSet};

use crate::tree::{build_tree, normalize, PointedTree, VertexId};
use crate::{Error, Result};

/// An unordered edge as a (low id, high id) pair.
pub type Edge = (VertexId, VertexId);

/// Refuse to materialize subtree lattices above this size unless the caller
/// raises the cap explicitly.
pub const DEFAULT_CELL_CAP: usize = 1_000_000;

/// Order of a named vertex: its degree in the tree.
pub fn order_of(t: &PointedTree, v: &str) -> Result<usize> {
    let id = t
        .tree()
        .vertex_id(v)
        .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    Ok(t.tree().degree(id))
}

/// The edges of the tree that survive removing every pendant arc, plus the
/// vertex set carrying them. Degenerate cases: an arc leaves nothing, a star
/// leaves its branch vertex and no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimmedTree {
    edges: BTreeSet<Edge>,
    vertices: BTreeSet<VertexId>,
}

impl TrimmedTree {
    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

/// Walks from the edge end `start` away from `from`, passing through
/// degree-2 vertices, and returns the first vertex of degree != 2: the true
/// end of the maximal arc the edge lies on.
fn arc_end(t: &PointedTree, from: VertexId, start: VertexId) -> VertexId {
    let (mut prev, mut cur) = (from, start);
    while t.tree().degree(cur) == 2 {
        let next = *t
            .tree()
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev)
            .expect("degree-2 vertex has a second neighbor");
        prev = cur;
        cur = next;
    }
    cur
}

/// The trimmed tree: every edge whose maximal arc runs between two
/// ramification vertices. For normalized input only the basepoint can have
/// degree 2, so an edge survives exactly when it meets no end point after
/// looking through a possible degree-2 basepoint.
pub fn trimmed_tree(t: &PointedTree) -> TrimmedTree {
    let mut edges = BTreeSet::new();
    let mut vertices = BTreeSet::new();
    for &(u, v) in t.tree().edges() {
        let internal =
            t.tree().degree(arc_end(t, v, u)) >= 3 && t.tree().degree(arc_end(t, u, v)) >= 3;
        if internal {
            edges.insert((u, v));
            vertices.insert(u);
            vertices.insert(v);
        }
    }
    if edges.is_empty() {
        // Either an arc (nothing survives) or a star: keep the single branch
        // vertex so the lattice still has its degenerate base element.
        if let Some(&r) = t.tree().ramification_vertices().first() {
            vertices.insert(r);
        }
    }
    TrimmedTree { edges, vertices }
}

/// A connected edge subset of the trimmed tree anchored at the basepoint.
/// The empty edge set stands for the degenerate subtree holding only the
/// basepoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subtree {
    edges: BTreeSet<Edge>,
    anchor: VertexId,
}

impl Subtree {
    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn anchor(&self) -> VertexId {
        self.anchor
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of the subtree's edges, plus the anchor.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        out.insert(self.anchor);
        out
    }
}

/// Number of connected edge subsets of the trimmed tree that contain the
/// basepoint, counted without materializing them: the product over child
/// branches of (1 + branch count).
fn count_subtrees(tt: &TrimmedTree, basepoint: VertexId) -> u128 {
    fn branch(
        adj: &BTreeMap<VertexId, Vec<VertexId>>,
        v: VertexId,
        parent: Option<VertexId>,
    ) -> u128 {
        adj.get(&v)
            .map(|kids| {
                kids.iter()
                    .filter(|&&w| Some(w) != parent)
                    .map(|&w| 1 + branch(adj, w, Some(v)))
                    .product()
            })
            .unwrap_or(1)
    }
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in &tt.edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    branch(&adj, basepoint, None)
}

/// All connected edge subsets of the trimmed tree that contain the
/// basepoint, the degenerate empty subtree included, ordered by size and
/// then lexicographically. Errors when the basepoint lies outside the
/// trimmed tree; augmenting the basepoint to order >= 3 repairs that.
pub fn subtrees_containing(t: &PointedTree, tt: &TrimmedTree) -> Result<Vec<Subtree>> {
    let p = t.basepoint();
    if !tt.contains_vertex(p) {
        return Err(Error::BasepointNotInTrimmedTree(t.basepoint_name().into()));
    }
    let mut adj: BTreeMap<VertexId, Vec<(VertexId, Edge)>> = BTreeMap::new();
    for &(u, v) in &tt.edges {
        adj.entry(u).or_default().push((v, (u, v)));
        adj.entry(v).or_default().push((u, (u, v)));
    }
    // Sets for the branch rooted at v: every subtree of that branch that
    // contains v, the empty one included. An edge can join only together
    // with the edge path back to the anchor, so accumulate per child:
    // keep the set as is, or extend it by the child edge and any of the
    // child's branch sets.
    fn branch_sets(
        adj: &BTreeMap<VertexId, Vec<(VertexId, Edge)>>,
        v: VertexId,
        parent: Option<VertexId>,
    ) -> Vec<BTreeSet<Edge>> {
        let mut acc: Vec<BTreeSet<Edge>> = vec![BTreeSet::new()];
        let Some(kids) = adj.get(&v) else { return acc };
        for &(w, e) in kids.iter().filter(|&&(w, _)| Some(w) != parent) {
            let below = branch_sets(adj, w, Some(v));
            let mut next = Vec::with_capacity(acc.len() * (1 + below.len()));
            for sofar in &acc {
                next.push(sofar.clone());
                for sub in &below {
                    let mut joined = sofar.clone();
                    joined.insert(e);
                    joined.extend(sub.iter().copied());
                    next.push(joined);
                }
            }
            acc = next;
        }
        acc
    }
    let mut sets = branch_sets(&adj, p, None);
    sets.sort_by(|a, b| {
        (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>()))
    });
    Ok(sets
        .into_iter()
        .map(|edges| Subtree { edges, anchor: p })
        .collect())
}

/// One open cell of the decomposition: its indexing subtree, its dimension,
/// and the outside edges incident on the subtree (the frontier realizing the
/// dimension).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub subtree: Subtree,
    pub dimension: usize,
    pub frontier: BTreeSet<Edge>,
}

/// The cell indexed by a subtree: dimension = number of edges of the tree
/// that are incident on the subtree without belonging to it.
pub fn cell_of(y: &Subtree, t: &PointedTree) -> Cell {
    let verts = y.vertices();
    let frontier: BTreeSet<Edge> = t
        .tree()
        .edges()
        .iter()
        .copied()
        .filter(|e| !y.edges().contains(e) && (verts.contains(&e.0) || verts.contains(&e.1)))
        .collect();
    Cell {
        subtree: y.clone(),
        dimension: frontier.len(),
        frontier,
    }
}

fn connected_through(t: &PointedTree, vertices: &BTreeSet<VertexId>) -> bool {
    let Some(&start) = vertices.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in t.tree().neighbors(v) {
            if vertices.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == vertices.len()
}

/// Dimension of the intersection of two cell closures, or `None` when the
/// closures are disjoint. The closures meet exactly when every edge lying in
/// one subtree but not the other is incident on the other; the dimension is
/// then the number of outside edges incident on the common part.
pub fn closure_intersection_dim(a: &Cell, b: &Cell, t: &PointedTree) -> Option<usize> {
    let (va, vb) = (a.subtree.vertices(), b.subtree.vertices());
    let touches = |e: &Edge, vs: &BTreeSet<VertexId>| vs.contains(&e.0) || vs.contains(&e.1);
    if a.subtree
        .edges()
        .difference(b.subtree.edges())
        .any(|e| !touches(e, &vb))
    {
        return None;
    }
    if b.subtree
        .edges()
        .difference(a.subtree.edges())
        .any(|e| !touches(e, &va))
    {
        return None;
    }
    let common: BTreeSet<VertexId> = va.intersection(&vb).copied().collect();
    assert!(
        connected_through(t, &common),
        "common part of two anchored subtrees must be connected"
    );
    let dim = t
        .tree()
        .edges()
        .iter()
        .filter(|e| {
            !a.subtree.edges().contains(e) && !b.subtree.edges().contains(e) && touches(e, &common)
        })
        .count();
    Some(dim)
}

/// Attaches `max(0, 3 - ord(p))` fresh pendant edges at the basepoint, so
/// the basepoint becomes a ramification vertex. Deleting that many pendant
/// edges at the basepoint afterwards restores the original class, whichever
/// pendant edges are chosen.
pub fn augment(t: &PointedTree) -> (PointedTree, usize) {
    let k = 3usize.saturating_sub(t.basepoint_order());
    if k == 0 {
        return (t.clone(), 0);
    }
    let mut edges = t.tree().edge_names();
    let mut grown = t.clone();
    for _ in 0..k {
        let fresh = grown.tree().fresh_name("q");
        edges.push((t.basepoint_name().to_string(), fresh));
        grown =
            build_tree(&edges, t.basepoint_name()).expect("pendant edges preserve the tree axioms");
    }
    (grown, k)
}

/// Every cell of the decomposition plus the dimensions of the pairwise
/// closure intersections; absent pairs have disjoint closures. Also carries
/// the (possibly augmented) pointed tree the cells live in, the basepoint
/// order before augmentation, and the number of attached pendant edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    source: PointedTree,
    ord_basepoint: usize,
    attached: usize,
    cells: Vec<Cell>,
    intersections: BTreeMap<(usize, usize), usize>,
}

/// The complex stripped to what a homeomorphism of hyperspaces preserves:
/// cell dimensions and pairwise closure-intersection dimensions, plus the
/// basepoint order and attachment count riding along as metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractComplex {
    pub dims: Vec<usize>,
    pub intersections: BTreeMap<(usize, usize), usize>,
    pub ord_basepoint: usize,
    pub attached: usize,
}

impl CellComplex {
    pub fn source(&self) -> &PointedTree {
        &self.source
    }

    /// Basepoint order of the tree the complex was requested for, before any
    /// augmentation.
    pub fn ord_basepoint(&self) -> usize {
        self.ord_basepoint
    }

    /// Pendant edges attached at the basepoint before building.
    pub fn attached(&self) -> usize {
        self.attached
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Closure-intersection dimensions keyed by cell index pairs (i < j);
    /// only pairs with intersecting closures are present.
    pub fn intersections(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.intersections
    }

    pub fn abstract_view(&self) -> AbstractComplex {
        AbstractComplex {
            dims: self.cells.iter().map(|c| c.dimension).collect(),
            intersections: self.intersections.clone(),
            ord_basepoint: self.ord_basepoint,
            attached: self.attached,
        }
    }

    /// Assembles a complex from externally supplied parts: claimed cell
    /// dimensions with their subtree edge sets (as name pairs), and claimed
    /// intersection triples. Only referential integrity is enforced here;
    /// the verification checks decide whether the parts describe a real
    /// complex. Frontiers are recomputed from the subtrees.
    pub fn from_parts(
        source: PointedTree,
        ord_basepoint: usize,
        attached: usize,
        cells: Vec<(usize, Vec<(String, String)>)>,
        intersections: Vec<(usize, usize, usize)>,
    ) -> Result<CellComplex> {
        let resolve = |name: &str| -> Result<VertexId> {
            source
                .tree()
                .vertex_id(name)
                .ok_or_else(|| Error::MalformedComplex(format!("unknown vertex {name}")))
        };
        let edge_set: BTreeSet<Edge> = source.tree().edges().iter().copied().collect();
        let n = cells.len();
        let mut built = Vec::with_capacity(n);
        for (dim, names) in cells {
            let mut edges = BTreeSet::new();
            for (a, b) in &names {
                let (u, v) = (resolve(a)?, resolve(b)?);
                let e = (u.min(v), u.max(v));
                if !edge_set.contains(&e) {
                    return Err(Error::MalformedComplex(format!(
                        "cell references {a}-{b}, which is not an edge of the tree"
                    )));
                }
                edges.insert(e);
            }
            let subtree = Subtree {
                edges,
                anchor: source.basepoint(),
            };
            let frontier = cell_of(&subtree, &source).frontier;
            built.push(Cell {
                subtree,
                dimension: dim,
                frontier,
            });
        }
        let mut table = BTreeMap::new();
        for (i, j, dim) in intersections {
            if i >= n || j >= n || i == j {
                return Err(Error::MalformedComplex(format!(
                    "intersection ({i}, {j}) does not index two distinct cells"
                )));
            }
            if table.insert((i.min(j), i.max(j)), dim).is_some() {
                return Err(Error::MalformedComplex(format!(
                    "intersection ({i}, {j}) listed twice"
                )));
            }
        }
        Ok(CellComplex {
            source,
            ord_basepoint,
            attached,
            cells: built,
            intersections: table,
        })
    }
}

/// Builds the full cell decomposition for a basepoint of order >= 3. The
/// input is normalized first; a basepoint of lower order needs augmenting
/// (see `analyze`). Cells are ordered by subtree size, then
/// lexicographically.
pub fn build_complex(t: &PointedTree, cap: usize) -> Result<CellComplex> {
    let t = normalize(t);
    let order = t.basepoint_order();
    if order < 3 {
        return Err(Error::NeedsAugmentation { order });
    }
    let tt = trimmed_tree(&t);
    let lattice = count_subtrees(&tt, t.basepoint());
    if lattice > cap as u128 {
        return Err(Error::ComplexTooLarge {
            subtrees: lattice,
            cap,
        });
    }
    let subtrees = subtrees_containing(&t, &tt)?;
    let cells: Vec<Cell> = subtrees.iter().map(|y| cell_of(y, &t)).collect();
    let mut intersections = BTreeMap::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if let Some(dim) = closure_intersection_dim(&cells[i], &cells[j], &t) {
                intersections.insert((i, j), dim);
            }
        }
    }
    Ok(CellComplex {
        source: t,
        ord_basepoint: order,
        attached: 0,
        cells,
        intersections,
    })
}

/// Normalizes, augments a basepoint of order < 3, and builds the complex,
/// recording the original basepoint order and the attachment count. This is
/// the one entry point valid for every pointed tree.
pub fn analyze(t: &PointedTree, cap: usize) -> Result<CellComplex> {
    let nt = normalize(t);
    let order = nt.basepoint_order();
    let (augmented, attached) = augment(&nt);
    let mut complex = build_complex(&augmented, cap)?;
    complex.ord_basepoint = order;
    complex.attached = attached;
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{canonical_code, rooted_isomorphic};

    fn arc_at_end() -> PointedTree {
        build_tree(&[("a", "b")], "a").unwrap()
    }

    fn star(n: usize) -> PointedTree {
        let edges: Vec<(String, String)> =
            (0..n).map(|i| ("v".to_string(), format!("x{i}"))).collect();
        build_tree(&edges, "v").unwrap()
    }

    fn double_star() -> PointedTree {
        build_tree(
            &[
                ("p", "a"),
                ("p", "x1"),
                ("p", "x2"),
                ("a", "y1"),
                ("a", "y2"),
            ],
            "p",
        )
        .unwrap()
    }

    /// Branch path p-a-b with two pendant leaves at p, one at a, two at b.
    fn caterpillar() -> PointedTree {
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
        .unwrap()
    }

    fn subtree_by_names(c: &CellComplex, names: &[(&str, &str)]) -> usize {
        let t = c.source();
        let want: BTreeSet<Edge> = names
            .iter()
            .map(|(a, b)| {
                let (u, v) = (
                    t.tree().vertex_id(a).expect("vertex"),
                    t.tree().vertex_id(b).expect("vertex"),
                );
                (u.min(v), u.max(v))
            })
            .collect();
        c.cells()
            .iter()
            .position(|cell| cell.subtree.edges() == &want)
            .expect("cell with these edges")
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_of(&star(3), "v").unwrap(), 3);
        assert_eq!(order_of(&star(3), "x0").unwrap(), 1);
        assert_eq!(order_of(&caterpillar(), "a").unwrap(), 3);
        assert_eq!(
            order_of(&star(3), "zz").unwrap_err(),
            Error::UnknownVertex("zz".into())
        );
    }

    #[test]
    fn trimming_an_arc_leaves_nothing() {
        let tt = trimmed_tree(&arc_at_end());
        assert!(tt.edges().is_empty());
        assert!(tt.vertices().is_empty());
    }

    #[test]
    fn trimming_a_star_leaves_the_branch_vertex() {
        for n in [3, 4, 6] {
            let s = star(n);
            let tt = trimmed_tree(&s);
            assert!(tt.edges().is_empty());
            assert_eq!(tt.vertices().len(), 1);
            assert!(tt.contains_vertex(s.basepoint()));
        }
    }

    #[test]
    fn trimming_keeps_only_inner_edges() {
        let d = double_star();
        let tt = trimmed_tree(&d);
        assert_eq!(tt.edges().len(), 1);
        assert_eq!(tt.vertices().len(), 2);

        let f3 = caterpillar();
        let tt = trimmed_tree(&f3);
        assert_eq!(tt.edges().len(), 2);
    }

    #[test]
    fn trimming_sees_through_a_degree_2_basepoint() {
        // Double star with the inner edge subdivided at the basepoint: both
        // halves of the inner arc survive the trim.
        let t = build_tree(
            &[
                ("p", "m"),
                ("m", "a"),
                ("p", "x1"),
                ("p", "x2"),
                ("a", "y1"),
                ("a", "y2"),
            ],
            "m",
        )
        .unwrap();
        let tt = trimmed_tree(&t);
        assert_eq!(tt.edges().len(), 2);
        assert!(tt.contains_vertex(t.basepoint()));

        // Star with one subdivided leg: the half-leg edges are pendant, so
        // only the branch vertex survives.
        let s = build_tree(&[("v", "m"), ("m", "x0"), ("v", "x1"), ("v", "x2")], "m").unwrap();
        let tt = trimmed_tree(&s);
        assert!(tt.edges().is_empty());
        assert_eq!(tt.vertices().len(), 1);
        assert!(!tt.contains_vertex(s.basepoint()));
    }

    #[test]
    fn subtree_lattice_of_degenerate_trim() {
        let s = star(3);
        let tt = trimmed_tree(&s);
        let subs = subtrees_containing(&s, &tt).unwrap();
        assert_eq!(subs.len(), 1);
        assert!(subs[0].edges().is_empty());
    }

    #[test]
    fn subtree_lattice_of_one_edge() {
        let d = double_star();
        let subs = subtrees_containing(&d, &trimmed_tree(&d)).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[1].edge_count(), 1);
    }

    #[test]
    fn subtree_lattice_of_a_path() {
        let f3 = caterpillar();
        let subs = subtrees_containing(&f3, &trimmed_tree(&f3)).unwrap();
        assert_eq!(subs.len(), 3);
        let sizes: Vec<usize> = subs.iter().map(Subtree::edge_count).collect();
        assert_eq!(sizes, vec![0, 1, 2]);
    }

    #[test]
    fn anchor_outside_trim_is_an_error() {
        let a = arc_at_end();
        let err = subtrees_containing(&a, &trimmed_tree(&a)).unwrap_err();
        assert_eq!(err, Error::BasepointNotInTrimmedTree("a".into()));

        // Double star pointed at a leaf: the trim is the inner edge, which
        // does not hold the leaf.
        let at_leaf = build_tree(
            &[
                ("p", "a"),
                ("p", "x1"),
                ("p", "x2"),
                ("a", "y1"),
                ("a", "y2"),
            ],
            "x1",
        )
        .unwrap();
        let err = subtrees_containing(&at_leaf, &trimmed_tree(&at_leaf)).unwrap_err();
        assert_eq!(err, Error::BasepointNotInTrimmedTree("x1".into()));
    }

    #[test]
    fn cell_dimensions() {
        let d = double_star();
        let subs = subtrees_containing(&d, &trimmed_tree(&d)).unwrap();
        assert_eq!(cell_of(&subs[0], &d).dimension, 3);
        assert_eq!(cell_of(&subs[1], &d).dimension, 4);

        for n in [3, 5] {
            let s = star(n);
            let subs = subtrees_containing(&s, &trimmed_tree(&s)).unwrap();
            assert_eq!(cell_of(&subs[0], &s).dimension, n);
        }

        let f3 = caterpillar();
        let subs = subtrees_containing(&f3, &trimmed_tree(&f3)).unwrap();
        let dims: Vec<usize> = subs.iter().map(|y| cell_of(y, &f3).dimension).collect();
        assert_eq!(dims, vec![3, 4, 5]);
    }

    #[test]
    fn intersection_dimensions_on_the_path_fixture() {
        let f3 = caterpillar();
        let c = build_complex(&f3, DEFAULT_CELL_CAP).unwrap();
        assert_eq!(c.intersections().get(&(0, 1)), Some(&2));
        assert_eq!(c.intersections().get(&(1, 2)), Some(&3));
        assert_eq!(c.intersections().get(&(0, 2)), None);
    }

    #[test]
    fn augment_examples() {
        let (s, k) = augment(&star(3));
        assert_eq!(k, 0);
        assert_eq!(s.tree().edge_count(), 3);

        let interior = build_tree(&[("m", "a"), ("m", "b")], "m").unwrap();
        let (aug, k) = augment(&interior);
        assert_eq!(k, 1);
        assert!(rooted_isomorphic(&normalize(&aug), &star(3)));

        let (aug, k) = augment(&arc_at_end());
        assert_eq!(k, 2);
        assert!(rooted_isomorphic(&normalize(&aug), &star(3)));
    }

    #[test]
    fn complex_of_a_star_is_one_cell() {
        let c = build_complex(&star(4), DEFAULT_CELL_CAP).unwrap();
        assert_eq!(c.cells().len(), 1);
        assert_eq!(c.cells()[0].dimension, 4);
        assert!(c.intersections().is_empty());
    }

    #[test]
    fn complex_of_the_double_star() {
        let c = build_complex(&double_star(), DEFAULT_CELL_CAP).unwrap();
        assert_eq!(c.cells().len(), 2);
        let dims: Vec<usize> = c.cells().iter().map(|cl| cl.dimension).collect();
        assert_eq!(dims, vec![3, 4]);
        assert_eq!(c.intersections().get(&(0, 1)), Some(&2));
        assert_eq!(c.ord_basepoint(), 3);
        assert_eq!(c.attached(), 0);
    }

    #[test]
    fn low_order_basepoints_need_augmenting() {
        let err = build_complex(&arc_at_end(), DEFAULT_CELL_CAP).unwrap_err();
        assert_eq!(err, Error::NeedsAugmentation { order: 1 });

        let c = analyze(&arc_at_end(), DEFAULT_CELL_CAP).unwrap();
        assert_eq!(c.ord_basepoint(), 1);
        assert_eq!(c.attached(), 2);
        assert_eq!(c.cells().len(), 1);
        assert_eq!(c.cells()[0].dimension, 3);
    }

    #[test]
    fn analyze_normalizes_first() {
        // A subdivided double-star leg disappears before the complex is
        // built, so the cells match the unsubdivided tree.
        let t = build_tree(
            &[
                ("p", "a"),
                ("p", "x1"),
                ("p", "x2"),
                ("a", "y1"),
                ("a", "w"),
                ("w", "y2"),
            ],
            "p",
        )
        .unwrap();
        let c = analyze(&t, DEFAULT_CELL_CAP).unwrap();
        assert_eq!(c.cells().len(), 2);
        let dims: Vec<usize> = c.cells().iter().map(|cl| cl.dimension).collect();
        assert_eq!(dims, vec![3, 4]);
    }

    #[test]
    fn cap_refuses_large_lattices() {
        let f3 = caterpillar();
        let err = build_complex(&f3, 2).unwrap_err();
        assert_eq!(
            err,
            Error::ComplexTooLarge {
                subtrees: 3,
                cap: 2
            }
        );
    }

    #[test]
    fn monotonicity_is_strict_on_nested_subtrees() {
        let c = build_complex(&caterpillar(), DEFAULT_CELL_CAP).unwrap();
        for i in 0..c.cells().len() {
            for j in 0..c.cells().len() {
                let (a, b) = (&c.cells()[i], &c.cells()[j]);
                if a.subtree.edges().is_subset(b.subtree.edges())
                    && a.subtree.edges() != b.subtree.edges()
                {
                    assert!(a.dimension < b.dimension);
                }
            }
        }
    }

    /// The worked two-subtree intersection example: a branching tree on 30
    /// vertices where the two cells have dimensions 17 and 19 and their
    /// closures meet in dimension 9.
    #[test]
    fn wide_fixture_intersection() {
        let mut edges: Vec<(String, String)> = vec![
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
        let t = build_tree(&edges, "a").unwrap();
        let c = build_complex(&t, DEFAULT_CELL_CAP).unwrap();
        assert_eq!(c.cells().len(), 30);

        let g = subtree_by_names(&c, &[("a", "e"), ("a", "b"), ("e", "f"), ("e", "n1")]);
        let g2 = subtree_by_names(&c, &[("a", "e"), ("a", "b"), ("a", "n2"), ("b", "d")]);
        assert_eq!(c.cells()[g].dimension, 17);
        assert_eq!(c.cells()[g2].dimension, 19);
        let key = (g.min(g2), g.max(g2));
        assert_eq!(c.intersections().get(&key), Some(&9));
    }

    #[test]
    fn from_parts_round_trips_a_real_complex() {
        let c = build_complex(&double_star(), DEFAULT_CELL_CAP).unwrap();
        let cells: Vec<(usize, Vec<(String, String)>)> = c
            .cells()
            .iter()
            .map(|cell| {
                let names = cell
                    .subtree
                    .edges()
                    .iter()
                    .map(|&(u, v)| {
                        (
                            c.source().tree().name(u).to_string(),
                            c.source().tree().name(v).to_string(),
                        )
                    })
                    .collect();
                (cell.dimension, names)
            })
            .collect();
        let inter: Vec<(usize, usize, usize)> = c
            .intersections()
            .iter()
            .map(|(&(i, j), &d)| (i, j, d))
            .collect();
        let rebuilt = CellComplex::from_parts(
            c.source().clone(),
            c.ord_basepoint(),
            c.attached(),
            cells,
            inter,
        )
        .unwrap();
        assert_eq!(rebuilt, c);
    }

    #[test]
    fn from_parts_rejects_foreign_edges() {
        let c = build_complex(&double_star(), DEFAULT_CELL_CAP).unwrap();
        let err = CellComplex::from_parts(
            c.source().clone(),
            3,
            0,
            vec![(3, vec![("x1".to_string(), "y1".to_string())])],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedComplex(_)));
    }

    #[test]
    fn normalized_star_codes_match_after_augment() {
        let (aug, _) = augment(&arc_at_end());
        assert_eq!(canonical_code(&normalize(&aug)), canonical_code(&star(3)));
    }
}
