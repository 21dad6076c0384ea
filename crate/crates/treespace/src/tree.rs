//! Finite trees with a marked basepoint: validated construction,
//! normalization, canonical codes, automorphism orbits, and exhaustive
//! enumeration of small isomorphism classes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{Error, Result};

/// Vertex handle; indexes the tree's vertex table.
pub type VertexId = u32;

/// Point classification by order: end (1), ordinary (2), ramification (>= 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    End,
    Ordinary,
    Ramification,
}

/// A vertex's kind together with its order (its degree in the tree).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexClass {
    pub kind: VertexKind,
    pub order: usize,
}

impl VertexClass {
    fn of(order: usize) -> VertexClass {
        let kind = match order {
            1 => VertexKind::End,
            2 => VertexKind::Ordinary,
            _ => VertexKind::Ramification,
        };
        VertexClass { kind, order }
    }
}

/// Order-invariant encoding of a rooted or free tree as a nested-parentheses
/// string with children sorted. Equal codes mean isomorphic trees; for
/// rooted codes the isomorphism preserves the root.
///
/// Free codes carry a `c` (central vertex) or `e` (central edge) prefix so a
/// tree rooted at a vertex can never collide with one rooted at an edge
/// midpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite unrooted tree over named vertices. Always connected and acyclic
/// with at least one edge; one-point trees are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    names: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
}

impl Tree {
    /// Builds and validates a tree from named edges. Vertices are interned
    /// in order of first occurrence.
    pub fn from_edge_names<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Tree> {
        if edges.is_empty() {
            return Err(Error::InvalidInput("tree has no edges".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, VertexId> = BTreeMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> VertexId {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                (names.len() - 1) as VertexId
            })
        };
        let mut id_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(Error::CycleDetected(a.into(), b.into()));
            }
            let u = intern(a, &mut names);
            let v = intern(b, &mut names);
            id_edges.push((u.min(v), u.max(v)));
        }
        let mut seen = BTreeSet::new();
        for (i, e) in id_edges.iter().enumerate() {
            if !seen.insert(*e) {
                let (a, b) = &edges[i];
                return Err(Error::DuplicateEdge(a.as_ref().into(), b.as_ref().into()));
            }
        }
        // Union-find over the edges in input order; the first edge joining
        // two already-connected vertices is reported as closing a cycle.
        let mut parent: Vec<usize> = (0..names.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, &(u, v)) in id_edges.iter().enumerate() {
            let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            if ru == rv {
                let (a, b) = &edges[i];
                return Err(Error::CycleDetected(a.as_ref().into(), b.as_ref().into()));
            }
            parent[ru] = rv;
        }
        let root = find(&mut parent, 0);
        for (v, name) in names.iter().enumerate() {
            if find(&mut parent, v) != root {
                return Err(Error::Disconnected(name.clone()));
            }
        }
        id_edges.sort_unstable();
        let mut adj = vec![Vec::new(); names.len()];
        for &(u, v) in &id_edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree {
            names,
            edges: id_edges,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.names.len() as VertexId
    }

    /// Edges as (low id, high id) pairs, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as VertexId)
    }

    pub fn vertex_class(&self, v: VertexId) -> VertexClass {
        VertexClass::of(self.degree(v))
    }

    /// Vertices of degree 1 (the end points).
    pub fn endpoints(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Vertices of degree >= 3 (the ramification points).
    pub fn ramification_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.degree(v) >= 3).collect()
    }

    /// Marks `basepoint` as the distinguished point of this tree.
    pub fn pointed_at(&self, basepoint: VertexId) -> PointedTree {
        assert!(
            (basepoint as usize) < self.names.len(),
            "basepoint {basepoint} out of range"
        );
        PointedTree {
            tree: self.clone(),
            basepoint,
        }
    }

    /// Edges as sorted name pairs, for serialization and rebuilding.
    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.name(u), self.name(v));
                if a <= b {
                    (a.to_string(), b.to_string())
                } else {
                    (b.to_string(), a.to_string())
                }
            })
            .collect()
    }

    /// A name of the form `prefix{i}` that no vertex currently uses.
    pub(crate) fn fresh_name(&self, prefix: &str) -> String {
        let taken: BTreeSet<&str> = self.names.iter().map(String::as_str).collect();
        (0..)
            .map(|i| format!("{prefix}{i}"))
            .find(|cand| !taken.contains(cand.as_str()))
            .expect("unbounded name supply")
    }
}

/// A tree together with a distinguished basepoint: the pair (X, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedTree {
    tree: Tree,
    basepoint: VertexId,
}

impl PointedTree {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn basepoint(&self) -> VertexId {
        self.basepoint
    }

    pub fn basepoint_name(&self) -> &str {
        self.tree.name(self.basepoint)
    }

    /// Order of the basepoint (its degree).
    pub fn basepoint_order(&self) -> usize {
        self.tree.degree(self.basepoint)
    }

    /// True when no vertex other than the basepoint has degree 2.
    pub fn is_normalized(&self) -> bool {
        self.tree
            .vertices()
            .all(|v| v == self.basepoint || self.tree.degree(v) != 2)
    }
}

/// Builds a pointed tree from named edges, validating the tree axioms and
/// the basepoint.
pub fn build_tree<S: AsRef<str>>(edges: &[(S, S)], basepoint: &str) -> Result<PointedTree> {
    if edges.is_empty() {
        return Err(Error::BasepointMissing(basepoint.to_string()));
    }
    let tree = Tree::from_edge_names(edges)?;
    let bp = tree
        .vertex_id(basepoint)
        .ok_or_else(|| Error::BasepointMissing(basepoint.to_string()))?;
    Ok(PointedTree {
        tree,
        basepoint: bp,
    })
}

/// Suppresses every degree-2 vertex except the basepoint, merging its two
/// edges into one. The result presents the same topological pair; surviving
/// vertices keep their names. Idempotent.
pub fn normalize(t: &PointedTree) -> PointedTree {
    let mut edges: BTreeSet<(String, String)> = t.tree().edge_names().into_iter().collect();
    let basepoint = t.basepoint_name().to_string();
    loop {
        let mut incident: BTreeMap<&str, Vec<&(String, String)>> = BTreeMap::new();
        for e in &edges {
            incident.entry(&e.0).or_default().push(e);
            incident.entry(&e.1).or_default().push(e);
        }
        let suppress = incident
            .iter()
            .find(|(name, at)| **name != basepoint && at.len() == 2)
            .map(|(name, at)| (name.to_string(), at[0].clone(), at[1].clone()));
        let Some((v, e1, e2)) = suppress else { break };
        let a = if e1.0 == v {
            e1.1.clone()
        } else {
            e1.0.clone()
        };
        let b = if e2.0 == v {
            e2.1.clone()
        } else {
            e2.0.clone()
        };
        edges.remove(&e1);
        edges.remove(&e2);
        edges.insert((a.clone().min(b.clone()), a.max(b)));
    }
    let listed: Vec<(String, String)> = edges.into_iter().collect();
    build_tree(&listed, &basepoint).expect("suppression preserves the tree axioms")
}

/// Rooted code of the branch at `v` entered from `parent`; `skip` suppresses
/// one directed neighbor at the root, for edge-midpoint codes.
fn branch_code(
    t: &Tree,
    v: VertexId,
    parent: Option<VertexId>,
    skip: Option<(VertexId, VertexId)>,
) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| Some(w) != parent && skip != Some((v, w)))
        .map(|w| branch_code(t, w, Some(v), skip))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Canonical code of the pair (tree, basepoint). Equal codes are exactly
/// basepoint-preserving isomorphism; the comparison is combinatorial, so
/// normalize first when two pairs should be compared as topological pairs.
pub fn canonical_code(t: &PointedTree) -> CanonicalCode {
    CanonicalCode(branch_code(t.tree(), t.basepoint(), None, None))
}

/// True when an isomorphism maps one tree onto the other carrying basepoint
/// to basepoint. Both sides are compared as given; normalize first to
/// compare topological pairs.
pub fn rooted_isomorphic(a: &PointedTree, b: &PointedTree) -> bool {
    canonical_code(a) == canonical_code(b)
}

enum Center {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
}

/// Central vertex (or central edge) found by peeling leaves layer by layer.
fn center(t: &Tree) -> Center {
    let n = t.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v as VertexId)).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut layer: Vec<VertexId> = t.endpoints();
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            alive[v as usize] = false;
            remaining -= 1;
            for &w in t.neighbors(v) {
                if alive[w as usize] {
                    degree[w as usize] -= 1;
                    if degree[w as usize] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let mut core = (0..n as VertexId).filter(|&v| alive[v as usize]);
    match remaining {
        1 => Center::Vertex(core.next().expect("one survivor")),
        2 => {
            let (u, v) = (core.next().unwrap(), core.next().unwrap());
            debug_assert!(t.neighbors(u).contains(&v), "central pair must be adjacent");
            Center::Edge(u, v)
        }
        _ => unreachable!("peeling stops at one or two vertices"),
    }
}

fn midpoint_paren(t: &Tree, u: VertexId, v: VertexId) -> String {
    let mut halves = [
        branch_code(t, u, None, Some((u, v))),
        branch_code(t, v, None, Some((v, u))),
    ];
    halves.sort();
    format!("({}{})", halves[0], halves[1])
}

/// Canonical code of the unrooted tree: rooted at its central vertex
/// (prefix `c`) or at the midpoint of its central edge (prefix `e`).
/// Equal codes are exactly free isomorphism.
pub fn free_code(t: &Tree) -> CanonicalCode {
    match center(t) {
        Center::Vertex(v) => CanonicalCode(format!("c{}", branch_code(t, v, None, None))),
        Center::Edge(u, v) => CanonicalCode(format!("e{}", midpoint_paren(t, u, v))),
    }
}

/// Code of the tree rooted at a formal midpoint of the edge with this index.
/// Two edges get equal codes exactly when an automorphism maps one onto the
/// other.
pub fn midpoint_code(t: &Tree, edge_index: usize) -> CanonicalCode {
    let (u, v) = t.edges()[edge_index];
    CanonicalCode(midpoint_paren(t, u, v))
}

/// Automorphism orbits of a tree: vertices grouped by vertex-rooted code,
/// edges (as indices into `Tree::edges`) by midpoint-rooted code. Orbits are
/// ordered by first member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    pub vertices: Vec<Vec<VertexId>>,
    pub edges: Vec<Vec<usize>>,
}

pub fn orbits(t: &Tree) -> Orbits {
    let mut vertex_groups: BTreeMap<CanonicalCode, Vec<VertexId>> = BTreeMap::new();
    for v in t.vertices() {
        vertex_groups
            .entry(CanonicalCode(branch_code(t, v, None, None)))
            .or_default()
            .push(v);
    }
    let mut edge_groups: BTreeMap<CanonicalCode, Vec<usize>> = BTreeMap::new();
    for i in 0..t.edge_count() {
        edge_groups.entry(midpoint_code(t, i)).or_default().push(i);
    }
    let mut vertices: Vec<Vec<VertexId>> = vertex_groups.into_values().collect();
    vertices.sort_by_key(|orbit| orbit[0]);
    let mut edges: Vec<Vec<usize>> = edge_groups.into_values().collect();
    edges.sort_by_key(|orbit| orbit[0]);
    Orbits { vertices, edges }
}

/// Number of point classes of the tree under its self-homeomorphism group:
/// vertex orbits plus edge orbits (edge interiors form one class per edge
/// orbit). Expects a tree without degree-2 vertices.
pub fn homogeneity_degree(t: &Tree) -> usize {
    let o = orbits(t);
    o.vertices.len() + o.edges.len()
}

fn attach_leaf(t: &Tree, v: VertexId) -> Tree {
    let mut edges = t.edge_names();
    edges.push((t.name(v).to_string(), t.fresh_name("v")));
    Tree::from_edge_names(&edges).expect("attaching a leaf preserves the tree axioms")
}

fn series_reduced(t: &Tree) -> bool {
    t.vertices().all(|v| t.degree(v) != 2)
}

/// Exactly one representative per isomorphism class of trees with
/// `1..=max_edges` edges and no degree-2 vertices, ordered by edge count and
/// then by free code. Vertices are named `v0`, `v1`, ...
///
/// Representatives grow level by level: every tree with k+1 edges arises
/// from a tree with k edges by attaching a leaf, so attaching at every
/// vertex of every k-edge class and deduplicating by free code covers the
/// next level exactly.
pub fn enumerate_trees(max_edges: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    if max_edges == 0 {
        return out;
    }
    let seed = Tree::from_edge_names(&[("v0", "v1")]).expect("single edge");
    let mut frontier = vec![seed];
    for _level in 1..=max_edges {
        out.extend(frontier.iter().filter(|t| series_reduced(t)).cloned());
        let mut next: BTreeMap<CanonicalCode, Tree> = BTreeMap::new();
        for t in &frontier {
            for v in t.vertices() {
                let grown = attach_leaf(t, v);
                next.entry(free_code(&grown)).or_insert(grown);
            }
        }
        frontier = next.into_values().collect();
    }
    out
}

/// Subdivides the edge with this index by a fresh degree-2 vertex and marks
/// that vertex as the basepoint: the "interior point of an edge" case.
pub fn subdivide_edge(t: &Tree, edge_index: usize) -> PointedTree {
    let (u, v) = t.edges()[edge_index];
    let mid = t.fresh_name("m");
    let mut edges: Vec<(String, String)> = t
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != edge_index)
        .map(|(_, &(a, b))| (t.name(a).to_string(), t.name(b).to_string()))
        .collect();
    edges.push((t.name(u).to_string(), mid.clone()));
    edges.push((mid.clone(), t.name(v).to_string()));
    build_tree(&edges, &mid).expect("subdivision preserves the tree axioms")
}

/// Renames every vertex so ids come out in reversed order; the result is the
/// same pointed tree under a nontrivial relabeling, for invariance checks.
pub(crate) fn relabel_reversed(t: &PointedTree) -> PointedTree {
    let n = t.tree().vertex_count() as u32;
    let rename = |v: VertexId| format!("r{}", n - 1 - v);
    let edges: Vec<(String, String)> = t
        .tree()
        .edges()
        .iter()
        .map(|&(u, v)| (rename(u), rename(v)))
        .collect();
    build_tree(&edges, &rename(t.basepoint())).expect("renaming preserves the tree axioms")
}

/// One pointed tree per vertex orbit and per edge orbit of every tree from
/// `enumerate_trees(max_edges)`; edge-orbit basepoints subdivide the orbit's
/// representative edge. The results are pairwise non-isomorphic as pointed
/// trees and every one is normalized.
pub fn enumerate_pointed(max_edges: usize) -> Vec<PointedTree> {
    let mut out = Vec::new();
    for t in enumerate_trees(max_edges) {
        let orb = orbits(&t);
        for orbit in &orb.vertices {
            out.push(t.pointed_at(orbit[0]));
        }
        for orbit in &orb.edges {
            out.push(subdivide_edge(&t, orbit[0]));
        }
    }
    out
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::bruteforce;
    use proptest::prelude::*;

    /// Random labeled tree on 2..=8 vertices plus a basepoint choice.
    fn arb_pointed() -> impl Strategy<Value = PointedTree> {
        (2usize..=8)
            .prop_flat_map(|n| {
                let seq = proptest::collection::vec(0..n as u32, n.saturating_sub(2));
                (Just(n), seq, 0..n as u32)
            })
            .prop_map(|(n, seq, bp)| {
                let edges = bruteforce::tree_from_pruefer(n, &seq);
                let named: Vec<(String, String)> = edges
                    .iter()
                    .map(|&(u, v)| (format!("v{u}"), format!("v{v}")))
                    .collect();
                build_tree(&named, &format!("v{bp}")).expect("pruefer decode is a tree")
            })
    }

    proptest! {
        #[test]
        fn code_is_relabeling_invariant(t in arb_pointed()) {
            let relabeled = relabel_reversed(&t);
            prop_assert_eq!(
                canonical_code(&normalize(&t)),
                canonical_code(&normalize(&relabeled))
            );
        }

        #[test]
        fn code_agrees_with_bijection_search(a in arb_pointed(), b in arb_pointed()) {
            prop_assert_eq!(
                rooted_isomorphic(&a, &b),
                bruteforce::pointed_isomorphic(&a, &b)
            );
        }

        #[test]
        fn normalize_is_idempotent(t in arb_pointed()) {
            let once = normalize(&t);
            prop_assert_eq!(normalize(&once), once);
        }

        #[test]
        fn subdividing_an_edge_does_not_change_the_pair(t in arb_pointed(), pick in any::<prop::sample::Index>()) {
            let n = normalize(&t);
            let e = pick.index(n.tree().edge_count());
            let sub = subdivide_edge(n.tree(), e);
            // Re-point the subdivided tree at the original basepoint and
            // suppress the new vertex again.
            let back = sub.tree().pointed_at(
                sub.tree().vertex_id(n.basepoint_name()).expect("basepoint survives"),
            );
            prop_assert!(rooted_isomorphic(&normalize(&back), &n));
        }
    }
}
