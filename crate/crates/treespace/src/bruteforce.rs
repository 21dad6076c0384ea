//! Test-only oracles that recompute tree facts by exhaustive search, with no
//! code shared with the implementations they check.

use std::collections::BTreeSet;

use crate::tree::{free_code, PointedTree, Tree, VertexId};

/// Decodes a Pruefer sequence over `0..n` into the edge list of the labeled
/// tree it encodes. Every labeled tree on n >= 2 vertices arises from
/// exactly one sequence of length n - 2.
pub fn tree_from_pruefer(n: usize, seq: &[u32]) -> Vec<(u32, u32)> {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains") as u32;
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf as usize] = 0;
        degree[x as usize] -= 1;
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1);
    let (u, v) = (last.next().unwrap() as u32, last.next().unwrap() as u32);
    edges.push((u.min(v), u.max(v)));
    edges
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (0..n as u32).collect();
    fn heap(k: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(current.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, current, out);
            if k.is_multiple_of(2) {
                current.swap(i, k - 1);
            } else {
                current.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut current, &mut out);
    out
}

fn edge_set(t: &Tree) -> BTreeSet<(u32, u32)> {
    t.edges().iter().copied().collect()
}

fn maps_edges(t: &Tree, target: &BTreeSet<(u32, u32)>, perm: &[u32]) -> bool {
    t.edges().iter().all(|&(u, v)| {
        let (a, b) = (perm[u as usize], perm[v as usize]);
        target.contains(&(a.min(b), a.max(b)))
    })
}

/// Decides basepoint-preserving isomorphism by trying every vertex
/// bijection.
pub fn pointed_isomorphic(a: &PointedTree, b: &PointedTree) -> bool {
    let (ta, tb) = (a.tree(), b.tree());
    if ta.vertex_count() != tb.vertex_count() || ta.edge_count() != tb.edge_count() {
        return false;
    }
    let target = edge_set(tb);
    permutations(ta.vertex_count())
        .into_iter()
        .any(|perm| perm[a.basepoint() as usize] == b.basepoint() && maps_edges(ta, &target, &perm))
}

/// All automorphisms of the tree, as permutations of vertex ids.
pub fn automorphisms(t: &Tree) -> Vec<Vec<u32>> {
    let target = edge_set(t);
    permutations(t.vertex_count())
        .into_iter()
        .filter(|perm| maps_edges(t, &target, perm))
        .collect()
}

/// Vertex and edge orbits computed from the explicit automorphism list.
pub fn orbit_partitions(t: &Tree) -> (Vec<Vec<VertexId>>, Vec<Vec<usize>>) {
    let n = t.vertex_count();
    let autos = automorphisms(t);
    let mut vertex_root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let union = |root: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(root, a), find(root, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            root[hi] = lo;
        }
    };
    let mut edge_root: Vec<usize> = (0..t.edge_count()).collect();
    let edge_index = |u: u32, v: u32| -> usize {
        t.edges()
            .iter()
            .position(|&e| e == (u.min(v), u.max(v)))
            .expect("automorphisms map edges to edges")
    };
    for perm in &autos {
        for (v, &image) in perm.iter().enumerate() {
            union(&mut vertex_root, v, image as usize);
        }
        for (i, &(u, v)) in t.edges().iter().enumerate() {
            union(
                &mut edge_root,
                i,
                edge_index(perm[u as usize], perm[v as usize]),
            );
        }
    }
    let group = |root: &mut Vec<usize>, count: usize| -> Vec<Vec<usize>> {
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..count {
            by_root.entry(find(root, x)).or_default().push(x);
        }
        by_root.into_values().collect()
    };
    let vertices = group(&mut vertex_root, n)
        .into_iter()
        .map(|orbit| orbit.into_iter().map(|v| v as VertexId).collect())
        .collect();
    let edges = group(&mut edge_root, t.edge_count());
    (vertices, edges)
}

/// Number of isomorphism classes of trees on exactly `n` vertices with no
/// degree-2 vertex, by generating every labeled tree from its Pruefer
/// sequence and deduplicating by free code.
pub fn series_reduced_classes(n: usize) -> usize {
    if n == 2 {
        return 1;
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let len = n - 2;
    let mut seq = vec![0u32; len];
    loop {
        let edges = tree_from_pruefer(n, &seq);
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(u, v)| (format!("v{u}"), format!("v{v}")))
            .collect();
        let t = Tree::from_edge_names(&named).expect("pruefer decode is a tree");
        if t.vertices().all(|v| t.degree(v) != 2) {
            seen.insert(free_code(&t).as_str().to_string());
        }
        // advance the sequence as a base-n counter
        let mut i = 0;
        loop {
            if i == len {
                return seen.len();
            }
            seq[i] += 1;
            if (seq[i] as usize) < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}
