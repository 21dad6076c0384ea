//! Rebuilding the pointed tree from the abstract cell data alone (cell
//! dimensions plus pairwise closure-intersection dimensions), and the
//! hyperspace signature that this makes possible.

use std::collections::BTreeMap;

use crate::complex::{analyze, AbstractComplex, DEFAULT_CELL_CAP};
use crate::tree::{build_tree, canonical_code, normalize, CanonicalCode, PointedTree};
use crate::{Error, Result};

/// One covering pair of cells: the upper subtree extends the lower by a
/// single edge, and the label is the order of the vertex that edge adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    /// dim(upper) - dim(lower) + 2; always >= 3.
    pub label: usize,
}

/// The covering relation of the cell poset, read off the abstract complex:
/// a pair covers when its intersection dimension is one below the smaller
/// cell's dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub cell_count: usize,
    pub base: usize,
    pub covers: Vec<Cover>,
}

/// Index of the unique cell of minimum dimension; it is the cell of the
/// degenerate subtree and its dimension is the basepoint order.
pub fn base_cell(c: &AbstractComplex) -> Result<usize> {
    let Some((base, &dim)) = c.dims.iter().enumerate().min_by_key(|&(_, &d)| d) else {
        return Err(Error::MalformedComplex("complex has no cells".into()));
    };
    if let Some(second) = (0..c.dims.len()).find(|&i| i != base && c.dims[i] == dim) {
        return Err(Error::AmbiguousBase {
            dim,
            first: base,
            second,
        });
    }
    Ok(base)
}

/// Reads the covering relation off the intersection table: (i, j) is a cover
/// exactly when the pair intersects in dimension one below the smaller cell
/// and the larger cell is strictly larger. Every cell of a real complex is
/// reachable from the base along covers; unreachable cells mean the data
/// does not come from a tree.
pub fn hasse(c: &AbstractComplex) -> Result<HasseDiagram> {
    let base = base_cell(c)?;
    let n = c.dims.len();
    let mut covers = Vec::new();
    for (&(i, j), &dim) in &c.intersections {
        if i >= n || j >= n {
            return Err(Error::MalformedComplex(format!(
                "intersection ({i}, {j}) indexes a missing cell"
            )));
        }
        let (lower, upper) = if c.dims[i] <= c.dims[j] {
            (i, j)
        } else {
            (j, i)
        };
        if c.dims[upper] > c.dims[lower] && dim + 1 == c.dims[lower] {
            covers.push(Cover {
                lower,
                upper,
                label: c.dims[upper] - c.dims[lower] + 2,
            });
        }
    }
    covers.sort_by_key(|cv| (cv.lower, cv.upper));
    let mut reachable = vec![false; n];
    reachable[base] = true;
    let mut frontier = vec![base];
    while let Some(v) = frontier.pop() {
        for cv in covers.iter().filter(|cv| cv.lower == v) {
            if !reachable[cv.upper] {
                reachable[cv.upper] = true;
                frontier.push(cv.upper);
            }
        }
    }
    if let Some(stranded) = reachable.iter().position(|&r| !r) {
        return Err(Error::MalformedComplex(format!(
            "cell {stranded} is not reachable from the base cell along covers"
        )));
    }
    Ok(HasseDiagram {
        cell_count: n,
        base,
        covers,
    })
}

/// Rebuilds the pointed tree from the abstract complex. Path cells (the
/// base plus every cell covering exactly one cell) become the inner
/// vertices; each non-base path cell hangs off the unique cell it covers;
/// the cover label is the vertex order, and the order surplus over the inner
/// degree is made up by pendant leaves. The result is rooted at the base
/// vertex and is normalized by construction.
pub fn reconstruct(c: &AbstractComplex) -> Result<PointedTree> {
    let h = hasse(c)?;
    let mut covered_count = vec![0usize; h.cell_count];
    for cv in &h.covers {
        covered_count[cv.upper] += 1;
    }
    // vertex order per path cell: the base cell's dimension, or the label
    // of the unique incoming cover
    let mut vertex_order: BTreeMap<usize, usize> = BTreeMap::new();
    vertex_order.insert(h.base, c.dims[h.base]);
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &count) in covered_count.iter().enumerate() {
        if i == h.base || count != 1 {
            continue;
        }
        let cv = h
            .covers
            .iter()
            .find(|cv| cv.upper == i)
            .expect("counted one incoming cover");
        parent.insert(i, cv.lower);
        vertex_order.insert(i, cv.label);
    }
    let vertex_name = |i: usize| format!("n{i}");
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut inner_degree: BTreeMap<usize, usize> = vertex_order.keys().map(|&i| (i, 0)).collect();
    for (&child, &par) in &parent {
        if !vertex_order.contains_key(&par) {
            return Err(Error::MalformedComplex(format!(
                "cell {child} covers only cell {par}, which is not a path cell"
            )));
        }
        edges.push((vertex_name(par), vertex_name(child)));
        *inner_degree.get_mut(&par).unwrap() += 1;
        *inner_degree.get_mut(&child).unwrap() += 1;
    }
    for (&i, &order) in &vertex_order {
        let inner = inner_degree[&i];
        if order < inner {
            return Err(Error::MalformedComplex(format!(
                "cell {i} carries order {order} but already has {inner} tree neighbors"
            )));
        }
        for k in 0..order - inner {
            edges.push((vertex_name(i), format!("n{i}x{k}")));
        }
    }
    build_tree(&edges, &vertex_name(h.base)).map_err(|e| {
        Error::MalformedComplex(format!("reconstructed edges do not form a tree: {e}"))
    })
}

/// The complete hyperspace invariant of a pointed tree: the basepoint
/// order, how many pendant edges augmentation attached, and the canonical
/// code of the tree reconstructed from the abstract complex of the
/// augmented pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub basepoint_order: usize,
    pub attached: usize,
    pub code: CanonicalCode,
}

/// Computes the signature through the full pipeline: normalize, augment,
/// build the complex, strip it to its abstract form, reconstruct, encode.
/// Deterministic and invariant under relabeling and subdivision.
pub fn signature(t: &PointedTree) -> Result<Signature> {
    signature_with_cap(t, DEFAULT_CELL_CAP)
}

/// `signature` with an explicit cell cap.
pub fn signature_with_cap(t: &PointedTree, cap: usize) -> Result<Signature> {
    let nt = normalize(t);
    let complex = analyze(&nt, cap)?;
    let rebuilt = reconstruct(&complex.abstract_view())?;
    Ok(Signature {
        basepoint_order: nt.basepoint_order(),
        attached: complex.attached(),
        code: canonical_code(&rebuilt),
    })
}

/// Whether two pointed trees have homeomorphic hyperspaces, decided by
/// signature equality. Signatures agree exactly when the pairs are
/// isomorphic; that equivalence is what the verification sweeps establish.
pub fn same_hyperspace(a: &PointedTree, b: &PointedTree) -> Result<bool> {
    Ok(signature(a)? == signature(b)?)
}
