//! JSON and DOT serialization for trees, complexes, signatures, and
//! verification reports. All output is deterministic: fields keep a fixed
//! order and every list is sorted.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::CellComplex;
use crate::reconstruct::{hasse, Signature};
use crate::tree::{build_tree, PointedTree, Tree};
use crate::verify::VerificationReport;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct TreeDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vertices: Option<Vec<String>>,
    edges: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    basepoint: Option<String>,
}

fn tree_doc(t: &PointedTree) -> TreeDoc {
    let mut vertices: Vec<String> = t
        .tree()
        .vertices()
        .map(|v| t.tree().name(v).to_string())
        .collect();
    vertices.sort();
    let mut edges = t.tree().edge_names();
    edges.sort();
    TreeDoc {
        vertices: Some(vertices),
        edges,
        basepoint: Some(t.basepoint_name().to_string()),
    }
}

pub fn tree_json_value(t: &PointedTree) -> Value {
    serde_json::to_value(tree_doc(t)).expect("tree document serializes")
}

pub fn tree_to_json(t: &PointedTree) -> String {
    let mut out = serde_json::to_string_pretty(&tree_doc(t)).expect("tree document serializes");
    out.push('\n');
    out
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Reads a pointed tree from its JSON document. A `vertices` list, when
/// present, may not mention vertices that the edges do not reach.
pub fn tree_from_json(text: &str) -> Result<PointedTree> {
    let doc: TreeDoc = parse(text)?;
    let basepoint = doc
        .basepoint
        .ok_or_else(|| Error::InvalidInput("tree document has no basepoint".into()))?;
    let t = build_tree(&doc.edges, &basepoint)?;
    if let Some(vertices) = &doc.vertices {
        for v in vertices {
            if t.tree().vertex_id(v).is_none() {
                return Err(Error::Disconnected(v.clone()));
            }
        }
    }
    Ok(t)
}

/// Reads an unrooted tree (the basepoint, if present, is ignored).
pub fn free_tree_from_json(text: &str) -> Result<Tree> {
    let doc: TreeDoc = parse(text)?;
    let t = Tree::from_edge_names(&doc.edges)?;
    if let Some(vertices) = &doc.vertices {
        for v in vertices {
            if t.vertex_id(v).is_none() {
                return Err(Error::Disconnected(v.clone()));
            }
        }
    }
    Ok(t)
}

#[derive(Serialize, Deserialize)]
struct ComplexDoc {
    ord_basepoint: usize,
    attached: usize,
    cells: Vec<CellDoc>,
    intersections: Vec<(usize, usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    id: usize,
    dim: usize,
    edges: Vec<(String, String)>,
}

pub fn complex_to_json(c: &CellComplex) -> String {
    let name = |v| c.source().tree().name(v).to_string();
    let cells = c
        .cells()
        .iter()
        .enumerate()
        .map(|(id, cell)| {
            let mut edges: Vec<(String, String)> = cell
                .subtree
                .edges()
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (name(u), name(v));
                    if a <= b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            edges.sort();
            CellDoc {
                id,
                dim: cell.dimension,
                edges,
            }
        })
        .collect();
    let intersections = c
        .intersections()
        .iter()
        .map(|(&(i, j), &d)| (i, j, d))
        .collect();
    let doc = ComplexDoc {
        ord_basepoint: c.ord_basepoint(),
        attached: c.attached(),
        cells,
        intersections,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("complex document serializes");
    out.push('\n');
    out
}

/// The decoded pieces of a complex document, before they are tied to a
/// tree: claimed dimensions and subtree edge names per cell (in id order)
/// plus the claimed intersection triples.
pub struct ComplexParts {
    pub ord_basepoint: usize,
    pub attached: usize,
    pub cells: Vec<(usize, Vec<(String, String)>)>,
    pub intersections: Vec<(usize, usize, usize)>,
}

pub fn complex_parts_from_json(text: &str) -> Result<ComplexParts> {
    let mut doc: ComplexDoc = parse(text)?;
    doc.cells.sort_by_key(|c| c.id);
    for (expect, cell) in doc.cells.iter().enumerate() {
        if cell.id != expect {
            return Err(Error::MalformedComplex(format!(
                "cell ids must cover 0..{} exactly once, found {}",
                doc.cells.len(),
                cell.id
            )));
        }
    }
    Ok(ComplexParts {
        ord_basepoint: doc.ord_basepoint,
        attached: doc.attached,
        cells: doc.cells.into_iter().map(|c| (c.dim, c.edges)).collect(),
        intersections: doc.intersections,
    })
}

/// Reads only the abstract data of a complex document: dimensions by cell
/// id and the intersection table. This is all reconstruction consumes.
pub fn abstract_complex_from_json(text: &str) -> Result<crate::complex::AbstractComplex> {
    let parts = complex_parts_from_json(text)?;
    let n = parts.cells.len();
    let mut intersections = std::collections::BTreeMap::new();
    for (i, j, d) in parts.intersections {
        if i >= n || j >= n || i == j {
            return Err(Error::MalformedComplex(format!(
                "intersection ({i}, {j}) does not index two distinct cells"
            )));
        }
        if intersections.insert((i.min(j), i.max(j)), d).is_some() {
            return Err(Error::MalformedComplex(format!(
                "intersection ({i}, {j}) listed twice"
            )));
        }
    }
    Ok(crate::complex::AbstractComplex {
        dims: parts.cells.into_iter().map(|(dim, _)| dim).collect(),
        intersections,
        ord_basepoint: parts.ord_basepoint,
        attached: parts.attached,
    })
}

#[derive(Serialize)]
struct SignatureDoc<'a> {
    ord: usize,
    attached: usize,
    code: &'a str,
}

pub fn signature_json_value(s: &Signature) -> Value {
    serde_json::to_value(SignatureDoc {
        ord: s.basepoint_order,
        attached: s.attached,
        code: s.code.as_str(),
    })
    .expect("signature document serializes")
}

pub fn signature_to_json(s: &Signature) -> String {
    let mut out = serde_json::to_string_pretty(&signature_json_value(s))
        .expect("signature document serializes");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    scope: usize,
    passed: bool,
    checks: Vec<CheckDoc<'a>>,
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    name: &'a str,
    instances: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<&'a Value>,
}

/// Report as JSON. Wall-clock time is deliberately left out so identical
/// inputs give identical bytes; the command line prints timing separately.
pub fn report_to_json(r: &VerificationReport) -> String {
    let doc = ReportDoc {
        scope: r.scope,
        passed: r.passed(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckDoc {
                name: &c.name,
                instances: c.instances,
                failures: c.failures,
                counterexample: c.counterexample.as_ref(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report document serializes");
    out.push('\n');
    out
}

/// Report as an aligned text table with one row per check.
pub fn report_table(r: &VerificationReport) -> String {
    let width = r
        .checks
        .iter()
        .map(|c| c.name.len())
        .chain(["check".len()])
        .max()
        .unwrap_or(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>9}  {:>8}",
        "check", "instances", "failures"
    );
    for c in &r.checks {
        let _ = writeln!(
            out,
            "{:<width$}  {:>9}  {:>8}",
            c.name, c.instances, c.failures
        );
    }
    let _ = writeln!(
        out,
        "result: {} (scope: {} edges)",
        if r.passed() { "PASS" } else { "FAIL" },
        r.scope
    );
    for c in r.checks.iter().filter(|c| c.failures > 0) {
        if let Some(cex) = &c.counterexample {
            let _ = writeln!(out, "counterexample ({}): {}", c.name, cex);
        }
    }
    out
}

fn dot_quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The tree as an undirected DOT graph; the basepoint gets a distinct
/// shape.
pub fn tree_to_dot(t: &PointedTree) -> String {
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    let _ = writeln!(
        out,
        "  {} [shape=doublecircle];",
        dot_quote(t.basepoint_name())
    );
    let mut edges = t.tree().edge_names();
    edges.sort();
    for (a, b) in edges {
        let _ = writeln!(out, "  {} -- {};", dot_quote(&a), dot_quote(&b));
    }
    out.push_str("}\n");
    out
}

/// The covering relation of the complex as a DOT digraph: one node per cell
/// annotated with its dimension, one arrow per covering pair annotated with
/// the order of the vertex the step adds.
pub fn hasse_to_dot(c: &CellComplex) -> Result<String> {
    let h = hasse(&c.abstract_view())?;
    let mut out = String::from("digraph {\n  rankdir=BT;\n");
    for (i, cell) in c.cells().iter().enumerate() {
        let _ = writeln!(out, "  c{i} [label=\"c{i} dim={}\"];", cell.dimension);
    }
    for cv in &h.covers {
        let _ = writeln!(
            out,
            "  c{} -> c{} [label=\"ord {}\"];",
            cv.lower, cv.upper, cv.label
        );
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{analyze, DEFAULT_CELL_CAP};
    use crate::reconstruct::{reconstruct, signature};
    use crate::tree::rooted_isomorphic;

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

    #[test]
    fn tree_json_round_trip() {
        let t = double_star();
        let text = tree_to_json(&t);
        let back = tree_from_json(&text).unwrap();
        assert!(rooted_isomorphic(&t, &back));
        assert_eq!(tree_to_json(&back), text);
    }

    #[test]
    fn tree_json_accepts_minimal_documents() {
        let t = tree_from_json(r#"{"edges": [["a","b"]], "basepoint": "a"}"#).unwrap();
        assert_eq!(t.basepoint_name(), "a");
    }

    #[test]
    fn tree_json_rejects_bad_documents() {
        assert!(matches!(
            tree_from_json("not json").unwrap_err(),
            Error::InvalidInput(_)
        ));
        assert!(matches!(
            tree_from_json(r#"{"edges": [["a","b"]]}"#).unwrap_err(),
            Error::InvalidInput(_)
        ));
        assert_eq!(
            tree_from_json(r#"{"edges": [["a","b"]], "basepoint": "z"}"#).unwrap_err(),
            Error::BasepointMissing("z".into())
        );
        assert_eq!(
            tree_from_json(
                r#"{"vertices": ["a","b","zz"], "edges": [["a","b"]], "basepoint": "a"}"#
            )
            .unwrap_err(),
            Error::Disconnected("zz".into())
        );
    }

    #[test]
    fn complex_json_shape() {
        let c = analyze(&double_star(), DEFAULT_CELL_CAP).unwrap();
        let text = complex_to_json(&c);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["ord_basepoint"], 3);
        assert_eq!(doc["attached"], 0);
        assert_eq!(doc["cells"].as_array().unwrap().len(), 2);
        assert_eq!(doc["cells"][0]["dim"], 3);
        assert_eq!(doc["intersections"][0], serde_json::json!([0, 1, 2]));
    }

    #[test]
    fn abstract_complex_json_round_trip() {
        let c = analyze(&double_star(), DEFAULT_CELL_CAP).unwrap();
        let text = complex_to_json(&c);
        let a = abstract_complex_from_json(&text).unwrap();
        assert_eq!(a, c.abstract_view());
        let rebuilt = reconstruct(&a).unwrap();
        assert!(rooted_isomorphic(&rebuilt, &double_star()));
    }

    #[test]
    fn abstract_complex_json_rejects_bad_tables() {
        let bad_ids = r#"{"ord_basepoint":3,"attached":0,"cells":[{"id":1,"dim":3,"edges":[]}],"intersections":[]}"#;
        assert!(matches!(
            abstract_complex_from_json(bad_ids).unwrap_err(),
            Error::MalformedComplex(_)
        ));
        let dup = r#"{"ord_basepoint":3,"attached":0,
            "cells":[{"id":0,"dim":3,"edges":[]},{"id":1,"dim":4,"edges":[]}],
            "intersections":[[0,1,2],[1,0,2]]}"#;
        assert!(matches!(
            abstract_complex_from_json(dup).unwrap_err(),
            Error::MalformedComplex(_)
        ));
    }

    #[test]
    fn signature_json_keys() {
        let s = signature(&double_star()).unwrap();
        let text = signature_to_json(&s);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["ord"], 3);
        assert_eq!(doc["attached"], 0);
        assert!(doc["code"].as_str().unwrap().starts_with('('));
    }

    #[test]
    fn tree_dot_marks_the_basepoint() {
        let dot = tree_to_dot(&double_star());
        assert!(dot.contains("\"p\" [shape=doublecircle];"));
        assert!(dot.contains("\"a\" -- \"y1\";"));
    }

    #[test]
    fn hasse_dot_lists_covers() {
        let c = analyze(&double_star(), DEFAULT_CELL_CAP).unwrap();
        let dot = hasse_to_dot(&c).unwrap();
        assert!(dot.contains("c0 [label=\"c0 dim=3\"];"));
        assert!(dot.contains("c0 -> c1 [label=\"ord 3\"];"));
    }
}
