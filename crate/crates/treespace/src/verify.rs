//! Cross-checks of the structural laws of the cell decomposition against
//! independent brute-force oracles, plus exhaustive sweeps over all small
//! trees. Every check reports how many instances it examined and keeps the
//! first counterexample it finds as a reproducible JSON document.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{analyze, trimmed_tree, CellComplex, Edge, DEFAULT_CELL_CAP};
use crate::io::tree_json_value;
use crate::reconstruct::{hasse, reconstruct, signature, Signature};
use crate::tree::{
    canonical_code, enumerate_pointed, enumerate_trees, homogeneity_degree, normalize,
    relabel_reversed, rooted_isomorphic, subdivide_edge, PointedTree, Tree, VertexId,
};
use crate::Result;

/// Outcome of one named check: how many instances were examined, how many
/// violated the law, and the first violating instance if any.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub counterexample: Option<Value>,
}

/// A bundle of check results covering one tree or one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Edge bound of the sweep, or the edge count of the single tree checked.
    pub scope: usize,
    pub checks: Vec<CheckResult>,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(scope: usize) -> Self {
        VerificationReport {
            scope,
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn push(
        &mut self,
        name: &str,
        instances: usize,
        failures: usize,
        counterexample: Option<Value>,
    ) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            instances,
            failures,
            counterexample: counterexample.filter(|_| failures > 0),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn total_failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    /// Folds another report into this one, summing per-check tallies by name
    /// and keeping the first counterexample seen for each check.
    pub fn merge(&mut self, other: VerificationReport) {
        self.scope = self.scope.max(other.scope);
        self.elapsed += other.elapsed;
        for c in other.checks {
            match self.checks.iter_mut().find(|mine| mine.name == c.name) {
                Some(mine) => {
                    mine.instances += c.instances;
                    mine.failures += c.failures;
                    if mine.counterexample.is_none() {
                        mine.counterexample = c.counterexample;
                    }
                }
                None => self.checks.push(c),
            }
        }
    }
}

/// A tally that a check builds up instance by instance.
struct Tally {
    instances: usize,
    failures: usize,
    counterexample: Option<Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            instances: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn pass(&mut self) {
        self.instances += 1;
    }

    fn fail(&mut self, cex: impl FnOnce() -> Value) {
        self.instances += 1;
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(cex());
        }
    }

    fn record(&mut self, ok: bool, cex: impl FnOnce() -> Value) {
        if ok {
            self.pass();
        } else {
            self.fail(cex);
        }
    }

    fn into_report(self, report: &mut VerificationReport, name: &str) {
        report.push(name, self.instances, self.failures, self.counterexample);
    }
}

fn edge_names(t: &Tree, edges: &BTreeSet<Edge>) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (t.name(u).to_string(), t.name(v).to_string());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    out.sort();
    out
}

/// Checks every structural law on one pointed tree, building its complex
/// first. A construction error is itself reported as a failing check.
pub fn check_pointed(t: &PointedTree) -> VerificationReport {
    let start = Instant::now();
    let t = normalize(t);
    let mut report = VerificationReport::new(t.tree().edge_count());
    match analyze(&t, DEFAULT_CELL_CAP) {
        Ok(c) => run_checks(&t, &c, &mut report),
        Err(e) => report.push(
            "construction",
            1,
            1,
            Some(json!({"tree": tree_json_value(&t), "error": e.to_string()})),
        ),
    }
    report.elapsed = start.elapsed();
    report
}

/// Checks every structural law of a complex against the tree it claims to
/// describe. The complex may come from anywhere; dimensions and
/// intersections are recomputed here with independent methods.
pub fn check_pointed_with(original: &PointedTree, c: &CellComplex) -> VerificationReport {
    let start = Instant::now();
    let original = normalize(original);
    let mut report = VerificationReport::new(original.tree().edge_count());
    run_checks(&original, c, &mut report);
    report.elapsed = start.elapsed();
    report
}

fn run_checks(original: &PointedTree, c: &CellComplex, report: &mut VerificationReport) {
    let ctx = Ctx::new(original, c);
    ctx.cell_count(report);
    ctx.cell_distinct(report);
    ctx.cell_dimension(report);
    ctx.minimax(report);
    ctx.monotonicity(report);
    ctx.incidence_lower_bound(report);
    ctx.disjointness(report);
    ctx.intersection_dim(report);
    ctx.covering_laws(report);
    ctx.path_cells(report);
    ctx.round_trip(report);
    ctx.augmentation_soundness(report);
}

/// Edge bound above which the subset-enumeration oracles would blow up; a
/// trimmed tree this large is far beyond desk scale anyway.
const ORACLE_EDGE_LIMIT: usize = 20;

struct Ctx<'a> {
    original: &'a PointedTree,
    c: &'a CellComplex,
    trimmed_edges: Vec<Edge>,
    trimmed_vertices: BTreeSet<VertexId>,
}

impl<'a> Ctx<'a> {
    fn new(original: &'a PointedTree, c: &'a CellComplex) -> Self {
        let tt = trimmed_tree(c.source());
        Ctx {
            original,
            c,
            trimmed_edges: tt.edges().iter().copied().collect(),
            trimmed_vertices: tt.vertices().clone(),
        }
    }

    fn tree(&self) -> &Tree {
        self.c.source().tree()
    }

    fn cell_cex(&self, i: usize, extra: Value) -> Value {
        let cell = &self.c.cells()[i];
        json!({
            "tree": tree_json_value(self.c.source()),
            "cell": i,
            "cell_edges": edge_names(self.tree(), cell.subtree.edges()),
            "detail": extra,
        })
    }

    fn pair_cex(&self, i: usize, j: usize, extra: Value) -> Value {
        json!({
            "tree": tree_json_value(self.c.source()),
            "cells": [i, j],
            "cell_edges": [
                edge_names(self.tree(), self.c.cells()[i].subtree.edges()),
                edge_names(self.tree(), self.c.cells()[j].subtree.edges()),
            ],
            "detail": extra,
        })
    }

    /// Which edge subsets of the trimmed tree form a connected subgraph
    /// containing `require` (or any single component when `require` is
    /// None), found by plain union-find over bitmasks.
    fn connected_masks(&self, require: Option<VertexId>) -> Vec<u32> {
        let k = self.trimmed_edges.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << k) {
            if self.mask_connected(mask, require) {
                out.push(mask);
            }
        }
        out
    }

    fn mask_connected(&self, mask: u32, require: Option<VertexId>) -> bool {
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut touched: BTreeSet<VertexId> = BTreeSet::new();
        fn root(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let p = *parent.entry(v).or_insert(v);
            if p == v {
                v
            } else {
                let r = root(parent, p);
                parent.insert(v, r);
                r
            }
        }
        for (idx, &(u, v)) in self.trimmed_edges.iter().enumerate() {
            if mask & (1 << idx) != 0 {
                touched.insert(u);
                touched.insert(v);
                let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
                if ru != rv {
                    parent.insert(ru, rv);
                }
            }
        }
        if let Some(p) = require {
            if mask == 0 {
                return true;
            }
            if !touched.contains(&p) {
                return false;
            }
        } else if mask == 0 {
            return false;
        }
        let roots: BTreeSet<VertexId> = touched.iter().map(|&v| root(&mut parent, v)).collect();
        roots.len() == 1
    }

    fn mask_vertices(&self, mask: u32, anchor: Option<VertexId>) -> BTreeSet<VertexId> {
        let mut vs: BTreeSet<VertexId> = anchor.into_iter().collect();
        for (idx, &(u, v)) in self.trimmed_edges.iter().enumerate() {
            if mask & (1 << idx) != 0 {
                vs.insert(u);
                vs.insert(v);
            }
        }
        vs
    }

    /// Edges of the ambient tree outside `in_edges` with an endpoint in
    /// `at`, counted straight off the edge list.
    fn outside_edge_count(&self, in_edges: &BTreeSet<Edge>, at: &BTreeSet<VertexId>) -> usize {
        self.tree()
            .edges()
            .iter()
            .filter(|&&(u, v)| !in_edges.contains(&(u, v)) && (at.contains(&u) || at.contains(&v)))
            .count()
    }

    fn cell_count(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        if self.trimmed_edges.len() <= ORACLE_EDGE_LIMIT {
            let expected = self
                .connected_masks(Some(self.c.source().basepoint()))
                .len();
            tally.record(expected == self.c.cells().len(), || {
                json!({
                    "tree": tree_json_value(self.c.source()),
                    "claimed_cells": self.c.cells().len(),
                    "expected_cells": expected,
                })
            });
        }
        tally.into_report(report, "cell-count");
    }

    fn cell_distinct(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let mut seen: BTreeMap<&BTreeSet<Edge>, usize> = BTreeMap::new();
        for (i, cell) in self.c.cells().iter().enumerate() {
            match seen.get(cell.subtree.edges()) {
                Some(&first) => tally.fail(|| self.pair_cex(first, i, json!("duplicate subtree"))),
                None => {
                    seen.insert(cell.subtree.edges(), i);
                    tally.pass();
                }
            }
        }
        tally.into_report(report, "cell-distinct");
    }

    /// Recomputes each dimension with the degree-sum identity: for a
    /// nonempty subtree Y, the edges leaving Y number sum(deg v) - 2|E(Y)|.
    fn cell_dimension(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        for (i, cell) in self.c.cells().iter().enumerate() {
            let expected = if cell.subtree.edge_count() == 0 {
                self.tree().degree(self.c.source().basepoint())
            } else {
                let degree_sum: usize = cell
                    .subtree
                    .vertices()
                    .iter()
                    .map(|&v| self.tree().degree(v))
                    .sum();
                degree_sum - 2 * cell.subtree.edge_count()
            };
            tally.record(cell.dimension == expected, || {
                self.cell_cex(
                    i,
                    json!({"claimed_dim": cell.dimension, "expected_dim": expected}),
                )
            });
        }
        tally.into_report(report, "cell-dimension");
    }

    /// The empty subtree must be the unique minimum (dimension = basepoint
    /// order) and the whole trimmed tree the unique maximum (dimension =
    /// number of end points).
    fn minimax(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let cells = self.c.cells();
        let ord = self.tree().degree(self.c.source().basepoint());
        let end_points = self
            .tree()
            .vertices()
            .filter(|&v| self.tree().degree(v) == 1)
            .count();
        let min = cells.iter().enumerate().min_by_key(|(_, c)| c.dimension);
        let max = cells.iter().enumerate().max_by_key(|(_, c)| c.dimension);
        let ok = match (min, max) {
            (Some((i, lo)), Some((j, hi))) => {
                let lo_unique = cells.iter().filter(|c| c.dimension == lo.dimension).count() == 1;
                let hi_unique = cells.iter().filter(|c| c.dimension == hi.dimension).count() == 1;
                lo_unique
                    && hi_unique
                    && lo.dimension == ord
                    && hi.dimension == end_points
                    && cells[i].subtree.edge_count() == 0
                    && cells[j].subtree.edge_count() == self.trimmed_edges.len()
            }
            _ => false,
        };
        tally.record(ok, || {
            json!({
                "tree": tree_json_value(self.c.source()),
                "basepoint_order": ord,
                "end_points": end_points,
                "dims": cells.iter().map(|c| c.dimension).collect::<Vec<_>>(),
            })
        });
        tally.into_report(report, "minimax");
    }

    /// Strictly larger subtrees must give strictly larger dimensions.
    fn monotonicity(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let cells = self.c.cells();
        for i in 0..cells.len() {
            for j in 0..cells.len() {
                if i == j {
                    continue;
                }
                let (yi, yj) = (cells[i].subtree.edges(), cells[j].subtree.edges());
                if yi.len() < yj.len() && yi.is_subset(yj) {
                    tally.record(cells[i].dimension < cells[j].dimension, || {
                        self.pair_cex(
                            i,
                            j,
                            json!({
                                "dims": [cells[i].dimension, cells[j].dimension],
                                "law": "proper subtree must have smaller dimension",
                            }),
                        )
                    });
                }
            }
        }
        tally.into_report(report, "monotonicity");
    }

    /// Every nonempty connected subgraph of the trimmed tree, anchored
    /// anywhere, must meet at least two outside edges of the ambient tree.
    fn incidence_lower_bound(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        if self.trimmed_edges.len() <= ORACLE_EDGE_LIMIT {
            for &v in &self.trimmed_vertices {
                let vs = BTreeSet::from([v]);
                let m = self.outside_edge_count(&BTreeSet::new(), &vs);
                tally.record(m >= 2, || {
                    json!({
                        "tree": tree_json_value(self.c.source()),
                        "subtree_vertex": self.tree().name(v),
                        "outside_edges": m,
                    })
                });
            }
            for mask in self.connected_masks(None) {
                let edges: BTreeSet<Edge> = self
                    .trimmed_edges
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| mask & (1 << idx) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let vs = self.mask_vertices(mask, None);
                let m = self.outside_edge_count(&edges, &vs);
                tally.record(m >= 2, || {
                    json!({
                        "tree": tree_json_value(self.c.source()),
                        "subtree_edges": edge_names(self.tree(), &edges),
                        "outside_edges": m,
                    })
                });
            }
        }
        tally.into_report(report, "incidence-lower-bound");
    }

    /// An intersection entry must exist exactly when each subtree's extra
    /// edges all touch the other subtree (checked here with plain loops
    /// over edge lists and vertex arrays).
    fn disjointness(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let cells = self.c.cells();
        for i in 0..cells.len() {
            for j in (i + 1)..cells.len() {
                let expected = self.mutually_incident(i, j);
                let present = self.c.intersections().contains_key(&(i, j));
                tally.record(present == expected, || {
                    self.pair_cex(
                        i,
                        j,
                        json!({
                            "intersection_listed": present,
                            "closures_meet": expected,
                        }),
                    )
                });
            }
        }
        tally.into_report(report, "disjointness");
    }

    fn incidence_one_way(&self, from: usize, into: usize) -> bool {
        let cells = self.c.cells();
        let target_vertices: BTreeSet<VertexId> = if cells[into].subtree.edge_count() == 0 {
            BTreeSet::from([self.c.source().basepoint()])
        } else {
            cells[into].subtree.vertices().clone()
        };
        cells[from]
            .subtree
            .edges()
            .iter()
            .filter(|e| !cells[into].subtree.edges().contains(e))
            .all(|e| target_vertices.contains(&e.0) || target_vertices.contains(&e.1))
    }

    fn mutually_incident(&self, i: usize, j: usize) -> bool {
        self.incidence_one_way(i, j) && self.incidence_one_way(j, i)
    }

    /// Recounts every listed intersection dimension: edges outside both
    /// subtrees that touch a common vertex.
    fn intersection_dim(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let cells = self.c.cells();
        for (&(i, j), &claimed) in self.c.intersections() {
            if i >= cells.len() || j >= cells.len() {
                tally.fail(|| {
                    json!({
                        "tree": tree_json_value(self.c.source()),
                        "intersection": [i, j],
                        "detail": "indexes a cell that does not exist",
                    })
                });
                continue;
            }
            let p = self.c.source().basepoint();
            let vi: BTreeSet<VertexId> = cells[i]
                .subtree
                .vertices()
                .iter()
                .copied()
                .chain([p])
                .collect();
            let vj: BTreeSet<VertexId> = cells[j]
                .subtree
                .vertices()
                .iter()
                .copied()
                .chain([p])
                .collect();
            let common: BTreeSet<VertexId> = vi.intersection(&vj).copied().collect();
            let union: BTreeSet<Edge> = cells[i]
                .subtree
                .edges()
                .union(cells[j].subtree.edges())
                .copied()
                .collect();
            let expected = self.outside_edge_count(&union, &common);
            tally.record(claimed == expected, || {
                self.pair_cex(
                    i,
                    j,
                    json!({"claimed_dim": claimed, "expected_dim": expected}),
                )
            });
        }
        tally.into_report(report, "intersection-dim");
    }

    /// One-edge extensions: growing a subtree by an edge toward a vertex of
    /// order k must drop the shared dimension to dim - 1 and raise the cell
    /// dimension by k - 2, and any pair related that way in the tables must
    /// really differ by exactly one edge.
    fn covering_laws(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let cells = self.c.cells();
        for i in 0..cells.len() {
            for j in (i + 1)..cells.len() {
                let mut ok = true;
                let mut detail = Value::Null;
                for (lo, hi) in [(i, j), (j, i)] {
                    let (ylo, yhi) = (cells[lo].subtree.edges(), cells[hi].subtree.edges());
                    let (dlo, dhi) = (cells[lo].dimension, cells[hi].dimension);
                    let inter = self.c.intersections().get(&(i, j)).copied();
                    if ylo.is_subset(yhi) && yhi.len() == ylo.len() + 1 {
                        let &e = yhi.difference(ylo).next().expect("one extra edge");
                        let anchored: BTreeSet<VertexId> = if ylo.is_empty() {
                            BTreeSet::from([self.c.source().basepoint()])
                        } else {
                            cells[lo].subtree.vertices().clone()
                        };
                        let tip = if anchored.contains(&e.0) { e.1 } else { e.0 };
                        let k = self.tree().degree(tip);
                        if inter != Some(dlo - 1) || dhi != dlo + k - 2 {
                            ok = false;
                            detail = json!({
                                "law": "one-edge extension",
                                "added_edge_toward_order": k,
                                "dims": [dlo, dhi],
                                "intersection": inter,
                            });
                        }
                    }
                    if inter == Some(dlo.saturating_sub(1)) && dhi > dlo {
                        let extends = ylo.is_subset(yhi) && yhi.len() == ylo.len() + 1;
                        if !extends {
                            ok = false;
                            detail = json!({
                                "law": "tables claim a one-edge extension that is not one",
                                "dims": [dlo, dhi],
                                "intersection": inter,
                            });
                        }
                    }
                }
                tally.record(ok, || self.pair_cex(i, j, detail.clone()));
            }
        }
        tally.into_report(report, "covering-laws");
    }

    /// Cells whose subtree is a path out of the basepoint must be exactly
    /// the cells covered at most once in the Hasse diagram, and every cover
    /// label must be a genuine branch order (at least 3).
    fn path_cells(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let cells = self.c.cells();
        match hasse(&self.c.abstract_view()) {
            Err(e) => tally
                .fail(|| json!({"tree": tree_json_value(self.c.source()), "error": e.to_string()})),
            Ok(h) => {
                let mut covered = vec![0usize; cells.len()];
                for cv in &h.covers {
                    covered[cv.upper] += 1;
                    if cv.label < 3 {
                        tally.fail(|| {
                            self.pair_cex(
                                cv.lower,
                                cv.upper,
                                json!({"label": cv.label, "law": "cover label below 3"}),
                            )
                        });
                    }
                }
                for (i, cell) in cells.iter().enumerate() {
                    let in_diagram = i == h.base || covered[i] == 1;
                    let is_path = self.is_path_from_basepoint(&cell.subtree);
                    tally.record(in_diagram == is_path, || {
                        self.cell_cex(
                            i,
                            json!({
                                "covered_count": covered[i],
                                "is_base": i == h.base,
                                "subtree_is_path": is_path,
                            }),
                        )
                    });
                }
            }
        }
        tally.into_report(report, "path-cells");
    }

    fn is_path_from_basepoint(&self, y: &crate::complex::Subtree) -> bool {
        if y.edge_count() == 0 {
            return true;
        }
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &(u, v) in y.edges() {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        let start = self.c.source().basepoint();
        let Some(first) = adj.get(&start) else {
            return false;
        };
        if first.len() != 1 {
            return false;
        }
        let (mut prev, mut at, mut steps) = (start, first[0], 1usize);
        loop {
            let next: Vec<VertexId> = adj[&at].iter().copied().filter(|&n| n != prev).collect();
            match next.len() {
                0 => return steps == y.edge_count(),
                1 => {
                    prev = at;
                    at = next[0];
                    steps += 1;
                }
                _ => return false,
            }
        }
    }

    /// Rebuilding the tree from dimensions and intersections alone must
    /// give back the augmented tree up to pointed isomorphism.
    fn round_trip(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        match reconstruct(&self.c.abstract_view()) {
            Ok(r) => tally.record(rooted_isomorphic(&r, self.c.source()), || {
                json!({
                    "tree": tree_json_value(self.c.source()),
                    "reconstructed": tree_json_value(&r),
                })
            }),
            Err(e) => tally
                .fail(|| json!({"tree": tree_json_value(self.c.source()), "error": e.to_string()})),
        }
        tally.into_report(report, "round-trip");
    }

    /// Removing any choice of `attached` pendant edges at the basepoint of
    /// the reconstructed tree must give back the original pointed tree.
    fn augmentation_soundness(&self, report: &mut VerificationReport) {
        let mut tally = Tally::new();
        let attached = self.c.attached();
        if attached > 0 {
            if let Ok(r) = reconstruct(&self.c.abstract_view()) {
                let p = r.basepoint();
                let pendants: Vec<VertexId> = r
                    .tree()
                    .neighbors(p)
                    .iter()
                    .copied()
                    .filter(|&v| r.tree().degree(v) == 1)
                    .collect();
                for choice in subsets_of_size(&pendants, attached) {
                    let drop: BTreeSet<VertexId> = choice.iter().copied().collect();
                    let kept: Vec<(String, String)> = r
                        .tree()
                        .edges()
                        .iter()
                        .filter(|&&(u, v)| !drop.contains(&u) && !drop.contains(&v))
                        .map(|&(u, v)| (r.tree().name(u).to_string(), r.tree().name(v).to_string()))
                        .collect();
                    match crate::tree::build_tree(&kept, r.basepoint_name()) {
                        Ok(stripped) => {
                            tally.record(
                                rooted_isomorphic(&normalize(&stripped), self.original),
                                || {
                                    json!({
                                        "tree": tree_json_value(self.original),
                                        "stripped": tree_json_value(&stripped),
                                        "removed_pendants": choice
                                            .iter()
                                            .map(|&v| r.tree().name(v))
                                            .collect::<Vec<_>>(),
                                    })
                                },
                            );
                        }
                        Err(e) => tally.fail(|| {
                            json!({
                                "tree": tree_json_value(self.original),
                                "error": e.to_string(),
                            })
                        }),
                    }
                }
            }
        }
        tally.into_report(report, "augmentation-soundness");
    }
}

fn subsets_of_size<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rest in subsets_of_size(&items[1..], k - 1) {
        let mut with = vec![items[0]];
        with.extend(rest);
        out.push(with);
    }
    out.extend(subsets_of_size(&items[1..], k));
    out
}

/// Runs every structural check on every pointed tree with at most
/// `max_edges` edges, one merged report.
pub fn pointed_sweep(max_edges: usize) -> VerificationReport {
    let start = Instant::now();
    let classes = enumerate_pointed(max_edges);
    let reports: Vec<VerificationReport> = classes.par_iter().map(check_pointed).collect();
    let mut merged = VerificationReport::new(max_edges);
    for r in reports {
        merged.merge(r);
    }
    merged.scope = max_edges;
    merged.elapsed = start.elapsed();
    merged
}

/// Checks that signatures separate all pointed classes with at most
/// `max_edges` edges, agree with pointed isomorphism, and do not depend on
/// vertex labels.
pub fn uniqueness_sweep(max_edges: usize) -> VerificationReport {
    let start = Instant::now();
    let classes = enumerate_pointed(max_edges);
    let rows: Vec<(
        Result<Signature>,
        Result<Signature>,
        crate::tree::CanonicalCode,
    )> = classes
        .par_iter()
        .map(|t| {
            (
                signature(t),
                signature(&relabel_reversed(t)),
                canonical_code(t),
            )
        })
        .collect();

    let mut report = VerificationReport::new(max_edges);
    let mut computed = Tally::new();
    for (i, (sig, _, _)) in rows.iter().enumerate() {
        computed.record(sig.is_ok(), || {
            json!({
                "tree": tree_json_value(&classes[i]),
                "error": sig.as_ref().unwrap_err().to_string(),
            })
        });
    }
    computed.into_report(&mut report, "signature-computed");

    let mut relabel = Tally::new();
    for (i, (sig, reversed, _)) in rows.iter().enumerate() {
        if let (Ok(a), Ok(b)) = (sig, reversed) {
            relabel.record(a == b, || {
                json!({
                    "tree": tree_json_value(&classes[i]),
                    "signature": crate::io::signature_json_value(a),
                    "relabeled_signature": crate::io::signature_json_value(b),
                })
            });
        }
    }
    relabel.into_report(&mut report, "signature-relabel-invariant");

    let mut distinct = Tally::new();
    let mut agreement = Tally::new();
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            if let (Ok(a), Ok(b)) = (&rows[i].0, &rows[j].0) {
                let same_class = rows[i].2 == rows[j].2;
                distinct.record(a != b || same_class, || {
                    json!({
                        "trees": [tree_json_value(&classes[i]), tree_json_value(&classes[j])],
                        "signature": crate::io::signature_json_value(a),
                        "law": "distinct pointed trees share a signature",
                    })
                });
                agreement.record((a == b) == same_class, || {
                    json!({
                        "trees": [tree_json_value(&classes[i]), tree_json_value(&classes[j])],
                        "signatures": [
                            crate::io::signature_json_value(a),
                            crate::io::signature_json_value(b),
                        ],
                        "same_class": same_class,
                    })
                });
            }
        }
    }
    distinct.into_report(&mut report, "signature-distinct");
    agreement.into_report(&mut report, "equivalence-agreement");
    report.elapsed = start.elapsed();
    report
}

/// How many distinct hyperspaces the points of X give: one signature per
/// vertex choice plus one per subdivided-edge choice, deduplicated.
pub fn kx_size(t: &Tree) -> Result<usize> {
    let mut sigs: BTreeSet<Signature> = BTreeSet::new();
    for v in t.vertices() {
        sigs.insert(signature(&t.pointed_at(v))?);
    }
    for e in 0..t.edge_count() {
        sigs.insert(signature(&subdivide_edge(t, e))?);
    }
    Ok(sigs.len())
}

/// Checks, for every tree with at most `max_edges` edges, that the number
/// of distinct hyperspaces over its points equals its number of vertex and
/// edge orbits.
pub fn corollary_sweep(max_edges: usize) -> VerificationReport {
    let start = Instant::now();
    let trees = enumerate_trees(max_edges);
    let rows: Vec<(Result<usize>, usize)> = trees
        .par_iter()
        .map(|t| (kx_size(t), homogeneity_degree(t)))
        .collect();
    let mut report = VerificationReport::new(max_edges);
    let mut tally = Tally::new();
    for (i, (kx, degree)) in rows.iter().enumerate() {
        let doc = |detail: Value| {
            let mut edges = trees[i].edge_names();
            edges.sort();
            json!({"tree": {"edges": edges}, "detail": detail})
        };
        match kx {
            Ok(n) => tally.record(n == degree, || {
                doc(json!({"distinct_hyperspaces": n, "orbit_count": degree}))
            }),
            Err(e) => tally.fail(|| doc(json!({"error": e.to_string()}))),
        }
    }
    tally.into_report(&mut report, "hyperspace-count-vs-homogeneity");
    report.elapsed = start.elapsed();
    report
}
