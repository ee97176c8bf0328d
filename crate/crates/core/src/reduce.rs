//! Reductions `G -> G*` for the reducible configurations, the coloring
//! lifts back to `G`, and exhaustive verification on small hosts.
//!
//! Path conditions in the lifts ask whether two vertices are joined by an
//! all-F path in `G` minus the deleted vertices, using only original edges.
//! F-vertices of the outer cycle count as one node (and cycle edges are
//! ignored), so a path to the cycle followed by a path from the cycle is
//! also a joining path: this is exactly what closes a forbidden path.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{self, Color, Coloring, ColoringError};
use crate::detect::{ConfigurationHit, HitKind};
use crate::graph::{CycleRef, Graph, GraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("invalid hit: {0}")]
    InvalidHit(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("lift failed ({branch}): {reason}")]
    LiftFailed { branch: String, reason: String },
    #[error("host has {0} vertices; exhaustive verification is limited to 24")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    LowDegree,
    Tetrad,
    MFace,
    MmFace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub kind: ReductionKind,
    pub deleted: Vec<Vertex>,
    /// `(kept, merged)`: `merged` disappears into `kept`.
    pub identified: Vec<(Vertex, Vertex)>,
    pub added_edges: Vec<(Vertex, Vertex)>,
    pub roles: BTreeMap<String, Vertex>,
}

impl ReductionTrace {
    pub fn apply(&self, g: &Graph) -> Result<Graph, ReduceError> {
        let deleted: BTreeSet<Vertex> = self.deleted.iter().copied().collect();
        let mut h = g.edit(&deleted, &self.added_edges)?;
        for &(keep, merged) in &self.identified {
            h = h.identify(keep, merged)?;
        }
        Ok(h)
    }

    fn role(&self, r: &str) -> Vertex {
        self.roles[r]
    }
}

fn roles_of(hit: &ConfigurationHit) -> BTreeMap<String, Vertex> {
    hit.roles.iter().cloned().collect()
}

fn require_edges(g: &Graph, roles: &BTreeMap<String, Vertex>, edges: &[(&str, &str)]) -> Result<(), ReduceError> {
    for (a, b) in edges {
        let (Some(&u), Some(&v)) = (roles.get(*a), roles.get(*b)) else {
            return Err(ReduceError::InvalidHit(format!("missing role {a} or {b}")));
        };
        if !g.has_edge(u, v) {
            return Err(ReduceError::InvalidHit(format!("{a}={u} and {b}={v} are not adjacent")));
        }
    }
    Ok(())
}

fn require_present(g: &Graph, roles: &BTreeMap<String, Vertex>) -> Result<(), ReduceError> {
    match roles.iter().find(|(_, v)| !g.contains(**v)) {
        Some((r, v)) => Err(ReduceError::InvalidHit(format!("role {r}={v} is not a vertex"))),
        None => Ok(()),
    }
}

const EIGHT_CYCLE: [(&str, &str); 8] =
    [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v6"), ("v6", "v7"), ("v7", "v8"), ("v8", "v1")];

/// Builds `G*` for a hit and records the surgery.
pub fn reduce(g: &Graph, hit: &ConfigurationHit) -> Result<(Graph, ReductionTrace), ReduceError> {
    reduce_keeping(g, hit, &BTreeSet::new())
}

/// Like [`reduce`], but an identification keeps the vertex in `keep` when
/// only the merged one is there (so an outer cycle survives intact).
pub fn reduce_keeping(
    g: &Graph,
    hit: &ConfigurationHit,
    keep: &BTreeSet<Vertex>,
) -> Result<(Graph, ReductionTrace), ReduceError> {
    let roles = roles_of(hit);
    require_present(g, &roles)?;
    let r = |name: &str| roles[name];
    let mut trace = match hit.kind {
        HitKind::LowDegree => {
            let v = r("v");
            if g.degree(v) > 2 {
                return Err(ReduceError::InvalidHit(format!("vertex {v} has degree {}", g.degree(v))));
            }
            ReductionTrace {
                kind: ReductionKind::LowDegree,
                deleted: vec![v],
                identified: vec![],
                added_edges: vec![],
                roles,
            }
        }
        HitKind::Tetrad => {
            require_edges(
                g,
                &roles,
                &[
                    ("x", "v1"),
                    ("v1", "v2"),
                    ("v2", "v3"),
                    ("v3", "v4"),
                    ("v4", "y"),
                    ("t12", "v1"),
                    ("t12", "v2"),
                    ("t34", "v3"),
                    ("t34", "v4"),
                ],
            )?;
            ReductionTrace {
                kind: ReductionKind::Tetrad,
                deleted: vec![r("v1"), r("v2"), r("v3"), r("v4")],
                identified: vec![(r("x"), r("t34"))],
                added_edges: vec![],
                roles,
            }
        }
        HitKind::MFace => {
            require_edges(g, &roles, &EIGHT_CYCLE)?;
            require_edges(
                g,
                &roles,
                &[
                    ("t18", "v1"),
                    ("t18", "v8"),
                    ("t23", "v2"),
                    ("t23", "v3"),
                    ("t56", "v5"),
                    ("t56", "v6"),
                    ("t78", "v7"),
                    ("t78", "v8"),
                ],
            )?;
            ReductionTrace {
                kind: ReductionKind::MFace,
                deleted: ["v1", "v2", "v3", "v5", "v6", "v7"].iter().map(|n| r(n)).collect(),
                identified: vec![(r("v4"), r("v8"))],
                added_edges: vec![(r("t18"), r("t78"))],
                roles,
            }
        }
        HitKind::MmFace => {
            require_edges(g, &roles, &EIGHT_CYCLE)?;
            require_edges(
                g,
                &roles,
                &[
                    ("t18", "v1"),
                    ("t18", "v8"),
                    ("t23", "v2"),
                    ("t23", "v3"),
                    ("t45", "v4"),
                    ("t45", "v5"),
                    ("t56", "v5"),
                    ("t56", "v6"),
                    ("t78", "v7"),
                    ("t78", "v8"),
                ],
            )?;
            ReductionTrace {
                kind: ReductionKind::MmFace,
                deleted: ["v1", "v2", "v3", "v4", "v6", "v7"].iter().map(|n| r(n)).collect(),
                identified: vec![(r("v5"), r("v8"))],
                added_edges: vec![(r("t18"), r("t45")), (r("t78"), r("t56"))],
                roles,
            }
        }
        ref other => {
            return Err(ReduceError::InvalidHit(format!("{} has no reduction", other.name())));
        }
    };
    for pair in &mut trace.identified {
        if keep.contains(&pair.1) && !keep.contains(&pair.0) {
            *pair = (pair.1, pair.0);
        }
    }
    let g_star = trace.apply(g)?;
    Ok((g_star, trace))
}

/// Colors of `G - deleted`, read from a coloring of `G*` (merged vertices
/// take the color of their representative).
struct LiftContext<'a> {
    g: &'a Graph,
    c0: &'a CycleRef,
    trace: &'a ReductionTrace,
    color: Coloring,
}

impl<'a> LiftContext<'a> {
    fn new(g: &'a Graph, c0: &'a CycleRef, trace: &'a ReductionTrace, star: &Coloring) -> Result<Self, ReduceError> {
        let deleted: BTreeSet<Vertex> = trace.deleted.iter().copied().collect();
        let mut color = Coloring::new();
        for v in g.vertices().filter(|v| !deleted.contains(v)) {
            let rep = trace.identified.iter().find(|&&(_, m)| m == v).map_or(v, |&(k, _)| k);
            let c = star.get(rep).ok_or(ColoringError::PartialColoring(rep))?;
            color.set(v, c);
        }
        Ok(Self { g, c0, trace, color })
    }

    fn col(&self, role: &str) -> Color {
        self.color.get(self.trace.role(role)).expect("surviving role is colored")
    }

    fn set(&mut self, role: &str, c: Color) {
        self.color.set(self.trace.role(role), c);
    }

    /// All-F connection between two surviving vertices in `G - deleted`.
    fn f_joined(&self, a: Vertex, b: Vertex) -> bool {
        let deleted: BTreeSet<Vertex> = self.trace.deleted.iter().copied().collect();
        let on_c0 = self.c0.vertex_set();
        let is_f = |v: Vertex| !deleted.contains(&v) && self.color.is(v, Color::F);
        if !is_f(a) || !is_f(b) {
            return false;
        }
        // node id: the cycle's F-vertices share one hub node
        let node = |v: Vertex| if on_c0.contains(&v) { None } else { Some(v) };
        let target = node(b);
        if node(a) == target {
            return true;
        }
        let mut seen: BTreeSet<Option<Vertex>> = BTreeSet::from([node(a)]);
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            let expand: Vec<Vertex> = if on_c0.contains(&v) {
                on_c0.iter().copied().filter(|&c| is_f(c)).collect()
            } else {
                vec![v]
            };
            for x in expand {
                for &w in self.g.neighbors(x) {
                    if !is_f(w) || (on_c0.contains(&x) && on_c0.contains(&w) && self.c0.has_edge(x, w)) {
                        continue;
                    }
                    if node(w) == target {
                        return true;
                    }
                    if seen.insert(node(w)) {
                        queue.push_back(w);
                    }
                }
            }
        }
        false
    }

    fn joined(&self, a: &str, b: &str) -> bool {
        self.f_joined(self.trace.role(a), self.trace.role(b))
    }
}

/// The mirror of an M-face labeling (axis through `v4` and `v8`).
const M_MIRROR: [(&str, &str); 6] = [("v1", "v7"), ("v2", "v6"), ("v3", "v5"), ("t18", "t78"), ("t23", "t56"), ("v4", "v4")];
/// The mirror of an MM-face labeling (axis through `t23`).
const MM_MIRROR: [(&str, &str); 6] = [("v1", "v4"), ("v2", "v3"), ("v5", "v8"), ("v6", "v7"), ("t18", "t45"), ("t56", "t78")];

fn mirrored(trace: &ReductionTrace, pairs: &[(&str, &str)]) -> ReductionTrace {
    let mut t = trace.clone();
    for &(a, b) in pairs {
        let (va, vb) = (trace.roles[a], trace.roles[b]);
        t.roles.insert(a.to_string(), vb);
        t.roles.insert(b.to_string(), va);
    }
    t
}

/// A lifted coloring of `G` with the case-analysis branch that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifted {
    pub coloring: Coloring,
    pub branch: String,
}

/// Runs the case analysis without checking the result.
pub fn lift_unchecked(
    g: &Graph,
    c0: &CycleRef,
    trace: &ReductionTrace,
    star: &Coloring,
) -> Result<Lifted, ReduceError> {
    use Color::{F, I};
    let fail = |branch: &str, reason: &str| ReduceError::LiftFailed { branch: branch.into(), reason: reason.into() };
    let mut cx = LiftContext::new(g, c0, trace, star)?;
    let branch = match trace.kind {
        ReductionKind::LowDegree => {
            let v = trace.role("v");
            let all_f = g.neighbors(v).iter().all(|&w| cx.color.is(w, F));
            cx.color.set(v, if all_f { I } else { F });
            if all_f { "all_neighbors_f" } else { "some_neighbor_i" }.to_string()
        }
        ReductionKind::Tetrad => {
            if cx.col("x") == I {
                for r in ["v1", "v3", "v4"] {
                    cx.set(r, F);
                }
                cx.set("v2", cx.col("t12").opposite());
                "case1".into()
            } else {
                cx.set("v2", F);
                cx.set("v3", cx.col("y"));
                cx.set("v1", cx.col("t12").opposite());
                cx.set("v4", cx.col("y").opposite());
                if cx.col("t12") == F && cx.col("y") == F && cx.joined("t12", "t34") {
                    cx.set("v1", F);
                    cx.set("v2", I);
                    "case2_recolor".into()
                } else {
                    "case2".into()
                }
            }
        }
        ReductionKind::MFace => {
            if cx.col("v4") == I {
                for r in ["v1", "v3", "v5", "v7"] {
                    cx.set(r, F);
                }
                cx.set("v2", cx.col("t23").opposite());
                cx.set("v6", cx.col("t56").opposite());
                "case1".into()
            } else {
                let (t18, t78) = (cx.col("t18"), cx.col("t78"));
                let (t, side) = match (t18, t78) {
                    (I, F) => (trace.clone(), ""),
                    (F, I) => (mirrored(trace, &M_MIRROR), "_mirror"),
                    _ => return Err(fail("case2", "t18 and t78 have the same color")),
                };
                let mut mx = LiftContext { g, c0, trace: &t, color: cx.color.clone() };
                for r in ["v1", "v6"] {
                    mx.set(r, F);
                }
                mx.set("v7", I);
                mx.set("v5", mx.col("t56").opposite());
                let sub = if mx.col("t23") == I {
                    mx.set("v2", F);
                    mx.set("v3", F);
                    "t23_i"
                } else if mx.joined("v4", "t23") {
                    mx.set("v2", F);
                    mx.set("v3", I);
                    "s1"
                } else {
                    mx.set("v2", I);
                    mx.set("v3", F);
                    "no_s1"
                };
                cx.color = mx.color;
                format!("case2{side}_{sub}")
            }
        }
        ReductionKind::MmFace => {
            if cx.col("v5") == I {
                for r in ["v1", "v4", "v6", "v7"] {
                    cx.set(r, F);
                }
                let sub = if cx.col("t23") == I {
                    cx.set("v2", F);
                    cx.set("v3", F);
                    "t23_i"
                } else if cx.joined("t18", "t23") {
                    cx.set("v2", I);
                    cx.set("v3", F);
                    "s1"
                } else {
                    cx.set("v2", F);
                    cx.set("v3", I);
                    "no_s1"
                };
                format!("case1_{sub}")
            } else {
                let (t18, t45) = (cx.col("t18"), cx.col("t45"));
                let (t, side) = match (t18, t45) {
                    (I, F) => (trace.clone(), ""),
                    (F, I) => (mirrored(trace, &MM_MIRROR), "_mirror"),
                    _ => return Err(fail("case2", "t18 and t45 have the same color")),
                };
                let mut mx = LiftContext { g, c0, trace: &t, color: cx.color.clone() };
                mx.set("v1", F);
                mx.set("v3", F);
                mx.set("v4", I);
                mx.set("v2", mx.col("t23").opposite());
                mx.set("v6", mx.col("t78"));
                mx.set("v7", mx.col("t56"));
                cx.color = mx.color;
                format!("case2{side}")
            }
        }
    };
    Ok(Lifted { coloring: cx.color, branch })
}

/// Lifts and checks the result is a valid superextension of `c0` in `g`.
pub fn lift(g: &Graph, c0: &CycleRef, trace: &ReductionTrace, star: &Coloring) -> Result<Lifted, ReduceError> {
    let lifted = lift_unchecked(g, c0, trace, star)?;
    if let Some(problem) = lift_problem(g, c0, star, &lifted.coloring) {
        return Err(ReduceError::LiftFailed { branch: lifted.branch, reason: problem });
    }
    Ok(lifted)
}

fn lift_problem(g: &Graph, c0: &CycleRef, star: &Coloring, lifted: &Coloring) -> Option<String> {
    match coloring::validate(g, lifted) {
        Err(e) => return Some(e.to_string()),
        Ok(Some(v)) => return Some(v.to_string()),
        Ok(None) => {}
    }
    if let Some(p) = coloring::violating_f_path(g, c0, lifted) {
        return Some(format!("all-F path {p:?} between vertices of C0"));
    }
    if c0.vertices().iter().any(|&v| lifted.get(v) != star.get(v)) {
        return Some("precoloring of C0 changed".into());
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftFailure {
    pub precoloring: Coloring,
    pub reduced: Coloring,
    pub lifted: Option<Coloring>,
    pub branch: Option<String>,
    pub problem: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityReport {
    pub kind: ReductionKind,
    pub host_vertices: usize,
    pub reduced_vertices: usize,
    pub precolorings: usize,
    pub superextensions: usize,
    pub branches: BTreeMap<String, usize>,
    pub failures: Vec<LiftFailure>,
}

impl ReducibilityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub type LiftFn<'a> = dyn Fn(&Graph, &CycleRef, &ReductionTrace, &Coloring) -> Result<Lifted, ReduceError> + 'a;

/// Lifts every superextension of every precoloring of `c0` in `G*` and
/// checks each result in `G`.
pub fn verify_reducibility(g: &Graph, c0: &CycleRef, hit: &ConfigurationHit) -> Result<ReducibilityReport, ReduceError> {
    verify_reducibility_with(g, c0, hit, &lift_unchecked)
}

pub fn verify_reducibility_with(
    g: &Graph,
    c0: &CycleRef,
    hit: &ConfigurationHit,
    lift_fn: &LiftFn<'_>,
) -> Result<ReducibilityReport, ReduceError> {
    if g.vertex_count() > 24 {
        return Err(ReduceError::TooLarge(g.vertex_count()));
    }
    let (g_star, trace) = reduce_keeping(g, hit, &c0.vertex_set())?;
    g_star
        .check_cycle(c0)
        .map_err(|e| ReduceError::InvalidHit(format!("C0 does not survive the reduction: {e}")))?;
    let mut report = ReducibilityReport {
        kind: trace.kind,
        host_vertices: g.vertex_count(),
        reduced_vertices: g_star.vertex_count(),
        precolorings: 0,
        superextensions: 0,
        branches: BTreeMap::new(),
        failures: Vec::new(),
    };
    for pre in coloring::cycle_precolorings(&g_star, c0) {
        report.precolorings += 1;
        let mut found = Vec::new();
        coloring::enumerate_superextensions(&g_star, c0, &pre, |c| {
            found.push(c);
            true
        })?;
        for star in found {
            report.superextensions += 1;
            let failure = |lifted: Option<Coloring>, branch: Option<String>, problem: String| LiftFailure {
                precoloring: pre.clone(),
                reduced: star.clone(),
                lifted,
                branch,
                problem,
            };
            match lift_fn(g, c0, &trace, &star) {
                Ok(l) => {
                    *report.branches.entry(l.branch.clone()).or_default() += 1;
                    if let Some(problem) = lift_problem(g, c0, &star, &l.coloring) {
                        report.failures.push(failure(Some(l.coloring), Some(l.branch), problem));
                    }
                }
                Err(e) => report.failures.push(failure(None, None, e.to_string())),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hit(kind: HitKind, roles: &[(&str, Vertex)]) -> ConfigurationHit {
        ConfigurationHit { kind, face: None, roles: roles.iter().map(|(r, v)| (r.to_string(), *v)).collect() }
    }

    #[test]
    fn low_degree_lift_colors_by_neighbors() {
        // triangle 0 1 2 with a 2-vertex 3 hanging on 0 and 1 through a path
        let g = Graph::from_edges(0..4, &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1)]).unwrap();
        let c0 = CycleRef::new(vec![0, 1, 2]);
        let h = hit(HitKind::LowDegree, &[("v", 3)]);
        let (gs, trace) = reduce(&g, &h).unwrap();
        assert_eq!(gs.vertex_count(), 3);
        let star: Coloring = [(0, Color::F), (1, Color::F), (2, Color::I)].into_iter().collect();
        let l = lift(&g, &c0, &trace, &star).unwrap();
        assert_eq!(l.coloring.get(3), Some(Color::I));
        let star: Coloring = [(0, Color::I), (1, Color::F), (2, Color::F)].into_iter().collect();
        let l = lift(&g, &c0, &trace, &star).unwrap();
        assert_eq!(l.coloring.get(3), Some(Color::F));
    }

    #[test]
    fn degree_three_vertex_is_not_low_degree() {
        let g = Graph::from_edges(0..4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(reduce(&g, &hit(HitKind::LowDegree, &[("v", 0)])), Err(ReduceError::InvalidHit(_))));
    }

    #[test]
    fn fa_hits_have_no_reduction() {
        let g = Graph::from_edges(0..2, &[(0, 1)]).unwrap();
        let h = hit(HitKind::Fa1, &[("v1", 0)]);
        assert!(matches!(reduce(&g, &h), Err(ReduceError::InvalidHit(_))));
    }
}
