//! Vertex classification relative to the outer cycle `C0`, and detectors
//! for the configurations the reductions and the discharging rules use.
//!
//! A 3-face is *adjacent* to a face `f` when the two share an edge. For the
//! patterned 8-faces, the 3-face `t_ij v_i v_j` is the face across the
//! boundary edge `v_i v_j` from `f`, and `t_ij` is its third vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embed::{FaceId, PlanarMap};
use crate::graph::{subgraph_match, CycleRef, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error("the given cycle does not bound the outer face")]
    OuterMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HitKind {
    LowDegree,
    Tetrad,
    MFace,
    MmFace,
    Fa1,
    Fa2,
    FbCatalog(String),
}

impl HitKind {
    pub fn name(&self) -> String {
        match self {
            HitKind::LowDegree => "low_degree".into(),
            HitKind::Tetrad => "tetrad".into(),
            HitKind::MFace => "m_face".into(),
            HitKind::MmFace => "mm_face".into(),
            HitKind::Fa1 => "fa1".into(),
            HitKind::Fa2 => "fa2".into(),
            HitKind::FbCatalog(n) => format!("fb_catalog:{n}"),
        }
    }

    pub fn parse(name: &str) -> Option<HitKind> {
        Some(match name {
            "low_degree" => HitKind::LowDegree,
            "tetrad" => HitKind::Tetrad,
            "m_face" => HitKind::MFace,
            "mm_face" => HitKind::MmFace,
            "fa1" => HitKind::Fa1,
            "fa2" => HitKind::Fa2,
            other => HitKind::FbCatalog(other.strip_prefix("fb_catalog:")?.to_string()),
        })
    }

    /// Role labels in canonical order.
    pub fn roles(&self) -> &'static [&'static str] {
        match self {
            HitKind::LowDegree => &["v"],
            HitKind::Tetrad => &["v1", "v2", "v3", "v4", "t12", "t34", "x", "y"],
            HitKind::MFace => &["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "t18", "t23", "t56", "t78"],
            HitKind::MmFace => {
                &["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "t18", "t23", "t45", "t56", "t78"]
            }
            HitKind::Fa1 => &["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "t18", "t34", "t56"],
            HitKind::Fa2 => &["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "t18", "t34", "t56", "t67"],
            HitKind::FbCatalog(_) => &[],
        }
    }
}

/// A located configuration with its role assignment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConfigurationHit {
    pub kind: HitKind,
    pub face: Option<FaceId>,
    pub roles: Vec<(String, Vertex)>,
}

impl ConfigurationHit {
    pub fn new(kind: HitKind, face: Option<FaceId>, ids: &[Vertex]) -> Self {
        let roles = kind.roles().iter().zip(ids).map(|(r, &v)| (r.to_string(), v)).collect();
        Self { kind, face, roles }
    }

    pub fn role(&self, name: &str) -> Option<Vertex> {
        self.roles.iter().find(|(r, _)| r == name).map(|&(_, v)| v)
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.roles.iter().map(|&(_, v)| v).collect()
    }

    pub fn describe(&self) -> String {
        let roles: Vec<String> = self.roles.iter().map(|(r, v)| format!("{r}={v}")).collect();
        format!("{}:{}", self.kind.name(), roles.join(","))
    }
}

/// Per-vertex and per-(vertex, face) flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub outer: FaceId,
    pub c0: CycleRef,
    pub internal: BTreeSet<Vertex>,
    pub bad: BTreeSet<Vertex>,
    pub willing: BTreeSet<Vertex>,
    pub content: BTreeSet<Vertex>,
    pub poor_to: BTreeSet<(Vertex, FaceId)>,
    pub special_to: BTreeSet<(Vertex, FaceId)>,
    fa_hits: Vec<ConfigurationHit>,
}

impl Classification {
    pub fn is_internal(&self, v: Vertex) -> bool {
        self.internal.contains(&v)
    }

    pub fn is_bad(&self, v: Vertex) -> bool {
        self.bad.contains(&v)
    }

    pub fn is_willing(&self, v: Vertex) -> bool {
        self.willing.contains(&v)
    }

    pub fn is_content(&self, v: Vertex) -> bool {
        self.content.contains(&v)
    }

    pub fn is_poor_to(&self, v: Vertex, f: FaceId) -> bool {
        self.poor_to.contains(&(v, f))
    }

    pub fn is_special_to(&self, v: Vertex, f: FaceId) -> bool {
        self.special_to.contains(&(v, f))
    }

    pub fn is_special(&self, v: Vertex) -> bool {
        self.special_to.range((v, 0)..=(v, FaceId::MAX)).next().is_some()
    }
}

/// Incident 3-faces of `v` (distinct).
pub fn triangles_at(map: &PlanarMap, v: Vertex) -> BTreeSet<FaceId> {
    map.incident_faces(v).into_iter().filter(|&f| map.face(f).degree() == 3).collect()
}

/// The third vertex of the 3-face across edge `a`-`b` from face `f`, if that
/// face is a 3-face.
fn apex_across(map: &PlanarMap, f: FaceId, a: Vertex, b: Vertex) -> Option<Vertex> {
    let fa = map.face_of_dart((a, b));
    let across = if fa == f { map.face_of_dart((b, a)) } else { fa };
    if across == f {
        return None;
    }
    let face = map.face(across);
    if face.degree() != 3 {
        return None;
    }
    face.walk().into_iter().find(|&t| t != a && t != b)
}

/// Whether edge `a`-`b` lies on some 3-face.
fn edge_on_triangle(map: &PlanarMap, a: Vertex, b: Vertex) -> bool {
    [map.face_of_dart((a, b)), map.face_of_dart((b, a))]
        .iter()
        .any(|&f| map.face(f).degree() == 3)
}

pub fn classify(map: &PlanarMap, c0: &CycleRef) -> Result<Classification, DetectError> {
    let outer = map.outer_face();
    let boundary = map.face(outer);
    if !boundary.is_simple() || boundary.vertex_set() != c0.vertex_set() || boundary.degree() != c0.len() {
        return Err(DetectError::OuterMismatch);
    }
    if c0.edges().any(|(a, b)| !boundary.contains_edge(a, b)) {
        return Err(DetectError::OuterMismatch);
    }
    let g = map.graph();
    let on_c0 = c0.vertex_set();
    let internal: BTreeSet<Vertex> = g.vertices().filter(|v| !on_c0.contains(v)).collect();

    let bad: BTreeSet<Vertex> = internal
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == 3 && !triangles_at(map, v).is_empty())
        .collect();

    let mut poor_to = BTreeSet::new();
    for &v in internal.iter().filter(|&&v| g.degree(v) == 4) {
        let tris = triangles_at(map, v);
        for f in map.incident_faces(v) {
            if tris.contains(&f) {
                continue;
            }
            let adjacent: Vec<bool> = tris.iter().map(|&t| map.faces_adjacent(t, f)).collect();
            let poor = match adjacent.as_slice() {
                [a, b] => *a && *b,
                [a] => !*a,
                _ => false,
            };
            if poor {
                poor_to.insert((v, f));
            }
        }
    }

    let willing: BTreeSet<Vertex> = internal
        .iter()
        .copied()
        .filter(|&v| {
            (g.degree(v) == 3 && !bad.contains(&v))
                || poor_to.range((v, 0)..=(v, FaceId::MAX)).next().is_some()
        })
        .collect();

    let content: BTreeSet<Vertex> = on_c0
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == 3 && is_content(map, v, outer))
        .collect();

    let mut cls = Classification {
        outer,
        c0: c0.clone(),
        internal,
        bad,
        willing,
        content,
        poor_to,
        special_to: BTreeSet::new(),
        fa_hits: Vec::new(),
    };
    let fa_hits = detect_fa(map, &cls);
    for hit in &fa_hits {
        let f = hit.face.expect("Fa hits carry a face");
        for v in map.face(f).vertex_set() {
            if cls.content.contains(&v) {
                cls.special_to.insert((v, f));
            }
        }
    }
    cls.fa_hits = fa_hits;
    Ok(cls)
}

fn is_content(map: &PlanarMap, v: Vertex, outer: FaceId) -> bool {
    let mut corners = map.corners(v);
    let Some(pos) = corners.iter().position(|&f| f == outer) else {
        return false;
    };
    corners.remove(pos);
    if corners.contains(&outer) {
        return false;
    }
    let degs: Vec<usize> = corners.iter().map(|&f| map.face(f).degree()).collect();
    matches!(degs.as_slice(), [3, d] | [d, 3] if *d >= 8)
}

/// Internal vertices of degree at most 2.
pub fn find_low_degree(map: &PlanarMap, cls: &Classification) -> Vec<ConfigurationHit> {
    cls.internal
        .iter()
        .filter(|&&v| map.graph().degree(v) <= 2)
        .map(|&v| ConfigurationHit::new(HitKind::LowDegree, None, &[v]))
        .collect()
}

/// Labelings of a face walk: `(start, forward)` gives `v_i = w[start ± (i-1)]`.
fn labelings(walk: &[Vertex]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    let n = walk.len();
    (0..n).flat_map(move |s| {
        [true, false].into_iter().map(move |fwd| {
            (0..n)
                .map(|i| if fwd { walk[(s + i) % n] } else { walk[(s + n - i) % n] })
                .collect()
        })
    })
}

fn dedup_canonical(hits: Vec<ConfigurationHit>) -> Vec<ConfigurationHit> {
    // keep the lexicographically smallest role vector per (kind, vertex set)
    let mut best: BTreeMap<(HitKind, BTreeSet<Vertex>), ConfigurationHit> = BTreeMap::new();
    for h in hits {
        let key = (h.kind.clone(), h.vertex_set());
        let ids = |h: &ConfigurationHit| h.roles.iter().map(|&(_, v)| v).collect::<Vec<_>>();
        match best.get(&key) {
            Some(cur) if ids(cur) <= ids(&h) => {}
            _ => {
                best.insert(key, h);
            }
        }
    }
    let mut out: Vec<ConfigurationHit> = best.into_values().collect();
    out.sort_by(|a, b| {
        let ids = |h: &ConfigurationHit| h.roles.iter().map(|&(_, v)| v).collect::<Vec<_>>();
        (&a.kind, ids(a)).cmp(&(&b.kind, ids(b)))
    });
    out
}

pub fn find_tetrads(map: &PlanarMap, cls: &Classification) -> Vec<ConfigurationHit> {
    let mut hits = Vec::new();
    for face in map.faces() {
        let walk = face.walk();
        let n = walk.len();
        if n < 4 {
            continue;
        }
        for lab in labelings(&walk) {
            let (v1, v2, v3, v4) = (lab[0], lab[1], lab[2], lab[3]);
            let run = [v1, v2, v3, v4];
            if !run.iter().all(|v| cls.is_bad(*v)) {
                continue;
            }
            if run.iter().collect::<BTreeSet<_>>().len() != 4 {
                continue;
            }
            let (Some(t12), Some(t34)) =
                (apex_across(map, face.id, v1, v2), apex_across(map, face.id, v3, v4))
            else {
                continue;
            };
            let (x, y) = (lab[n - 1], lab[4 % n]);
            hits.push(ConfigurationHit::new(
                HitKind::Tetrad,
                Some(face.id),
                &[v1, v2, v3, v4, t12, t34, x, y],
            ));
        }
    }
    dedup_canonical(hits)
}

/// Checks the 3-faces across the listed boundary edges of an 8-face
/// labeling and returns their apexes in the same order.
fn apexes(map: &PlanarMap, f: FaceId, lab: &[Vertex], pairs: &[(usize, usize)]) -> Option<Vec<Vertex>> {
    pairs.iter().map(|&(i, j)| apex_across(map, f, lab[i - 1], lab[j - 1])).collect()
}

fn eight_faces(map: &PlanarMap) -> impl Iterator<Item = (FaceId, Vec<Vertex>)> + '_ {
    map.faces()
        .iter()
        .filter(|f| f.degree() == 8 && f.is_simple())
        .map(|f| (f.id, f.walk()))
}

pub fn find_m_faces(map: &PlanarMap, cls: &Classification) -> Vec<ConfigurationHit> {
    let g = map.graph();
    let mut hits = Vec::new();
    for (fid, walk) in eight_faces(map) {
        for lab in labelings(&walk) {
            let v = |i: usize| lab[i - 1];
            let ok = [1, 2, 3, 5, 6, 7].iter().all(|&i| cls.is_bad(v(i)))
                && !cls.is_bad(v(4))
                && g.degree(v(8)) == 4;
            if !ok {
                continue;
            }
            if let Some(t) = apexes(map, fid, &lab, &[(1, 8), (2, 3), (5, 6), (7, 8)]) {
                let mut ids = lab.clone();
                ids.extend(t);
                hits.push(ConfigurationHit::new(HitKind::MFace, Some(fid), &ids));
            }
        }
    }
    dedup_canonical(hits)
}

pub fn find_mm_faces(map: &PlanarMap, cls: &Classification) -> Vec<ConfigurationHit> {
    let g = map.graph();
    let mut hits = Vec::new();
    for (fid, walk) in eight_faces(map) {
        for lab in labelings(&walk) {
            let v = |i: usize| lab[i - 1];
            let ok = [1, 2, 3, 4, 6, 7].iter().all(|&i| cls.is_bad(v(i)))
                && g.degree(v(5)) >= 4
                && g.degree(v(8)) >= 4;
            if !ok {
                continue;
            }
            if let Some(t) = apexes(map, fid, &lab, &[(1, 8), (2, 3), (4, 5), (5, 6), (7, 8)]) {
                let mut ids = lab.clone();
                ids.extend(t);
                hits.push(ConfigurationHit::new(HitKind::MmFace, Some(fid), &ids));
            }
        }
    }
    dedup_canonical(hits)
}

fn detect_fa(map: &PlanarMap, cls: &Classification) -> Vec<ConfigurationHit> {
    let g = map.graph();
    let on_c0 = cls.c0.vertex_set();
    let mut hits = Vec::new();
    for (fid, walk) in eight_faces(map) {
        if fid == cls.outer {
            continue;
        }
        for lab in labelings(&walk) {
            let v = |i: usize| lab[i - 1];
            let common = cls.is_content(v(1)) && cls.is_content(v(3)) && g.degree(v(2)) == 2;
            if !common {
                continue;
            }
            let fa1 = [4, 5, 6, 8].iter().all(|&i| cls.is_bad(v(i))) && cls.is_willing(v(7));
            let fa2 = [4, 5, 7, 8].iter().all(|&i| cls.is_bad(v(i))) && cls.is_willing(v(6));
            let candidates = [
                (fa1, HitKind::Fa1, &[(1, 8), (3, 4), (5, 6)][..]),
                (fa2, HitKind::Fa2, &[(1, 8), (3, 4), (5, 6), (6, 7)][..]),
            ];
            for (ok, kind, pairs) in candidates {
                if !ok {
                    continue;
                }
                let Some(t) = apexes(map, fid, &lab, pairs) else {
                    continue;
                };
                // t18 and t34 lie on C0
                if !on_c0.contains(&t[0]) || !on_c0.contains(&t[1]) {
                    continue;
                }
                let mut ids = lab.clone();
                ids.extend(t);
                hits.push(ConfigurationHit::new(kind, Some(fid), &ids));
            }
        }
    }
    dedup_canonical(hits)
}

/// Fa1/Fa2 faces and the number of FA-structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaReport {
    pub hits: Vec<ConfigurationHit>,
    pub n_fa: usize,
}

impl FaReport {
    /// The count every minimal counterexample satisfies.
    pub fn within_bound(&self) -> bool {
        self.n_fa <= 3
    }
}

pub fn find_fa_faces(cls: &Classification) -> FaReport {
    let faces: BTreeSet<Option<FaceId>> = cls.fa_hits.iter().map(|h| h.face).collect();
    FaReport { hits: cls.fa_hits.clone(), n_fa: faces.len() }
}

/// Catalog members found as (not necessarily induced) subgraphs.
pub fn match_fb(g: &Graph, catalog: &[(String, Graph)]) -> Vec<ConfigurationHit> {
    let mut hits = Vec::new();
    for (name, h) in catalog {
        if let Some(m) = subgraph_match(h, g) {
            let roles = m.into_iter().map(|(hv, gv)| (hv.to_string(), gv)).collect();
            hits.push(ConfigurationHit { kind: HitKind::FbCatalog(name.clone()), face: None, roles });
        }
    }
    hits
}

/// Faces carrying five consecutive bad vertices, with the run.
pub fn five_bad_runs(map: &PlanarMap, cls: &Classification) -> Vec<(FaceId, Vec<Vertex>)> {
    let mut out = Vec::new();
    for face in map.faces() {
        let walk = face.walk();
        let n = walk.len();
        if n < 5 {
            continue;
        }
        for s in 0..n {
            let run: Vec<Vertex> = (0..5).map(|i| walk[(s + i) % n]).collect();
            if run.iter().all(|&v| cls.is_bad(v)) {
                out.push((face.id, run));
                break;
            }
        }
    }
    out
}

/// Runs `v0..v5` on a face with `v1..v4` bad where one of the edges
/// `v0v1`, `v2v3`, `v4v5` is on no 3-face.
pub fn bad_run_edge_violations(map: &PlanarMap, cls: &Classification) -> Vec<(FaceId, Vec<Vertex>)> {
    let mut out = Vec::new();
    for face in map.faces() {
        let walk = face.walk();
        let n = walk.len();
        if n < 6 {
            continue;
        }
        for s in 0..n {
            let run: Vec<Vertex> = (0..6).map(|i| walk[(s + i) % n]).collect();
            if !run[1..5].iter().all(|&v| cls.is_bad(v)) {
                continue;
            }
            let ok = [(0, 1), (2, 3), (4, 5)].iter().all(|&(a, b)| edge_on_triangle(map, run[a], run[b]));
            if !ok {
                out.push((face.id, run));
            }
        }
    }
    out
}

/// All reducible-configuration hits of the map.
pub fn detect_all(map: &PlanarMap, cls: &Classification) -> Vec<ConfigurationHit> {
    let mut hits = find_low_degree(map, cls);
    hits.extend(find_tetrads(map, cls));
    hits.extend(find_m_faces(map, cls));
    hits.extend(find_mm_faces(map, cls));
    hits.extend(find_fa_faces(cls).hits);
    hits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_map(n: u32) -> PlanarMap {
        let adj = (0..n).map(|i| (i, vec![(i + n - 1) % n, (i + 1) % n])).collect();
        PlanarMap::new(Graph::from_adjacency(adj).unwrap(), (0, 1)).unwrap()
    }

    #[test]
    fn cycle_map_has_no_flags() {
        let m = cycle_map(8);
        let c0 = m.outer_cycle().unwrap();
        let cls = classify(&m, &c0).unwrap();
        assert!(cls.internal.is_empty() && cls.bad.is_empty());
        assert!(cls.willing.is_empty() && cls.content.is_empty());
        assert!(detect_all(&m, &cls).is_empty());
        assert_eq!(find_fa_faces(&cls).n_fa, 0);
    }

    #[test]
    fn wrong_outer_cycle_is_rejected() {
        let m = cycle_map(8);
        let c = CycleRef::new(vec![0, 1, 2]);
        assert_eq!(classify(&m, &c), Err(DetectError::OuterMismatch));
    }

    #[test]
    fn hit_kind_names_round_trip() {
        for k in [
            HitKind::LowDegree,
            HitKind::Tetrad,
            HitKind::MFace,
            HitKind::MmFace,
            HitKind::Fa1,
            HitKind::Fa2,
            HitKind::FbCatalog("fb3".into()),
        ] {
            assert_eq!(HitKind::parse(&k.name()), Some(k));
        }
    }

    #[test]
    fn match_fb_examples() {
        let k4 = Graph::from_edges(0..4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tri = Graph::from_edges(0..3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(match_fb(&k4, &[("tri".into(), tri)]).len(), 1);
        assert!(match_fb(&k4, &[]).is_empty());
        let big = Graph::from_edges(0..5, &[(0, 1)]).unwrap();
        assert!(match_fb(&k4, &[("big".into(), big)]).is_empty());
    }
}
