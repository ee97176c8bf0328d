//! Combinatorial planar embeddings given as rotation systems.
//!
//! The successor of dart `(u, v)` on its face is `(v, w)` where `w` follows
//! `u` in the cyclic rotation at `v`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{CycleRef, Graph, GraphError, Vertex};

pub type Dart = (Vertex, Vertex);
pub type FaceId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is not spherical: |V|-|E|+|F| = {0}, expected 2")]
    EulerViolation(i64),
    #[error("outer dart {0}-{1} is not an edge")]
    BadOuterDart(Vertex, Vertex),
    #[error("graph has no edges to embed")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Darts in walk order; dart `i` ends where dart `i + 1` starts.
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Vertex sequence of the boundary walk (tails of the darts).
    pub fn walk(&self) -> Vec<Vertex> {
        self.darts.iter().map(|d| d.0).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.darts.iter().map(|d| d.0).collect()
    }

    /// True when the boundary walk visits no vertex twice.
    pub fn is_simple(&self) -> bool {
        self.vertex_set().len() == self.darts.len()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.darts.iter().any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    pub fn as_cycle(&self) -> Option<CycleRef> {
        (self.is_simple() && self.degree() >= 3).then(|| CycleRef::new(self.walk()))
    }
}

/// A connected simple graph with a spherical rotation system and a
/// designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    graph: Graph,
    faces: Vec<Face>,
    dart_face: BTreeMap<Dart, FaceId>,
    outer: FaceId,
    outer_dart: Dart,
}

impl PlanarMap {
    /// `graph`'s adjacency sequences are read as rotations. `outer` names a
    /// dart on the outer face walk.
    pub fn new(graph: Graph, outer: Dart) -> Result<Self, EmbedError> {
        if graph.edge_count() == 0 {
            return Err(EmbedError::Empty);
        }
        if !graph.is_connected() {
            return Err(EmbedError::Disconnected);
        }
        if !graph.has_edge(outer.0, outer.1) {
            return Err(EmbedError::BadOuterDart(outer.0, outer.1));
        }
        let (faces, dart_face) = trace_faces(&graph);
        let euler = graph.vertex_count() as i64 - graph.edge_count() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(EmbedError::EulerViolation(euler));
        }
        let outer_dart = outer;
        let outer = dart_face[&outer];
        Ok(Self { graph, faces, dart_face, outer, outer_dart })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        self.graph.neighbors(v)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer_dart
    }

    pub fn face_of_dart(&self, d: Dart) -> FaceId {
        self.dart_face[&d]
    }

    /// Same embedding, different outer face.
    pub fn with_outer(&self, face: FaceId) -> PlanarMap {
        PlanarMap { outer: face, outer_dart: self.faces[face].darts[0], ..self.clone() }
    }

    /// Faces incident with `v`, one entry per corner (a face may repeat at a
    /// cut vertex). Corner `i` lies between rotation entries `i` and `i + 1`.
    pub fn corners(&self, v: Vertex) -> Vec<FaceId> {
        let rot = self.rotation(v);
        let k = rot.len();
        // dart (u, v) followed by (v, w) with w after u: the corner between
        // rotation entries i and i+1 is on the face of dart (rot[i], v).
        (0..k).map(|i| self.dart_face[&(rot[i], v)]).collect()
    }

    pub fn incident_faces(&self, v: Vertex) -> BTreeSet<FaceId> {
        self.corners(v).into_iter().collect()
    }

    /// The face on the other side of edge `u`-`v` from the face of dart `(u, v)`.
    pub fn opposite_face(&self, u: Vertex, v: Vertex) -> FaceId {
        self.dart_face[&(v, u)]
    }

    /// True when faces `a` and `b` share an edge.
    pub fn faces_adjacent(&self, a: FaceId, b: FaceId) -> bool {
        self.faces[a].darts.iter().any(|&(u, v)| self.dart_face[&(v, u)] == b)
    }

    pub fn outer_cycle(&self) -> Option<CycleRef> {
        self.faces[self.outer].as_cycle()
    }

    /// Checks that `c` is a cycle and splits the remaining vertices by side.
    ///
    /// Returns `(separating, inside, outside)` where `outside` is the side
    /// holding the outer face.
    pub fn separation(&self, c: &CycleRef) -> Result<Separation, EmbedError> {
        self.graph.check_cycle(c)?;
        let on_cycle = c.vertex_set();
        let vs = c.vertices();
        let side_a = self.flood_faces(self.dart_face[&(vs[0], vs[1])], c);
        let side_b = self.flood_faces(self.dart_face[&(vs[1], vs[0])], c);
        let collect = |side: &BTreeSet<FaceId>| -> BTreeSet<Vertex> {
            side.iter()
                .flat_map(|&f| self.faces[f].vertex_set())
                .filter(|v| !on_cycle.contains(v))
                .collect()
        };
        let (a, b) = (collect(&side_a), collect(&side_b));
        let (inside, outside) = if side_a.contains(&self.outer) { (b, a) } else { (a, b) };
        Ok(Separation {
            separating: !inside.is_empty() && !outside.is_empty(),
            inside,
            outside,
        })
    }

    fn flood_faces(&self, start: FaceId, c: &CycleRef) -> BTreeSet<FaceId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &(u, v) in &self.faces[f].darts {
                if c.has_edge(u, v) {
                    continue;
                }
                let g = self.dart_face[&(v, u)];
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        seen
    }

    /// Applies a vertex relabeling, keeping the embedding.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> PlanarMap {
        let (a, b) = self.outer_dart();
        PlanarMap::new(self.graph.relabel(map), (map[&a], map[&b]))
            .expect("relabeling preserves the embedding")
    }

    /// Rotates each vertex's rotation list by `shift(v)` positions; the
    /// embedding is unchanged, only face-walk starting darts move.
    pub fn rotate_rotations(&self, shift: impl Fn(Vertex) -> usize) -> PlanarMap {
        let adj = self
            .graph
            .adjacency()
            .iter()
            .map(|(&v, rot)| {
                let mut r = rot.clone();
                if !r.is_empty() {
                    let k = shift(v) % r.len();
                    r.rotate_left(k);
                }
                (v, r)
            })
            .collect();
        let graph = Graph::from_adjacency(adj).expect("rotation keeps adjacency");
        PlanarMap::new(graph, self.outer_dart()).expect("rotation keeps the embedding")
    }

    /// The mirror embedding (every rotation reversed). The outer face keeps
    /// its edge set.
    pub fn mirror(&self) -> PlanarMap {
        let adj = self
            .graph
            .adjacency()
            .iter()
            .map(|(&v, rot)| (v, rot.iter().rev().copied().collect()))
            .collect();
        let graph = Graph::from_adjacency(adj).expect("reversal keeps adjacency");
        let (a, b) = self.outer_dart();
        PlanarMap::new(graph, (b, a)).expect("mirror keeps the embedding")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub separating: bool,
    pub inside: BTreeSet<Vertex>,
    pub outside: BTreeSet<Vertex>,
}

/// Traces every dart orbit of the rotation system.
pub fn trace_faces(graph: &Graph) -> (Vec<Face>, BTreeMap<Dart, FaceId>) {
    let mut dart_face: BTreeMap<Dart, FaceId> = BTreeMap::new();
    let mut faces = Vec::new();
    for (u, v) in graph.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]) {
        if dart_face.contains_key(&(u, v)) {
            continue;
        }
        let id = faces.len();
        let mut darts = Vec::new();
        let mut d = (u, v);
        loop {
            dart_face.insert(d, id);
            darts.push(d);
            d = successor(graph, d);
            if d == (u, v) {
                break;
            }
        }
        faces.push(Face { id, darts });
    }
    (faces, dart_face)
}

fn successor(graph: &Graph, (u, v): Dart) -> Dart {
    let rot = graph.neighbors(v);
    let i = rot.iter().position(|&x| x == u).expect("dart endpoints adjacent");
    (v, rot[(i + 1) % rot.len()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot(entries: &[(Vertex, &[Vertex])]) -> Graph {
        Graph::from_adjacency(entries.iter().map(|(v, r)| (*v, r.to_vec())).collect()).unwrap()
    }

    fn cycle_map(n: u32) -> PlanarMap {
        let adj = (0..n).map(|i| (i, vec![(i + n - 1) % n, (i + 1) % n])).collect();
        PlanarMap::new(Graph::from_adjacency(adj).unwrap(), (0, 1)).unwrap()
    }

    // K4 drawn with 0 in the centre of triangle 1-2-3 (counterclockwise).
    fn k4_map() -> PlanarMap {
        let g = rot(&[(0, &[1, 2, 3]), (1, &[2, 0, 3]), (2, &[3, 0, 1]), (3, &[1, 0, 2])]);
        PlanarMap::new(g, (3, 1)).unwrap()
    }

    #[test]
    fn triangle_and_c8_have_two_faces() {
        let t = cycle_map(3);
        assert_eq!(t.faces().len(), 2);
        assert!(t.faces().iter().all(|f| f.degree() == 3));
        let c8 = cycle_map(8);
        assert_eq!(c8.faces().len(), 2);
        assert!(c8.faces().iter().all(|f| f.degree() == 8));
    }

    #[test]
    fn k4_has_four_triangular_faces() {
        let m = k4_map();
        assert_eq!(m.faces().len(), 4);
        assert!(m.faces().iter().all(|f| f.degree() == 3));
        assert_eq!(m.face(m.outer_face()).vertex_set(), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn nonplanar_rotation_is_rejected() {
        // Rotation at 0 flipped: faces no longer close up on the sphere.
        let g = rot(&[(0, &[1, 3, 2]), (1, &[2, 0, 3]), (2, &[3, 0, 1]), (3, &[1, 0, 2])]);
        assert!(matches!(PlanarMap::new(g, (1, 3)), Err(EmbedError::EulerViolation(_))));
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = rot(&[(0, &[1]), (1, &[0]), (2, &[3]), (3, &[2])]);
        assert_eq!(PlanarMap::new(g, (0, 1)), Err(EmbedError::Disconnected));
    }

    #[test]
    fn whole_cycle_and_face_boundaries_do_not_separate() {
        let c8 = cycle_map(8);
        let c0 = c8.outer_cycle().unwrap();
        assert!(!c8.separation(&c0).unwrap().separating);
        let m = k4_map();
        for f in m.faces() {
            assert!(!m.separation(&f.as_cycle().unwrap()).unwrap().separating);
        }
    }

    #[test]
    fn triangle_with_vertex_inside_a_hexagon_separates() {
        // Hexagon 0..5 outside; triangle 6-7-8 joined by spokes 0-6, 2-7, 4-8;
        // vertex 9 sits inside the triangle, joined to 6.
        let g = rot(&[
            (0, &[1, 6, 5]),
            (1, &[2, 0]),
            (2, &[3, 7, 1]),
            (3, &[4, 2]),
            (4, &[5, 8, 3]),
            (5, &[0, 4]),
            (6, &[0, 7, 9, 8]),
            (7, &[2, 8, 6]),
            (8, &[4, 6, 7]),
            (9, &[6]),
        ]);
        let m = PlanarMap::new(g, (0, 1)).unwrap();
        assert_eq!(m.face(m.outer_face()).degree(), 6);
        let tri = CycleRef::new(vec![6, 7, 8]);
        let sep = m.separation(&tri).unwrap();
        assert!(sep.separating);
        assert_eq!(sep.inside, BTreeSet::from([9]));
        assert_eq!(sep.outside, (0..6).collect());
    }

    #[test]
    fn separation_rejects_non_cycles() {
        let m = k4_map();
        assert!(m.separation(&CycleRef::new(vec![0, 1])).is_err());
    }

    #[test]
    fn corners_follow_rotation() {
        let m = k4_map();
        for v in m.graph().vertices() {
            assert_eq!(m.corners(v).len(), m.graph().degree(v));
            for f in m.corners(v) {
                assert!(m.face(f).vertex_set().contains(&v));
            }
        }
    }
}
