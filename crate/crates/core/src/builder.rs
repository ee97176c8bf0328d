//! Incremental construction of planar maps by local rotation edits.
//!
//! Every operation inserts new edges into a single face, so the rotation
//! system stays a sphere embedding throughout.

use std::collections::{BTreeMap, BTreeSet};

use crate::embed::{Dart, PlanarMap};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Default)]
pub struct MapBuilder {
    rot: BTreeMap<Vertex, Vec<Vertex>>,
    next: Vertex,
}

impl MapBuilder {
    /// A cycle `0, 1, ..., n-1`.
    pub fn cycle(n: usize) -> (Self, Vec<Vertex>) {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let n32 = n as Vertex;
        let rot = (0..n32).map(|i| (i, vec![(i + n32 - 1) % n32, (i + 1) % n32])).collect();
        (Self { rot, next: n32 }, (0..n32).collect())
    }

    /// A single edge `0 - 1`.
    pub fn edge() -> Self {
        let rot = BTreeMap::from([(0, vec![1]), (1, vec![0])]);
        Self { rot, next: 2 }
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rot.get(&u).is_some_and(|r| r.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rot.keys().copied()
    }

    fn fresh(&mut self) -> Vertex {
        let v = self.next;
        self.next += 1;
        v
    }

    fn succ(&self, (u, v): Dart) -> Dart {
        let r = &self.rot[&v];
        let i = r.iter().position(|&w| w == u).expect("dart in rotation");
        (v, r[(i + 1) % r.len()])
    }

    /// Dart walks of all faces.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (&u, r) in &self.rot {
            for &v in r {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut d = (u, v);
                while seen.insert(d) {
                    walk.push(d);
                    d = self.succ(d);
                }
                out.push(walk);
            }
        }
        out
    }

    /// The unique face whose boundary contains every vertex of `must`.
    pub fn face_with(&self, must: &[Vertex]) -> Vec<Dart> {
        let mut hits: Vec<Vec<Dart>> = self
            .faces()
            .into_iter()
            .filter(|w| must.iter().all(|m| w.iter().any(|&(a, _)| a == *m)))
            .collect();
        assert_eq!(hits.len(), 1, "expected exactly one face through {must:?}");
        hits.pop().unwrap()
    }

    /// Predecessor of `a` on the face walk (first occurrence).
    fn pred_in(walk: &[Dart], a: Vertex) -> Vertex {
        walk.iter().find(|&&(_, b)| b == a).expect("vertex on face").0
    }

    fn insert_after(&mut self, at: Vertex, after: Vertex, new: Vertex) {
        let r = self.rot.get_mut(&at).unwrap();
        let i = r.iter().position(|&w| w == after).unwrap();
        r.insert(i + 1, new);
    }

    /// Adds a path `a, w1, ..., wk, b` through the face given by its walk.
    /// Returns the new inner vertices in order from `a` to `b`.
    pub fn ear_in(&mut self, walk: &[Dart], a: Vertex, b: Vertex, k: usize) -> Vec<Vertex> {
        assert_ne!(a, b);
        assert!(k > 0 || !self.has_edge(a, b), "edge {a}-{b} already present");
        let (pa, pb) = (Self::pred_in(walk, a), Self::pred_in(walk, b));
        let inner: Vec<Vertex> = (0..k).map(|_| self.fresh()).collect();
        let mut path = vec![a];
        path.extend(&inner);
        path.push(b);
        self.insert_after(a, pa, path[1]);
        self.insert_after(b, pb, path[path.len() - 2]);
        for i in 1..path.len() - 1 {
            self.rot.insert(path[i], vec![path[i - 1], path[i + 1]]);
        }
        inner
    }

    /// [`MapBuilder::ear_in`] on the face through `a`, `b` and `hint`.
    pub fn ear(&mut self, a: Vertex, b: Vertex, k: usize, hint: &[Vertex]) -> Vec<Vertex> {
        let mut must = vec![a, b];
        must.extend(hint);
        let walk = self.face_with(&must);
        self.ear_in(&walk, a, b, k)
    }

    /// Attaches a degree-1 vertex at `a` inside the given face.
    pub fn pendant_in(&mut self, walk: &[Dart], a: Vertex) -> Vertex {
        let pa = Self::pred_in(walk, a);
        let x = self.fresh();
        self.insert_after(a, pa, x);
        self.rot.insert(x, vec![a]);
        x
    }

    /// Attaches a triangle `a, x, y` sharing only `a` with the map.
    pub fn pendant_triangle_in(&mut self, walk: &[Dart], a: Vertex) -> (Vertex, Vertex) {
        let x = self.pendant_in(walk, a);
        let w = self.face_with(&[x]);
        let y = self.ear_in(&w, x, a, 1)[0];
        (x, y)
    }

    pub fn pendant_triangle(&mut self, a: Vertex, hint: &[Vertex]) -> (Vertex, Vertex) {
        let mut must = vec![a];
        must.extend(hint);
        let walk = self.face_with(&must);
        self.pendant_triangle_in(&walk, a)
    }

    /// Replaces every edge by a path with `k` inner vertices.
    pub fn subdivide_all(&mut self, k: usize) {
        let edges: Vec<(Vertex, Vertex)> = self
            .rot
            .iter()
            .flat_map(|(&u, r)| r.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        for (u, v) in edges {
            let inner: Vec<Vertex> = (0..k).map(|_| self.fresh()).collect();
            let mut path = vec![u];
            path.extend(&inner);
            path.push(v);
            let ru = self.rot.get_mut(&u).unwrap();
            let i = ru.iter().position(|&w| w == v).unwrap();
            ru[i] = path[1];
            let rv = self.rot.get_mut(&v).unwrap();
            let i = rv.iter().position(|&w| w == u).unwrap();
            rv[i] = path[path.len() - 2];
            for i in 1..path.len() - 1 {
                self.rot.insert(path[i], vec![path[i - 1], path[i + 1]]);
            }
        }
    }

    /// Finishes with the outer face given by one of its darts.
    pub fn finish_with_dart(self, outer: Dart) -> PlanarMap {
        let g = Graph::from_adjacency(self.rot).expect("builder keeps the graph simple");
        PlanarMap::new(g, outer).expect("builder keeps a sphere embedding")
    }

    /// Finishes with the outer face being the face through `outer`.
    pub fn finish(self, outer: &[Vertex]) -> PlanarMap {
        let d = self.face_with(outer)[0];
        self.finish_with_dart(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ear_splits_a_face() {
        let (mut b, c) = MapBuilder::cycle(8);
        let face = b.faces().into_iter().find(|w| w.contains(&(0, 1))).unwrap();
        let inner = b.ear_in(&face, c[0], c[4], 2);
        assert_eq!(inner.len(), 2);
        let degs: BTreeSet<usize> = b.faces().iter().map(Vec::len).collect();
        assert_eq!(degs, BTreeSet::from([7, 8]));
        let m = b.finish_with_dart((1, 0));
        assert_eq!(m.faces().len(), 3);
    }

    #[test]
    fn pendant_triangle_adds_one_triangle() {
        let (mut b, c) = MapBuilder::cycle(9);
        let face = b.faces().into_iter().find(|w| w.contains(&(0, 1))).unwrap();
        b.pendant_triangle_in(&face, c[0]);
        let m = b.finish_with_dart((1, 0));
        assert_eq!(m.graph().vertex_count(), 11);
        assert_eq!(m.faces().iter().filter(|f| f.degree() == 3).count(), 1);
        assert!(m.graph().cycle_in_length_range(4, 7).is_none());
    }

    #[test]
    fn subdivision_keeps_euler() {
        let (mut b, _) = MapBuilder::cycle(3);
        b.subdivide_all(2);
        let m = b.finish_with_dart((0, 3));
        assert_eq!(m.graph().vertex_count(), 9);
        assert_eq!(m.graph().girth(), Some(9));
    }
}
