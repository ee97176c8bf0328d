//! Simple undirected graphs over opaque integer vertex ids.
//!
//! Adjacency sequences are ordered. For a bare [`Graph`] the order carries no
//! meaning; inside a [`crate::embed::PlanarMap`] it is the rotation at each
//! vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("repeated neighbor {1} in adjacency of {0}")]
    RepeatedNeighbor(Vertex, Vertex),
    #[error("asymmetric adjacency: {0} lists {1} but not conversely")]
    Asymmetric(Vertex, Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("cannot identify adjacent vertices {0} and {1}")]
    AdjacentIdentification(Vertex, Vertex),
    #[error("cannot identify a vertex with itself ({0})")]
    SameVertex(Vertex),
    #[error("edge {0}-{1} already exists")]
    EdgeExists(Vertex, Vertex),
    #[error("edge endpoint {0} is deleted")]
    EndpointDeleted(Vertex),
    #[error("not a cycle: {0}")]
    NotACycle(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Graph {
    adj: BTreeMap<Vertex, Vec<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an adjacency map, checking simplicity and symmetry.
    pub fn from_adjacency(adj: BTreeMap<Vertex, Vec<Vertex>>) -> Result<Self, GraphError> {
        for (&v, ns) in &adj {
            let mut seen = BTreeSet::new();
            for &w in ns {
                if w == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if !seen.insert(w) {
                    return Err(GraphError::RepeatedNeighbor(v, w));
                }
                match adj.get(&w) {
                    None => return Err(GraphError::UnknownVertex(w)),
                    Some(back) if !back.contains(&v) => return Err(GraphError::Asymmetric(v, w)),
                    _ => {}
                }
            }
        }
        Ok(Self { adj })
    }

    pub fn from_edges<I>(vertices: I, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for &(u, v) in edges {
            g.add_vertex(u);
            g.add_vertex(v);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(GraphError::UnknownVertex(x));
            }
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u, v));
        }
        self.adj.get_mut(&u).unwrap().push(v);
        self.adj.get_mut(&v).unwrap().push(u);
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(ns) = self.adj.remove(&v) {
            for w in ns {
                if let Some(list) = self.adj.get_mut(&w) {
                    list.retain(|&x| x != v);
                }
            }
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).contains(&v)
    }

    /// Edges as `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, ns) in &self.adj {
            for &v in ns {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn adjacency(&self) -> &BTreeMap<Vertex, Vec<Vertex>> {
        &self.adj
    }

    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, ns)| (v, ns.iter().copied().filter(|w| keep.contains(w)).collect()))
            .collect();
        Graph { adj }
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices().next() else {
            return true;
        };
        self.component_of(start).len() == self.vertex_count()
    }

    pub fn component_of(&self, start: Vertex) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Vertices whose removal disconnects their component.
    pub fn cut_vertices(&self) -> BTreeSet<Vertex> {
        let mut cuts = BTreeSet::new();
        for v in self.vertices() {
            let rest: BTreeSet<Vertex> = self.vertices().filter(|&w| w != v).collect();
            let sub = self.induced(&rest);
            let before = self.component_count();
            let after = sub.component_count();
            if after > before {
                cuts.insert(v);
            }
        }
        cuts
    }

    pub fn component_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for v in self.vertices() {
            if !seen.contains(&v) {
                count += 1;
                seen.extend(self.component_of(v));
            }
        }
        count
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in self.vertices() {
            let mut dist: BTreeMap<Vertex, usize> = BTreeMap::from([(s, 0)]);
            let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let dv = dist[&v];
                for &w in self.neighbors(v) {
                    match dist.get(&w) {
                        None => {
                            dist.insert(w, dv + 1);
                            parent.insert(w, v);
                            queue.push_back(w);
                        }
                        Some(&dw) if parent.get(&v) != Some(&w) => {
                            let len = dv + dw + 1;
                            if best.is_none_or(|b| len < b) {
                                best = Some(len);
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        best
    }

    /// Returns a copy with `u` and `v` merged into `u`.
    ///
    /// The merged vertex keeps id `u` and is adjacent to `N(u) ∪ N(v)`; parallel
    /// edges collapse.
    pub fn identify(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        for x in [u, v] {
            if !self.contains(x) {
                return Err(GraphError::UnknownVertex(x));
            }
        }
        if self.has_edge(u, v) {
            return Err(GraphError::AdjacentIdentification(u, v));
        }
        let mut g = self.clone();
        let moved: Vec<Vertex> = g.neighbors(v).to_vec();
        g.remove_vertex(v);
        for w in moved {
            if !g.has_edge(u, w) {
                g.add_edge(u, w)?;
            }
        }
        Ok(g)
    }

    /// Deletes `deletions`, then adds `added` edges between survivors.
    pub fn edit(
        &self,
        deletions: &BTreeSet<Vertex>,
        added: &[(Vertex, Vertex)],
    ) -> Result<Graph, GraphError> {
        for &d in deletions {
            if !self.contains(d) {
                return Err(GraphError::UnknownVertex(d));
            }
        }
        let mut g = self.clone();
        for &d in deletions {
            g.remove_vertex(d);
        }
        for &(a, b) in added {
            for x in [a, b] {
                if deletions.contains(&x) {
                    return Err(GraphError::EndpointDeleted(x));
                }
                if !g.contains(x) {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            if g.has_edge(a, b) {
                return Err(GraphError::EdgeExists(a, b));
            }
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Applies a vertex relabeling. `map` must be injective on V(G).
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Graph {
        let adj = self
            .adj
            .iter()
            .map(|(v, ns)| (map[v], ns.iter().map(|w| map[w]).collect()))
            .collect();
        Graph { adj }
    }

    /// Checks that `cycle` is a simple cycle of this graph.
    pub fn check_cycle(&self, cycle: &CycleRef) -> Result<(), GraphError> {
        let vs = cycle.vertices();
        if vs.len() < 3 {
            return Err(GraphError::NotACycle(format!("length {} < 3", vs.len())));
        }
        let distinct: BTreeSet<_> = vs.iter().collect();
        if distinct.len() != vs.len() {
            return Err(GraphError::NotACycle("repeated vertex".into()));
        }
        for (a, b) in cycle.edges() {
            if !self.has_edge(a, b) {
                return Err(GraphError::NotACycle(format!("{a} and {b} are not adjacent")));
            }
        }
        Ok(())
    }

    /// Finds some cycle whose length lies in `lo..=hi`.
    ///
    /// Exact depth-limited search: every simple path starting at its
    /// smallest vertex is explored up to `hi` edges.
    pub fn cycle_in_length_range(&self, lo: usize, hi: usize) -> Option<CycleRef> {
        assert!(3 <= lo && lo <= hi, "length range must satisfy 3 <= lo <= hi");
        let mut path = Vec::with_capacity(hi);
        let mut on_path = BTreeSet::new();
        for s in self.vertices() {
            path.clear();
            on_path.clear();
            path.push(s);
            on_path.insert(s);
            if self.extend_cycle(s, lo, hi, &mut path, &mut on_path) {
                return Some(CycleRef::new(path.clone()));
            }
        }
        None
    }

    fn extend_cycle(
        &self,
        s: Vertex,
        lo: usize,
        hi: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut BTreeSet<Vertex>,
    ) -> bool {
        let last = *path.last().unwrap();
        for &w in self.neighbors(last) {
            if w == s && path.len() >= lo && path.len() >= 3 {
                return true;
            }
            if w > s && !on_path.contains(&w) && path.len() < hi {
                path.push(w);
                on_path.insert(w);
                if self.extend_cycle(s, lo, hi, path, on_path) {
                    return true;
                }
                on_path.remove(&w);
                path.pop();
            }
        }
        false
    }

    /// All simple cycles of length at most `hi`, each reported once starting
    /// at its smallest vertex with its smaller-neighbor orientation.
    pub fn cycles_up_to(&self, hi: usize) -> Vec<CycleRef> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut on_path = BTreeSet::new();
        for s in self.vertices() {
            path.clear();
            on_path.clear();
            path.push(s);
            on_path.insert(s);
            self.collect_cycles(s, hi, &mut path, &mut on_path, &mut out);
        }
        out
    }

    fn collect_cycles(
        &self,
        s: Vertex,
        hi: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut BTreeSet<Vertex>,
        out: &mut Vec<CycleRef>,
    ) {
        let last = *path.last().unwrap();
        for &w in self.neighbors(last) {
            if w == s && path.len() >= 3 && path[1] < last {
                out.push(CycleRef::new(path.clone()));
            }
            if w > s && !on_path.contains(&w) && path.len() < hi {
                path.push(w);
                on_path.insert(w);
                self.collect_cycles(s, hi, path, on_path, out);
                on_path.remove(&w);
                path.pop();
            }
        }
    }
}

/// A cycle given by its cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRef {
    vertices: Vec<Vertex>,
}

impl CycleRef {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices.iter().copied().collect()
    }

    /// Consecutive pairs, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges().any(|(a, b)| (a == u && b == v) || (a == v && b == u))
    }
}

/// Finds an injective, adjacency-preserving map from `h` into `g`
/// (subgraph, not necessarily induced).
pub fn subgraph_match(h: &Graph, g: &Graph) -> Option<BTreeMap<Vertex, Vertex>> {
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return None;
    }
    let order = match_order(h);
    let mut mapping: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    if extend_match(h, g, &order, 0, &mut mapping, &mut used) {
        Some(mapping)
    } else {
        None
    }
}

// Connectivity-first ordering: each pattern vertex after the first of its
// component has an already-placed neighbor, so candidates come from a
// neighbor list instead of all of V(g).
fn match_order(h: &Graph) -> Vec<Vertex> {
    let mut order = Vec::with_capacity(h.vertex_count());
    let mut placed = BTreeSet::new();
    while order.len() < h.vertex_count() {
        let start = h
            .vertices()
            .filter(|v| !placed.contains(v))
            .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed.insert(start);
        order.push(start);
        loop {
            let next = h
                .vertices()
                .filter(|v| !placed.contains(v))
                .filter(|&v| h.neighbors(v).iter().any(|w| placed.contains(w)))
                .max_by_key(|&v| {
                    let back = h.neighbors(v).iter().filter(|w| placed.contains(*w)).count();
                    (back, h.degree(v), std::cmp::Reverse(v))
                });
            match next {
                Some(v) => {
                    placed.insert(v);
                    order.push(v);
                }
                None => break,
            }
        }
    }
    order
}

fn extend_match(
    h: &Graph,
    g: &Graph,
    order: &[Vertex],
    depth: usize,
    mapping: &mut BTreeMap<Vertex, Vertex>,
    used: &mut BTreeSet<Vertex>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let hv = order[depth];
    let anchor = h.neighbors(hv).iter().find_map(|w| mapping.get(w).copied());
    let candidates: Vec<Vertex> = match anchor {
        Some(a) => g.neighbors(a).to_vec(),
        None => g.vertices().collect(),
    };
    for gv in candidates {
        if used.contains(&gv) || g.degree(gv) < h.degree(hv) {
            continue;
        }
        let consistent = h
            .neighbors(hv)
            .iter()
            .filter_map(|w| mapping.get(w))
            .all(|&gw| g.has_edge(gv, gw));
        if !consistent {
            continue;
        }
        mapping.insert(hv, gv);
        used.insert(gv);
        if extend_match(h, g, order, depth + 1, mapping, used) {
            return true;
        }
        mapping.remove(&hv);
        used.remove(&gv);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(0..n, &edges).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edges(0..5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn rejects_asymmetric_adjacency() {
        let adj = BTreeMap::from([(0, vec![1]), (1, vec![])]);
        assert_eq!(Graph::from_adjacency(adj), Err(GraphError::Asymmetric(0, 1)));
    }

    #[test]
    fn cycle_range_examples() {
        let c5 = cycle(5);
        let found = c5.cycle_in_length_range(4, 7).unwrap();
        assert_eq!(found.len(), 5);
        c5.check_cycle(&found).unwrap();
        assert!(cycle(8).cycle_in_length_range(4, 7).is_none());
        assert!(bowtie().cycle_in_length_range(4, 7).is_none());
        assert_eq!(bowtie().cycles_up_to(14).len(), 2);
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        assert_eq!(cycle(8).girth(), Some(8));
        assert_eq!(bowtie().girth(), Some(3));
        let path = Graph::from_edges(0..3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
    }

    #[test]
    fn identify_path_endpoints_collapses_parallel_edges() {
        let p = Graph::from_edges(0..3, &[(0, 1), (1, 2)]).unwrap();
        let merged = p.identify(0, 2).unwrap();
        assert_eq!(merged.vertex_count(), 2);
        assert_eq!(merged.edges(), vec![(0, 1)]);
    }

    #[test]
    fn identify_antipodal_c8_gives_two_4_cycles() {
        let merged = cycle(8).identify(0, 4).unwrap();
        assert_eq!(merged.vertex_count(), 7);
        assert_eq!(merged.degree(0), 4);
        let mut ns = merged.neighbors(0).to_vec();
        ns.sort();
        assert_eq!(ns, vec![1, 3, 5, 7]);
        let mut lens: Vec<usize> = merged.cycles_up_to(8).iter().map(CycleRef::len).collect();
        lens.sort();
        assert_eq!(lens, vec![4, 4]);
    }

    #[test]
    fn identify_adjacent_is_rejected() {
        assert_eq!(
            cycle(8).identify(0, 1),
            Err(GraphError::AdjacentIdentification(0, 1))
        );
    }

    #[test]
    fn edit_examples() {
        let p3 = Graph::from_edges(0..3, &[(0, 1), (1, 2)]).unwrap();
        let p2 = p3.edit(&BTreeSet::from([2]), &[]).unwrap();
        assert_eq!(p2.edges(), vec![(0, 1)]);

        let chorded = cycle(8).edit(&BTreeSet::new(), &[(0, 4)]).unwrap();
        assert_eq!(chorded.edge_count(), 9);
        assert_eq!(
            cycle(8).edit(&BTreeSet::new(), &[(0, 1)]),
            Err(GraphError::EdgeExists(0, 1))
        );
        assert_eq!(
            cycle(8).edit(&BTreeSet::from([3]), &[(3, 5)]),
            Err(GraphError::EndpointDeleted(3))
        );
    }

    #[test]
    fn subgraph_match_examples() {
        let k4 = Graph::from_edges(0..4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tri = cycle(3);
        let m = subgraph_match(&tri, &k4).unwrap();
        for (a, b) in tri.edges() {
            assert!(k4.has_edge(m[&a], m[&b]));
        }
        assert!(subgraph_match(&cycle(4), &cycle(8)).is_none());
        let edge = Graph::from_edges(0..2, &[(0, 1)]).unwrap();
        assert!(subgraph_match(&edge, &cycle(5)).is_some());
    }

    #[test]
    fn cut_vertices_of_bowtie() {
        assert_eq!(bowtie().cut_vertices(), BTreeSet::from([0]));
        assert!(cycle(6).cut_vertices().is_empty());
    }
}
