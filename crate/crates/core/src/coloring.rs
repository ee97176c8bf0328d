//! IF-colorings: an independent set colored `I` and a forest-inducing set
//! colored `F`.
//!
//! The solver is an exact backtracking search. F-vertices are tracked in a
//! union-find with rollback; an F-vertex whose F-neighbors already share a
//! component would close a cycle and is pruned immediately.
//!
//! Superextension uses the same search with every F-vertex of the
//! precolored cycle `C` contracted into one virtual node and the edges of
//! `C` ignored. A cycle through the virtual node is then exactly an all-F
//! path joining two vertices of `C` through vertices off `C` (or an F-F
//! chord of `C`).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CycleRef, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    I,
    F,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::I => Color::F,
            Color::F => Color::I,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::I => "I",
            Color::F => "F",
        })
    }
}

/// A total or partial assignment of vertices to `I`/`F`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring(BTreeMap<Vertex, Color>);

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.0.get(&v).copied()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0.insert(v, c);
    }

    pub fn remove(&mut self, v: Vertex) -> Option<Color> {
        self.0.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    pub fn is_total_on(&self, g: &Graph) -> bool {
        g.vertices().all(|v| self.0.contains_key(&v))
    }

    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> Coloring {
        Coloring(self.0.iter().filter(|(v, _)| keep.contains(v)).map(|(&v, &c)| (v, c)).collect())
    }

    pub fn is(&self, v: Vertex, c: Color) -> bool {
        self.get(v) == Some(c)
    }
}

impl FromIterator<(Vertex, Color)> for Coloring {
    fn from_iter<T: IntoIterator<Item = (Vertex, Color)>>(iter: T) -> Self {
        Coloring(iter.into_iter().collect())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring is not total: vertex {0} is uncolored")]
    PartialColoring(Vertex),
    #[error("partial coloring already violates: {0}")]
    InconsistentPartial(Violation),
    #[error("precoloring of the cycle is invalid: {0}")]
    InvalidPrecoloring(String),
    #[error("graph has {0} vertices; exhaustive counting is limited to 24")]
    TooLarge(usize),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// Two adjacent I-vertices.
    IEdge(Vertex, Vertex),
    /// A cycle of F-vertices.
    FCycle(Vec<Vertex>),
    /// An all-F path joining two vertices of the precolored cycle.
    FPath(Vec<Vertex>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |vs: &[Vertex]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-");
        match self {
            Violation::IEdge(u, v) => write!(f, "adjacent I-vertices {u}-{v}"),
            Violation::FCycle(c) => write!(f, "F-cycle {}", join(c)),
            Violation::FPath(p) => write!(f, "all-F path {} between cycle vertices", join(p)),
        }
    }
}

/// Checks a total coloring. `Ok(None)` means valid.
pub fn validate(g: &Graph, c: &Coloring) -> Result<Option<Violation>, ColoringError> {
    if let Some(v) = g.vertices().find(|&v| c.get(v).is_none()) {
        return Err(ColoringError::PartialColoring(v));
    }
    Ok(find_violation(g, c))
}

/// Violations among colored vertices only; uncolored vertices are ignored.
pub fn find_violation(g: &Graph, c: &Coloring) -> Option<Violation> {
    for (u, v) in g.edges() {
        if c.is(u, Color::I) && c.is(v, Color::I) {
            return Some(Violation::IEdge(u, v));
        }
    }
    f_cycle(g, c).map(Violation::FCycle)
}

/// Some cycle in the F-induced subgraph, by iterative DFS.
fn f_cycle(g: &Graph, c: &Coloring) -> Option<Vec<Vertex>> {
    let is_f = |v: Vertex| c.is(v, Color::F);
    let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
    for root in g.vertices().filter(|&v| is_f(v)) {
        if parent.contains_key(&root) {
            continue;
        }
        parent.insert(root, None);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !is_f(w) || parent[&v] == Some(w) {
                    continue;
                }
                if parent.contains_key(&w) {
                    // back edge v-w: walk both up to the common ancestor
                    let up = |mut x: Vertex| {
                        let mut path = vec![x];
                        while let Some(p) = parent[&x] {
                            path.push(p);
                            x = p;
                        }
                        path
                    };
                    let (pv, pw) = (up(v), up(w));
                    let common = pv.iter().find(|x| pw.contains(x)).copied().unwrap();
                    let mut cycle: Vec<Vertex> =
                        pv.iter().copied().take_while(|&x| x != common).collect();
                    cycle.push(common);
                    let tail: Vec<Vertex> = pw.iter().copied().take_while(|&x| x != common).collect();
                    cycle.extend(tail.into_iter().rev());
                    return Some(cycle);
                }
                parent.insert(w, Some(v));
                stack.push(w);
            }
        }
    }
    None
}

/// Independent check for all-F paths joining two vertices of `cycle` whose
/// internal vertices avoid the cycle. F-F chords count; cycle edges do not.
pub fn violating_f_path(g: &Graph, cycle: &CycleRef, c: &Coloring) -> Option<Vec<Vertex>> {
    let on_c = cycle.vertex_set();
    let is_f = |v: Vertex| c.is(v, Color::F);
    for &s in cycle.vertices().iter().filter(|&&s| is_f(s)) {
        for &t in g.neighbors(s) {
            if on_c.contains(&t) && is_f(t) && !cycle.has_edge(s, t) {
                return Some(vec![s, t]);
            }
        }
        // BFS through off-cycle F-vertices
        let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &w in g.neighbors(s) {
            if !on_c.contains(&w) && is_f(w) && !prev.contains_key(&w) {
                prev.insert(w, s);
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !is_f(w) {
                    continue;
                }
                if on_c.contains(&w) {
                    if w != s {
                        let mut path = vec![w, v];
                        let mut x = v;
                        while let Some(&p) = prev.get(&x) {
                            path.push(p);
                            if p == s {
                                break;
                            }
                            x = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                } else if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(w) {
                    e.insert(v);
                    queue.push_back(w);
                }
            }
        }
    }
    None
}

/// Finds a valid total extension of `partial`, or proves none exists.
pub fn solve(g: &Graph, partial: &Coloring) -> Result<Option<Coloring>, ColoringError> {
    check_partial(g, partial)?;
    let mut search = Search::new(g, partial, None);
    let mut found = None;
    search.run(&mut |c| {
        found = Some(c);
        false
    });
    Ok(found)
}

/// Calls `visit` on every valid total extension of `partial` until it
/// returns `false`. Returns the number visited.
pub fn enumerate(
    g: &Graph,
    partial: &Coloring,
    mut visit: impl FnMut(Coloring) -> bool,
) -> Result<usize, ColoringError> {
    check_partial(g, partial)?;
    let mut search = Search::new(g, partial, None);
    Ok(search.run(&mut visit))
}

fn check_partial(g: &Graph, partial: &Coloring) -> Result<(), ColoringError> {
    if let Some((v, _)) = partial.iter().find(|(v, _)| !g.contains(*v)) {
        return Err(ColoringError::UnknownVertex(v));
    }
    match find_violation(g, partial) {
        Some(v) => Err(ColoringError::InconsistentPartial(v)),
        None => Ok(()),
    }
}

/// Exhaustive count of valid total IF-colorings (at most 24 vertices).
pub fn count_all(g: &Graph) -> Result<u64, ColoringError> {
    let n = g.vertex_count();
    if n > 24 {
        return Err(ColoringError::TooLarge(n));
    }
    let index: HashMap<Vertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, w| m | 1 << index[w]))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut count = 0;
    for i_set in 0..=full {
        if (0..n).any(|v| i_set >> v & 1 == 1 && adj[v] & i_set != 0) {
            continue;
        }
        let f_set = full & !i_set;
        let f_edges: u32 =
            (0..n).filter(|v| f_set >> v & 1 == 1).map(|v| (adj[v] & f_set).count_ones()).sum::<u32>() / 2;
        let mut comps = 0;
        let mut unseen = f_set;
        while unseen != 0 {
            comps += 1;
            let mut frontier = unseen & unseen.wrapping_neg();
            let mut comp = frontier;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = adj[v] & f_set & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            unseen &= !comp;
        }
        if f_edges + comps == f_set.count_ones() {
            count += 1;
        }
    }
    Ok(count)
}

fn check_precoloring(g: &Graph, cycle: &CycleRef, pre: &Coloring) -> Result<Coloring, ColoringError> {
    g.check_cycle(cycle).map_err(|e| ColoringError::InvalidPrecoloring(e.to_string()))?;
    let on_c = cycle.vertex_set();
    if let Some(&v) = cycle.vertices().iter().find(|&&v| pre.get(v).is_none()) {
        return Err(ColoringError::InvalidPrecoloring(format!("cycle vertex {v} is uncolored")));
    }
    let pre = pre.restrict(&on_c);
    if let Some(v) = find_violation(&g.induced(&on_c), &pre) {
        return Err(ColoringError::InvalidPrecoloring(v.to_string()));
    }
    Ok(pre)
}

/// Extends a valid precoloring of `G[V(C)]` to all of `g` with no all-F
/// path joining two vertices of `C` through vertices off `C`.
pub fn superextends(
    g: &Graph,
    cycle: &CycleRef,
    pre: &Coloring,
) -> Result<Option<Coloring>, ColoringError> {
    let pre = check_precoloring(g, cycle, pre)?;
    let mut search = Search::new(g, &pre, Some(cycle));
    if search.dead {
        return Ok(None);
    }
    let mut found = None;
    search.run(&mut |c| {
        found = Some(c);
        false
    });
    Ok(found)
}

/// Every superextension of `pre`, in search order.
pub fn enumerate_superextensions(
    g: &Graph,
    cycle: &CycleRef,
    pre: &Coloring,
    mut visit: impl FnMut(Coloring) -> bool,
) -> Result<usize, ColoringError> {
    let pre = check_precoloring(g, cycle, pre)?;
    let mut search = Search::new(g, &pre, Some(cycle));
    if search.dead {
        return Ok(0);
    }
    Ok(search.run(&mut visit))
}

/// All valid IF-colorings of `G[V(C)]`, in binary order over the cycle's
/// vertex sequence.
pub fn cycle_precolorings(g: &Graph, cycle: &CycleRef) -> Vec<Coloring> {
    let vs = cycle.vertices();
    let induced = g.induced(&cycle.vertex_set());
    let k = vs.len();
    (0u64..1 << k)
        .map(|bits| {
            vs.iter()
                .enumerate()
                .map(|(i, &v)| (v, if bits >> i & 1 == 1 { Color::I } else { Color::F }))
                .collect::<Coloring>()
        })
        .filter(|c| find_violation(&induced, c).is_none())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperextensionReport {
    pub cycle: CycleRef,
    /// One entry per valid precoloring: the extension found, or `None` when
    /// exhaustive search proved there is none.
    pub verdicts: Vec<(Coloring, Option<Coloring>)>,
}

impl SuperextensionReport {
    pub fn all_extend(&self) -> bool {
        self.verdicts.iter().all(|(_, ext)| ext.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Coloring> {
        self.verdicts.iter().filter(|(_, e)| e.is_none()).map(|(p, _)| p)
    }
}

pub fn check_superextendable(g: &Graph, cycle: &CycleRef) -> Result<SuperextensionReport, ColoringError> {
    g.check_cycle(cycle).map_err(|e| ColoringError::InvalidPrecoloring(e.to_string()))?;
    let mut verdicts = Vec::new();
    for pre in cycle_precolorings(g, cycle) {
        let ext = superextends(g, cycle, &pre)?;
        verdicts.push((pre, ext));
    }
    Ok(SuperextensionReport { cycle: cycle.clone(), verdicts })
}

/// Union-find with undo log; union by size, no path compression.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<Option<(usize, usize)>>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n], log: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.log.push(None);
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.log.push(Some((a, b)));
    }

    fn mark(&self) -> usize {
        self.log.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            if let Some((a, b)) = self.log.pop().unwrap() {
                self.parent[b] = b;
                self.size[a] -= self.size[b];
            }
        }
    }
}

const NONE: u8 = 0;
const IC: u8 = 1;
const FC: u8 = 2;

struct Search {
    ids: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    /// Per adjacency entry: whether the edge counts for forest tracking.
    forest_edge: Vec<Vec<bool>>,
    on_cycle: Vec<bool>,
    /// Index of the virtual node holding the cycle's F-vertices, if any.
    hub: Option<usize>,
    color: Vec<u8>,
    colored_nbrs: Vec<usize>,
    dsu: RollbackDsu,
    /// Set when the initial partial coloring is already infeasible.
    dead: bool,
}

impl Search {
    fn new(g: &Graph, partial: &Coloring, cycle: Option<&CycleRef>) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let index: HashMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let adj: Vec<Vec<usize>> =
            ids.iter().map(|&v| g.neighbors(v).iter().map(|w| index[w]).collect()).collect();
        let on_cycle: Vec<bool> =
            ids.iter().map(|v| cycle.is_some_and(|c| c.vertices().contains(v))).collect();
        let forest_edge = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                adj[i]
                    .iter()
                    .map(|&j| !cycle.is_some_and(|c| c.has_edge(v, ids[j])))
                    .collect()
            })
            .collect();
        let hub = cycle.map(|_| n);
        let mut s = Search {
            ids,
            adj,
            forest_edge,
            on_cycle,
            hub,
            color: vec![NONE; n],
            colored_nbrs: vec![0; n],
            dsu: RollbackDsu::new(n + 1),
            dead: false,
        };
        for (v, c) in partial.iter() {
            let i = index[&v];
            let ok = match c {
                Color::I => s.can_i(i),
                Color::F => s.can_f(i),
            };
            if !ok {
                s.dead = true;
                break;
            }
            s.assign(i, if c == Color::I { IC } else { FC });
        }
        s
    }

    fn can_i(&self, v: usize) -> bool {
        self.adj[v].iter().all(|&w| self.color[w] != IC)
    }

    fn f_roots(&self, v: usize) -> Option<Vec<usize>> {
        let mut roots = Vec::with_capacity(4);
        if self.on_cycle[v] {
            if let Some(h) = self.hub {
                roots.push(self.dsu.find(h));
            }
        }
        for (k, &w) in self.adj[v].iter().enumerate() {
            if self.color[w] == FC && self.forest_edge[v][k] {
                let r = self.dsu.find(w);
                if roots.contains(&r) {
                    return None;
                }
                roots.push(r);
            }
        }
        Some(roots)
    }

    fn can_f(&self, v: usize) -> bool {
        self.f_roots(v).is_some()
    }

    fn assign(&mut self, v: usize, c: u8) {
        self.color[v] = c;
        for &w in &self.adj[v] {
            self.colored_nbrs[w] += 1;
        }
        if c == FC {
            for r in self.f_roots_unchecked(v) {
                self.dsu.union(v, r);
            }
        }
    }

    // like f_roots, but called right after coloring v, so v's own root is skipped
    fn f_roots_unchecked(&self, v: usize) -> Vec<usize> {
        let mut roots = Vec::new();
        if self.on_cycle[v] {
            if let Some(h) = self.hub {
                roots.push(h);
            }
        }
        for (k, &w) in self.adj[v].iter().enumerate() {
            if self.color[w] == FC && self.forest_edge[v][k] {
                roots.push(w);
            }
        }
        roots
    }

    fn unassign(&mut self, v: usize) {
        self.color[v] = NONE;
        for &w in &self.adj[v] {
            self.colored_nbrs[w] -= 1;
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.ids.len())
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.colored_nbrs[v], std::cmp::Reverse(self.ids[v])))
    }

    fn neighbors_feasible(&self, v: usize) -> bool {
        self.adj[v]
            .iter()
            .filter(|&&w| self.color[w] == NONE)
            .all(|&w| self.can_i(w) || self.can_f(w))
    }

    fn snapshot(&self) -> Coloring {
        self.ids
            .iter()
            .zip(&self.color)
            .map(|(&v, &c)| (v, if c == IC { Color::I } else { Color::F }))
            .collect()
    }

    /// Depth-first search; returns the number of solutions visited.
    fn run(&mut self, visit: &mut dyn FnMut(Coloring) -> bool) -> usize {
        let mut count = 0;
        if !self.dead {
            self.step(visit, &mut count);
        }
        count
    }

    // returns false when the visitor asked to stop
    fn step(&mut self, visit: &mut dyn FnMut(Coloring) -> bool, count: &mut usize) -> bool {
        let Some(v) = self.pick() else {
            *count += 1;
            return visit(self.snapshot());
        };
        for c in [IC, FC] {
            let ok = if c == IC { self.can_i(v) } else { self.can_f(v) };
            if !ok {
                continue;
            }
            let mark = self.dsu.mark();
            self.assign(v, c);
            let go_on = !self.neighbors_feasible(v) || self.step(visit, count);
            self.unassign(v);
            self.dsu.rollback(mark);
            if !go_on {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(0..n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(0..4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn col(pairs: &[(Vertex, Color)]) -> Coloring {
        pairs.iter().copied().collect()
    }

    use Color::{F, I};

    #[test]
    fn validate_examples() {
        let t = cycle(3);
        assert_eq!(validate(&t, &col(&[(0, I), (1, F), (2, F)])).unwrap(), None);
        assert!(matches!(
            validate(&t, &col(&[(0, F), (1, F), (2, F)])).unwrap(),
            Some(Violation::FCycle(c)) if c.len() == 3
        ));
        assert_eq!(
            validate(&t, &col(&[(0, F), (1, F)])),
            Err(ColoringError::PartialColoring(2))
        );
        for bits in 0..16u32 {
            let c: Coloring = (0..4).map(|v| (v, if bits >> v & 1 == 1 { I } else { F })).collect();
            assert!(validate(&k4(), &c).unwrap().is_some());
        }
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&k4(), &Coloring::new()).unwrap(), None);
        let c8 = cycle(8);
        let c = solve(&c8, &Coloring::new()).unwrap().unwrap();
        assert_eq!(validate(&c8, &c).unwrap(), None);
    }

    #[test]
    fn inconsistent_partial_is_rejected() {
        let t = cycle(3);
        assert!(matches!(
            solve(&t, &col(&[(0, I), (1, I)])),
            Err(ColoringError::InconsistentPartial(Violation::IEdge(0, 1)))
        ));
    }

    #[test]
    fn partial_is_respected() {
        let c8 = cycle(8);
        let c = solve(&c8, &col(&[(3, I), (4, F)])).unwrap().unwrap();
        assert_eq!(c.get(3), Some(I));
        assert_eq!(c.get(4), Some(F));
    }

    #[test]
    fn count_examples() {
        let single = Graph::from_edges([0], &[]).unwrap();
        assert_eq!(count_all(&single).unwrap(), 2);
        let edge = Graph::from_edges(0..2, &[(0, 1)]).unwrap();
        assert_eq!(count_all(&edge).unwrap(), 3);
        assert_eq!(count_all(&cycle(3)).unwrap(), 3);
        assert_eq!(count_all(&k4()).unwrap(), 0);
        let big = cycle(25);
        assert_eq!(count_all(&big), Err(ColoringError::TooLarge(25)));
    }

    #[test]
    fn enumerate_matches_count() {
        for g in [cycle(3), cycle(5), cycle(8), k4()] {
            let n = enumerate(&g, &Coloring::new(), |_| true).unwrap();
            assert_eq!(n as u64, count_all(&g).unwrap());
        }
    }

    #[test]
    fn superextends_examples() {
        let c3 = CycleRef::new(vec![0, 1, 2]);
        let pre = col(&[(0, I), (1, F), (2, F)]);
        assert_eq!(superextends(&cycle(3), &c3, &pre).unwrap(), Some(pre.clone()));

        // apex 3 adjacent to the whole triangle, precolored (F, F, I)
        let pre = col(&[(0, F), (1, F), (2, I)]);
        assert_eq!(superextends(&k4(), &c3, &pre).unwrap(), None);

        let mut pendant = cycle(3);
        pendant.add_vertex(3);
        pendant.add_edge(0, 3).unwrap();
        for pre in cycle_precolorings(&pendant, &c3) {
            let ext = superextends(&pendant, &c3, &pre).unwrap().unwrap();
            assert_eq!(validate(&pendant, &ext).unwrap(), None);
            assert_eq!(violating_f_path(&pendant, &c3, &ext), None);
        }
    }

    #[test]
    fn invalid_precoloring_is_rejected() {
        let c3 = CycleRef::new(vec![0, 1, 2]);
        assert!(matches!(
            superextends(&cycle(3), &c3, &col(&[(0, F), (1, F), (2, F)])),
            Err(ColoringError::InvalidPrecoloring(_))
        ));
        assert!(matches!(
            superextends(&cycle(3), &c3, &col(&[(0, F), (1, F)])),
            Err(ColoringError::InvalidPrecoloring(_))
        ));
    }

    #[test]
    fn chord_between_f_cycle_vertices_violates() {
        // C6 with chord 0-3
        let mut g = cycle(6);
        g.add_edge(0, 3).unwrap();
        let c = CycleRef::new((0..6).collect());
        let pre = col(&[(0, F), (1, I), (2, F), (3, F), (4, I), (5, F)]);
        assert_eq!(violating_f_path(&g, &c, &pre), Some(vec![0, 3]));
        assert_eq!(superextends(&g, &c, &pre).unwrap(), None);
    }

    #[test]
    fn check_superextendable_examples() {
        let c3 = CycleRef::new(vec![0, 1, 2]);
        let r = check_superextendable(&cycle(3), &c3).unwrap();
        assert_eq!(r.verdicts.len(), 3);
        assert!(r.all_extend());

        let r = check_superextendable(&k4(), &c3).unwrap();
        assert_eq!(r.verdicts.len(), 3);
        assert_eq!(r.failures().count(), 3);

        let c8 = CycleRef::new((0..8).collect());
        let r = check_superextendable(&cycle(8), &c8).unwrap();
        assert_eq!(r.verdicts.len(), count_all(&cycle(8)).unwrap() as usize);
        assert!(r.all_extend());
    }

    #[test]
    fn rollback_restores_components() {
        let mut d = RollbackDsu::new(4);
        let m = d.mark();
        d.union(0, 1);
        d.union(1, 2);
        assert_eq!(d.find(0), d.find(2));
        d.rollback(m);
        assert_ne!(d.find(0), d.find(2));
        assert_ne!(d.find(0), d.find(1));
    }
}
