//! Instance generation: random planar maps without 4- to 7-cycles, the
//! classic small graphs, and a pool of small random graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builder::MapBuilder;
use crate::embed::PlanarMap;
use crate::graph::{CycleRef, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Subdivision,
    TriangleGlue,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub seed: u64,
    pub strategy: Strategy,
    pub density: f64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("target vertex count {0} is below 3")]
    TooSmall(usize),
    #[error("density {0} is outside [0, 1]")]
    BadDensity(String),
    #[error("no map without 4- to 7-cycles after {0} attempts")]
    GenerationFailed(usize),
}

const ATTEMPTS: usize = 64;

/// A random planar map with at most `n` vertices and no cycle of length
/// 4 to 7. Deterministic in `params`.
pub fn generate(params: &GenParams) -> Result<PlanarMap, CorpusError> {
    if params.n < 3 {
        return Err(CorpusError::TooSmall(params.n));
    }
    if !(0.0..=1.0).contains(&params.density) {
        return Err(CorpusError::BadDensity(params.density.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..ATTEMPTS {
        let b = match params.strategy {
            Strategy::Subdivision => subdivided(&mut rng, params.n),
            Strategy::TriangleGlue => glued(&mut rng, params.n, params.density),
        };
        let map = finish(b);
        if map.graph().cycle_in_length_range(4, 7).is_none() {
            return Ok(map);
        }
    }
    Err(CorpusError::GenerationFailed(ATTEMPTS))
}

fn finish(b: MapBuilder) -> PlanarMap {
    let walk = b.faces().into_iter().next().expect("map has an edge");
    b.finish_with_dart(walk[0])
}

/// Grows a skeleton by pendant edges and chords while the skeleton stays
/// within budget after subdividing every edge twice, then subdivides.
fn subdivided(rng: &mut ChaCha8Rng, n: usize) -> MapBuilder {
    if n < 4 {
        return MapBuilder::cycle(3).0;
    }
    let mut b = MapBuilder::edge();
    let total = |b: &MapBuilder| b.vertex_count() + 2 * b.edge_count();
    loop {
        let room = n.saturating_sub(total(&b));
        if room < 2 {
            break;
        }
        let faces = b.faces();
        let walk = faces.choose(rng).unwrap();
        let chord = if rng.gen_bool(0.4) { chord_in(rng, &b, walk) } else { None };
        match chord {
            Some((u, v)) => {
                b.ear_in(walk, u, v, 0);
            }
            None if room >= 3 => {
                let a = walk.choose(rng).unwrap().0;
                b.pendant_in(walk, a);
            }
            None => break,
        }
    }
    b.subdivide_all(2);
    b
}

fn chord_in(rng: &mut ChaCha8Rng, b: &MapBuilder, walk: &[(Vertex, Vertex)]) -> Option<(Vertex, Vertex)> {
    let mut on: Vec<Vertex> = walk.iter().map(|d| d.0).collect();
    on.sort_unstable();
    on.dedup();
    let pairs: Vec<(Vertex, Vertex)> = on
        .iter()
        .flat_map(|&u| on.iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| u < v && !b.has_edge(u, v))
        .collect();
    pairs.choose(rng).copied()
}

fn glued(rng: &mut ChaCha8Rng, n: usize, density: f64) -> MapBuilder {
    let skeleton = (n * 2 / 3).max(3);
    let mut b = subdivided(rng, skeleton);
    let mut hosts: Vec<Vertex> = b.vertices().collect();
    hosts.shuffle(rng);
    for a in hosts {
        if b.vertex_count() + 2 > n {
            break;
        }
        if rng.gen_bool(density) {
            let walk = b.faces().into_iter().filter(|w| w.iter().any(|d| d.0 == a)).collect::<Vec<_>>();
            let walk = walk.choose(rng).unwrap();
            b.pendant_triangle_in(walk, a);
        }
    }
    b
}

/// A simple face cycle of length at most 14 to serve as the outer cycle,
/// preferring a 3-face; the map is re-rooted on it.
pub fn choose_outer(map: &PlanarMap) -> Option<(PlanarMap, CycleRef)> {
    let mut candidates: Vec<_> = map
        .faces()
        .iter()
        .filter(|f| f.degree() <= 14)
        .filter_map(|f| f.as_cycle().map(|c| (f.degree(), f.id, c)))
        .collect();
    candidates.sort_by_key(|&(d, id, _)| (d, id));
    let (_, id, c) = candidates.into_iter().next()?;
    Some((map.with_outer(id), c))
}

/// K4, the Moser spindle, C3, C5, C8 and the bowtie, by name.
pub fn classics() -> Vec<(&'static str, Graph)> {
    let cycle = |n: u32| -> Vec<(Vertex, Vertex)> { (0..n).map(|i| (i, (i + 1) % n)).collect() };
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    // two rhombi 0-1-2-3 and 0-4-5-6 (diagonals 1-2 and 4-5), tips joined
    let moser = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6)];
    let bowtie = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)];
    vec![
        ("k4", Graph::from_edges(0..4, &k4).unwrap()),
        ("moser", Graph::from_edges(0..7, &moser).unwrap()),
        ("c3", Graph::from_edges(0..3, &cycle(3)).unwrap()),
        ("c5", Graph::from_edges(0..5, &cycle(5)).unwrap()),
        ("c8", Graph::from_edges(0..8, &cycle(8)).unwrap()),
        ("bowtie", Graph::from_edges(0..5, &bowtie).unwrap()),
    ]
}

pub fn classic(name: &str) -> Option<Graph> {
    classics().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}

/// `count` random graphs G(n, p) with `1 <= n <= max_n`.
pub fn gnp_pool(count: usize, max_n: u32, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.15..0.85);
            let edges: Vec<(Vertex, Vertex)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            Graph::from_edges(0..n, &edges).unwrap()
        })
        .collect()
}

/// The mixed-strategy corpus of planar maps used by the acceptance runs.
pub fn standard_corpus(count: usize, max_n: usize, seed: u64) -> Vec<(GenParams, PlanarMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let strategy = if i % 2 == 0 { Strategy::Subdivision } else { Strategy::TriangleGlue };
            let params =
                GenParams { n: rng.gen_range(3..=max_n), seed: rng.gen(), strategy, density: rng.gen_range(0.0..=1.0) };
            let map = generate(&params).expect("generation succeeds");
            (params, map)
        })
        .collect()
}
