//! Text formats: `.nbg` edge lists and `.nbmap` rotation maps.
//!
//! ```text
//! nbg 1          nbmap 1
//! n m            n m
//! u v            v: w1 w2 ... wk     (rotation, cyclic order)
//! ...            outer u v
//! ```
//!
//! Tokens are whitespace separated and `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::embed::{EmbedError, PlanarMap};
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Non-empty content lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a number, found `{tok}`")))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    magic: &str,
) -> Result<(usize, usize), ParseError> {
    let (ln, first) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    let toks: Vec<&str> = first.split_whitespace().collect();
    if toks != [magic, "1"] {
        return Err(syntax(ln, format!("expected header `{magic} 1`")));
    }
    let (ln, counts) = lines.next().ok_or_else(|| syntax(ln, "missing `n m` line"))?;
    let toks: Vec<&str> = counts.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(syntax(ln, "expected `n m`"));
    }
    Ok((parse_num(ln, toks[0])?, parse_num(ln, toks[1])?))
}

pub fn parse_nbg(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (n, m) = header(&mut lines, "nbg")?;
    let mut g = Graph::new();
    let mut edges = 0;
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            [v] => g.add_vertex(parse_num(ln, v)?),
            [u, v] => {
                let (u, v): (Vertex, Vertex) = (parse_num(ln, u)?, parse_num(ln, v)?);
                g.add_vertex(u);
                g.add_vertex(v);
                g.add_edge(u, v).map_err(|e| syntax(ln, e.to_string()))?;
                edges += 1;
            }
            _ => return Err(syntax(ln, "expected `u v`")),
        }
    }
    if edges != m {
        return Err(syntax(0, format!("header declares {m} edges, found {edges}")));
    }
    // isolated vertices 0..n that never appear are implied by the count
    if g.vertex_count() < n {
        for v in 0..n as Vertex {
            if g.vertex_count() >= n {
                break;
            }
            if !g.contains(v) {
                g.add_vertex(v);
            }
        }
    }
    if g.vertex_count() != n {
        return Err(syntax(0, format!("header declares {n} vertices, found {}", g.vertex_count())));
    }
    Ok(g)
}

pub fn parse_nbmap(text: &str) -> Result<PlanarMap, ParseError> {
    let mut lines = content_lines(text);
    let (n, m) = header(&mut lines, "nbmap")?;
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    let mut outer = None;
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("outer") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(syntax(ln, "expected `outer u v`"));
            }
            outer = Some((parse_num(ln, toks[0])?, parse_num(ln, toks[1])?));
            continue;
        }
        let (head, tail) = l.split_once(':').ok_or_else(|| syntax(ln, "expected `v: w1 ... wk`"))?;
        let v: Vertex = parse_num(ln, head.trim())?;
        let rot = tail
            .split_whitespace()
            .map(|t| parse_num(ln, t))
            .collect::<Result<Vec<Vertex>, _>>()?;
        if adj.insert(v, rot).is_some() {
            return Err(syntax(ln, format!("rotation for {v} given twice")));
        }
    }
    let outer = outer.ok_or_else(|| syntax(0, "missing `outer u v` line"))?;
    let g = Graph::from_adjacency(adj)?;
    if g.vertex_count() != n || g.edge_count() != m {
        return Err(syntax(
            0,
            format!(
                "header declares {n} vertices / {m} edges, found {} / {}",
                g.vertex_count(),
                g.edge_count()
            ),
        ));
    }
    Ok(PlanarMap::new(g, outer)?)
}

/// Reads either format, keying on the header.
pub fn parse_any_graph(text: &str) -> Result<Graph, ParseError> {
    let first = content_lines(text).next().map(|(_, l)| l).unwrap_or("");
    if first.starts_with("nbmap") {
        Ok(parse_nbmap(text)?.graph().clone())
    } else {
        parse_nbg(text)
    }
}

pub fn write_nbg(g: &Graph) -> String {
    let mut out = format!("nbg 1\n{} {}\n", g.vertex_count(), g.edge_count());
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        writeln!(out, "{v}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_nbmap(map: &PlanarMap) -> String {
    let g = map.graph();
    let mut out = format!("nbmap 1\n{} {}\n", g.vertex_count(), g.edge_count());
    for v in g.vertices() {
        let rot: Vec<String> = map.rotation(v).iter().map(|w| w.to_string()).collect();
        writeln!(out, "{v}: {}", rot.join(" ")).unwrap();
    }
    let (a, b) = map.outer_dart();
    writeln!(out, "outer {a} {b}").unwrap();
    out
}

pub fn write_coloring(c: &Coloring) -> String {
    c.iter().map(|(v, col)| format!("{v} {col}\n")).collect()
}

/// Parses `v=I,v=F,...`.
pub fn parse_precoloring(spec: &str) -> Result<Coloring, ParseError> {
    let mut c = Coloring::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (v, col) = item
            .split_once('=')
            .ok_or_else(|| syntax(1, format!("expected `v=I` or `v=F`, found `{item}`")))?;
        let v: Vertex = parse_num(1, v.trim())?;
        let col = match col.trim() {
            "I" | "i" => Color::I,
            "F" | "f" => Color::F,
            other => return Err(syntax(1, format!("unknown color `{other}`"))),
        };
        c.set(v, col);
    }
    Ok(c)
}

/// Parses a comma-separated vertex list such as `1,2,3`.
pub fn parse_vertex_list(spec: &str) -> Result<Vec<Vertex>, ParseError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|t| parse_num(1, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nbg_round_trip_with_comments() {
        let text = "# a triangle\nnbg 1\n3 3\n0 1\n1 2 # spoke\n2 0\n";
        let g = parse_nbg(text).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(parse_nbg(&write_nbg(&g)).unwrap().edges(), g.edges());
    }

    #[test]
    fn nbg_isolated_vertices_survive() {
        let mut g = Graph::from_edges(0..3, &[(0, 1)]).unwrap();
        g.add_vertex(7);
        let back = parse_nbg(&write_nbg(&g)).unwrap();
        assert_eq!(back.vertices().collect::<Vec<_>>(), vec![0, 1, 2, 7]);
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn nbg_count_mismatch_is_an_error() {
        assert!(parse_nbg("nbg 1\n3 2\n0 1\n").is_err());
        assert!(parse_nbg("nbmap 1\n3 2\n").is_err());
    }

    #[test]
    fn nbmap_round_trip() {
        let text = "nbmap 1\n4 6\n0: 1 2 3\n1: 2 0 3\n2: 3 0 1\n3: 1 0 2\nouter 3 1\n";
        let m = parse_nbmap(text).unwrap();
        assert_eq!(m.faces().len(), 4);
        assert_eq!(write_nbmap(&m), text);
    }

    #[test]
    fn precoloring_syntax() {
        let c = parse_precoloring("1=I, 2=F,3=f").unwrap();
        assert_eq!(c.get(1), Some(Color::I));
        assert_eq!(c.get(3), Some(Color::F));
        assert!(parse_precoloring("1=X").is_err());
        assert_eq!(parse_vertex_list("4,5, 6").unwrap(), vec![4, 5, 6]);
    }
}
