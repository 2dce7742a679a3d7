//! Edge-list and Pajek readers, edge-list writer.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use super::{Graph, GraphBuilder, Simplification};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Edgelist,
    Pajek,
}

impl Format {
    /// Pajek for `.net`/`.paj`, edge list otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("net") | Some("paj") => Format::Pajek,
            _ => Format::Edgelist,
        }
    }
}

/// What the reader discarded while simplifying the input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl LoadReport {
    pub fn dropped(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

impl From<Simplification> for LoadReport {
    fn from(s: Simplification) -> Self {
        LoadReport { self_loops: s.self_loops, duplicates: s.duplicates }
    }
}

pub fn load_graph(path: &Path, format: Format) -> Result<(Graph, LoadReport)> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    match format {
        Format::Edgelist => parse_edgelist(&text),
        Format::Pajek => parse_pajek(&text),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_weight(tok: &str, line: usize) -> Result<f64> {
    let w: f64 = tok.parse().map_err(|_| parse_err(line, format!("invalid weight {tok:?}")))?;
    if !(w.is_finite() && w > 0.0) {
        return Err(parse_err(line, format!("weight must be positive, got {tok}")));
    }
    Ok(w)
}

fn finish(mut b: GraphBuilder) -> Result<(Graph, LoadReport)> {
    if b.dropped.duplicates > 0 {
        // Merged duplicates carry multiplicities.
        b.mark_weighted();
    }
    let (g, dropped) = b.build();
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((g, dropped.into()))
}

/// Parses `u v [w]` lines; `#` and `%` start comments. A line holding a
/// single label declares an isolated node.
pub fn parse_edgelist(text: &str) -> Result<(Graph, LoadReport)> {
    let mut b = GraphBuilder::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split(['#', '%']).next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let w = match toks.len() {
            1 => {
                b.node(toks[0]);
                continue;
            }
            2 => 1.0,
            3 => {
                b.mark_weighted();
                parse_weight(toks[2], line)?
            }
            c => return Err(parse_err(line, format!("expected `u v [w]`, found {c} fields"))),
        };
        let u = b.node(toks[0]);
        let v = b.node(toks[1]);
        b.edge(u, v, w);
    }
    finish(b)
}

enum Section {
    Preamble,
    Vertices,
    Edges,
    EdgesList,
}

/// Splits a Pajek vertex line into id and optional label.
fn split_vertex_line(content: &str, line: usize) -> Result<(usize, Option<String>)> {
    let content = content.trim_start();
    let end = content.find(char::is_whitespace).unwrap_or(content.len());
    let id: usize = content[..end]
        .parse()
        .map_err(|_| parse_err(line, format!("invalid vertex id {:?}", &content[..end])))?;
    let rest = content[end..].trim_start();
    if rest.is_empty() {
        return Ok((id, None));
    }
    if let Some(stripped) = rest.strip_prefix('"') {
        let close = stripped.find('"').ok_or_else(|| parse_err(line, "unterminated quoted label"))?;
        return Ok((id, Some(stripped[..close].to_string())));
    }
    Ok((id, rest.split_whitespace().next().map(str::to_string)))
}

/// Parses the Pajek subset: `*Vertices N` with optional labels, then
/// `*Edges`/`*Arcs` (or their `list` forms). Arcs are symmetrised.
pub fn parse_pajek(text: &str) -> Result<(Graph, LoadReport)> {
    let mut b = GraphBuilder::new();
    let mut section = Section::Preamble;
    let mut declared = 0usize;
    let vertex = |tok: &str, line: usize, declared: usize| -> Result<usize> {
        let id: usize = tok.parse().map_err(|_| parse_err(line, format!("invalid vertex id {tok:?}")))?;
        if id == 0 || id > declared {
            return Err(parse_err(line, format!("vertex {id} outside 1..={declared}")));
        }
        Ok(id - 1)
    };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('%') {
            continue;
        }
        if let Some(head) = content.strip_prefix('*') {
            let mut toks = head.split_whitespace();
            let key = toks.next().unwrap_or("").to_ascii_lowercase();
            section = match key.as_str() {
                "network" => Section::Preamble,
                "vertices" => {
                    if b.node_count() > 0 {
                        return Err(parse_err(line, "repeated *Vertices section"));
                    }
                    let tok = toks.next().ok_or_else(|| parse_err(line, "*Vertices without count"))?;
                    declared = tok.parse().map_err(|_| parse_err(line, format!("invalid vertex count {tok:?}")))?;
                    for i in 1..=declared {
                        b.node(&i.to_string());
                    }
                    Section::Vertices
                }
                "edges" | "arcs" => Section::Edges,
                "edgeslist" | "arcslist" => Section::EdgesList,
                other => return Err(parse_err(line, format!("unsupported section *{other}"))),
            };
            continue;
        }
        match section {
            Section::Preamble => return Err(parse_err(line, "data before *Vertices")),
            Section::Vertices => {
                let (id, label) = split_vertex_line(content, line)?;
                if id == 0 || id > declared {
                    return Err(parse_err(line, format!("vertex {id} outside 1..={declared}")));
                }
                if let Some(label) = label {
                    b.set_label(id - 1, &label).map_err(|e| parse_err(line, e.to_string()))?;
                }
            }
            Section::Edges => {
                let toks: Vec<&str> = content.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(parse_err(line, "expected `u v [w]`"));
                }
                let u = vertex(toks[0], line, declared)?;
                let v = vertex(toks[1], line, declared)?;
                let w = match toks.get(2) {
                    Some(t) => {
                        b.mark_weighted();
                        parse_weight(t, line)?
                    }
                    None => 1.0,
                };
                b.edge(u, v, w);
            }
            Section::EdgesList => {
                let mut toks = content.split_whitespace();
                let u = vertex(toks.next().unwrap_or(""), line, declared)?;
                for t in toks {
                    let v = vertex(t, line, declared)?;
                    b.edge(u, v, 1.0);
                }
            }
        }
    }
    finish(b)
}

/// Writes `u v [w]` lines using node labels, then one line per isolated
/// node. Whitespace inside labels is replaced by `_`.
pub fn write_edgelist<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    let clean = |s: &str| s.split_whitespace().collect::<Vec<_>>().join("_");
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if g.is_weighted() {
            writeln!(out, "{} {} {}", clean(g.label(u)), clean(g.label(v)), g.weight(e))?;
        } else {
            writeln!(out, "{} {}", clean(g.label(u)), clean(g.label(v)))?;
        }
    }
    for i in (0..g.n()).filter(|&i| g.degree(i) == 0) {
        writeln!(out, "{}", clean(g.label(i)))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_nodes_round_trip() {
        let (g, _) = parse_edgelist("a b\nc\nb d\n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 2));
        assert_eq!(g.degree(g.index_of("c").unwrap()), 0);
        let mut buf = Vec::new();
        write_edgelist(&g, &mut buf).unwrap();
        let (h, _) = parse_edgelist(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!((h.n(), h.m()), (4, 2));
        assert!(h.index_of("c").is_some());
    }

    #[test]
    fn simple_edgelist() {
        let (g, rep) = parse_edgelist("a b\nb c").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(rep.dropped(), 0);
        assert_eq!(g.label(2), "c");
    }

    #[test]
    fn edgelist_drops_duplicates_and_loops() {
        let (g, rep) = parse_edgelist("a b\nb a\na a").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(rep.dropped(), 2);
        assert_eq!(g.weight(0), 2.0);
    }

    #[test]
    fn edgelist_comments_and_weights() {
        let (g, _) = parse_edgelist("# header\nx y 2.5 # trailing\n\n% konect\ny z 1\n").unwrap();
        assert!(g.is_weighted());
        assert_eq!(g.m(), 2);
        let e = g.edge_id(g.index_of("x").unwrap(), g.index_of("y").unwrap()).unwrap();
        assert_eq!(g.weight(e), 2.5);
    }

    #[test]
    fn edgelist_errors_carry_line_numbers() {
        match parse_edgelist("a b\nc d e f\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_edgelist("a b -1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_edgelist("# nothing\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn pajek_basic() {
        let text = "*Vertices 3\n1 \"Alice A\"\n2 \"Bob\"\n3 \"Carol\"\n*Edges\n1 2\n2 3\n";
        let (g, _) = parse_pajek(text).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.label(0), "Alice A");
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
    }

    #[test]
    fn pajek_arcs_symmetrised_and_unlabelled() {
        let text = "*Network test\n*Vertices 3\n*Arcs\n1 2 1.0\n2 1 1.0\n*Edgeslist\n3 1 2\n";
        let (g, rep) = parse_pajek(text).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(rep.duplicates, 1);
        assert_eq!(g.label(2), "3");
    }

    #[test]
    fn pajek_rejects_out_of_range() {
        match parse_pajek("*Vertices 2\n*Edges\n1 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn write_then_read_preserves_graph() {
        let (g, _) = parse_edgelist("a b 3\nb c 1\nc a 2\n").unwrap();
        let mut buf = Vec::new();
        write_edgelist(&g, &mut buf).unwrap();
        let (h, _) = parse_edgelist(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(g, h);
    }
}
