//! Graph files: PACE-style `p td <n> <m>` with `u v` edge lines, and DIMACS
//! `p edge <n> <m>` with `e u v` edge lines. Vertices are 1-indexed on disk
//! and `0..n` in memory; `c` lines are comments; duplicate edges are merged.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Graph, Result, Vertex};

/// On-disk graph format.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// `p td n m`, edges as `u v`.
    #[default]
    Td,
    /// `p edge n m`, edges as `e u v`.
    Edge,
}

impl Format {
    fn keyword(self) -> &'static str {
        match self {
            Format::Td => "td",
            Format::Edge => "edge",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "td" | "pace" => Ok(Format::Td),
            "edge" | "dimacs" => Ok(Format::Edge),
            _ => Err(Error::Usage(format!("unknown graph format '{s}' (expected td or edge)"))),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a graph, detecting the format from the header.
pub fn parse_graph(text: &str) -> Result<Graph> {
    parse(text, None)
}

/// Parses a graph that must be in `format`.
pub fn parse_graph_as(text: &str, format: Format) -> Result<Graph> {
    parse(text, Some(format))
}

fn parse(text: &str, expect: Option<Format>) -> Result<Graph> {
    let mut header: Option<(Format, usize, usize)> = None;
    let mut g = Graph::new();
    let mut seen = 0usize;
    let mut last = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(line_no, format!("'{s}' is not a number")));
        let Some((format, n, m)) = header else {
            if fields.len() != 4 || fields[0] != "p" {
                return Err(parse_err(line_no, "expected header 'p td <n> <m>' or 'p edge <n> <m>'"));
            }
            let format: Format = fields[1].parse().map_err(|_| parse_err(line_no, format!("unknown format '{}'", fields[1])))?;
            if expect.is_some_and(|e| e != format) {
                return Err(parse_err(line_no, format!("expected 'p {}' header", expect.unwrap())));
            }
            let (n, m) = (num(fields[2])?, num(fields[3])?);
            if n > u32::MAX as usize / 2 {
                return Err(parse_err(line_no, "vertex count too large"));
            }
            g = Graph::with_vertices(n);
            header = Some((format, n, m));
            continue;
        };
        let ends = match (format, fields.as_slice()) {
            (Format::Td, [u, v]) | (Format::Edge, ["e", u, v]) => (num(u)?, num(v)?),
            (Format::Td, _) => return Err(parse_err(line_no, "expected edge line 'u v'")),
            (Format::Edge, _) => return Err(parse_err(line_no, "expected edge line 'e u v'")),
        };
        for x in [ends.0, ends.1] {
            if x == 0 || x > n {
                return Err(parse_err(line_no, format!("endpoint {x} outside 1..={n}")));
            }
        }
        if ends.0 == ends.1 {
            return Err(parse_err(line_no, format!("self-loop at {}", ends.0)));
        }
        seen += 1;
        if seen > m {
            return Err(parse_err(line_no, format!("more than the {m} declared edges")));
        }
        g.add_edge((ends.0 - 1) as Vertex, (ends.1 - 1) as Vertex)?;
    }
    let Some((_, _, m)) = header else {
        return Err(parse_err(last.max(1), "missing header line"));
    };
    if seen != m {
        return Err(parse_err(last.max(1), format!("header declares {m} edges but {seen} were given")));
    }
    Ok(g)
}

/// Renders `g` with vertices relabelled `1..=n` in ascending id order.
pub fn render_graph(g: &Graph, format: Format) -> String {
    let (h, _) = g.compact();
    let mut out = format!("p {} {} {}\n", format.keyword(), h.n(), h.m());
    let prefix = if format == Format::Edge { "e " } else { "" };
    for (u, v) in h.edges() {
        out.push_str(&format!("{prefix}{} {}\n", u + 1, v + 1));
    }
    out
}
