//! Graph text and JSON formats.
//!
//! Text: one statement per line, `vertex <name>` or `<name> -> <name>`, names
//! matching `[A-Za-z0-9_]+`, `#` starts a comment. Repeated edge lines are
//! parallel edges, with ids `e1, e2, ...` in line order.
//!
//! JSON: `{"vertices": [...], "edges": [{"src": .., "dst": ..}, ...]}`; an
//! edge may carry an explicit `"id"`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject edges whose endpoints were not declared first.
    pub strict: bool,
}

/// Detects the format from the first significant character (`{` means JSON).
pub fn parse_graph(text: &str, opts: ParseOptions) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text, opts)
    } else {
        parse_graph_text(text, opts)
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Default)]
struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    declared: HashMap<String, usize>,
    edges: Vec<(String, usize, usize)>,
}

impl Builder {
    fn declare(&mut self, name: &str, line: usize) -> Result<()> {
        if self.declared.insert(name.to_string(), line).is_some() {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        self.intern(name);
        Ok(())
    }

    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    fn endpoint(&mut self, name: &str, strict: bool, line: usize) -> Result<usize> {
        if strict && !self.declared.contains_key(name) {
            return Err(Error::Parse {
                line,
                msg: format!("undeclared vertex `{name}`"),
            });
        }
        Ok(self.intern(name))
    }

    fn finish(self) -> Result<Graph> {
        Graph::new(self.names, self.edges)
    }
}

pub fn parse_graph_text(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut b = Builder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::Parse { line, msg };
        if let Some((lhs, rhs)) = content.split_once("->") {
            let (src, dst) = (lhs.trim(), rhs.trim());
            if !valid_name(src) || !valid_name(dst) {
                return Err(bad(format!("malformed edge `{content}`")));
            }
            let s = b.endpoint(src, opts.strict, line)?;
            let d = b.endpoint(dst, opts.strict, line)?;
            let id = format!("e{}", b.edges.len() + 1);
            b.edges.push((id, s, d));
            continue;
        }
        let mut words = content.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("vertex"), Some(name), None) if valid_name(name) => {
                b.declare(name, line).map_err(|_| bad(format!("vertex `{name}` declared twice")))?;
            }
            _ => return Err(bad(format!("malformed line `{content}`"))),
        }
    }
    b.finish()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<JsonEdge>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEdge {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    src: String,
    dst: String,
}

pub fn parse_graph_json(text: &str, opts: ParseOptions) -> Result<Graph> {
    let parsed: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let mut b = Builder::default();
    for v in &parsed.vertices {
        if !valid_name(v) {
            return Err(Error::Json(format!("invalid vertex name `{v}`")));
        }
        b.declare(v, 0)?;
    }
    for (i, e) in parsed.edges.iter().enumerate() {
        let s = b.endpoint(&e.src, opts.strict, 0).map_err(|_| Error::UnknownVertex(e.src.clone()))?;
        let d = b.endpoint(&e.dst, opts.strict, 0).map_err(|_| Error::UnknownVertex(e.dst.clone()))?;
        let id = e.id.clone().unwrap_or_else(|| format!("e{}", i + 1));
        b.edges.push((id, s, d));
    }
    b.finish()
}

impl Graph {
    /// The text format: every vertex declared, then one line per edge in
    /// edge order. Edge ids are not part of the text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in self.edges() {
            out.push_str(&format!("{} -> {}\n", self.vertex_name(e.src), self.vertex_name(e.dst)));
        }
        out
    }

    /// The JSON graph format; edge ids are included.
    pub fn to_json(&self) -> String {
        let g = JsonGraph {
            vertices: self.vertices().to_vec(),
            edges: self
                .edges()
                .iter()
                .map(|e| JsonEdge {
                    id: Some(e.id.clone()),
                    src: self.vertex_name(e.src).to_string(),
                    dst: self.vertex_name(e.dst).to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&g).expect("graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> Result<Graph> {
        parse_graph_text(s, ParseOptions::default())
    }

    #[test]
    fn single_edge() {
        let g = text("v -> w").unwrap();
        assert_eq!(g.vertices(), &["v", "w"]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn isolated_vertex() {
        let g = text("vertex u").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn repeated_lines_are_parallel_edges() {
        let g = text("v -> w\nv -> w\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edge_multiplicity(0, 1), 2);
        let printed = g.to_string();
        let back = text(&printed).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.edge_multiplicity(0, 1), 2);
    }

    #[test]
    fn comments_and_declaration_order() {
        let g = text("# header\nvertex z\na -> z  # trailing\n\nvertex b\n").unwrap();
        assert_eq!(g.vertices(), &["z", "a", "b"]);
    }

    #[test]
    fn strict_mode_rejects_undeclared() {
        let opts = ParseOptions { strict: true };
        let err = parse_graph_text("vertex v\nv -> w\n", opts).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                msg: "undeclared vertex `w`".into()
            }
        );
        assert!(parse_graph_text("vertex v\nvertex w\nv -> w\n", opts).is_ok());
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert!(matches!(text("v -> w\nv => w"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(text("v -> w-x"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(text("vertex"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(text("vertex a b"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicate_declaration() {
        assert!(matches!(text("vertex v\nvertex v"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = text("vertex u\nv -> w\nw -> v\nw -> v\n").unwrap();
        let json = g.to_json();
        let back = parse_graph(&json, ParseOptions::default()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_without_ids() {
        let g = parse_graph(
            r#"{"vertices": ["a", "b"], "edges": [{"src": "a", "dst": "b"}, {"src": "b", "dst": "b"}]}"#,
            ParseOptions::default(),
        )
        .unwrap();
        assert_eq!(g.edge(1).id, "e2");
        assert!(!g.is_sink(0) && !g.is_sink(1));
    }

    #[test]
    fn json_strict_unknown_vertex() {
        let err = parse_graph(
            r#"{"vertices": ["a"], "edges": [{"src": "a", "dst": "b"}]}"#,
            ParseOptions { strict: true },
        )
        .unwrap_err();
        assert_eq!(err, Error::UnknownVertex("b".into()));
    }
}
