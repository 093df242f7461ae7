//! Finite directed multigraphs and their paths.

mod format;
mod matrix;
pub mod samples;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub use format::{parse_graph, parse_graph_json, parse_graph_text, ParseOptions};
pub use matrix::{fraction_string, RationalMatrix};

use crate::{Error, Result};

/// Index of a vertex in [`Graph::vertices`]. Vertex order is the canonical
/// row/column order of every matrix in this crate.
pub type VertexId = usize;
/// Index of an edge in [`Graph::edges`].
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: VertexId,
    pub dst: VertexId,
}

/// A finite directed multigraph `E = (E^0, E^1, r, s)`.
///
/// Parallel edges and loops are allowed; each edge carries a unique id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph from vertex names and `(id, src, dst)` triples.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (String, VertexId, VertexId)>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        let mut list = Vec::new();
        for (i, (id, src, dst)) in edges.into_iter().enumerate() {
            if src >= vertices.len() {
                return Err(Error::UnknownVertex(format!("#{src}")));
            }
            if dst >= vertices.len() {
                return Err(Error::UnknownVertex(format!("#{dst}")));
            }
            if edge_index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateEdge(id));
            }
            out_edges[src].push(i);
            in_edges[dst].push(i);
            list.push(Edge { id, src, dst });
        }
        Ok(Graph {
            vertices,
            edges: list,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
        })
    }

    /// Builds a graph from named vertices and `(src, dst)` name pairs; edges
    /// get ids `e1, e2, ...` in order.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let idx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut list = Vec::with_capacity(edges.len());
        for (i, (s, d)) in edges.iter().enumerate() {
            let s = *idx.get(s).ok_or_else(|| Error::UnknownVertex(s.to_string()))?;
            let d = *idx.get(d).ok_or_else(|| Error::UnknownVertex(d.to_string()))?;
            list.push((format!("e{}", i + 1), s, d));
        }
        Graph::new(vertices.iter().copied(), list)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, id: &str) -> Result<EdgeId> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edges[e].src
    }

    pub fn dst(&self, e: EdgeId) -> VertexId {
        self.edges[e].dst
    }

    /// Edges leaving `v`, in edge order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    /// Edges entering `v`, in edge order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    /// `n_v = |r^{-1}(v)|`.
    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_edges[v].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v].is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_edges[v].is_empty()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.is_sink(v)).collect()
    }

    pub fn sources(&self) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.is_source(v)).collect()
    }

    /// `A_E(v, w)`: number of edges from `v` to `w`.
    pub fn edge_multiplicity(&self, v: VertexId, w: VertexId) -> usize {
        self.out_edges[v].iter().filter(|&&e| self.edges[e].dst == w).count()
    }

    /// All paths of length exactly `n`, in [`Path`] order.
    pub fn paths_of_length(&self, n: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertex_count()).map(Path::vertex).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &layer {
                for &e in self.out_edges(p.range(self)) {
                    next.push(p.extended(e));
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    /// Paths of length exactly `n` ending at `v`, in [`Path`] order.
    pub fn paths_ending_at(&self, v: VertexId, n: usize) -> Vec<Path> {
        let mut layer = vec![Path::vertex(v)];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &layer {
                for &e in self.in_edges(p.source) {
                    next.push(p.prepended(self, e));
                }
            }
            layer = next;
        }
        layer.sort();
        layer
    }

    /// Boolean reachability in exactly one step, as adjacency sets.
    pub(crate) fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges[v].iter().map(move |&e| self.edges[e].dst)
    }

    /// Vertices reachable from `from` by paths of length `>= 0`.
    pub fn reachable_from(&self, from: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(u) = stack.pop() {
            for w in self.successors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Renders a path using edge ids, e.g. `e1.e2`, or `v` for a vertex.
    pub fn path_string(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertices[p.source].clone()
        } else {
            p.edges
                .iter()
                .map(|&e| self.edges[e].id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Full subgraph on the vertices with `keep[v]`, preserving ids and order.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Graph {
        let mut remap = vec![usize::MAX; self.vertex_count()];
        let mut names = Vec::new();
        for (v, name) in self.vertices.iter().enumerate() {
            if keep[v] {
                remap[v] = names.len();
                names.push(name.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.src] && keep[e.dst])
            .map(|e| (e.id.clone(), remap[e.src], remap[e.dst]))
            .collect::<Vec<_>>();
        Graph::new(names, edges).expect("subgraph of a valid graph is valid")
    }
}

/// A finite path `μ = μ_1 ... μ_n`; the empty path carries its anchor vertex.
///
/// Paths order by length, then edge sequence, then anchor vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            source: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Self {
        Path {
            source: g.src(e),
            edges: vec![e],
        }
    }

    /// Validates composability `r(μ_i) = s(μ_{i+1})`.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Self> {
        let first = *edges
            .first()
            .ok_or_else(|| Error::InvalidPath("empty edge list needs an anchor vertex".into()))?;
        for w in edges.windows(2) {
            if g.dst(w[0]) != g.src(w[1]) {
                return Err(Error::InvalidPath(format!(
                    "{} does not end where {} starts",
                    g.edge(w[0]).id,
                    g.edge(w[1]).id
                )));
            }
        }
        Ok(Path {
            source: g.src(first),
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.source, |&e| g.dst(e))
    }

    /// `μe`; the caller guarantees `s(e) = r(μ)`.
    pub fn extended(&self, e: EdgeId) -> Self {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            source: self.source,
            edges,
        }
    }

    /// `eμ`; the caller guarantees `r(e) = s(μ)`.
    pub fn prepended(&self, g: &Graph, e: EdgeId) -> Self {
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&self.edges);
        Path {
            source: g.src(e),
            edges,
        }
    }

    /// `μν`; the caller guarantees `r(μ) = s(ν)`.
    pub fn concat(&self, other: &Path) -> Self {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path {
            source: self.source,
            edges,
        }
    }

    /// If `self = prefix · rest`, returns `rest` (anchored at `r(prefix)`).
    pub fn strip_prefix(&self, g: &Graph, prefix: &Path) -> Option<Path> {
        if prefix.source != self.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        let rest = self.edges[prefix.edges.len()..].to_vec();
        let anchor = prefix.range(g);
        Some(Path {
            source: anchor,
            edges: rest,
        })
    }

    /// Drops the first edge; the caller guarantees the path is non-empty.
    pub fn tail(&self, g: &Graph) -> Path {
        let first = self.edges[0];
        Path {
            source: g.dst(first),
            edges: self.edges[1..].to_vec(),
        }
    }

    /// The length-`k` prefix, `k <= len`.
    pub fn prefix(&self, k: usize) -> Path {
        Path {
            source: self.source,
            edges: self.edges[..k].to_vec(),
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Graph {
    /// The line-oriented text format; parses back to an equal graph.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(f, "{} -> {}", self.vertices[e.src], self.vertices[e.dst])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_are_composable_and_ordered() {
        let g = Graph::from_names(&["v", "w"], &[("v", "w"), ("w", "v"), ("v", "v")]).unwrap();
        let p2 = g.paths_of_length(2);
        for p in &p2 {
            assert_eq!(g.dst(p.edges()[0]), g.src(p.edges()[1]));
        }
        assert!(p2.windows(2).all(|w| w[0] < w[1]));
        // v->v->v, v->v->w, v->w->v, w->v->v, w->v->w
        assert_eq!(p2.len(), 5);
    }

    #[test]
    fn paths_ending_at_matches_filter() {
        let g = Graph::from_names(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("u", "w"), ("w", "w")])
            .unwrap();
        for n in 0..4 {
            for v in 0..3 {
                let direct = g.paths_ending_at(v, n);
                let filtered: Vec<_> = g
                    .paths_of_length(n)
                    .into_iter()
                    .filter(|p| p.range(&g) == v)
                    .collect();
                assert_eq!(direct, filtered);
            }
        }
    }

    #[test]
    fn rejects_non_composable_path() {
        let g = Graph::from_names(&["u", "v", "w"], &[("u", "v"), ("w", "u")]).unwrap();
        assert!(Path::from_edges(&g, vec![0, 1]).is_err());
        assert!(Path::from_edges(&g, vec![1, 0]).is_ok());
    }

    #[test]
    fn strip_prefix_and_tail() {
        let g = Graph::from_names(&["u", "v", "w"], &[("u", "v"), ("v", "w")]).unwrap();
        let p = Path::from_edges(&g, vec![0, 1]).unwrap();
        let rest = p.strip_prefix(&g, &Path::edge(&g, 0)).unwrap();
        assert_eq!(rest, Path::edge(&g, 1));
        assert_eq!(p.tail(&g), Path::edge(&g, 1));
        assert_eq!(p.strip_prefix(&g, &p).unwrap(), Path::vertex(2));
        assert_eq!(p.strip_prefix(&g, &Path::vertex(0)).unwrap(), p);
        assert!(p.strip_prefix(&g, &Path::vertex(1)).is_none());
    }
}
