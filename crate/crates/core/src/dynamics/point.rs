use std::fmt;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::{Error, Result};

/// A decidable point of the path space: a finite path ending at a sink, or
/// an eventually periodic infinite path `prefix · cycle^∞`.
///
/// Values are always canonical: a lasso's cycle is primitive (not a power of
/// a shorter cycle) and its prefix is as short as possible, so two lassos
/// denote the same infinite path iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathPoint {
    SinkPath(Path),
    Lasso { prefix: Path, cycle: Path },
}

impl PathPoint {
    /// A finite path whose range is a sink (length 0 allowed).
    pub fn sink_path(g: &Graph, p: Path) -> Result<Self> {
        if !g.is_sink(p.range(g)) {
            return Err(Error::InvalidPath(format!(
                "{} does not end at a sink",
                g.path_string(&p)
            )));
        }
        Ok(PathPoint::SinkPath(p))
    }

    /// `prefix · cycle^∞`, canonicalised. `cycle` must be a nonempty closed
    /// path starting where `prefix` ends.
    pub fn lasso(g: &Graph, prefix: Path, cycle: Path) -> Result<Self> {
        if cycle.is_empty() || cycle.source() != cycle.range(g) {
            return Err(Error::InvalidPath(format!("{} is not a cycle", g.path_string(&cycle))));
        }
        if prefix.range(g) != cycle.source() {
            return Err(Error::InvalidPath(format!(
                "prefix {} does not end where cycle {} starts",
                g.path_string(&prefix),
                g.path_string(&cycle)
            )));
        }
        Ok(canonical_lasso(g, prefix.edges().to_vec(), cycle.edges().to_vec()))
    }

    /// `μ^∞` for a closed path `μ`.
    pub fn periodic(g: &Graph, cycle: &Path) -> Result<Self> {
        Self::lasso(g, Path::vertex(cycle.source()), cycle.clone())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PathPoint::Lasso { .. })
    }

    /// Length of a sink path; `None` for infinite points.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            PathPoint::SinkPath(p) => Some(p.len()),
            PathPoint::Lasso { .. } => None,
        }
    }

    pub fn source(&self) -> VertexId {
        match self {
            PathPoint::SinkPath(p) => p.source(),
            PathPoint::Lasso { prefix, .. } => prefix.source(),
        }
    }

    /// The `i`-th edge (0-based), if the point is long enough.
    pub fn edge_at(&self, i: usize) -> Option<EdgeId> {
        match self {
            PathPoint::SinkPath(p) => p.edges().get(i).copied(),
            PathPoint::Lasso { prefix, cycle } => Some(if i < prefix.len() {
                prefix.edges()[i]
            } else {
                cycle.edges()[(i - prefix.len()) % cycle.len()]
            }),
        }
    }

    /// The base vertex on level `m`: `s(μ)` for `m = 0`, `r(μ_m)` after.
    /// `None` past the end of a sink path.
    pub fn vertex_at(&self, g: &Graph, m: usize) -> Option<VertexId> {
        if m == 0 {
            return Some(self.source());
        }
        self.edge_at(m - 1).map(|e| g.dst(e))
    }

    /// The initial segment of length `k`, if the point is that long.
    pub fn prefix(&self, g: &Graph, k: usize) -> Option<Path> {
        if self.finite_len().is_some_and(|n| k > n) {
            return None;
        }
        let edges: Vec<EdgeId> = (0..k).map(|i| self.edge_at(i).expect("in range")).collect();
        Some(if edges.is_empty() {
            Path::vertex(self.source())
        } else {
            Path::from_edges(g, edges).expect("segment of a path")
        })
    }

    /// `σ_E`: drop the first edge. Undefined on a sink vertex.
    pub fn shift(&self, g: &Graph) -> Result<PathPoint> {
        match self {
            PathPoint::SinkPath(p) if p.is_empty() => Err(Error::Domain(format!(
                "shift is undefined on the sink vertex {}",
                g.vertex_name(p.source())
            ))),
            PathPoint::SinkPath(p) => Ok(PathPoint::SinkPath(p.tail(g))),
            PathPoint::Lasso { prefix, cycle } => {
                if prefix.is_empty() {
                    let mut c = cycle.edges().to_vec();
                    c.rotate_left(1);
                    Ok(canonical_lasso(g, Vec::new(), c))
                } else {
                    let rest = prefix.tail(g);
                    Ok(canonical_lasso(g, rest.edges().to_vec(), cycle.edges().to_vec()))
                }
            }
        }
    }

    /// `e · self` for an edge with `r(e) = s(self)`.
    pub fn prepend(&self, g: &Graph, e: EdgeId) -> Result<PathPoint> {
        if g.dst(e) != self.source() {
            return Err(Error::InvalidPath(format!(
                "edge {} does not end at {}",
                g.edge(e).id,
                g.vertex_name(self.source())
            )));
        }
        Ok(match self {
            PathPoint::SinkPath(p) => PathPoint::SinkPath(p.prepended(g, e)),
            PathPoint::Lasso { prefix, cycle } => {
                let mut edges = vec![e];
                edges.extend_from_slice(prefix.edges());
                canonical_lasso(g, edges, cycle.edges().to_vec())
            }
        })
    }

    /// Parses `e1.e2.(e3.e4)*`, `e1.e2!`, `!v` or `(e1)*`.
    pub fn parse(g: &Graph, text: &str) -> Result<PathPoint> {
        let t = text.trim();
        let bad = || Error::InvalidPath(format!("cannot parse path point `{t}`"));
        if let Some(name) = t.strip_prefix('!') {
            let v = g.vertex_id(name)?;
            return Self::sink_path(g, Path::vertex(v));
        }
        let edge_list = |s: &str| -> Result<Vec<EdgeId>> {
            if s.is_empty() {
                return Ok(Vec::new());
            }
            s.split('.').map(|id| g.edge_id(id.trim())).collect()
        };
        if let Some(body) = t.strip_suffix('!') {
            let edges = edge_list(body)?;
            if edges.is_empty() {
                return Err(bad());
            }
            return Self::sink_path(g, Path::from_edges(g, edges)?);
        }
        let body = t.strip_suffix(")*").ok_or_else(bad)?;
        let open = body.rfind('(').ok_or_else(bad)?;
        let (head, cyc) = (&body[..open], &body[open + 1..]);
        let head = match head.strip_suffix('.') {
            Some(h) => h,
            None if head.is_empty() => head,
            None => return Err(bad()),
        };
        let cycle_edges = edge_list(cyc)?;
        if cycle_edges.is_empty() {
            return Err(bad());
        }
        let cycle = Path::from_edges(g, cycle_edges)?;
        let prefix_edges = edge_list(head)?;
        let prefix = if prefix_edges.is_empty() {
            Path::vertex(cycle.source())
        } else {
            Path::from_edges(g, prefix_edges)?
        };
        Self::lasso(g, prefix, cycle)
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PointDisplay<'a> {
        PointDisplay { g, p: self }
    }
}

pub struct PointDisplay<'a> {
    g: &'a Graph,
    p: &'a PathPoint,
}

impl fmt::Display for PointDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |edges: &[EdgeId]| {
            edges
                .iter()
                .map(|&e| self.g.edge(e).id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        };
        match self.p {
            PathPoint::SinkPath(p) if p.is_empty() => write!(f, "!{}", self.g.vertex_name(p.source())),
            PathPoint::SinkPath(p) => write!(f, "{}!", ids(p.edges())),
            PathPoint::Lasso { prefix, cycle } if prefix.is_empty() => write!(f, "({})*", ids(cycle.edges())),
            PathPoint::Lasso { prefix, cycle } => {
                write!(f, "{}.({})*", ids(prefix.edges()), ids(cycle.edges()))
            }
        }
    }
}

/// Length of the primitive root of a cyclic word.
fn primitive_period(c: &[EdgeId]) -> usize {
    let n = c.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| c[i] == c[i - d]))
        .unwrap_or(n)
}

/// Reduces the cycle to its primitive root, then rolls the prefix back into
/// the cycle while the prefix ends with the cycle's last edge.
pub(crate) fn canonical_lasso(g: &Graph, mut prefix: Vec<EdgeId>, mut cycle: Vec<EdgeId>) -> PathPoint {
    let d = primitive_period(&cycle);
    cycle.truncate(d);
    while let (Some(&last), Some(&cl)) = (prefix.last(), cycle.last()) {
        if last != cl {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    let cycle_path = Path::from_edges(g, cycle).expect("cycle stays closed under rotation");
    let prefix_path = if prefix.is_empty() {
        Path::vertex(cycle_path.source())
    } else {
        Path::from_edges(g, prefix).expect("prefix of a path")
    };
    PathPoint::Lasso {
        prefix: prefix_path,
        cycle: cycle_path,
    }
}

/// The canonical form of a point (identity on values built by this module,
/// which are canonical on construction).
pub fn canonicalize(g: &Graph, p: &PathPoint) -> PathPoint {
    match p {
        PathPoint::SinkPath(_) => p.clone(),
        PathPoint::Lasso { prefix, cycle } => {
            canonical_lasso(g, prefix.edges().to_vec(), cycle.edges().to_vec())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;

    #[test]
    fn parse_and_print_round_trip() {
        let g = loop_with_sink_exit();
        for s in ["(e1)*", "e2!", "e1.e2!", "!w"] {
            let p = PathPoint::parse(&g, s).unwrap();
            assert_eq!(p.display(&g).to_string(), s);
        }
        let g = two_cycle();
        let p = PathPoint::parse(&g, "e1.(e2.e1)*").unwrap();
        // rolls back to (e1.e2)*
        assert_eq!(p.display(&g).to_string(), "(e1.e2)*");
        let p = PathPoint::parse(&g, "(e1.e2.e1.e2)*").unwrap();
        assert_eq!(p.display(&g).to_string(), "(e1.e2)*");
    }

    #[test]
    fn parse_errors() {
        let g = loop_with_sink_exit();
        assert!(PathPoint::parse(&g, "e1!").is_err()); // v is not a sink
        assert!(PathPoint::parse(&g, "!v").is_err());
        assert!(PathPoint::parse(&g, "(e2)*").is_err());
        assert!(PathPoint::parse(&g, "e9!").is_err());
        assert!(PathPoint::parse(&g, "e1").is_err());
    }

    #[test]
    fn shift_examples() {
        let g = single_edge();
        let p = PathPoint::parse(&g, "e1!").unwrap();
        assert_eq!(p.shift(&g).unwrap(), PathPoint::parse(&g, "!w").unwrap());
        assert!(PathPoint::parse(&g, "!w").unwrap().shift(&g).is_err());
        let g = two_cycle();
        let p = PathPoint::parse(&g, "(e1.e2)*").unwrap();
        assert_eq!(p.shift(&g).unwrap().display(&g).to_string(), "(e2.e1)*");
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let g = rose(2);
        let p = PathPoint::parse(&g, "e2.e1.(e1)*").unwrap();
        assert_eq!(p.display(&g).to_string(), "e2.(e1)*");
        assert_eq!(canonicalize(&g, &p), p);
    }
}
