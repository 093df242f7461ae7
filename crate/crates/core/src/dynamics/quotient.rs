use std::collections::{HashSet, VecDeque};

use num_integer::Integer;

use super::point::{canonical_lasso, PathPoint};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::{Error, Result};

/// Invariant of the eventual-equality class of a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKey {
    /// Sink paths of length `len` ending at `sink`.
    Sink { len: usize, sink: VertexId },
    /// Infinite paths whose `i`-th edge is `word[i mod |word|]` for all
    /// large `i`; `word` is a primitive cycle in phase with the indices.
    Periodic { word: Vec<EdgeId> },
}

pub fn class_key(g: &Graph, p: &PathPoint) -> ClassKey {
    match p {
        PathPoint::SinkPath(path) => ClassKey::Sink {
            len: path.len(),
            sink: path.range(g),
        },
        PathPoint::Lasso { prefix, cycle } => {
            let l = cycle.len();
            let word = (0..l).map(|k| cycle.edges()[(k + l - prefix.len() % l) % l]).collect();
            ClassKey::Periodic { word }
        }
    }
}

/// Eventual equality, decided by comparing edges index by index.
///
/// Two lassos with prefix lengths `a`, `b` and periods `p`, `q` are both
/// periodic with period `lcm(p, q)` from index `max(a, b)` on. If they agree
/// from some index on, periodicity transports that agreement back to the
/// window `[max(a, b), max(a, b) + lcm)`, and agreement on that window
/// propagates forward; so the window decides. Sink paths are equivalent iff
/// they have the same length and the same range.
pub fn eventually_equal(g: &Graph, p: &PathPoint, q: &PathPoint) -> bool {
    match (p, q) {
        (PathPoint::SinkPath(a), PathPoint::SinkPath(b)) => a.len() == b.len() && a.range(g) == b.range(g),
        (PathPoint::Lasso { prefix: pa, cycle: ca }, PathPoint::Lasso { prefix: pb, cycle: cb }) => {
            let start = pa.len().max(pb.len());
            let window = ca.len().lcm(&cb.len());
            (start..start + window).all(|i| p.edge_at(i) == q.edge_at(i))
        }
        _ => false,
    }
}

/// An eventual-equality class, held through a canonical representative:
/// the least sink path of the given length into the sink, or `word^∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientClass {
    rep: PathPoint,
}

impl QuotientClass {
    pub fn of(g: &Graph, p: &PathPoint) -> QuotientClass {
        let rep = match class_key(g, p) {
            ClassKey::Sink { len, sink } => {
                let least = g
                    .paths_ending_at(sink, len)
                    .into_iter()
                    .min()
                    .expect("the point itself ends at the sink");
                PathPoint::SinkPath(least)
            }
            ClassKey::Periodic { word } => canonical_lasso(g, Vec::new(), word),
        };
        QuotientClass { rep }
    }

    pub fn representative(&self) -> &PathPoint {
        &self.rep
    }

    pub fn key(&self, g: &Graph) -> ClassKey {
        class_key(g, &self.rep)
    }

    pub fn contains(&self, g: &Graph, p: &PathPoint) -> bool {
        eventually_equal(g, &self.rep, p)
    }

    /// `[σ_E][μ] = [σ_E μ]`.
    pub fn shift(&self, g: &Graph) -> Result<QuotientClass> {
        Ok(QuotientClass::of(g, &self.rep.shift(g)?))
    }
}

/// `[σ_E]^{-1}[μ] = [eμ]`, using the least-index edge into `s(μ)`. Any edge
/// into `s(μ)` gives the same class.
pub fn shift_inverse_class(g: &Graph, c: &QuotientClass) -> Result<QuotientClass> {
    shift_inverse_class_via(g, c, None)
}

/// As [`shift_inverse_class`], through a chosen edge (must end at `s(μ)`).
pub fn shift_inverse_class_via(g: &Graph, c: &QuotientClass, edge: Option<EdgeId>) -> Result<QuotientClass> {
    let s = c.rep.source();
    if g.is_source(s) {
        return Err(Error::Domain(format!(
            "class starts at the source {}; outside the range of the shift",
            g.vertex_name(s)
        )));
    }
    let e = edge.unwrap_or_else(|| *g.in_edges(s).iter().min().expect("not a source"));
    Ok(QuotientClass::of(g, &c.rep.prepend(g, e)?))
}

/// Membership of a class in the basic open set `U_{v,n}`: some path `η` of
/// some length `k` runs from `v` to the base vertex of the point on level
/// `n + k`.
///
/// A witness of length `k` extends by the point's next edge to a witness of
/// length `k + 1`, so membership does not depend on the representative. The
/// search runs over states (vertex of `η`, level of the point), with levels
/// past a lasso's prefix reduced modulo its period; the state space is finite
/// and the breadth-first search is exact. For a sink path of length `L` the
/// level may not pass `L`.
pub fn in_basis_set(g: &Graph, c: &QuotientClass, v: VertexId, n: usize) -> Result<bool> {
    if !range_of_length(g, n)[v] {
        return Err(Error::Precondition(format!(
            "{} is not the range of a path of length {n}",
            g.vertex_name(v)
        )));
    }
    Ok(reaches_point(g, c.representative(), v, n))
}

/// `v ∈ r(E^n)` as a mask.
pub fn range_of_length(g: &Graph, n: usize) -> Vec<bool> {
    let mut cur = vec![true; g.vertex_count()];
    for _ in 0..n {
        let mut next = vec![false; g.vertex_count()];
        for e in g.edges() {
            if cur[e.src] {
                next[e.dst] = true;
            }
        }
        cur = next;
    }
    cur
}

/// Whether some path from `v` of length `k ≥ 0` ends at the point's base
/// vertex on level `n + k`.
pub(crate) fn reaches_point(g: &Graph, p: &PathPoint, v: VertexId, n: usize) -> bool {
    let reduce = |m: usize| -> Option<usize> {
        match p {
            PathPoint::SinkPath(path) => (m <= path.len()).then_some(m),
            PathPoint::Lasso { prefix, cycle } => Some(if m < prefix.len() {
                m
            } else {
                prefix.len() + (m - prefix.len()) % cycle.len()
            }),
        }
    };
    let Some(start) = reduce(n) else {
        return false;
    };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(v, start)]);
    seen.insert((v, start));
    while let Some((x, m)) = queue.pop_front() {
        if p.vertex_at(g, m) == Some(x) {
            return true;
        }
        let Some(next) = reduce(m + 1) else {
            continue;
        };
        for &e in g.out_edges(x) {
            let state = (g.dst(e), next);
            if seen.insert(state) {
                queue.push_back(state);
            }
        }
    }
    false
}

/// Sink paths of length `n` into `sink`, as points.
pub fn sink_points(g: &Graph, sink: VertexId, n: usize) -> Vec<PathPoint> {
    g.paths_ending_at(sink, n).into_iter().map(PathPoint::SinkPath).collect()
}

/// The orbit `[μ^∞], [σ μ^∞], …` of a closed path.
pub fn cycle_orbit(g: &Graph, cycle: &Path) -> Result<Vec<QuotientClass>> {
    let start = QuotientClass::of(g, &PathPoint::periodic(g, cycle)?);
    let mut orbit = vec![start.clone()];
    let mut cur = start.shift(g)?;
    while cur != start {
        orbit.push(cur.clone());
        cur = cur.shift(g)?;
    }
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;

    fn pt(g: &Graph, s: &str) -> PathPoint {
        PathPoint::parse(g, s).unwrap()
    }

    #[test]
    fn eventual_equality_examples() {
        let g = two_cycle();
        let a = pt(&g, "(e1.e2)*");
        let b = pt(&g, "(e2.e1)*");
        assert!(eventually_equal(&g, &a, &a));
        assert!(!eventually_equal(&g, &a, &b));
        let g = chain_with_extra_source();
        // u->v->w and v->w have different lengths; x->w and v->w agree.
        let uvw = pt(&g, "e1.e2!");
        let vw = pt(&g, "e2!");
        let xw = pt(&g, "e3!");
        assert!(!eventually_equal(&g, &uvw, &vw));
        assert!(eventually_equal(&g, &vw, &xw));
    }

    #[test]
    fn keys_agree_with_window_comparison() {
        let g = rose(2);
        let pts = ["(e1)*", "e2.(e1)*", "(e1.e2)*", "e2.(e1.e2)*", "e1.(e2.e1)*", "(e2)*", "e1.e1.(e2)*"];
        for a in pts {
            for b in pts {
                let (p, q) = (pt(&g, a), pt(&g, b));
                assert_eq!(eventually_equal(&g, &p, &q), class_key(&g, &p) == class_key(&g, &q), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn inverse_shift_on_two_cycle() {
        let g = two_cycle();
        let c = QuotientClass::of(&g, &pt(&g, "(e2.e1)*"));
        let inv = shift_inverse_class(&g, &c).unwrap();
        assert!(inv.contains(&g, &pt(&g, "(e1.e2)*")));
        assert_eq!(inv.shift(&g).unwrap(), c);
    }

    #[test]
    fn inverse_shift_rejects_source_start() {
        let g = single_edge();
        let c = QuotientClass::of(&g, &pt(&g, "e1!"));
        assert!(shift_inverse_class(&g, &c).is_err());
    }

    #[test]
    fn basis_set_examples() {
        let g = loop_with_sink_exit();
        let (v, w) = (0, 1);
        let lp = QuotientClass::of(&g, &pt(&g, "(e1)*"));
        assert!(in_basis_set(&g, &lp, v, 0).unwrap());
        // w reaches nothing, so it is never an ancestor of the loop.
        assert!(!in_basis_set(&g, &lp, w, 1).unwrap());
        let sp = QuotientClass::of(&g, &pt(&g, "e2!"));
        assert!(in_basis_set(&g, &sp, w, 1).unwrap());
        assert!(in_basis_set(&g, &sp, v, 0).unwrap());
        assert!(!in_basis_set(&g, &sp, v, 1).unwrap());
    }

    #[test]
    fn orbits() {
        let g = two_cycle();
        let o = cycle_orbit(&g, &Path::from_edges(&g, vec![0, 1]).unwrap()).unwrap();
        assert_eq!(o.len(), 2);
        let g = rose(1);
        let o = cycle_orbit(&g, &Path::edge(&g, 0)).unwrap();
        assert_eq!(o.len(), 1);
    }
}
