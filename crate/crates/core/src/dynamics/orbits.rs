use serde::Serialize;

use super::point::PathPoint;
use super::quotient::{cycle_orbit, reaches_point, QuotientClass};
use crate::algebra::NodeKind;
use crate::graph::{EdgeId, Graph, Path};
use crate::structure::{loop_exits, reentering_exit, simple_loops};
use crate::Result;

/// The finite orbit of `[μ^∞]` for a loop `μ` without exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicOrbit {
    pub generating_loop: Path,
    pub classes: Vec<QuotientClass>,
}

impl PeriodicOrbit {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// One orbit per simple loop without an exit, in loop order.
pub fn periodic_orbits(g: &Graph) -> Result<Vec<PeriodicOrbit>> {
    simple_loops(g)
        .into_iter()
        .filter(|l| loop_exits(g, l).is_empty())
        .map(|l| {
            Ok(PeriodicOrbit {
                classes: cycle_orbit(g, &l)?,
                generating_loop: l,
            })
        })
        .collect()
}

/// The ancestors of the point's base vertices in the Bratteli diagram, on
/// levels `0..=N`.
///
/// For an infinite point, the vertex node `v` on level `n` is an ancestor iff
/// some path from `v` reaches the base vertex `k` levels down. For a sink
/// path of length `L` ending at `w`, on levels `n ≤ L` the ancestors are the
/// vertex nodes with a path of length `L - n` to `w` (and the tail `w^(L)`
/// itself on level `L`); on levels `n > L` only the tail `w^(L)` remains.
pub fn ancestors_diagram(g: &Graph, p: &PathPoint, levels: usize) -> Vec<Vec<NodeKind>> {
    let mut out = Vec::with_capacity(levels + 1);
    let reach_n = |n: usize| super::quotient::range_of_length(g, n);
    for n in 0..=levels {
        let mut nodes = Vec::new();
        match p.finite_len() {
            Some(len) if n >= len => {
                nodes.push(NodeKind::Tail {
                    vertex: p.vertex_at(g, len).expect("range"),
                    born: len,
                });
            }
            _ => {
                let present = reach_n(n);
                for v in 0..g.vertex_count() {
                    if present[v] && !g.is_sink(v) && reaches_point(g, p, v, n) {
                        nodes.push(NodeKind::Vertex { vertex: v });
                    }
                }
            }
        }
        out.push(nodes);
    }
    out
}

/// Readable names for diagram nodes: `v@n` or `w^(k)@n`.
pub fn node_name(g: &Graph, node: &NodeKind, level: usize) -> String {
    match *node {
        NodeKind::Vertex { vertex } => format!("{}@{level}", g.vertex_name(vertex)),
        NodeKind::Tail { vertex, born } => format!("{}^({born})@{level}", g.vertex_name(vertex)),
    }
}

/// For each simple loop: an exit if it has one, and an exit that leads back
/// to the loop if it has one. These witness conditions (L) and (K) loop by
/// loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopWitness {
    #[serde(rename = "loop")]
    pub loop_path: String,
    pub exit: Option<String>,
    pub reentering_exit: Option<String>,
}

pub fn loop_witnesses(g: &Graph) -> Vec<LoopWitness> {
    let id = |e: EdgeId| g.edge(e).id.clone();
    simple_loops(g)
        .iter()
        .map(|l| LoopWitness {
            loop_path: g.path_string(l),
            exit: loop_exits(g, l).first().map(|&e| id(e)),
            reentering_exit: reentering_exit(g, l).map(id),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;

    #[test]
    fn orbit_examples() {
        let o = periodic_orbits(&rose(1)).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].len(), 1);
        let o = periodic_orbits(&two_cycle()).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].len(), 2);
        assert!(periodic_orbits(&rose(2)).unwrap().is_empty());
    }

    #[test]
    fn ancestors_of_sink_path() {
        let g = single_edge();
        let p = PathPoint::parse(&g, "e1!").unwrap();
        let d = ancestors_diagram(&g, &p, 2);
        assert_eq!(d[0], vec![NodeKind::Vertex { vertex: 0 }]);
        assert_eq!(d[1], vec![NodeKind::Tail { vertex: 1, born: 1 }]);
        assert_eq!(d[2], vec![NodeKind::Tail { vertex: 1, born: 1 }]);
    }

    #[test]
    fn one_vertex_graph_every_node_is_an_ancestor() {
        let g = rose(2);
        let p = PathPoint::parse(&g, "(e1)*").unwrap();
        for level in ancestors_diagram(&g, &p, 3) {
            assert_eq!(level, vec![NodeKind::Vertex { vertex: 0 }]);
        }
    }

    #[test]
    fn witnesses() {
        let w = loop_witnesses(&loop_with_sink_exit());
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].exit.as_deref(), Some("e2"));
        assert_eq!(w[0].reentering_exit, None);
    }
}
