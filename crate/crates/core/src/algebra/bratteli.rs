use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    /// The block `F_n(v)` of a vertex at its own level.
    Vertex { vertex: VertexId },
    /// The frozen block `F_k(w)` of a sink `w`, carried along as `w^(k)`.
    Tail { vertex: VertexId, born: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BratteliNode {
    pub level: usize,
    #[serde(flatten)]
    pub kind: NodeKind,
    pub label: String,
    /// `m`: the block is the full matrix algebra `M_m`, of dimension `m²`.
    pub block_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BratteliEdge {
    /// Level of the upper endpoint.
    pub level: usize,
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

/// Levels `0..=N` of the standard diagram of the core: vertex nodes for
/// non-sinks reached by paths of length `n`, plus sink tails `w^(k)`.
/// Node indices in edges refer to positions in `levels[level]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BratteliDiagram {
    pub levels: Vec<Vec<BratteliNode>>,
    pub edges: Vec<BratteliEdge>,
}

/// `counts[n][v] = #{μ ∈ E^n : r(μ) = v}`.
fn path_counts(g: &Graph, levels: usize) -> Vec<Vec<usize>> {
    let nv = g.vertex_count();
    let mut counts = vec![vec![1usize; nv]];
    for n in 0..levels {
        let mut next = vec![0usize; nv];
        for e in g.edges() {
            next[e.dst] += counts[n][e.src];
        }
        counts.push(next);
    }
    counts
}

pub fn bratteli(g: &Graph, levels: usize) -> Result<BratteliDiagram> {
    if levels == 0 {
        return Err(Error::Precondition("Bratteli diagram needs at least one level".into()));
    }
    let counts = path_counts(g, levels);
    let mut out = BratteliDiagram {
        levels: Vec::new(),
        edges: Vec::new(),
    };
    for n in 0..=levels {
        let mut nodes = Vec::new();
        for v in 0..g.vertex_count() {
            if !g.is_sink(v) && counts[n][v] > 0 {
                nodes.push(BratteliNode {
                    level: n,
                    kind: NodeKind::Vertex { vertex: v },
                    label: format!("{}@{} [dim {}]", g.vertex_name(v), n, counts[n][v].pow(2)),
                    block_size: counts[n][v],
                });
            }
        }
        for w in g.sinks() {
            for k in 0..=n {
                if counts[k][w] > 0 {
                    nodes.push(BratteliNode {
                        level: n,
                        kind: NodeKind::Tail { vertex: w, born: k },
                        label: format!("{}^({})@{} [dim {}]", g.vertex_name(w), k, n, counts[k][w].pow(2)),
                        block_size: counts[k][w],
                    });
                }
            }
        }
        out.levels.push(nodes);
    }
    for n in 0..levels {
        let find = |kind: NodeKind| out.levels[n + 1].iter().position(|x| x.kind == kind);
        let mut edges = Vec::new();
        for (i, node) in out.levels[n].iter().enumerate() {
            match node.kind {
                NodeKind::Vertex { vertex: u } => {
                    for w in 0..g.vertex_count() {
                        let m = g.edge_multiplicity(u, w);
                        if m == 0 {
                            continue;
                        }
                        let target = if g.is_sink(w) {
                            NodeKind::Tail { vertex: w, born: n + 1 }
                        } else {
                            NodeKind::Vertex { vertex: w }
                        };
                        let j = find(target).expect("successor block is nonzero");
                        edges.push(BratteliEdge {
                            level: n,
                            from: i,
                            to: j,
                            multiplicity: m,
                        });
                    }
                }
                NodeKind::Tail { .. } => {
                    let j = find(node.kind).expect("tails persist");
                    edges.push(BratteliEdge {
                        level: n,
                        from: i,
                        to: j,
                        multiplicity: 1,
                    });
                }
            }
        }
        out.edges.extend(edges);
    }
    Ok(out)
}

impl BratteliDiagram {
    /// Blocks at level `n`: the number of simple summands of `F_n`, which is
    /// the rank of `K_0(F_n)`.
    pub fn block_count(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    /// `dim F_n = Σ m²`.
    pub fn dimension(&self, n: usize) -> usize {
        self.levels[n].iter().map(|x| x.block_size * x.block_size).sum()
    }

    /// Graphviz DOT, one rank per level, edges labelled by multiplicity.
    pub fn to_dot(&self) -> String {
        let id = |n: usize, i: usize| format!("n{n}_{i}");
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n");
        for (n, nodes) in self.levels.iter().enumerate() {
            let _ = writeln!(s, "  {{ rank=same;");
            for (i, node) in nodes.iter().enumerate() {
                let _ = writeln!(s, "    {} [label=\"{}\"];", id(n, i), node.label);
            }
            let _ = writeln!(s, "  }}");
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -> {} [label=\"{}\"];",
                id(e.level, e.from),
                id(e.level + 1, e.to),
                e.multiplicity
            );
        }
        s.push_str("}\n");
        s
    }
}
