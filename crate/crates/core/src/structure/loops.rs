use std::collections::BTreeSet;

use crate::graph::{EdgeId, Graph, Path, VertexId};

/// All simple loops (elementary circuits): closed paths that visit no vertex
/// twice. Each is reported once, rotated to its least edge-index sequence,
/// and the list is sorted by length, then edges.
///
/// Vertex circuits come from Johnson's algorithm on the underlying simple
/// digraph; every choice of parallel edges along a vertex circuit then gives
/// a distinct loop.
pub fn simple_loops(g: &Graph) -> Vec<Path> {
    let mut out = Vec::new();
    for circuit in vertex_circuits(g) {
        expand_edges(g, &circuit, &mut out);
    }
    let mut loops: Vec<Path> = out.into_iter().map(|edges| canonical_rotation(g, edges)).collect();
    loops.sort();
    loops.dedup();
    loops
}

/// Rotates a closed edge sequence to its lexicographically least rotation.
pub fn canonical_rotation(g: &Graph, edges: Vec<EdgeId>) -> Path {
    let n = edges.len();
    let best = (0..n)
        .map(|k| edges[k..].iter().chain(&edges[..k]).copied().collect::<Vec<_>>())
        .min()
        .expect("nonempty loop");
    Path::from_edges(g, best).expect("rotation of a loop is a loop")
}

fn expand_edges(g: &Graph, circuit: &[VertexId], out: &mut Vec<Vec<EdgeId>>) {
    let n = circuit.len();
    let choices: Vec<Vec<EdgeId>> = (0..n)
        .map(|i| {
            let (a, b) = (circuit[i], circuit[(i + 1) % n]);
            g.out_edges(a).iter().copied().filter(|&e| g.dst(e) == b).collect()
        })
        .collect();
    let mut cur = Vec::with_capacity(n);
    fn rec(choices: &[Vec<EdgeId>], cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if cur.len() == choices.len() {
            out.push(cur.clone());
            return;
        }
        for &e in &choices[cur.len()] {
            cur.push(e);
            rec(choices, cur, out);
            cur.pop();
        }
    }
    rec(&choices, &mut cur, out);
}

/// Johnson's elementary-circuit enumeration on vertices. Each circuit is
/// listed once, starting at its least vertex.
fn vertex_circuits(g: &Graph) -> Vec<Vec<VertexId>> {
    let nv = g.vertex_count();
    let succ: Vec<BTreeSet<VertexId>> = (0..nv).map(|v| g.successors(v).collect()).collect();
    let mut circuits = Vec::new();

    struct State<'a> {
        succ: &'a [BTreeSet<VertexId>],
        start: VertexId,
        blocked: Vec<bool>,
        b: Vec<BTreeSet<VertexId>>,
        stack: Vec<VertexId>,
        out: &'a mut Vec<Vec<VertexId>>,
    }

    fn unblock(st: &mut State<'_>, u: VertexId) {
        st.blocked[u] = false;
        let waiting: Vec<VertexId> = std::mem::take(&mut st.b[u]).into_iter().collect();
        for w in waiting {
            if st.blocked[w] {
                unblock(st, w);
            }
        }
    }

    fn circuit(st: &mut State<'_>, v: VertexId) -> bool {
        let mut found = false;
        st.stack.push(v);
        st.blocked[v] = true;
        let next: Vec<VertexId> = st.succ[v].iter().copied().filter(|&w| w >= st.start).collect();
        for &w in &next {
            if w == st.start {
                st.out.push(st.stack.clone());
                found = true;
            } else if !st.blocked[w] && circuit(st, w) {
                found = true;
            }
        }
        if found {
            unblock(st, v);
        } else {
            for &w in &next {
                st.b[w].insert(v);
            }
        }
        st.stack.pop();
        found
    }

    for s in 0..nv {
        let mut st = State {
            succ: &succ,
            start: s,
            blocked: vec![false; nv],
            b: vec![BTreeSet::new(); nv],
            stack: Vec::new(),
            out: &mut circuits,
        };
        circuit(&mut st, s);
    }
    circuits
}

/// An exit of a loop: an edge leaving a loop vertex that is not the loop's
/// own edge there.
pub fn loop_exits(g: &Graph, lp: &Path) -> Vec<EdgeId> {
    lp.edges()
        .iter()
        .flat_map(|&mu| g.out_edges(g.src(mu)).iter().copied().filter(move |&e| e != mu))
        .collect()
}

/// Simple loops with no exit, in [`simple_loops`] order.
pub fn loops_without_exit(g: &Graph) -> Vec<Path> {
    simple_loops(g).into_iter().filter(|l| loop_exits(g, l).is_empty()).collect()
}

/// Every simple loop has an exit.
#[allow(non_snake_case)]
pub fn condition_L(g: &Graph) -> bool {
    loops_without_exit(g).is_empty()
}

/// Every simple loop has an exit whose range can reach back to the loop.
///
/// If a vertex `v` on loop `μ` had no return path other than `μ`, an exit
/// `e` at `u` re-entering the loop at `x` would produce one (`v→u`, `e`,
/// the shortest way to `x`, then `x→v` along `μ`). Conversely, a second
/// first-return path to `v` must leave `μ` by an exit and come back.
#[allow(non_snake_case)]
pub fn condition_K_by_reentry(g: &Graph) -> bool {
    simple_loops(g).iter().all(|l| reentering_exit(g, l).is_some())
}

/// An exit of `lp` from whose range some loop vertex is reachable.
pub fn reentering_exit(g: &Graph, lp: &Path) -> Option<EdgeId> {
    let on_loop: BTreeSet<VertexId> = lp.edges().iter().map(|&e| g.src(e)).collect();
    loop_exits(g, lp).into_iter().find(|&e| {
        let reach = g.reachable_from(g.dst(e));
        on_loop.iter().any(|&v| reach[v])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;

    #[test]
    fn rose_loops() {
        let l = simple_loops(&rose(2));
        assert_eq!(l.len(), 2);
        assert!(l.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn two_cycle_loop() {
        let l = simple_loops(&two_cycle());
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].edges(), &[0, 1]);
    }

    #[test]
    fn acyclic_has_none() {
        assert!(simple_loops(&chain3()).is_empty());
    }

    #[test]
    fn parallel_edges_multiply_loops() {
        let g = Graph::from_names(&["v", "w"], &[("v", "w"), ("v", "w"), ("w", "v")]).unwrap();
        let l = simple_loops(&g);
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].edges(), &[0, 2]);
        assert_eq!(l[1].edges(), &[1, 2]);
    }

    #[test]
    fn canonical_rotation_starts_at_least_edge() {
        let g = Graph::from_names(&["a", "b", "c"], &[("b", "c"), ("c", "a"), ("a", "b")]).unwrap();
        let l = simple_loops(&g);
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].edges(), &[0, 1, 2]);
        assert_eq!(l[0].source(), 1);
    }

    #[test]
    fn dichotomy_examples() {
        assert!(!condition_L(&rose(1)) && !condition_K_by_reentry(&rose(1)));
        assert!(condition_L(&rose(2)) && condition_K_by_reentry(&rose(2)));
        let g = loop_with_sink_exit();
        assert!(condition_L(&g) && !condition_K_by_reentry(&g));
    }
}
