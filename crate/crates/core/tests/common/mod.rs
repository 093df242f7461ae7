#![allow(dead_code)]

use grint::Graph;
use proptest::prelude::*;

pub fn graph_from(nv: usize, edges: &[(usize, usize)]) -> Graph {
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let list = edges
        .iter()
        .enumerate()
        .map(|(i, &(s, d))| (format!("e{}", i + 1), s % nv, d % nv));
    Graph::new(names, list).unwrap()
}

/// Multigraphs with `1..=max_v` vertices and at most `max_e` edges.
pub fn arb_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v, prop::collection::vec((0..max_v, 0..max_v), 0..=max_e))
        .prop_map(|(nv, edges)| graph_from(nv, &edges))
}

/// Acyclic multigraphs: every edge goes from a lower to a higher index.
pub fn arb_acyclic_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v, prop::collection::vec((0..max_v, 0..max_v), 0..=max_e)).prop_map(|(nv, edges)| {
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a % nv, b % nv))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        graph_from(nv, &edges)
    })
}

/// The same graph with vertices renumbered by `perm` (vertex `i` becomes
/// `perm[i]`) and edges listed in reverse.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut names = vec![String::new(); g.vertex_count()];
    for (i, name) in g.vertices().iter().enumerate() {
        names[perm[i]] = name.clone();
    }
    let edges: Vec<(String, usize, usize)> = g
        .edges()
        .iter()
        .rev()
        .map(|e| (e.id.clone(), perm[e.src], perm[e.dst]))
        .collect();
    Graph::new(names, edges).unwrap()
}

pub fn arb_graph_with_perm(max_v: usize, max_e: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_v, max_e).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}
