//! Named sample graphs and a seeded random generator, shared by tests,
//! benches and the acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;

/// One vertex with `n` loops; `C*(E)` is the Cuntz algebra `O_n` for `n >= 2`.
pub fn rose(n: usize) -> Graph {
    let edges = vec![("v", "v"); n];
    Graph::from_names(&["v"], &edges).unwrap()
}

/// `v -> w`, `w -> v`.
pub fn two_cycle() -> Graph {
    Graph::from_names(&["v", "w"], &[("v", "w"), ("w", "v")]).unwrap()
}

/// `v -> w` with `w` a sink.
pub fn single_edge() -> Graph {
    Graph::from_names(&["v", "w"], &[("v", "w")]).unwrap()
}

/// `u -> v -> w`.
pub fn chain3() -> Graph {
    Graph::from_names(&["u", "v", "w"], &[("u", "v"), ("v", "w")]).unwrap()
}

/// `u -> v -> w` plus a second source `x -> w`, so `n_w = 2`.
pub fn chain_with_extra_source() -> Graph {
    Graph::from_names(&["u", "v", "w", "x"], &[("u", "v"), ("v", "w"), ("x", "w")]).unwrap()
}

/// A loop at `v` with an exit `v -> w` into the sink `w`.
pub fn loop_with_sink_exit() -> Graph {
    Graph::from_names(&["v", "w"], &[("v", "v"), ("v", "w")]).unwrap()
}

/// A single vertex and no edges; `C*(E) = C`.
pub fn point() -> Graph {
    Graph::from_names(&["v"], &[]).unwrap()
}

/// Two chains feeding the sink `v0`: `v_n -> ... -> v_1 -> v0` of length `n`
/// and `w_{n-1} -> ... -> w_1 -> v0` of length `n - 1`. Requires `n >= 2`.
pub fn two_chain_family(n: usize) -> Graph {
    assert!(n >= 2, "family parameter must be at least 2");
    let mut names: Vec<String> = (0..=n).map(|k| format!("v{k}")).collect();
    names.extend((1..n).map(|k| format!("w{k}")));
    let mut edges: Vec<(String, String)> = Vec::new();
    edges.push(("w1".into(), "v0".into()));
    edges.push(("v1".into(), "v0".into()));
    for k in 1..n - 1 {
        edges.push((format!("w{}", k + 1), format!("w{k}")));
    }
    for k in 1..n {
        edges.push((format!("v{}", k + 1), format!("v{k}")));
    }
    let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
    let edges_ref: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Graph::from_names(&names_ref, &edges_ref).unwrap()
}

/// If `g` is isomorphic to [`two_chain_family`]`(n)`, returns `n`.
///
/// The family is recognised structurally: a unique sink with exactly two
/// in-edges, every other vertex with out-degree one and in-degree at most
/// one, and the two in-trees being chains of lengths `n` and `n - 1`.
pub fn two_chain_parameter(g: &Graph) -> Option<usize> {
    let sinks = g.sinks();
    if sinks.len() != 1 {
        return None;
    }
    let root = sinks[0];
    if g.in_degree(root) != 2 {
        return None;
    }
    for v in 0..g.vertex_count() {
        if v != root && (g.out_degree(v) != 1 || g.in_degree(v) > 1) {
            return None;
        }
    }
    let mut lengths = Vec::new();
    let mut seen = 1;
    for &e in g.in_edges(root) {
        let mut cur = g.src(e);
        if cur == root {
            return None;
        }
        let mut len = 1;
        seen += 1;
        while let Some(&f) = g.in_edges(cur).first() {
            cur = g.src(f);
            if cur == root || len > g.vertex_count() {
                return None;
            }
            len += 1;
            seen += 1;
        }
        lengths.push(len);
    }
    if seen != g.vertex_count() {
        return None;
    }
    lengths.sort_unstable();
    let (short, long) = (lengths[0], lengths[1]);
    (long >= 2 && short + 1 == long).then_some(long)
}

/// A random multigraph with `1..=max_vertices` vertices named `a, b, ...`
/// and `0..=max_edges` edges, reproducible from `seed`.
pub fn random_graph(seed: u64, max_vertices: usize, max_edges: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.gen_range(1..=max_vertices.max(1));
    let ne = rng.gen_range(0..=max_edges);
    random_graph_with(&mut rng, nv, ne)
}

/// A random multigraph with exactly `nv` vertices and `ne` edges.
pub fn random_graph_with<R: Rng>(rng: &mut R, nv: usize, ne: usize) -> Graph {
    let names: Vec<String> = (0..nv).map(vertex_name).collect();
    let edges: Vec<(String, usize, usize)> = (0..ne)
        .map(|i| (format!("e{}", i + 1), rng.gen_range(0..nv), rng.gen_range(0..nv)))
        .collect();
    Graph::new(names, edges).unwrap()
}

fn vertex_name(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("x{i}")
    }
}
