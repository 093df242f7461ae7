use std::collections::{BTreeSet, HashSet};

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

pub type VertexSet = BTreeSet<VertexId>;

/// Default vertex bound for [`all_hereditary_saturated`].
pub const DEFAULT_LATTICE_BOUND: usize = 20;

/// Hereditary: `s(e) ∈ set ⟹ r(e) ∈ set`.
pub fn is_hereditary(g: &Graph, set: &VertexSet) -> bool {
    g.edges().iter().all(|e| !set.contains(&e.src) || set.contains(&e.dst))
}

/// Saturated: a non-sink whose out-edges all land in `set` is in `set`.
pub fn is_saturated(g: &Graph, set: &VertexSet) -> bool {
    (0..g.vertex_count()).all(|v| {
        set.contains(&v)
            || g.is_sink(v)
            || !g.out_edges(v).iter().all(|&e| set.contains(&g.dst(e)))
    })
}

pub fn is_hereditary_saturated(g: &Graph, set: &VertexSet) -> bool {
    is_hereditary(g, set) && is_saturated(g, set)
}

/// The least hereditary saturated superset of `seed`.
pub fn hereditary_saturated_closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    let mut inside = vec![false; g.vertex_count()];
    for &v in seed {
        inside[v] = true;
    }
    loop {
        let mut changed = false;
        for e in g.edges() {
            if inside[e.src] && !inside[e.dst] {
                inside[e.dst] = true;
                changed = true;
            }
        }
        for v in 0..g.vertex_count() {
            if !inside[v] && !g.is_sink(v) && g.out_edges(v).iter().all(|&e| inside[g.dst(e)]) {
                inside[v] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..g.vertex_count()).filter(|&v| inside[v]).collect()
}

/// Closure of a seed given by vertex names.
pub fn hereditary_saturated_closure_of_names(g: &Graph, names: &[&str]) -> Result<VertexSet> {
    let seed = names.iter().map(|n| g.vertex_id(n)).collect::<Result<VertexSet>>()?;
    Ok(hereditary_saturated_closure(g, &seed))
}

/// Every hereditary saturated vertex set, sorted by size and then by
/// members. Any such set is the closure of a union of closures of single
/// vertices, so the lattice is generated by pairwise joins.
pub fn all_hereditary_saturated(g: &Graph, bound: usize) -> Result<Vec<VertexSet>> {
    if g.vertex_count() > bound {
        return Err(Error::BoundExceeded {
            what: "vertices for hereditary saturated enumeration",
            size: g.vertex_count(),
            bound,
        });
    }
    let mut found: HashSet<VertexSet> = HashSet::new();
    found.insert(hereditary_saturated_closure(g, &VertexSet::new()));
    let generators: Vec<VertexSet> = (0..g.vertex_count())
        .map(|v| hereditary_saturated_closure(g, &VertexSet::from([v])))
        .collect();
    let mut frontier: Vec<VertexSet> = found.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        for gen in &generators {
            if gen.is_subset(&a) {
                continue;
            }
            let joined = hereditary_saturated_closure(g, &a.union(gen).copied().collect());
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<VertexSet> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Names of the vertices in `set`, in vertex order.
pub fn set_names(g: &Graph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|&v| g.vertex_name(v).to_string()).collect()
}
