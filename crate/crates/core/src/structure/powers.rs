use std::collections::HashSet;

use serde::Serialize;

use crate::graph::Graph;
use crate::{Error, Result};

/// Interaction powers computed by two independent criteria.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSet {
    pub n_max: usize,
    /// The agreed set.
    pub members: Vec<usize>,
    /// `n` such that `P^n` is partially stochastic.
    pub via_matrix: Vec<usize>,
    /// `n` such that no range of an `n`-path is reached from a source in
    /// fewer than `n` steps.
    pub via_paths: Vec<usize>,
}

impl PowerSet {
    pub fn contains(&self, n: usize) -> bool {
        self.members.contains(&n)
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.n_max
    }
}

/// `n ≤ n_max` with `P^n` partially stochastic.
pub fn powers_via_matrix(g: &Graph, n_max: usize) -> Result<Vec<usize>> {
    let p = g.transition_matrix();
    let mut acc = p.clone();
    let mut out = Vec::new();
    for n in 1..=n_max {
        if n > 1 {
            acc = acc.mul(&p);
        }
        if acc.is_partially_stochastic()? {
            out.push(n);
        }
    }
    Ok(out)
}

/// `n ≤ n_max` such that no vertex is both the range of a path of length
/// `n` and the range of a path of length `k < n` that starts at a source.
pub fn powers_via_paths(g: &Graph, n_max: usize) -> Vec<usize> {
    let nv = g.vertex_count();
    // from_source[k][w]: some path of length k from a source ends at w.
    let mut from_source: Vec<Vec<bool>> = Vec::with_capacity(n_max + 1);
    from_source.push((0..nv).map(|v| g.is_source(v)).collect());
    // range_n[w]: w ∈ r(E^n).
    let mut range_n: Vec<bool> = vec![true; nv];
    let mut out = Vec::new();
    for n in 1..=n_max {
        range_n = step(g, &range_n);
        let bad = (0..nv).any(|w| range_n[w] && from_source.iter().any(|row| row[w]));
        if !bad {
            out.push(n);
        }
        let next = step(g, from_source.last().unwrap());
        from_source.push(next);
    }
    out
}

/// One step forward: the set of ranges of edges leaving `set`.
fn step(g: &Graph, set: &[bool]) -> Vec<bool> {
    let mut out = vec![false; set.len()];
    for e in g.edges() {
        if set[e.src] {
            out[e.dst] = true;
        }
    }
    out
}

/// `{n ≤ n_max : (V^n, H^n) is an interaction}`, computed by both criteria.
/// Disagreement is an [`Error::OracleMismatch`].
pub fn interaction_powers(g: &Graph, n_max: usize) -> Result<PowerSet> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let via_matrix = powers_via_matrix(g, n_max)?;
    let via_paths = powers_via_paths(g, n_max);
    if via_matrix != via_paths {
        return Err(Error::OracleMismatch {
            context: "interaction powers",
            detail: format!("matrix criterion {via_matrix:?} vs path criterion {via_paths:?}"),
        });
    }
    Ok(PowerSet {
        n_max,
        members: via_matrix.clone(),
        via_matrix,
        via_paths,
    })
}

/// Whether, for every length `n` and vertex `w`, the paths of length `n`
/// ending at `w` either all start at sources or none do.
///
/// The pair (vertices reached from sources in `n` steps, vertices reached
/// from non-sources in `n` steps) evolves deterministically, so iterating
/// until the pair repeats decides the condition for all `n`.
pub fn is_cstar_dynamical(g: &Graph) -> bool {
    cstar_scan(g).0
}

/// The number of lengths inspected before the state sequence repeated. Any
/// failure of [`is_cstar_dynamical`] shows up as a missing interaction power
/// at most one step later, so `cstar_horizon(g) + 1` is a sufficient power
/// range for comparing the two notions.
pub fn cstar_horizon(g: &Graph) -> usize {
    cstar_scan(g).1
}

fn cstar_scan(g: &Graph) -> (bool, usize) {
    let nv = g.vertex_count();
    let mut from_src: Vec<bool> = (0..nv).map(|v| g.is_source(v)).collect();
    let mut from_other: Vec<bool> = (0..nv).map(|v| !g.is_source(v)).collect();
    let mut seen = HashSet::new();
    let mut n = 0;
    loop {
        if (0..nv).any(|w| from_src[w] && from_other[w]) {
            return (false, n);
        }
        if !seen.insert((from_src.clone(), from_other.clone())) {
            return (true, n);
        }
        from_src = step(g, &from_src);
        from_other = step(g, &from_other);
        n += 1;
    }
}

/// `H` is multiplicative iff `r` is injective on edges.
#[allow(non_snake_case)]
pub fn is_H_multiplicative(g: &Graph) -> bool {
    (0..g.vertex_count()).all(|v| g.in_degree(v) <= 1)
}
