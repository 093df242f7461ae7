//! The path-space representation on `ℓ²(E^*)`, truncated to paths of length
//! at most `L`, as an exact operator oracle for the core and its maps.
//!
//! `S_e δ_α = δ_{eα}` when `r(e) = s(α)` and `|α| < L`, `S = Σ_e n_{r(e)}^{-1/2} S_e`,
//! `P_v δ_α = [s(α) = v] δ_α`, and `π(s_μ s_ν*) δ_{να'} = δ_{μα'}`.
//!
//! Truncation cuts `S` off at the top level, so identities with `S` on the
//! right hold only on vectors of length `≤ L - 1`; each check states the
//! window it covers. `P_v = Σ_{s(e)=v} S_e S_e*` also fails on length-0
//! vectors at every depth: the finite-path space carries a Toeplitz-type
//! family, not a Cuntz–Krieger one.

mod matrix;

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use matrix::SparseMatrix;

use crate::algebra::{matrix_unit, Core, CoreElement};
use crate::arith::RadicalScalar;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::{Error, Result};

pub const DEFAULT_REP_BOUND: usize = 20_000;

/// Eigenvalues above this count as non-negative in the positivity probe.
pub const POSITIVITY_TOLERANCE: f64 = -1e-9;

pub struct TruncatedRep<'g> {
    g: &'g Graph,
    depth: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl<'g> TruncatedRep<'g> {
    pub fn new(g: &'g Graph, depth: usize) -> Result<Self> {
        Self::with_bound(g, depth, DEFAULT_REP_BOUND)
    }

    /// Basis: all paths of length `≤ depth`, in path order.
    pub fn with_bound(g: &'g Graph, depth: usize, bound: usize) -> Result<Self> {
        let mut basis = Vec::new();
        for k in 0..=depth {
            basis.extend(g.paths_of_length(k));
            if basis.len() > bound {
                return Err(Error::BoundExceeded {
                    what: "truncated path space",
                    size: basis.len(),
                    bound,
                });
            }
        }
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(TruncatedRep { g, depth, basis, index })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Mask of basis vectors with `lo ≤ |α| ≤ hi`.
    pub fn window(&self, lo: usize, hi: usize) -> Vec<bool> {
        self.basis.iter().map(|p| (lo..=hi).contains(&p.len())).collect()
    }

    pub fn full_window(&self) -> Vec<bool> {
        vec![true; self.dim()]
    }

    pub fn s_edge(&self, e: EdgeId) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim());
        let one = RadicalScalar::one();
        for (j, alpha) in self.basis.iter().enumerate() {
            if alpha.len() < self.depth && alpha.source() == self.g.dst(e) {
                m.add_entry(self.index[&alpha.prepended(self.g, e)], j, &one);
            }
        }
        m
    }

    /// `S = Σ_e n_{r(e)}^{-1/2} S_e`.
    pub fn s_op(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim());
        for (j, alpha) in self.basis.iter().enumerate() {
            if alpha.len() >= self.depth {
                continue;
            }
            let v = alpha.source();
            if self.g.in_degree(v) == 0 {
                continue;
            }
            let c = RadicalScalar::inv_sqrt(self.g.in_degree(v) as u64);
            for &e in self.g.in_edges(v) {
                m.add_entry(self.index[&alpha.prepended(self.g, e)], j, &c);
            }
        }
        m
    }

    pub fn p_vertex(&self, v: VertexId) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim());
        let one = RadicalScalar::one();
        for (j, alpha) in self.basis.iter().enumerate() {
            if alpha.source() == v {
                m.add_entry(j, j, &one);
            }
        }
        m
    }

    pub fn pi(&self, a: &CoreElement) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim());
        for ((mu, nu), c) in a.terms() {
            for (j, alpha) in self.basis.iter().enumerate() {
                if alpha.len() < nu.len() {
                    continue;
                }
                if let Some(rest) = alpha.strip_prefix(self.g, nu) {
                    m.add_entry(self.index[&mu.concat(&rest)], j, c);
                }
            }
        }
        m
    }
}

/// One operator identity checked column by column on a window of lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub window: (usize, usize),
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationCheck {
    fn new(relation: impl Into<String>, window: (usize, usize)) -> Self {
        RelationCheck {
            relation: relation.into(),
            window,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn compare(&mut self, rep: &TruncatedRep, what: &str, lhs: &SparseMatrix, rhs: &SparseMatrix) {
        self.checked += 1;
        let mask = rep.window(self.window.0, self.window.1);
        let bad = lhs.differing_columns(rhs, &mask);
        if let Some(&j) = bad.first() {
            self.failures.push(format!(
                "{what}: {} column(s) differ, first at {}",
                bad.len(),
                rep.g.path_string(&rep.basis[j])
            ));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of comparing `V` and `H` with conjugation by `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VhReport {
    pub level: usize,
    pub depth: usize,
    /// `π(V(a)) = S π(a) S*`, on the whole truncated space.
    pub v_check: RelationCheck,
    /// `π(H(a)) = S* π(a) S`, on `|α| ≤ L - 1`.
    pub h_check: RelationCheck,
    /// Basis elements whose `H` identity fails on the top level; expected
    /// to be non-zero whenever the top level meets the support.
    pub h_top_level_defects: usize,
}

impl VhReport {
    pub fn passed(&self) -> bool {
        self.v_check.passed() && self.h_check.passed()
    }
}

/// Checks `π∘V = Ad S ∘ π` and `π∘H = Ad S* ∘ π` on the basis of `F_N`,
/// in depth `L ≥ N + 1`.
#[allow(non_snake_case)]
pub fn oracle_check_VH(g: &Graph, level: usize, depth: usize) -> Result<VhReport> {
    if depth < level + 1 {
        return Err(Error::Precondition(format!(
            "depth {depth} must be at least level + 1 = {}",
            level + 1
        )));
    }
    let core = Core::new(g);
    let rep = TruncatedRep::new(g, depth)?;
    let s = rep.s_op();
    let s_adj = s.adjoint();
    let top = rep.window(depth, depth);
    let mut v_check = RelationCheck::new("pi(V(a)) = S pi(a) S*", (0, depth));
    let mut h_check = RelationCheck::new("pi(H(a)) = S* pi(a) S", (0, depth - 1));
    let mut defects = 0;
    for a in core.basis_elements(level)? {
        let pa = rep.pi(&a);
        let name = a.display(g).to_string();
        v_check.compare(&rep, &name, &rep.pi(&core.map_V(&a)), &s.mul(&pa).mul(&s_adj));
        let ph = rep.pi(&core.map_H(&a));
        let conj = s_adj.mul(&pa).mul(&s);
        h_check.compare(&rep, &name, &ph, &conj);
        if !ph.differing_columns(&conj, &top).is_empty() {
            defects += 1;
        }
    }
    Ok(VhReport {
        level,
        depth,
        v_check,
        h_check,
        h_top_level_defects: defects,
    })
}

/// The relations of the edge family in depth `L`, each on the window where
/// the truncated operators satisfy it.
pub fn ck_window_check(g: &Graph, depth: usize) -> Result<Vec<RelationCheck>> {
    ck_check(g, depth, false)
}

/// The same relations demanded on the whole truncated space. Fails as soon
/// as the graph has an edge.
pub fn ck_full_space_check(g: &Graph, depth: usize) -> Result<Vec<RelationCheck>> {
    ck_check(g, depth, true)
}

fn ck_check(g: &Graph, depth: usize, full: bool) -> Result<Vec<RelationCheck>> {
    if depth == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    let rep = TruncatedRep::new(g, depth)?;
    let win = |lo: usize, hi: usize| if full { (0, depth) } else { (lo, hi) };
    let s_e: Vec<SparseMatrix> = (0..g.edge_count()).map(|e| rep.s_edge(e)).collect();
    let s_e_adj: Vec<SparseMatrix> = s_e.iter().map(SparseMatrix::adjoint).collect();
    let s = rep.s_op();
    let mut first = RelationCheck::new("S_e* S_f = [e = f] P_r(e)", win(0, depth - 1));
    for e in 0..g.edge_count() {
        for f in 0..g.edge_count() {
            let rhs = if e == f {
                rep.p_vertex(g.dst(e))
            } else {
                SparseMatrix::zeros(rep.dim())
            };
            let what = format!("{} {}", g.edge(e).id, g.edge(f).id);
            first.compare(&rep, &what, &s_e_adj[e].mul(&s_e[f]), &rhs);
        }
    }

    let mut second = RelationCheck::new("P_v = sum_{s(e)=v} S_e S_e*", win(1, depth));
    for v in 0..g.vertex_count() {
        if g.is_sink(v) {
            continue;
        }
        let mut sum = SparseMatrix::zeros(rep.dim());
        for &e in g.out_edges(v) {
            sum = sum.add(&s_e[e].mul(&s_e_adj[e]));
        }
        second.compare(&rep, g.vertex_name(v), &rep.p_vertex(v), &sum);
    }

    let mut recon = RelationCheck::new("S_e = sqrt(n_r(e)) pi(s_e s_e*) S", win(0, depth));
    for e in 0..g.edge_count() {
        let pe = Path::edge(g, e);
        let unit = matrix_unit(g, &pe, &pe, 1)?;
        let c = RadicalScalar::sqrt(g.in_degree(g.dst(e)) as u64);
        let rhs = rep.pi(&unit).mul(&s).scale(&c);
        recon.compare(&rep, &g.edge(e).id, &s_e[e], &rhs);
    }
    Ok(vec![first, second, recon])
}

/// `S^n S^n* S^n = S^n` on `|α| ≤ L - n`. Holds iff `P^n` is partially
/// stochastic.
pub fn power_partial_isometry_check(g: &Graph, n: usize, depth: usize) -> Result<RelationCheck> {
    if n == 0 || n > depth {
        return Err(Error::Precondition(format!("need 1 ≤ n ≤ depth, got n = {n}, depth = {depth}")));
    }
    let rep = TruncatedRep::new(g, depth)?;
    let s = rep.s_op();
    let window = rep.window(0, depth - n);
    // Only the window columns of S^n are needed; S^n* S^n is supported on
    // them as well, since S^n vanishes on longer paths.
    let mut sn = SparseMatrix::identity(rep.dim()).restrict_columns(&window);
    for _ in 0..n {
        sn = s.mul(&sn);
    }
    let lhs = sn.mul(&sn.adjoint().mul(&sn));
    let mut check = RelationCheck::new(format!("S^{n} S^{n}* S^{n} = S^{n}"), (0, depth - n));
    check.compare(&rep, &format!("n = {n}"), &lhs, &sn);
    Ok(check)
}

/// `n ≤ n_max` such that `S^n` is a partial isometry, each decided by
/// [`power_partial_isometry_check`] in the smallest depth `L = n`: the window
/// is then the vertices, which is where the identity can fail.
pub fn powers_via_rep(g: &Graph, n_max: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if power_partial_isometry_check(g, n, n)?.passed() {
            out.push(n);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityReport {
    pub level: usize,
    pub samples: usize,
    pub min_eigenvalue: f64,
    pub passed: bool,
}

/// Random `b ∈ F_N`: the images of `b*b` under `π`, `π∘V` and `π∘H` should
/// be positive semidefinite, up to [`POSITIVITY_TOLERANCE`].
pub fn positivity_spot_check(g: &Graph, level: usize, samples: usize, seed: u64) -> Result<PositivityReport> {
    let core = Core::new(g);
    let rep = TruncatedRep::new(g, level + 1)?;
    let basis = core.basis_elements(level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_eig = f64::INFINITY;
    for _ in 0..samples {
        let mut b = CoreElement::zero(level);
        if !basis.is_empty() {
            for _ in 0..3 {
                let k = rng.gen_range(0..basis.len());
                let c = RadicalScalar::integer(rng.gen_range(-2..=2));
                b = b.add(&basis[k].scale(&c));
            }
        }
        let bb = core.mul(&b.adjoint(), &b);
        for m in [rep.pi(&bb), rep.pi(&core.map_V(&bb)), rep.pi(&core.map_H(&bb))] {
            min_eig = min_eig.min(min_eigenvalue(&m));
        }
    }
    if samples == 0 || rep.dim() == 0 {
        min_eig = 0.0;
    }
    Ok(PositivityReport {
        level,
        samples,
        min_eigenvalue: min_eig,
        passed: min_eig >= POSITIVITY_TOLERANCE,
    })
}

/// Smallest eigenvalue of a symmetric matrix, in floating point.
pub fn min_eigenvalue(m: &SparseMatrix) -> f64 {
    let n = m.dim();
    if n == 0 {
        return 0.0;
    }
    let dense = DMatrix::from_row_slice(n, n, &m.to_dense_f64());
    dense.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::*;

    #[test]
    fn basis_of_single_edge() {
        let g = single_edge();
        let rep = TruncatedRep::new(&g, 2).unwrap();
        assert_eq!(rep.dim(), 3);
        let names: Vec<String> = rep.basis().iter().map(|p| g.path_string(p)).collect();
        assert_eq!(names, ["v", "w", "e1"]);
    }

    #[test]
    fn s_is_not_an_isometry_on_single_edge() {
        let g = single_edge();
        let rep = TruncatedRep::new(&g, 2).unwrap();
        let s = rep.s_op();
        assert_ne!(s.adjoint().mul(&s), SparseMatrix::identity(rep.dim()));
    }

    #[test]
    fn rose_s_is_isometry_below_top() {
        let g = rose(2);
        let rep = TruncatedRep::new(&g, 3).unwrap();
        let s = rep.s_op();
        let id = SparseMatrix::identity(rep.dim());
        assert!(s.adjoint().mul(&s).differing_columns(&id, &rep.window(0, 2)).is_empty());
        assert!(!s.adjoint().mul(&s).differing_columns(&id, &rep.window(3, 3)).is_empty());
    }

    #[test]
    fn vh_identities() {
        for g in [rose(2), two_cycle(), chain3(), single_edge(), loop_with_sink_exit(), chain_with_extra_source()] {
            for level in 0..=2 {
                let r = oracle_check_VH(&g, level, level + 2).unwrap();
                assert!(r.passed(), "{:?}", r);
            }
        }
        let r = oracle_check_VH(&rose(2), 1, 2).unwrap();
        assert!(r.h_top_level_defects > 0);
    }

    #[test]
    fn windows_hold_and_full_space_fails() {
        for g in [rose(1), rose(3), two_cycle(), chain3(), single_edge(), loop_with_sink_exit()] {
            for depth in 1..=3 {
                for c in ck_window_check(&g, depth).unwrap() {
                    assert!(c.passed(), "{c:?}");
                }
                assert!(ck_full_space_check(&g, depth).unwrap().iter().any(|c| !c.passed()));
            }
        }
    }

    #[test]
    fn partial_isometry_matches_stochasticity() {
        let g = chain_with_extra_source();
        assert!(power_partial_isometry_check(&g, 1, 3).unwrap().passed());
        assert!(!power_partial_isometry_check(&g, 2, 3).unwrap().passed());
        let g = rose(2);
        for n in 1..=3 {
            assert!(power_partial_isometry_check(&g, n, 3).unwrap().passed());
        }
    }

    #[test]
    fn rep_powers_match_combinatorial_powers() {
        let mut graphs = vec![rose(3), chain3(), chain_with_extra_source(), two_chain_family(3)];
        graphs.extend((0..10).map(|s| random_graph(s, 5, 6)));
        for g in &graphs {
            let via_rep = powers_via_rep(g, 5).unwrap();
            assert_eq!(via_rep, crate::structure::powers_via_paths(g, 5));
        }
    }

    #[test]
    fn positivity() {
        for g in [rose(2), chain_with_extra_source(), two_cycle()] {
            let r = positivity_spot_check(&g, 1, 10, 7).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn dump_format() {
        let g = single_edge();
        let rep = TruncatedRep::new(&g, 1).unwrap();
        assert_eq!(rep.s_edge(0).dump(), "2 1 1\n");
    }
}
