use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::element::{CoreElement, PathPair};
use crate::arith::RadicalScalar;
use crate::graph::{Graph, Path, VertexId};
use crate::{Error, Result};

/// Default cap on the number of matrix units enumerated for one level.
pub const DEFAULT_BASIS_BOUND: usize = 250_000;

/// The AF-core of a graph, one finite level at a time. All operations are
/// exact; binary operations first promote both operands to the larger level.
#[derive(Debug, Clone, Copy)]
pub struct Core<'g> {
    g: &'g Graph,
    basis_bound: usize,
}

impl<'g> Core<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Core {
            g,
            basis_bound: DEFAULT_BASIS_BOUND,
        }
    }

    pub fn with_basis_bound(mut self, bound: usize) -> Self {
        self.basis_bound = bound;
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    /// Paths of each length `k ≤ level`, grouped by range.
    fn paths_by_range(&self, k: usize) -> BTreeMap<VertexId, Vec<Path>> {
        let mut out: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
        for p in self.g.paths_of_length(k) {
            out.entry(p.range(self.g)).or_default().push(p);
        }
        out
    }

    /// Size of the matrix-unit basis of `F_N` without enumerating pairs.
    pub fn basis_size(&self, level: usize) -> usize {
        let mut total = 0usize;
        for k in 0..=level {
            for (v, paths) in self.paths_by_range(k) {
                if k == level || self.g.is_sink(v) {
                    total = total.saturating_add(paths.len() * paths.len());
                }
            }
        }
        total
    }

    /// The matrix units of `F_N`, sorted.
    pub fn basis(&self, level: usize) -> Result<Vec<PathPair>> {
        let size = self.basis_size(level);
        if size > self.basis_bound {
            return Err(Error::BoundExceeded {
                what: "matrix units in a core level",
                size,
                bound: self.basis_bound,
            });
        }
        let mut out = Vec::with_capacity(size);
        for k in 0..=level {
            for (v, paths) in self.paths_by_range(k) {
                if k == level || self.g.is_sink(v) {
                    for mu in &paths {
                        for nu in &paths {
                            out.push((mu.clone(), nu.clone()));
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// The matrix units of `F_N` as elements.
    pub fn basis_elements(&self, level: usize) -> Result<Vec<CoreElement>> {
        Ok(self
            .basis(level)?
            .into_iter()
            .map(|pair| CoreElement::from_terms(level, [(pair, RadicalScalar::one())]))
            .collect())
    }

    /// The diagonal matrix units `(μ, μ)` of `F_N`.
    pub fn diagonal_basis(&self, level: usize) -> Vec<Path> {
        let mut out = Vec::new();
        for k in 0..=level {
            for p in self.g.paths_of_length(k) {
                if k == level || self.g.is_sink(p.range(self.g)) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    /// The unit of `F_N`: the sum of its diagonal matrix units.
    pub fn unit(&self, level: usize) -> CoreElement {
        CoreElement::from_terms(
            level,
            self.diagonal_basis(level)
                .into_iter()
                .map(|p| ((p.clone(), p), RadicalScalar::one())),
        )
    }

    /// Image under the unital inclusion `F_N ⊂ F_M`: a pair whose range is
    /// not a sink becomes `Σ_{s(e)=r(μ)} (μe, νe)`; sink pairs stay.
    pub fn include_to_level(&self, a: &CoreElement, target: usize) -> CoreElement {
        assert!(target >= a.level(), "cannot include level {} into {target}", a.level());
        let mut cur = a.clone();
        while cur.level() < target {
            let next_level = cur.level() + 1;
            let mut next = CoreElement::zero(next_level);
            for ((mu, nu), c) in cur.terms() {
                let v = mu.range(self.g);
                if self.g.is_sink(v) {
                    next.add_term(mu.clone(), nu.clone(), c.clone());
                } else {
                    for &e in self.g.out_edges(v) {
                        next.add_term(mu.extended(e), nu.extended(e), c.clone());
                    }
                }
            }
            cur = next;
        }
        cur
    }

    fn promote_pair(&self, a: &CoreElement, b: &CoreElement) -> (CoreElement, CoreElement) {
        let lvl = a.level().max(b.level());
        (self.include_to_level(a, lvl), self.include_to_level(b, lvl))
    }

    pub fn mul(&self, a: &CoreElement, b: &CoreElement) -> CoreElement {
        if a.level() == b.level() {
            return a.mul_same_level(b);
        }
        let (a, b) = self.promote_pair(a, b);
        a.mul_same_level(&b)
    }

    pub fn add(&self, a: &CoreElement, b: &CoreElement) -> CoreElement {
        let (a, b) = self.promote_pair(a, b);
        a.add(&b)
    }

    pub fn sub(&self, a: &CoreElement, b: &CoreElement) -> CoreElement {
        let (a, b) = self.promote_pair(a, b);
        a.sub(&b)
    }

    /// Equality in the union of the levels.
    pub fn equal(&self, a: &CoreElement, b: &CoreElement) -> bool {
        if a.level() == b.level() {
            return a == b;
        }
        let (a, b) = self.promote_pair(a, b);
        a == b
    }

    pub fn commutes(&self, a: &CoreElement, b: &CoreElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    fn inv_sqrt_product(&self, v: VertexId, w: VertexId) -> Option<RadicalScalar> {
        let n = (self.g.in_degree(v) * self.g.in_degree(w)) as u64;
        (n > 0).then(|| RadicalScalar::inv_sqrt(n))
    }

    /// `V(s_μ s_ν*) = (n_{s(μ)} n_{s(ν)})^{-1/2} Σ_{r(e)=s(μ), r(f)=s(ν)} s_{eμ} s_{fν}*`,
    /// and zero when `s(μ)` or `s(ν)` is a source. Raises the level by one.
    #[allow(non_snake_case)]
    pub fn map_V(&self, a: &CoreElement) -> CoreElement {
        let mut out = CoreElement::zero(a.level() + 1);
        for ((mu, nu), c) in a.terms() {
            let (sm, sn) = (mu.source(), nu.source());
            let Some(k) = self.inv_sqrt_product(sm, sn) else {
                continue;
            };
            let coef = c.mul_ref(&k);
            for &e in self.g.in_edges(sm) {
                let emu = mu.prepended(self.g, e);
                for &f in self.g.in_edges(sn) {
                    out.add_term(emu.clone(), nu.prepended(self.g, f), coef.clone());
                }
            }
        }
        out
    }

    /// `H(s_{eμ} s_{fν}*) = (n_{s(μ)} n_{s(ν)})^{-1/2} s_μ s_ν*`;
    /// `H(p_v) = Σ_{s(e)=v} p_{r(e)} / n_{r(e)}` for a non-sink `v` and zero
    /// for a sink. Lowers the level by one (level 0 stays 0).
    #[allow(non_snake_case)]
    pub fn map_H(&self, a: &CoreElement) -> CoreElement {
        let out_level = a.level().saturating_sub(1);
        let mut out = CoreElement::zero(out_level);
        for ((mu, nu), c) in a.terms() {
            if mu.is_empty() {
                let v = mu.source();
                debug_assert_eq!(mu, nu);
                for &e in self.g.out_edges(v) {
                    let w = self.g.dst(e);
                    let q = BigRational::new(BigInt::from(1), BigInt::from(self.g.in_degree(w)));
                    out.add_term(Path::vertex(w), Path::vertex(w), c.scale(&q));
                }
                continue;
            }
            let (tm, tn) = (mu.tail(self.g), nu.tail(self.g));
            let k = self
                .inv_sqrt_product(tm.source(), tn.source())
                .expect("range of an edge has positive in-degree");
            out.add_term(tm, tn, c.mul_ref(&k));
        }
        out
    }

    /// `φ_E(s_μ s_μ*) = Σ_{r(e)=s(μ)} s_{eμ} s_{eμ}*` on diagonal elements.
    pub fn map_phi_diagonal(&self, a: &CoreElement) -> Result<CoreElement> {
        if !a.is_diagonal() {
            return Err(Error::Domain("φ is only defined here on diagonal elements".into()));
        }
        let mut out = CoreElement::zero(a.level() + 1);
        for ((mu, _), c) in a.terms() {
            for &e in self.g.in_edges(mu.source()) {
                let emu = mu.prepended(self.g, e);
                out.add_term(emu.clone(), emu, c.clone());
            }
        }
        Ok(out)
    }

    /// `H^n(1)`, computed from the unit of level 0.
    #[allow(non_snake_case)]
    pub fn H_power_unit(&self, n: usize) -> CoreElement {
        let mut acc = self.unit(0);
        for _ in 0..n {
            acc = self.map_H(&acc);
        }
        acc
    }

    /// `a² = a = a*`, exactly.
    pub fn is_projection(&self, a: &CoreElement) -> bool {
        a.adjoint() == *a && self.mul(a, a) == *a
    }

    /// Whether `a` commutes with every matrix unit of `F_M`, both promoted to
    /// `max(M, level(a))`.
    pub fn centrality_check(&self, a: &CoreElement, up_to_level: usize) -> Result<bool> {
        let top = up_to_level.max(a.level());
        let a_top = self.include_to_level(a, top);
        for pair in self.basis(up_to_level)? {
            let b = CoreElement::from_terms(up_to_level, [(pair, RadicalScalar::one())]);
            let b_top = self.include_to_level(&b, top);
            if a_top.mul_same_level(&b_top) != b_top.mul_same_level(&a_top) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
