use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::arith::RadicalScalar;
use crate::graph::{Graph, Path, VertexId};
use crate::{Error, Result};

pub type PathPair = (Path, Path);

/// An element of the finite level `F_N`: a sparse combination of matrix
/// units `s_μ s_ν*`, keyed by `(μ, ν)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoreElement {
    level: usize,
    terms: BTreeMap<PathPair, RadicalScalar>,
}

impl CoreElement {
    pub fn zero(level: usize) -> Self {
        CoreElement {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<PathPair, RadicalScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mu: &Path, nu: &Path) -> RadicalScalar {
        self.terms
            .get(&(mu.clone(), nu.clone()))
            .cloned()
            .unwrap_or_else(RadicalScalar::zero)
    }

    /// Adds `c · (μ, ν)` without any basis validation.
    pub(crate) fn add_term(&mut self, mu: Path, nu: Path, c: RadicalScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((mu, nu)) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign_ref(&c);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub(crate) fn from_terms(level: usize, terms: impl IntoIterator<Item = (PathPair, RadicalScalar)>) -> Self {
        let mut out = CoreElement::zero(level);
        for ((mu, nu), c) in terms {
            out.add_term(mu, nu, c);
        }
        out
    }

    pub fn add(&self, other: &CoreElement) -> CoreElement {
        assert_eq!(self.level, other.level, "add: promote operands first");
        let mut out = self.clone();
        for ((mu, nu), c) in &other.terms {
            out.add_term(mu.clone(), nu.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CoreElement) -> CoreElement {
        self.add(&other.scale(&RadicalScalar::integer(-1)))
    }

    pub fn scale(&self, c: &RadicalScalar) -> CoreElement {
        if c.is_zero() {
            return CoreElement::zero(self.level);
        }
        CoreElement {
            level: self.level,
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x.mul_ref(c))).collect(),
        }
    }

    /// Swaps the components of every pair; coefficients are real.
    pub fn adjoint(&self) -> CoreElement {
        CoreElement::from_terms(
            self.level,
            self.terms.iter().map(|((mu, nu), c)| ((nu.clone(), mu.clone()), c.clone())),
        )
    }

    /// Whether every term sits on a diagonal pair `(μ, μ)`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(mu, nu)| mu == nu)
    }

    /// Product of two elements of the same level: `(μ,ν)(α,β) = [ν=α](μ,β)`.
    pub(crate) fn mul_same_level(&self, other: &CoreElement) -> CoreElement {
        assert_eq!(self.level, other.level);
        let mut out = CoreElement::zero(self.level);
        // Index the smaller factor on the shared path, scan the larger one.
        if other.terms.len() <= self.terms.len() {
            let mut by_first: HashMap<&Path, Vec<(&Path, &RadicalScalar)>> = HashMap::new();
            for ((a, b), c) in &other.terms {
                by_first.entry(a).or_default().push((b, c));
            }
            for ((mu, nu), c) in &self.terms {
                for (beta, d) in by_first.get(nu).into_iter().flatten() {
                    out.add_term(mu.clone(), (*beta).clone(), c.mul_ref(d));
                }
            }
        } else {
            let mut by_second: HashMap<&Path, Vec<(&Path, &RadicalScalar)>> = HashMap::new();
            for ((a, b), c) in &self.terms {
                by_second.entry(b).or_default().push((a, c));
            }
            for ((beta, gamma), d) in &other.terms {
                for (mu, c) in by_second.get(beta).into_iter().flatten() {
                    out.add_term((*mu).clone(), gamma.clone(), c.mul_ref(d));
                }
            }
        }
        out
    }

    /// Renders with edge ids, e.g. `1/2*[e1|e2] + [v|v]`.
    pub fn display<'a>(&'a self, g: &'a Graph) -> ElementDisplay<'a> {
        ElementDisplay { g, a: self }
    }
}

pub struct ElementDisplay<'a> {
    g: &'a Graph,
    a: &'a CoreElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_zero() {
            return write!(f, "0@{}", self.a.level);
        }
        let parts: Vec<String> = self
            .a
            .terms
            .iter()
            .map(|((mu, nu), c)| {
                let unit = format!("[{}|{}]", self.g.path_string(mu), self.g.path_string(nu));
                if c.is_one() {
                    unit
                } else {
                    format!("({c})*{unit}")
                }
            })
            .collect();
        write!(f, "{}@{}", parts.join(" + "), self.a.level)
    }
}

/// Whether `(μ, ν)` is a matrix unit of `F_N`: equal lengths, equal ranges,
/// and either length `N` or a sink range with length at most `N`.
pub fn is_basis_pair(g: &Graph, mu: &Path, nu: &Path, level: usize) -> bool {
    mu.len() == nu.len()
        && mu.range(g) == nu.range(g)
        && (mu.len() == level || (g.is_sink(mu.range(g)) && mu.len() <= level))
}

/// The matrix unit `s_μ s_ν*` in `F_N`.
pub fn matrix_unit(g: &Graph, mu: &Path, nu: &Path, level: usize) -> Result<CoreElement> {
    if !is_basis_pair(g, mu, nu, level) {
        return Err(Error::InvalidPath(format!(
            "({}, {}) is not a matrix unit of level {level}",
            g.path_string(mu),
            g.path_string(nu)
        )));
    }
    let mut out = CoreElement::zero(level);
    out.add_term(mu.clone(), nu.clone(), RadicalScalar::one());
    Ok(out)
}

/// The vertex projection `p_v` placed at level 0.
pub fn vertex_projection(v: VertexId) -> CoreElement {
    let mut out = CoreElement::zero(0);
    out.add_term(Path::vertex(v), Path::vertex(v), RadicalScalar::one());
    out
}
