use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Graph;
use crate::{Error, Result};

/// Square matrix of exact rationals indexed by vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        RationalMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> RationalMatrix {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn column_sums(&self) -> Vec<BigRational> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.get(i, j).clone()).sum())
            .collect()
    }

    /// True iff every column sums to exactly 0 or 1. Errors on a negative
    /// entry.
    pub fn is_partially_stochastic(&self) -> Result<bool> {
        if let Some(neg) = self.entries.iter().find(|x| x.is_negative()) {
            return Err(Error::NegativeEntry(neg.to_string()));
        }
        Ok(self
            .column_sums()
            .iter()
            .all(|s| s.is_zero() || s.is_one()))
    }

    /// Entries as `"p/q"` strings, row-major.
    pub fn to_fraction_strings(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(fraction_string).collect())
            .collect()
    }
}

/// Always `p/q`, with `q = 1` for integers.
pub fn fraction_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Graph {
    /// `A_E(v, w) = |{e : s(e) = v, r(e) = w}|`.
    pub fn adjacency_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.vertex_count());
        for e in self.edges() {
            let cur = m.get(e.src, e.dst).clone();
            m.set(e.src, e.dst, cur + BigRational::one());
        }
        m
    }

    /// `p_{v,w} = A_E(v, w) / n_w`, zero where `A_E(v, w) = 0`.
    pub fn transition_matrix(&self) -> RationalMatrix {
        let a = self.adjacency_matrix();
        let mut p = RationalMatrix::zeros(self.vertex_count());
        for v in 0..self.vertex_count() {
            for w in 0..self.vertex_count() {
                let x = a.get(v, w);
                if !x.is_zero() {
                    let n_w = BigRational::from_integer(BigInt::from(self.in_degree(w)));
                    p.set(v, w, x / n_w);
                }
            }
        }
        p
    }

    /// Integer view of the adjacency matrix.
    pub fn adjacency_counts(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count())
            .map(|v| (0..self.vertex_count()).map(|w| self.edge_multiplicity(v, w)).collect())
            .collect()
    }
}
