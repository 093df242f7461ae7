use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::RadicalScalar;

/// Square sparse matrix over [`RadicalScalar`], stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, RadicalScalar>>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.add_entry(i, i, &RadicalScalar::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> RadicalScalar {
        self.rows[i].get(&j).cloned().unwrap_or_else(RadicalScalar::zero)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, x: &RadicalScalar) {
        if x.is_zero() {
            return;
        }
        let slot = self.rows[i].entry(j).or_insert_with(RadicalScalar::zero);
        slot.add_assign_ref(x);
        if slot.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RadicalScalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(&j, x)| (i, j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = SparseMatrix::zeros(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.rows[k] {
                    out.add_entry(i, j, &a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        for (i, j, x) in other.entries() {
            out.add_entry(i, j, x);
        }
        out
    }

    pub fn scale(&self, c: &RadicalScalar) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim);
        for (i, j, x) in self.entries() {
            out.add_entry(i, j, &x.mul_ref(c));
        }
        out
    }

    /// Transpose; entries are real, so this is the adjoint.
    pub fn adjoint(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim);
        for (i, j, x) in self.entries() {
            out.add_entry(j, i, x);
        }
        out
    }

    /// The matrix times the coordinate projection onto columns with `keep`.
    pub fn restrict_columns(&self, keep: &[bool]) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim);
        for (i, j, x) in self.entries() {
            if keep[j] {
                out.add_entry(i, j, x);
            }
        }
        out
    }

    /// Columns `j` with `keep[j]` where the two matrices differ.
    pub fn differing_columns(&self, other: &SparseMatrix, keep: &[bool]) -> Vec<usize> {
        let a = self.restrict_columns(keep).adjoint();
        let b = other.restrict_columns(keep).adjoint();
        (0..self.dim).filter(|&j| a.rows[j] != b.rows[j]).collect()
    }

    pub fn to_dense_f64(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim * self.dim];
        for (i, j, x) in self.entries() {
            out[i * self.dim + j] = x.to_f64();
        }
        out
    }

    /// Coordinate list `row col value`, one nonzero per line, row-major.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, j, x) in self.entries() {
            let _ = writeln!(s, "{i} {j} {x}");
        }
        s
    }
}
