//! Smith normal form over the integers.
//!
//! Classic reduction by elementary row and column operations. At each step
//! the smallest nonzero entry of the remaining block becomes the pivot, which
//! keeps the Euclidean remainders shrinking quickly. The matrices handled
//! here (Δ-type maps and truncated K-theory presentations) are at most a few
//! dozen rows and columns, so no modular tricks are needed; big integers
//! absorb any intermediate growth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U · M · W = D` with `U`, `W` unimodular and `D` diagonal with
/// `d_1 | d_2 | …` (zeros trailing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub w: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries (all positive).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Checks every invariant of the decomposition against `m`.
    pub fn verify(&self, m: &IntMatrix) -> std::result::Result<(), String> {
        let (r, c) = (m.rows(), m.cols());
        if self.u.rows() != r || self.u.cols() != r || self.w.rows() != c || self.w.cols() != c {
            return Err("transform shapes".into());
        }
        if self.u.mul(m).mul(&self.w).without_labels() != self.d.without_labels() {
            return Err("U*M*W != D".into());
        }
        if self.u.determinant().abs() != BigInt::one() {
            return Err("U not unimodular".into());
        }
        if self.w.determinant().abs() != BigInt::one() {
            return Err("W not unimodular".into());
        }
        for i in 0..r {
            for j in 0..c {
                if i != j && !self.d.get(i, j).is_zero() {
                    return Err(format!("off-diagonal entry at ({i},{j})"));
                }
            }
        }
        let diag: Vec<BigInt> = (0..r.min(c)).map(|i| self.d.get(i, i).clone()).collect();
        let mut seen_zero = false;
        for (i, x) in diag.iter().enumerate() {
            if x.is_zero() {
                seen_zero = true;
                continue;
            }
            if seen_zero {
                return Err("nonzero entry after a zero on the diagonal".into());
            }
            if x.is_negative() {
                return Err("negative invariant factor".into());
            }
            if i + 1 < diag.len() && !diag[i + 1].is_zero() && !diag[i + 1].is_multiple_of(x) {
                return Err(format!("d{} does not divide d{}", i + 1, i + 2));
            }
        }
        Ok(())
    }
}

fn min_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|b| ax < b.2) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Position of the nonzero entry of least magnitude in row `t` and column
/// `t` (from the diagonal on); the pivot itself is nonzero.
fn min_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, a.get(t, t).abs());
    let cands = (t + 1..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in cands {
        let x = a.get(i, j);
        if !x.is_zero() && x.abs() < best.2 {
            best = (i, j, x.abs());
        }
    }
    (best.0, best.1)
}

/// `a / b` rounded to the nearest integer, so the remainder is at most `|b|/2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let twice = r.abs() * 2u32;
    if twice > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Computes the Smith normal form of `m`. The result is checked by
/// multiplication before it is returned; a failed check is a bug and panics.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.without_labels();
    let mut u = IntMatrix::identity(rows);
    let mut w = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        w.swap_cols(t, pj);

        loop {
            // Move the smallest nonzero entry of row t and column t to the
            // pivot, then reduce the rest of the row and column modulo it.
            // Always pivoting on the minimum keeps intermediate entries small.
            let (bi, bj) = min_in_cross(&d, t);
            if bi != t {
                d.swap_rows(t, bi);
                u.swap_rows(t, bi);
            }
            if bj != t {
                d.swap_cols(t, bj);
                w.swap_cols(t, bj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(d.get(i, t), d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(d.get(t, j), d.get(t, t));
                d.add_col_multiple(j, t, &q);
                w.add_col_multiple(j, t, &q);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let p = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let out = SmithDecomposition { u, d, w };
    if let Err(e) = out.verify(m) {
        panic!("Smith normal form self-check failed: {e}\n{m}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(m: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(m);
        (0..m.rows().min(m.cols()))
            .map(|i| i64::try_from(s.d.get(i, i)).unwrap())
            .collect()
    }

    #[test]
    fn identity_is_normal() {
        assert_eq!(diag_of(&IntMatrix::identity(3)), vec![1, 1, 1]);
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(diag_of(&m), vec![1, 6]);
    }

    #[test]
    fn rank_one_symmetric() {
        let m = IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]], 2);
        assert_eq!(diag_of(&m), vec![1, 0]);
    }

    #[test]
    fn empty_and_rectangular() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(s.d.rows(), 0);
        assert_eq!(s.rank(), 0);
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(diag_of(&m), vec![2, 6, 12]);
        let m = IntMatrix::from_rows(&[vec![4, 6]], 2);
        assert_eq!(diag_of(&m), vec![2]);
    }
}
