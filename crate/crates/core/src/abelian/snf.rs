//! Smith normal form over the integers.
//!
//! Given `M` (rows x cols) this computes unimodular `U` (rows x rows) and
//! `V` (cols x cols) with `U * M * V = D`, where `D` is diagonal, its
//! diagonal entries are nonnegative, `d1 | d2 | ...`, and zeros trail.
//!
//! Pivoting picks the nonzero entry of least absolute value in the
//! remaining submatrix. Every non-clean elimination pass leaves a remainder
//! strictly smaller than the current pivot, so the least absolute value
//! decreases and the loop terminates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_i` for `i < min(rows, cols)`, zeros included.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let (r, c) = self.diagonal.shape();
        (0..r.min(c)).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal_entries().iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                return SmithForm { left: u, diagonal: a, right: v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    let q = -q;
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    let q = -q;
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Pivot must divide the rest; otherwise fold the offending row in.
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { left: u, diagonal: a, right: v }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(pos, _)| pos)
}
