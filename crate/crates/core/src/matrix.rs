//! Dense matrices over the exact rationals.
//!
//! Plain Gaussian elimination is used for determinant, rank, and inverse.
//! Pivots are chosen as the first nonzero entry in flat (row-major scan)
//! order; with exact arithmetic there is nothing to balance.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..=r).all(|c| *self.get(r, c) == -self.get(c, r).clone()))
    }

    pub fn transpose(&self) -> QMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn neg(&self) -> QMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| -self.get(r, c).clone())
    }

    pub fn scale(&self, s: &Rat) -> QMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).map(|i| self.get(r, i) * other.get(i, c)).sum()
        })
    }

    /// Submatrix on the given (0-based) row and column index lists, in order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> QMatrix {
        Self::from_fn(row_idx.len(), col_idx.len(), |r, c| {
            self.get(row_idx[r], col_idx[c]).clone()
        })
    }

    /// Contiguous block of size `h x w` with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> QMatrix {
        Self::from_fn(h, w, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Stack `top` over `bottom` (same column count).
    pub fn vstack(top: &QMatrix, bottom: &QMatrix) -> QMatrix {
        assert_eq!(top.cols, bottom.cols);
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        QMatrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // first nonzero entry in this column at or below pivot_row
            let Some(r) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = m.get(pivot_row, col).recip();
            for r in pivot_row + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for c in col..m.cols {
                    let v = m.get(r, c) - &(m.get(pivot_row, c) * &factor);
                    m.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(r) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Rat::zero();
            };
            if r != col {
                m.swap_rows(col, r);
                det = -det;
            }
            det *= m.get(col, col);
            let inv = m.get(col, col).recip();
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for c in col..n {
                    let v = m.get(r, c) - &(m.get(col, c) * &factor);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let r = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            m.swap_rows(col, r);
            inv.swap_rows(col, r);
            let scale = m.get(col, col).recip();
            for c in 0..n {
                let v = m.get(col, c) * &scale;
                m.set(col, c, v);
                let v = inv.get(col, c) * &scale;
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..n {
                    let v = m.get(r, c) - &(m.get(col, c) * &factor);
                    m.set(r, c, v);
                    let v = inv.get(r, c) - &(inv.get(col, c) * &factor);
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn m2(a: i64, b: i64, c: i64, d: i64) -> QMatrix {
        QMatrix::from_rows(vec![
            vec![rat_int(a), rat_int(b)],
            vec![rat_int(c), rat_int(d)],
        ])
        .unwrap()
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(m2(1, 2, 3, 4).det(), rat_int(-2));
        assert_eq!(m2(1, 2, 2, 4).det(), rat_int(0));
        assert_eq!(m2(1, 2, 2, 4).rank(), 1);
        assert_eq!(QMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(QMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(3), rat_int(0)],
            vec![rat_int(-1), rat(2, 5), rat_int(7)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert_eq!(inv.mul(&m), QMatrix::identity(3));
        assert!(m2(1, 2, 2, 4).inverse().is_none());
    }

    #[test]
    fn blocks_and_stacking() {
        let m = QMatrix::from_fn(3, 3, |r, c| rat_int((3 * r + c) as i64));
        let b = m.block(1, 1, 2, 2);
        assert_eq!(*b.get(0, 0), rat_int(4));
        assert_eq!(*b.get(1, 1), rat_int(8));
        let s = QMatrix::vstack(&QMatrix::identity(2), &QMatrix::zeros(1, 2));
        assert_eq!(s.rows(), 3);
        assert_eq!(s.rank(), 2);
    }
}
