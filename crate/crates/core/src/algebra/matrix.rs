use std::fmt;

use crate::error::{Error, Result};
use crate::gf2m::{FieldContext, FieldElement};

/// Row-major dense matrix over GF(2^m).
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: expected {cols} columns, found {}",
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// `rows × xs.len()` matrix with entry `(i, j) = xs[j]^i`; row 0 is all ones.
    pub fn power(ctx: &FieldContext, xs: &[FieldElement], rows: usize) -> Self {
        let mut m = Self::zeros(rows, xs.len());
        for (j, &x) in xs.iter().enumerate() {
            let mut p = FieldElement::ONE;
            for i in 0..rows {
                m[(i, j)] = p;
                p = ctx.mul(p, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, ctx: &FieldContext, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += ctx.mul(a, rhs[(k, j)]);
                }
            }
        }
        Ok(out)
    }

    /// `M · v`.
    pub fn mul_vec(&self, ctx: &FieldContext, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .row_iter()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| ctx.mul(a, b)).sum())
            .collect())
    }

    /// Determinant by Gaussian elimination; pivots are the first nonzero entry in row order.
    pub fn determinant(&self, ctx: &FieldContext) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(FieldElement::ZERO);
            };
            // row swaps only flip the sign, which is invisible in characteristic 2
            a.swap_rows(p, col);
            let pivot = a[(col, col)];
            det = ctx.mul(det, pivot);
            let pivot_inv = ctx.inv(pivot)?;
            for r in col + 1..n {
                let factor = ctx.mul(a[(r, col)], pivot_inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = ctx.mul(factor, a[(col, c)]);
                    a[(r, c)] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self, ctx: &FieldContext) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = ctx.inv(self[(row, col)]).expect("pivot is nonzero");
            for c in col..self.cols {
                self[(row, c)] = ctx.mul(self[(row, c)], inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self[(r, col)];
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let sub = ctx.mul(factor, self[(row, c)]);
                    self[(r, c)] -= sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// A nonzero `u` with `M u = 0`, or `None` if the kernel is trivial.
    ///
    /// Canonical form: the lowest-index free variable is 1 and every other free variable is 0.
    pub fn nullspace_vector(&self, ctx: &FieldContext) -> Option<Vec<FieldElement>> {
        let mut a = self.clone();
        let pivots = a.rref(ctx);
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut u = vec![FieldElement::ZERO; self.cols];
        u[free] = FieldElement::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            u[pc] = -a[(r, free)];
        }
        Some(u)
    }

    pub fn rank(&self, ctx: &FieldContext) -> usize {
        self.clone().rref(ctx).len()
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

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}
