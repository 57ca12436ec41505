//! Matrices over exact rings: fraction-free determinants, division-free
//! characteristic polynomials, and rational linear solving.
//!
//! Two determinant routes are provided. Over integral domains with exact
//! division (`Ratio`, `MPoly`) the fraction-free Bareiss elimination is used;
//! every interior division is exact, so no fractions build up. Truncated
//! q-series have zero divisors, which voids Bareiss' exactness guarantee, so
//! `QSeries` matrices go through the division-free Berkowitz algorithm
//! instead. Both are checked against cofactor expansion in the test suites.

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::qseries::QSeries;
use crate::ratio::Ratio;
use crate::ring::{ExactDiv, Ring};

/// Row-major rectangular matrix over a ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(rows: usize, cols: usize, like: &T) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![like.ring_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, like: &T) -> Self {
        let mut m = Matrix::zero(n, n, like);
        for i in 0..n {
            *m.at_mut(i, i) = like.ring_one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let like = &self.entries[0];
        let mut out = Matrix::zero(self.rows, rhs.cols, like);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = a.mul(rhs.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&p);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product".into()));
        }
        let like = &self.entries[0];
        let mut out = vec![like.ring_zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] = out[i].add(&a.mul(&v[j]));
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = self.entries[0].ring_zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        Ok(t)
    }

    /// Characteristic polynomial of a square matrix by the division-free
    /// Berkowitz algorithm. Coefficients are returned from the leading power
    /// down to the constant term, with leading coefficient one.
    pub fn charpoly(&self) -> Result<Vec<T>> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Err(Error::Invalid(
                "characteristic polynomial of an empty matrix".into(),
            ));
        }
        let zero = self.entries[0].ring_zero();
        let one = self.entries[0].ring_one();

        let mut v = vec![one.clone(), self.at(0, 0).neg()];
        for i in 1..n {
            // principal (i+1)x(i+1) block: body M = A[..i][..i], row R = A[i][..i],
            // column C = A[..i][i], corner d = A[i][i]
            let mut col0 = Vec::with_capacity(i + 2);
            col0.push(one.clone());
            col0.push(self.at(i, i).neg());
            // s_k = R M^k C, computed by iterating w = M^k C
            let mut w: Vec<T> = (0..i).map(|r| self.at(r, i).clone()).collect();
            for _ in 0..i {
                let mut s = zero.clone();
                for (r, wr) in w.iter().enumerate() {
                    s = s.add(&self.at(i, r).mul(wr));
                }
                col0.push(s.neg());
                let mut w2 = vec![zero.clone(); i];
                for r in 0..i {
                    for c in 0..i {
                        if !self.at(r, c).is_zero() && !w[c].is_zero() {
                            w2[r] = w2[r].add(&self.at(r, c).mul(&w[c]));
                        }
                    }
                }
                w = w2;
            }
            // multiply by the lower-triangular Toeplitz matrix built on col0
            let mut v2 = vec![zero.clone(); i + 2];
            for (r, slot) in v2.iter_mut().enumerate() {
                for (c, vc) in v.iter().enumerate().take(r + 1) {
                    if r - c < col0.len() && !col0[r - c].is_zero() && !vc.is_zero() {
                        *slot = slot.add(&col0[r - c].mul(vc));
                    }
                }
            }
            v = v2;
        }
        Ok(v)
    }
}

/// Fraction-free Bareiss elimination; interior divisions are exact over an
/// integral domain.
fn det_bareiss<T: ExactDiv>(m: &Matrix<T>) -> T {
    let n = m.rows();
    let zero = m.at(0, 0).ring_zero();
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = m.at(0, 0).ring_one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            a[i][k] = zero.clone();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Division-free determinant from the Berkowitz characteristic polynomial:
/// `det = (-1)^n p(0)`.
fn det_berkowitz<T: Ring>(m: &Matrix<T>) -> T {
    let v = m.charpoly().expect("square by construction");
    let n = m.rows();
    let c = v[n].clone();
    if n % 2 == 1 {
        c.neg()
    } else {
        c
    }
}

/// Ring-appropriate exact determinant dispatch.
pub trait DetExact: Ring {
    fn det_matrix(m: &Matrix<Self>) -> Self;
}

impl DetExact for Ratio {
    fn det_matrix(m: &Matrix<Self>) -> Self {
        det_bareiss(m)
    }
}

impl DetExact for MPoly {
    fn det_matrix(m: &Matrix<Self>) -> Self {
        det_bareiss(m)
    }
}

impl DetExact for QSeries {
    fn det_matrix(m: &Matrix<Self>) -> Self {
        det_berkowitz(m)
    }
}

/// Exact determinant of a square matrix.
pub fn det_exact<T: DetExact>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Err(Error::Invalid("determinant of an empty matrix".into()));
    }
    Ok(T::det_matrix(m))
}

/// Exact inverse of a rational matrix, or `None` if singular.
pub fn invert_rational(m: &Matrix<Ratio>) -> Option<Matrix<Ratio>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug: Vec<Vec<Ratio>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio> = (0..n).map(|j| m.at(i, j).clone()).collect();
            row.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n {
        return None;
    }
    Some(
        Matrix::from_rows(aug.into_iter().map(|row| row[n..].to_vec()).collect())
            .expect("square inverse"),
    )
}

/// Reduced row echelon form in place. Returns the pivot column indices.
/// The result is the canonical RREF of the row space, independent of the
/// initial row order.
pub fn rref(rows: &mut [Vec<Ratio>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Outcome of an exact rational linear solve.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearOutcome {
    /// One exact solution plus the dimension of the solution space's kernel.
    Solution {
        x: Vec<Ratio>,
        kernel_dim: usize,
    },
    Inconsistent,
}

/// Solve `A x = b` exactly over the rationals.
pub fn linear_solve_rational(a: &Matrix<Ratio>, b: &[Ratio]) -> Result<LinearOutcome> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(
            "right-hand side length does not match row count".into(),
        ));
    }
    let n = a.cols();
    let mut aug: Vec<Vec<Ratio>> = (0..a.rows())
        .map(|i| {
            let mut row: Vec<Ratio> = (0..n).map(|j| a.at(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return Ok(LinearOutcome::Inconsistent);
    }
    // particular solution: free variables set to zero
    let mut x = vec![Ratio::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Ok(LinearOutcome::Solution {
        x,
        kernel_dim: n - pivots.len(),
    })
}
