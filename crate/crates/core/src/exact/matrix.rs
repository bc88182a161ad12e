use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{Integer, Rational};
use crate::error::{Error, Result};

pub type IntVector = Vec<Integer>;

pub fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[Integer]) -> Integer {
    a.iter().map(|x| x * x).sum()
}

/// Dense row-major integer matrix.
///
/// Zero-sized shapes are allowed: an `n x 0` matrix is the empty basis of the
/// zero lattice, a `0 x n` matrix the empty equation system.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![Integer::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Integer::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Integer) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Integer>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(IntMatrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds an `len x k` matrix whose columns are `cols`.
    pub fn from_columns(len: usize, cols: &[IntVector]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != len) {
            return Err(Error::Dimension("columns of unequal length".into()));
        }
        Ok(Self::from_fn(len, cols.len(), |i, j| cols[j][i].clone()))
    }

    /// Convenience constructor for literals.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Integer::from(rows[i].as_ref()[j]))
    }

    pub fn column_vector(v: &[Integer]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn row_vector(v: &[Integer]) -> Self {
        Self::from_fn(1, v.len(), |_, j| v[j].clone())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut Integer {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Integer] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn mul_vec(&self, v: &[Integer]) -> Result<IntVector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn scale(&self, k: &Integer) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// `(self | other)`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn max_abs(&self) -> Integer {
        self.data.iter().map(num_traits::Signed::abs).max().unwrap_or_default()
    }

    pub fn column_norms_sq(&self) -> Vec<Integer> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j) * self.get(i, j)).sum()).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Integer> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Integer::one());
        }
        let mut a = self.clone();
        let mut sign = Integer::one();
        let mut prev = Integer::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Integer::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.get_mut(i, j) = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<alloc::string::String> = self.data.iter().map(alloc::string::ToString::to_string).collect();
        let mut widths = alloc::vec![0usize; self.cols];
        for (idx, s) in strs.iter().enumerate() {
            let j = idx % self.cols.max(1);
            widths[j] = widths[j].max(s.len());
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>w$}", strs[i * self.cols + j], w = widths[j])?;
            }
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Dense row-major rational matrix (used by the LP layer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: alloc::vec![Rational::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        RatMatrix::from_fn(m.rows(), m.cols(), |i, j| Rational::from_integer(m.get(i, j).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn two_row_m() -> IntMatrix {
        IntMatrix::from_i64(&[[1, 0, 5], [-12, -1, 1]])
    }

    fn two_row_p() -> IntMatrix {
        IntMatrix::from_i64(&[[1, 0, 1, 1, 0], [1, 1, -1, 1, 0], [0, -1, -1, 2, 1]])
    }

    #[test]
    fn identity_is_neutral() {
        let a = two_row_p();
        assert_eq!(IntMatrix::identity(3).mul(&a).unwrap(), a);
        assert_eq!(a.mul(&IntMatrix::identity(5)).unwrap(), a);
    }

    #[test]
    fn multipliers_recompose_two_row_system() {
        let a = two_row_m().mul(&two_row_p()).unwrap();
        assert_eq!(a.row(0), IntMatrix::from_i64(&[[1, -5, -4, 11, 5]]).row(0));
        assert_eq!(a.row(1), IntMatrix::from_i64(&[[-13, -2, -12, -11, 1]]).row(0));
    }

    #[test]
    fn transpose_involution() {
        let a = two_row_p();
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().shape(), (5, 3));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(two_row_p().mul(&two_row_m()), Err(Error::Dimension(_))));
        assert!(two_row_m().mul_vec(&[int(1)]).is_err());
    }

    #[test]
    fn bareiss_determinants() {
        assert_eq!(IntMatrix::identity(4).determinant().unwrap(), int(1));
        let a = IntMatrix::from_i64(&[[0, 2, 1], [3, 1, 0], [1, 1, 1]]);
        // cofactor expansion along the first row: 0 - 2*(3-0) + 1*(3-1) = -4
        assert_eq!(a.determinant().unwrap(), int(-4));
        assert_eq!(IntMatrix::from_i64(&[[2, 4], [1, 2]]).determinant().unwrap(), int(0));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), int(1));
    }

    #[test]
    fn empty_shapes() {
        let e = IntMatrix::zeros(3, 0);
        assert_eq!(e.transpose().shape(), (0, 3));
        let prod = IntMatrix::zeros(0, 3).mul(&IntMatrix::identity(3)).unwrap();
        assert_eq!(prod.shape(), (0, 3));
        assert_eq!(IntMatrix::zeros(2, 0).mul(&IntMatrix::zeros(0, 4)).unwrap(), IntMatrix::zeros(2, 4));
    }
}
