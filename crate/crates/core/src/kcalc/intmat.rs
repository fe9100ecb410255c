use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Integer ring usable for exact matrix reduction.
pub trait IntRing: Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T> IntRing for T where T: Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static {}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntRing> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diagonal(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Rows must have equal length; `cols` is used when there are none.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x).unwrap()).collect()).collect(),
            cols,
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        })
    }

    /// [self ; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copy `block` into position (r0, c0).
    pub fn put(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == if i == j { T::one() } else { T::zero() }))
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else { return T::zero() };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j).clone() * a.get(k, k).clone() - a.get(i, k).clone() * a.get(k, j).clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        if n == 0 { T::one() } else { sign * a.get(n - 1, n - 1).clone() }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_a += c · row_b.
    pub(crate) fn add_row(&mut self, a: usize, b: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(b, j).clone();
            if !v.is_zero() {
                let x = self.get(a, j).clone() + c.clone() * v;
                self.set(a, j, x);
            }
        }
    }

    /// col_a += c · col_b.
    pub(crate) fn add_col(&mut self, a: usize, b: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, b).clone();
            if !v.is_zero() {
                let x = self.get(i, a).clone() + c.clone() * v;
                self.set(i, a, x);
            }
        }
    }

    pub(crate) fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let x = -self.get(a, j).clone();
            self.set(a, j, x);
        }
    }

    pub(crate) fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let x = -self.get(i, a).clone();
            self.set(i, a, x);
        }
    }
}

impl<T: IntRing> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_products() {
        let m = IntMatrix::<i64>::from_i64(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(m.determinant(), -8);
        let i = IntMatrix::<i64>::identity(2);
        assert_eq!(m.mul(&i), m);
        assert_eq!(m.transpose().get(0, 1), &6);
        let b = IntMatrix::block_diag(&[m.clone(), i]);
        assert_eq!((b.rows(), b.cols()), (4, 4));
        assert_eq!(b.determinant(), -8);
    }
}
