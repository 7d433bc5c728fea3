//! Dense square matrices, generic over the scalar type.
//!
//! The same code path serves exact integer adjacency counts
//! ([`crate::IntMatrix`]), exact rational iteration vectors
//! ([`crate::RatMatrix`]), and floating-point display estimates
//! ([`crate::FloatMatrix`]). Everything a growth verdict depends on runs over
//! the exact instantiations.

use std::fmt;

use num_traits::{One, Zero};

/// Scalar requirements for matrix arithmetic. Blanket-implemented; `BigInt`,
/// `BigRational`, and `f64` all qualify.
pub trait Scalar:
    Clone + Zero + One + PartialEq + for<'a> std::ops::AddAssign<&'a Self> + PartialOrd
{
}

impl<T> Scalar for T where
    T: Clone + Zero + One + PartialEq + for<'a> std::ops::AddAssign<&'a Self> + PartialOrd
{
}

/// Square matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T>
    where
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    /// `self^e` by repeated squaring; `e = 0` gives the identity.
    pub fn pow(&self, e: u64) -> Matrix<T>
    where
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    {
        let mut result = Matrix::identity(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Row vector times matrix, for iterated path counting.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T>
    where
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    {
        assert_eq!(v.len(), self.n);
        let mut out = vec![T::zero(); self.n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.n {
                let prod = vi * &self[(i, j)];
                out[j] += &prod;
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T>
    where
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    {
        assert_eq!(v.len(), self.n);
        let mut out = vec![T::zero(); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if self[(i, j)].is_zero() {
                    continue;
                }
                let prod = &self[(i, j)] * &v[j];
                out[i] += &prod;
            }
        }
        out
    }

    pub fn sum_elements(&self) -> T {
        let mut s = T::zero();
        for x in &self.data {
            s += x;
        }
        s
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let mut s = T::zero();
                for x in self.row(i) {
                    s += x;
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Principal submatrix on the given (distinct) indices, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Matrix<T> {
        let k = indices.len();
        let mut out = Matrix::zero(k);
        for (i, &ri) in indices.iter().enumerate() {
            for (j, &cj) in indices.iter().enumerate() {
                out[(i, j)] = self[(ri, cj)].clone();
            }
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    /// Add `other` entrywise.
    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Digraph adjacency lists of the nonzero pattern: `out[i]` lists `j` with
    /// `self[(i, j)] != 0`.
    pub fn nonzero_adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| !self[(i, j)].is_zero()).collect())
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", &self.data[i * self.n..(i + 1) * self.n])?;
        }
        write!(f, "]")
    }
}
