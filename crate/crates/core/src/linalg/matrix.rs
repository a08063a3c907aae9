use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};

/// Dense square matrix stored row-major. Used for eigenvector bases and
/// general (non-symmetric) congruence factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("rows must form a square matrix".into()));
        }
        Self::from_row_major(dim, rows.concat())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += aik * b;
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Averages `M` and `Mᵀ`.
    pub fn symmetric_part(&self) -> SymMatrix {
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix { dim: n, data }
    }
}

/// Dense real symmetric matrix, row-major. Symmetry is enforced at
/// construction; every internal operation produces exactly symmetric storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Validates symmetry within `1e-12·(1 + max|m_ij|)` and stores the
    /// symmetrized entries.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        Self::from_row_major_with_tol(dim, data, 1e-12)
    }

    pub fn from_row_major_with_tol(dim: usize, data: Vec<f64>, rel_tol: f64) -> Result<Self> {
        let m = Matrix::from_row_major(dim, data)?;
        let bound = rel_tol * (1.0 + m.max_abs());
        for i in 0..dim {
            for j in (i + 1)..dim {
                let gap = (m.get(i, j) - m.get(j, i)).abs();
                if gap > bound {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not symmetric: |m[{i},{j}] - m[{j},{i}]| = {gap:e}"
                    )));
                }
            }
        }
        Ok(m.symmetric_part())
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("rows must form a square matrix".into()));
        }
        Self::from_row_major(dim, rows.concat())
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        Self::diag(&vec![value; dim])
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            data[i * n + i] = *v;
        }
        Self { dim: n, data }
    }

    /// Builds `Q·diag(values)·Qᵀ`.
    pub fn from_spectrum(q: &Matrix, values: &[f64]) -> Self {
        let n = q.dim();
        debug_assert_eq!(values.len(), n);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for (k, v) in values.iter().enumerate() {
                    s += q.get(i, k) * v * q.get(j, k);
                }
                data[i * n + j] = s;
                data[j * n + i] = s;
            }
        }
        Self { dim: n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix { dim: self.dim, data: self.data.clone() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j) == 0.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|v| v * c).collect() }
    }

    /// Max-norm distance `‖self − other‖_max`.
    pub fn max_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `S·M·S` for symmetric `S`; the result is symmetrized.
    pub fn sandwich(&self, m: &SymMatrix) -> SymMatrix {
        let s = self.to_matrix();
        s.matmul(&m.to_matrix()).matmul(&s).symmetric_part()
    }

    /// `self · self`, symmetrized.
    pub fn square(&self) -> SymMatrix {
        let s = self.to_matrix();
        s.matmul(&s).symmetric_part()
    }

    /// Embeds `block` in the top-left corner of an identity of size `dim`.
    pub fn embed(block: &SymMatrix, dim: usize) -> SymMatrix {
        assert!(dim >= block.dim, "embedding target too small");
        let mut data = SymMatrix::identity(dim).data;
        for i in 0..block.dim {
            for j in 0..block.dim {
                data[i * dim + j] = block.get(i, j);
            }
        }
        SymMatrix { dim, data }
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> SymMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        SymMatrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect() }
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&SymMatrix> for f64 {
    type Output = SymMatrix;
    fn mul(self, rhs: &SymMatrix) -> SymMatrix {
        rhs.scale(self)
    }
}

impl From<&SymMatrix> for Matrix {
    fn from(m: &SymMatrix) -> Matrix {
        m.to_matrix()
    }
}

/// Serializes as `{"dim": n, "rows": [[..], ..]}`, the matrix file layout.
impl serde::Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SymMatrix", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("rows", &self.rows())?;
        st.end()
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.chunks(self.dim).enumerate() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
            let (open, close) = match (i, self.dim) {
                (_, 1) => ("[", "]"),
                (0, _) => ("⎡", "⎤"),
                (i, n) if i + 1 == n => ("⎣", "⎦"),
                _ => ("⎢", "⎥"),
            };
            writeln!(f, "{open}{}{close}", cells.join(" "))?;
        }
        Ok(())
    }
}
