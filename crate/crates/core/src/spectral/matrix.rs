//! Row-major dense matrices; complex matrices as explicit (re, im) pairs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        DenseMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ColumnView<'_> {
        ColumnView { m: self, j }
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_in_place(&mut self, s: f64) {
        for x in &mut self.data {
            *x *= s;
        }
    }

    /// self += weight * v v^T for a column vector view.
    pub fn rank_one_update<'a>(&mut self, v: impl Into<VecLike<'a>>, weight: f64) {
        let v: VecLike = v.into();
        let n = v.len();
        assert_eq!((self.rows, self.cols), (n, n));
        for i in 0..n {
            let wi = weight * v.get(i);
            if wi == 0.0 {
                continue;
            }
            for j in 0..n {
                self.data[i * n + j] += wi * v.get(j);
            }
        }
    }

    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc: f64, (a, b)| acc.max((a - b).abs()))
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn symmetrize_in_place(&mut self) {
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                let avg = 0.5 * (self.get(i, j) + self.get(j, i));
                self.set(i, j, avg);
                self.set(j, i, avg);
            }
        }
    }

    pub fn check_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    /// Rejects matrices whose asymmetry exceeds 1e-12 * max(1, inf norm).
    pub fn check_symmetric(&self) -> Result<()> {
        self.check_square()?;
        let tol = 1e-12 * self.inf_norm().max(1.0);
        let a = self.asymmetry();
        if a > tol {
            return Err(Error::NotSymmetric(a));
        }
        Ok(())
    }
}

/// Borrowed column of a matrix.
#[derive(Clone, Copy)]
pub struct ColumnView<'a> {
    m: &'a DenseMatrix,
    j: usize,
}

impl ColumnView<'_> {
    pub fn len(&self) -> usize {
        self.m.rows
    }

    pub fn is_empty(&self) -> bool {
        self.m.rows == 0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.m.get(i, self.j)
    }

    pub fn to_vec(self) -> Vec<f64> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

/// Either a slice or a column view, for rank-one updates.
pub enum VecLike<'a> {
    Slice(&'a [f64]),
    Column(ColumnView<'a>),
}

impl VecLike<'_> {
    fn len(&self) -> usize {
        match self {
            VecLike::Slice(s) => s.len(),
            VecLike::Column(c) => c.len(),
        }
    }

    fn get(&self, i: usize) -> f64 {
        match self {
            VecLike::Slice(s) => s[i],
            VecLike::Column(c) => c.get(i),
        }
    }
}

impl<'a> From<&'a [f64]> for VecLike<'a> {
    fn from(s: &'a [f64]) -> Self {
        VecLike::Slice(s)
    }
}

impl<'a> From<&'a Vec<f64>> for VecLike<'a> {
    fn from(s: &'a Vec<f64>) -> Self {
        VecLike::Slice(s)
    }
}

impl<'a> From<ColumnView<'a>> for VecLike<'a> {
    fn from(c: ColumnView<'a>) -> Self {
        VecLike::Column(c)
    }
}

/// Hermitian matrix as explicit real and imaginary channels:
/// re symmetric, im skew-symmetric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianMatrix {
    pub re: DenseMatrix,
    pub im: DenseMatrix,
}

impl HermitianMatrix {
    pub fn new(re: DenseMatrix, im: DenseMatrix) -> Result<Self> {
        let n = re.check_square()?;
        if im.rows() != n || im.cols() != n {
            return Err(Error::SizeMismatch { expected: n, got: im.rows() });
        }
        re.check_symmetric()?;
        // entry(i,j) = conj(entry(j,i)) means im(i,j) = -im(j,i).
        let tol = 1e-12 * im.inf_norm().max(1.0);
        for i in 0..n {
            for j in i..n {
                if (im.get(i, j) + im.get(j, i)).abs() > tol {
                    return Err(Error::NotSymmetric((im.get(i, j) + im.get(j, i)).abs()));
                }
            }
        }
        Ok(HermitianMatrix { re, im })
    }

    pub fn n(&self) -> usize {
        self.re.rows()
    }
}
