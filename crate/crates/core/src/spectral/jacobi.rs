//! Cyclic Jacobi eigendecomposition for dense symmetric matrices.
//!
//! Robustness over asymptotics: the graphs here stay around a hundred
//! nodes, and Jacobi converges unconditionally on symmetric input with
//! orthonormal eigenvectors by construction.

use super::matrix::{DenseMatrix, HermitianMatrix};
use super::ZERO_THRESHOLD_SCALE;
use crate::error::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenDecomposition {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `eigenvalues`.
    pub eigenvectors: DenseMatrix,
    /// Eigenvalues with |lambda| at or below this are treated as zero.
    pub zero_threshold: f64,
}

impl EigenDecomposition {
    /// Max residual ||M z_i - lambda_i z_i||_inf over all pairs.
    pub fn residual(&self, m: &DenseMatrix) -> f64 {
        let n = self.eigenvalues.len();
        let mut worst = 0.0f64;
        for (i, &lambda) in self.eigenvalues.iter().enumerate() {
            for r in 0..n {
                let mut acc = 0.0;
                for c in 0..n {
                    acc += m.get(r, c) * self.eigenvectors.get(c, i);
                }
                worst = worst.max((acc - lambda * self.eigenvectors.get(r, i)).abs());
            }
        }
        worst
    }

    /// Max deviation of V^T V from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let v = &self.eigenvectors;
        let n = v.cols();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut dot = 0.0;
                for r in 0..n {
                    dot += v.get(r, i) * v.get(r, j);
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }
}

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
pub fn sym_eigen(m: &DenseMatrix) -> Result<EigenDecomposition> {
    m.check_symmetric()?;
    let n = m.rows();
    let mut a = m.clone();
    let mut v = DenseMatrix::identity(n);

    let scale = m.max_abs().max(1.0);
    let stop = 1e-15 * scale;
    // Each sweep visits every off-diagonal pair once.
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(a.get(p, q).abs());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq.abs() <= stop * 1e-2 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut eigenvectors = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors.set(r, dst, v.get(r, src));
        }
    }
    let max_eig = eigenvalues.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        zero_threshold: ZERO_THRESHOLD_SCALE * max_eig.max(1.0),
    })
}

/// Hermitian eigendecomposition via the real 2n x 2n embedding
/// [[re, -im], [im, re]]; eigenvalues of the embedding come in duplicate
/// pairs, one per complex eigenpair.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as (re, im) column pairs aligned with `eigenvalues`.
    pub vectors_re: DenseMatrix,
    pub vectors_im: DenseMatrix,
}

pub fn herm_eigen(h: &HermitianMatrix) -> Result<HermEigen> {
    let n = h.n();
    let mut big = DenseMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            big.set(i, j, h.re.get(i, j));
            big.set(n + i, n + j, h.re.get(i, j));
            big.set(i, n + j, -h.im.get(i, j));
            big.set(n + i, j, h.im.get(i, j));
        }
    }
    let eig = sym_eigen(&big)?;
    // Take every other eigenvalue; duplicates are adjacent after sorting.
    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors_re = DenseMatrix::zeros(n, n);
    let mut vectors_im = DenseMatrix::zeros(n, n);
    for k in 0..n {
        let idx = 2 * k;
        eigenvalues.push(eig.eigenvalues[idx]);
        for r in 0..n {
            vectors_re.set(r, k, eig.eigenvectors.get(r, idx));
            vectors_im.set(r, k, eig.eigenvectors.get(n + r, idx));
        }
    }
    Ok(HermEigen { eigenvalues, vectors_re, vectors_im })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngCore, SeedableRng};

    #[test]
    fn residual_and_orthonormality_within_contract() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let n = 2 + (rng.next_u64() % 30) as usize;
            let mut m = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 10.0 - 5.0;
                    m.set(i, j, x);
                    m.set(j, i, x);
                }
            }
            let eig = sym_eigen(&m).unwrap();
            let bound = 1e-9 * m.inf_norm().max(1.0);
            assert!(eig.residual(&m) <= bound, "residual too large at n={n}");
            assert!(eig.orthonormality_error() <= 1e-9);
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn hermitian_two_by_two() {
        // [[0.5, 0.5i], [-0.5i, 0.5]] has eigenvalues 0 and 1.
        let re = DenseMatrix::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]);
        let im = DenseMatrix::from_rows(&[vec![0.0, 0.5], vec![-0.5, 0.0]]);
        let h = HermitianMatrix::new(re, im).unwrap();
        let eig = herm_eigen(&h).unwrap();
        assert!((eig.eigenvalues[0] - 0.0).abs() < 1e-10);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-10);
    }
}
