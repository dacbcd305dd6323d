//! Dense symmetric eigendecomposition and spectral matrix functions.

mod jacobi;
mod matrix;

pub use jacobi::{herm_eigen, sym_eigen, EigenDecomposition, HermEigen};
pub use matrix::{DenseMatrix, HermitianMatrix};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Relative zero threshold for eigenvalues: 1e-8 * max(1, |lambda|_max).
pub const ZERO_THRESHOLD_SCALE: f64 = 1e-8;

/// Adjacency matrix A.
pub fn adjacency_matrix(g: &Graph) -> DenseMatrix {
    let n = g.n();
    let mut m = DenseMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        m.set(u, v, 1.0);
        if !g.directed() {
            m.set(v, u, 1.0);
        }
    }
    m
}

/// Degree matrix D (out-degrees for directed graphs).
pub fn degree_matrix(g: &Graph) -> DenseMatrix {
    let n = g.n();
    let mut m = DenseMatrix::zeros(n, n);
    for v in 0..n {
        m.set(v, v, g.degree(v) as f64);
    }
    m
}

/// Graph Laplacian L = D - A.
pub fn laplacian(g: &Graph) -> DenseMatrix {
    let n = g.n();
    let mut m = adjacency_matrix(g);
    for i in 0..n {
        for j in 0..n {
            let a = m.get(i, j);
            m.set(i, j, -a);
        }
    }
    for v in 0..n {
        m.set(v, v, g.degree(v) as f64);
    }
    m
}

/// Symmetrically normalized adjacency D^{-1/2} A D^{-1/2}; zero rows for
/// isolated vertices.
pub fn sym_norm_adjacency(g: &Graph) -> DenseMatrix {
    let n = g.n();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|v| {
            let d = g.degree(v) as f64;
            if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 }
        })
        .collect();
    let mut m = adjacency_matrix(g);
    for i in 0..n {
        for j in 0..n {
            let x = m.get(i, j);
            m.set(i, j, x * inv_sqrt[i] * inv_sqrt[j]);
        }
    }
    m
}

/// Random-walk normalized adjacency D^{-1} A; zero rows for isolated
/// vertices.
pub fn rw_norm_adjacency(g: &Graph) -> DenseMatrix {
    let n = g.n();
    let mut m = adjacency_matrix(g);
    for i in 0..n {
        let d = g.degree(i) as f64;
        let inv = if d > 0.0 { 1.0 / d } else { 0.0 };
        for j in 0..n {
            let x = m.get(i, j);
            m.set(i, j, x * inv);
        }
    }
    m
}

/// Symmetrically normalized Laplacian I - D^{-1/2} A D^{-1/2}.
pub fn sym_norm_laplacian(g: &Graph) -> DenseMatrix {
    let mut m = sym_norm_adjacency(g);
    m.scale_in_place(-1.0);
    for i in 0..g.n() {
        m.set(i, i, m.get(i, i) + 1.0);
    }
    m
}

/// Random-walk normalized Laplacian I - D^{-1} A.
pub fn rw_norm_laplacian(g: &Graph) -> DenseMatrix {
    let mut m = rw_norm_adjacency(g);
    m.scale_in_place(-1.0);
    for i in 0..g.n() {
        m.set(i, i, m.get(i, i) + 1.0);
    }
    m
}

/// Moore-Penrose pseudoinverse of a symmetric matrix: eigenvalues with
/// magnitude above the zero threshold are inverted, the rest zeroed.
pub fn pseudoinverse(m: &DenseMatrix) -> Result<DenseMatrix> {
    let eig = sym_eigen(m)?;
    let thresh = eig.zero_threshold;
    let mut out = apply_eigen(&eig, |lambda| if lambda.abs() > thresh { 1.0 / lambda } else { 0.0 });
    out.symmetrize_in_place();
    Ok(out)
}

/// Stack of matrix powers [I, M, ..., M^k_max] by repeated multiplication.
pub fn power_stack(m: &DenseMatrix, k_max: usize) -> Result<Vec<DenseMatrix>> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(DenseMatrix::identity(n));
    for k in 1..=k_max {
        let prev = &out[k - 1];
        out.push(prev.mul(m));
    }
    Ok(out)
}

/// Sum of f(lambda_i) z_i z_i^T over eigenvalues, excluding those at or
/// below the zero threshold when `skip_zero`. Eigenvalues inside the
/// threshold band are snapped to exactly zero before f is applied, so a
/// function defined at 0 sees 0, not eigensolver noise.
pub fn spectral_apply(
    m: &DenseMatrix,
    f: impl Fn(f64) -> f64,
    skip_zero: bool,
) -> Result<DenseMatrix> {
    let eig = sym_eigen(m)?;
    spectral_apply_eigen(&eig, f, skip_zero)
}

/// `spectral_apply` against a precomputed decomposition.
pub fn spectral_apply_eigen(
    eig: &EigenDecomposition,
    f: impl Fn(f64) -> f64,
    skip_zero: bool,
) -> Result<DenseMatrix> {
    let thresh = eig.zero_threshold;
    let n = eig.eigenvalues.len();
    let mut out = DenseMatrix::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let snapped = if lambda.abs() <= thresh { 0.0 } else { lambda };
        if skip_zero && snapped == 0.0 {
            continue;
        }
        let fx = f(snapped);
        if !fx.is_finite() {
            return Err(Error::SpectralFnNonFinite { eigenvalue: snapped });
        }
        if fx == 0.0 {
            continue;
        }
        out.rank_one_update(eig.eigenvectors.column(i), fx);
    }
    out.symmetrize_in_place();
    Ok(out)
}

fn apply_eigen(eig: &EigenDecomposition, f: impl Fn(f64) -> f64) -> DenseMatrix {
    let n = eig.eigenvalues.len();
    let mut out = DenseMatrix::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let fx = f(lambda);
        if fx != 0.0 {
            out.rank_one_update(eig.eigenvectors.column(i), fx);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use rand::{RngCore, SeedableRng};

    fn k2_laplacian() -> DenseMatrix {
        DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]])
    }

    #[test]
    fn k2_eigenvalues() {
        let eig = sym_eigen(&k2_laplacian()).unwrap();
        assert!((eig.eigenvalues[0] - 0.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn c3_laplacian_eigenvalues() {
        let g = generate(&Family::Cycle(3)).unwrap().into_single();
        let eig = sym_eigen(&laplacian(&g)).unwrap();
        let want = [0.0, 3.0, 3.0];
        for (got, want) in eig.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "got {got}, want {want}");
        }
    }

    #[test]
    fn zero_matrix_eigen() {
        let eig = sym_eigen(&DenseMatrix::zeros(3, 3)).unwrap();
        assert!(eig.eigenvalues.iter().all(|&l| l.abs() < 1e-14));
        // basis still orthonormal
        assert!(eig.orthonormality_error() < 1e-12);
    }

    #[test]
    fn asymmetric_rejected() {
        let m = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(sym_eigen(&m).is_err());
    }

    #[test]
    fn pseudoinverse_of_k2_laplacian() {
        let p = pseudoinverse(&k2_laplacian()).unwrap();
        let want = DenseMatrix::from_rows(&[vec![0.25, -0.25], vec![-0.25, 0.25]]);
        assert!(p.max_abs_diff(&want) < 1e-12);
        // L L+ L = L
        let l = k2_laplacian();
        let back = l.mul(&p).mul(&l);
        assert!(back.max_abs_diff(&l) < 1e-12);
    }

    #[test]
    fn pseudoinverse_trivial_cases() {
        let z = DenseMatrix::zeros(3, 3);
        assert!(pseudoinverse(&z).unwrap().max_abs_diff(&z) < 1e-14);
        let i = DenseMatrix::identity(4);
        assert!(pseudoinverse(&i).unwrap().max_abs_diff(&i) < 1e-12);
    }

    #[test]
    fn moore_penrose_identities_on_random_symmetric() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for trial in 0..20 {
            let n = 2 + (rng.next_u64() % 19) as usize;
            let mut m = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0;
                    m.set(i, j, x);
                    m.set(j, i, x);
                }
            }
            // Occasionally make it rank-deficient.
            if trial % 3 == 0 {
                for j in 0..n {
                    let v = m.get(0, j);
                    m.set(n - 1, j, v);
                    m.set(j, n - 1, v);
                }
                m.set(n - 1, n - 1, m.get(0, 0));
            }
            let p = pseudoinverse(&m).unwrap();
            let mpm = m.mul(&p).mul(&m);
            let pmp = p.mul(&m).mul(&p);
            let mp = m.mul(&p);
            let pm = p.mul(&m);
            assert!(mpm.max_abs_diff(&m) < 1e-8, "A A+ A = A failed at n={n}");
            assert!(pmp.max_abs_diff(&p) < 1e-8, "A+ A A+ = A+ failed at n={n}");
            assert!(mp.max_abs_diff(&mp.transpose()) < 1e-8, "(A A+)^T failed at n={n}");
            assert!(pm.max_abs_diff(&pm.transpose()) < 1e-8, "(A+ A)^T failed at n={n}");
        }
    }

    #[test]
    fn power_stack_walk_counts() {
        // k_max = 0 gives [I].
        let g = generate(&Family::Path(3)).unwrap().into_single();
        let a = adjacency_matrix(&g);
        let stack = power_stack(&a, 0).unwrap();
        assert_eq!(stack.len(), 1);
        assert!(stack[0].max_abs_diff(&DenseMatrix::identity(3)) < 1e-15);

        // Entry (0,2) of A^2 on P3: one 2-step walk.
        let stack = power_stack(&a, 2).unwrap();
        assert!((stack[2].get(0, 2) - 1.0).abs() < 1e-12);

        // Diagonal of A^2 on C3: two closed 2-walks everywhere.
        let c3 = generate(&Family::Cycle(3)).unwrap().into_single();
        let stack = power_stack(&adjacency_matrix(&c3), 2).unwrap();
        for v in 0..3 {
            assert!((stack[2].get(v, v) - 2.0).abs() < 1e-12);
        }
    }

    /// Oracle: brute-force integer walk counting, n <= 6, k <= 5.
    #[test]
    fn power_stack_matches_walk_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let n = 2 + (rng.next_u64() % 5) as usize;
            let seed = rng.next_u64();
            let g = generate(&Family::Gnp { n, p: 0.5, seed }).unwrap().into_single();
            let stack = power_stack(&adjacency_matrix(&g), 5).unwrap();
            // walks[k][u][v] = number of k-step walks.
            let mut walks = vec![vec![vec![0u64; n]; n]; 6];
            for v in 0..n {
                walks[0][v][v] = 1;
            }
            for k in 1..=5 {
                for u in 0..n {
                    for v in 0..n {
                        let mut total = 0;
                        for &w in g.neighbors(u) {
                            total += walks[k - 1][w][v];
                        }
                        walks[k][u][v] = total;
                    }
                }
            }
            for k in 0..=5 {
                for u in 0..n {
                    for v in 0..n {
                        assert!(
                            (stack[k].get(u, v) - walks[k][u][v] as f64).abs() < 1e-9,
                            "walk count mismatch k={k} ({u},{v})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn spectral_apply_reconstructs() {
        let g = generate(&Family::Cycle(5)).unwrap().into_single();
        let l = laplacian(&g);
        let rebuilt = spectral_apply(&l, |x| x, false).unwrap();
        assert!(rebuilt.max_abs_diff(&l) < 1e-9);
    }

    #[test]
    fn spectral_apply_recip_matches_pseudoinverse() {
        let l = k2_laplacian();
        let k = spectral_apply(&l, |x| 1.0 / x, true).unwrap();
        let p = pseudoinverse(&l).unwrap();
        assert!(k.max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn heat_kernel_of_k2() {
        let l = k2_laplacian();
        let h = spectral_apply(&l, |x| (-x).exp(), true).unwrap();
        let want =
            (-2.0f64).exp() / 2.0 * 1.0;
        assert!((h.get(0, 0) - want).abs() < 1e-12);
        assert!((h.get(0, 1) + want).abs() < 1e-12);
    }

    #[test]
    fn spectral_apply_rejects_nonfinite() {
        let l = k2_laplacian();
        let err = spectral_apply(&l, |x| 1.0 / x, false).unwrap_err();
        assert!(matches!(err, Error::SpectralFnNonFinite { eigenvalue } if eigenvalue == 0.0));
    }

    /// Degenerate eigenspace invariance: rotate the repeated eigenvalue
    /// basis of C4 and rebuild the kernel directly; it must match the
    /// spectral_apply output.
    #[test]
    fn degenerate_eigenspace_invariance() {
        let g = generate(&Family::Cycle(4)).unwrap().into_single();
        let l = laplacian(&g);
        let f = |x: f64| (-x).exp();
        let reference = spectral_apply(&l, f, true).unwrap();

        let eig = sym_eigen(&l).unwrap();
        // C4 spectrum is 0, 2, 2, 4; indices 1 and 2 span the repeated space.
        assert!((eig.eigenvalues[1] - 2.0).abs() < 1e-9);
        assert!((eig.eigenvalues[2] - 2.0).abs() < 1e-9);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let theta = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU;
            let (c, s) = (theta.cos(), theta.sin());
            let z1 = eig.eigenvectors.column(1).to_vec();
            let z2 = eig.eigenvectors.column(2).to_vec();
            let r1: Vec<f64> = z1.iter().zip(&z2).map(|(a, b)| c * a + s * b).collect();
            let r2: Vec<f64> = z1.iter().zip(&z2).map(|(a, b)| -s * a + c * b).collect();
            let mut rebuilt = DenseMatrix::zeros(4, 4);
            rebuilt.rank_one_update(&r1, f(2.0));
            rebuilt.rank_one_update(&r2, f(2.0));
            rebuilt.rank_one_update(eig.eigenvectors.column(3), f(eig.eigenvalues[3]));
            assert!(rebuilt.max_abs_diff(&reference) < 1e-8);
        }
    }
}
