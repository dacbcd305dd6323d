//! Exact rational computation of the Laplacian pseudoinverse and related
//! quantities on integer graph matrices.
//!
//! Converting an exact rational to f64 is a pure function of the value,
//! so equal true values tokenize identically across graphs. The
//! floating-point eigendecomposition route cannot promise that; both
//! routes coexist and are cross-checked in tests.

use crate::error::{Error, Result};
use crate::graph::Graph;
use num::rational::BigRational;
use num::traits::ToPrimitive;
use num::{BigInt, One, Zero};

pub type RatMatrix = Vec<Vec<BigRational>>;

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Gauss-Jordan inverse of an exact rational matrix. The caller
/// guarantees nonsingularity (here: L + J/m is positive definite).
fn invert(mut a: RatMatrix) -> Result<RatMatrix> {
    let n = a.len();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidFamily("singular matrix in exact inverse".into()))?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pivot;
            inv[col][j] = &inv[col][j] / &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let av = &a[col][j] * &factor;
                a[r][j] = &a[r][j] - av;
                let iv = &inv[col][j] * &factor;
                inv[r][j] = &inv[r][j] - iv;
            }
        }
    }
    Ok(inv)
}

/// Exact pseudoinverse of the Laplacian of one connected component,
/// via (L + J/m)^{-1} = L^+ + J/m.
fn pinv_connected(g: &Graph, vertices: &[usize]) -> Result<RatMatrix> {
    let m = vertices.len();
    let inv_m = ratio(1, m as i64);
    let mut a: RatMatrix = vec![vec![BigRational::zero(); m]; m];
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate() {
            let lap = if i == j {
                BigRational::from(BigInt::from(g.degree(u) as i64))
            } else if g.has_edge(u, v) {
                ratio(-1, 1)
            } else {
                BigRational::zero()
            };
            a[i][j] = lap + &inv_m;
        }
    }
    let mut inv = invert(a)?;
    for row in inv.iter_mut() {
        for x in row.iter_mut() {
            *x -= &inv_m;
        }
    }
    Ok(inv)
}

/// Exact blockwise pseudoinverse of the Laplacian, as f64. Cross-component
/// entries are zero.
pub fn exact_pinv(g: &Graph) -> Result<Vec<Vec<f64>>> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let (comp, count) = g.components();
    let mut out = vec![vec![0.0; n]; n];
    for c in 0..count {
        let vertices: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        if vertices.len() == 1 {
            continue;
        }
        let block = pinv_connected(g, &vertices)?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                out[u][v] = rational_to_f64(&block[i][j]);
            }
        }
    }
    Ok(out)
}

/// Exact resistance distances; cross-component pairs get the sentinel n.
pub fn exact_resistance(g: &Graph) -> Result<Vec<Vec<f64>>> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let (comp, count) = g.components();
    let sentinel = n as f64;
    let mut out = vec![vec![sentinel; n]; n];
    for v in 0..n {
        out[v][v] = 0.0;
    }
    for c in 0..count {
        let vertices: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        if vertices.len() == 1 {
            continue;
        }
        let block = pinv_connected(g, &vertices)?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i == j {
                    continue;
                }
                let rd = &block[i][i] + &block[j][j] - ratio(2, 1) * &block[i][j];
                out[u][v] = rational_to_f64(&rd);
            }
        }
    }
    Ok(out)
}

/// Exact random-walk return quantities: diag((D^{-1} A)^t) for each t.
/// Isolated vertices have zero rows in D^{-1} A.
pub fn exact_rw_diagonals(g: &Graph, times: &[usize]) -> Result<Vec<Vec<f64>>> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let t_max = times.iter().copied().max().unwrap_or(0);
    let mut rw: RatMatrix = vec![vec![BigRational::zero(); n]; n];
    for u in 0..n {
        let d = g.degree(u);
        if d == 0 {
            continue;
        }
        for &v in g.neighbors(u) {
            rw[u][v] = ratio(1, d as i64);
        }
    }
    let mut power: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut diag_by_t: Vec<Vec<f64>> = Vec::new();
    for t in 1..=t_max {
        power = rat_mul(&power, &rw);
        if times.contains(&t) {
            diag_by_t.push((0..n).map(|v| rational_to_f64(&power[v][v])).collect());
        }
    }
    // Preserve the caller's time ordering.
    let mut sorted: Vec<usize> = times.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let idx = sorted.iter().position(|&s| s == t).expect("time present");
        out.push(diag_by_t[idx].clone());
    }
    Ok(out)
}

fn rat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let add = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + add;
            }
        }
    }
    out
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational within f64 range")
}
