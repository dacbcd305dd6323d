//! Absolute positional encodings.

use super::exact;
use super::token::DEFAULT_QUANT_STEP;
use super::ApeMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{laplacian, spectral_apply_eigen, sym_eigen};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ApeKind {
    /// Vertex degrees as a single column.
    Degree,
    /// Random-walk return probabilities diag((D^{-1}A)^t), one column per t.
    Rwse(Vec<usize>),
    /// Heat kernel diagonals diag(H^(t)), one column per t.
    HkDiagSe(Vec<usize>),
}

impl ApeKind {
    pub fn name(&self) -> String {
        match self {
            ApeKind::Degree => "degree".into(),
            ApeKind::Rwse(times) => format!("rwse[{}]", join(times)),
            ApeKind::HkDiagSe(times) => format!("hkdiagse[{}]", join(times)),
        }
    }
}

fn join(times: &[usize]) -> String {
    times.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn ape_compute(g: &Graph, kind: &ApeKind) -> Result<ApeMatrix> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    match kind {
        ApeKind::Degree => {
            let values: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
            ApeMatrix::new(n, 1, values, "degree", 1.0)
        }
        ApeKind::Rwse(times) => {
            if times.is_empty() {
                return Err(Error::InvalidFamily("rwse requires at least one time".into()));
            }
            let diags = exact::exact_rw_diagonals(g, times)?;
            let l = times.len();
            let mut values = vec![0.0; n * l];
            for (c, diag) in diags.iter().enumerate() {
                for v in 0..n {
                    values[v * l + c] = diag[v];
                }
            }
            ApeMatrix::new(n, l, values, &kind.name(), DEFAULT_QUANT_STEP)
        }
        ApeKind::HkDiagSe(times) => {
            if times.is_empty() {
                return Err(Error::InvalidFamily("hkdiagse requires at least one time".into()));
            }
            let eig = sym_eigen(&laplacian(g))?;
            let l = times.len();
            let mut values = vec![0.0; n * l];
            for (c, &t) in times.iter().enumerate() {
                let h = spectral_apply_eigen(&eig, |x| (-(t as f64) * x).exp(), true)?;
                for v in 0..n {
                    values[v * l + c] = h.get(v, v);
                }
            }
            ApeMatrix::new(n, l, values, &kind.name(), DEFAULT_QUANT_STEP)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn degree_of_star() {
        let g = generate(&Family::Star(3)).unwrap().into_single();
        let a = ape_compute(&g, &ApeKind::Degree).unwrap();
        assert_eq!(a.row(0), &[3.0]);
        for leaf in 1..4 {
            assert_eq!(a.row(leaf), &[1.0]);
        }
    }

    #[test]
    fn rwse_on_c4() {
        let g = generate(&Family::Cycle(4)).unwrap().into_single();
        let a = ape_compute(&g, &ApeKind::Rwse(vec![1, 2])).unwrap();
        for v in 0..4 {
            assert_eq!(a.row(v), &[0.0, 0.5]);
        }
    }

    #[test]
    fn hkdiagse_on_k2() {
        let g = generate(&Family::Path(2)).unwrap().into_single();
        let a = ape_compute(&g, &ApeKind::HkDiagSe(vec![1])).unwrap();
        let want = (-2.0f64).exp() / 2.0;
        for v in 0..2 {
            assert!((a.row(v)[0] - want).abs() < 1e-12);
        }
    }
}
