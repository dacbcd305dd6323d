//! Absolute and relative positional encodings, augmentations, and value
//! quantization.

mod ape;
mod exact;
mod rpe;
mod spectral_fn;
mod token;

pub use ape::{ape_compute, ApeKind};
pub use rpe::{
    magnetic_laplacian_matrix, rpe_directed_stack, rpe_eigenprojections, rpe_heat_kernel,
    rpe_magnetic_laplacian, rpe_matrix, rpe_pinv_exact, rpe_power_stack, rpe_resistance, rpe_rspe,
    rpe_spd, rpe_spectral, rpe_spectral_normalized, MatrixKind, PowerBase, SpectralForm,
};
pub use spectral_fn::SpectralFn;
pub use token::{quantize, row_bytes, token_bytes, Token, DEFAULT_QUANT_STEP};

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// n x n x k real tensor holding a relative positional encoding, plus the
/// quantization step used when its values become refinement tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RpeTensor {
    n: usize,
    k: usize,
    /// Row-major (u, v, channel).
    values: Vec<f64>,
    pub name: String,
    pub quant_step: f64,
}

impl RpeTensor {
    pub fn new(n: usize, k: usize, values: Vec<f64>, name: &str, quant_step: f64) -> Result<Self> {
        if values.len() != n * n * k {
            return Err(Error::SizeMismatch { expected: n * n * k, got: values.len() });
        }
        if quant_step.is_nan() || quant_step <= 0.0 {
            return Err(Error::BadQuantStep(quant_step));
        }
        for &x in &values {
            if !x.is_finite() {
                return Err(Error::NonFinite { value: x, context: format!("rpe tensor {name}") });
            }
        }
        Ok(RpeTensor { n, k, values, name: name.to_string(), quant_step })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn channels(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> &[f64] {
        let base = (u * self.n + v) * self.k;
        &self.values[base..base + self.k]
    }

    #[inline]
    pub fn value(&self, u: usize, v: usize, c: usize) -> f64 {
        self.values[(u * self.n + v) * self.k + c]
    }

    /// Applies a scalar map to every channel value.
    pub fn map_values(&self, f: impl Fn(f64) -> f64, name: &str) -> Result<RpeTensor> {
        let values: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        RpeTensor::new(self.n, self.k, values, name, self.quant_step)
    }

    /// Token of a pair: all channels quantized at the tensor's step.
    pub fn tokenize(&self) -> Result<TokenizedRpe> {
        let mut tokens = Vec::with_capacity(self.values.len());
        for &x in &self.values {
            tokens.push(quantize(x, self.quant_step)?);
        }
        Ok(TokenizedRpe { n: self.n, k: self.k, tokens })
    }

    /// Stacks channels of `self` before channels of `other`.
    pub fn stack(&self, other: &RpeTensor, name: &str) -> Result<RpeTensor> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { expected: self.n, got: other.n });
        }
        let k = self.k + other.k;
        let mut values = Vec::with_capacity(self.n * self.n * k);
        for u in 0..self.n {
            for v in 0..self.n {
                values.extend_from_slice(self.entry(u, v));
                values.extend_from_slice(other.entry(u, v));
            }
        }
        RpeTensor::new(self.n, k, values, name, self.quant_step.min(other.quant_step))
    }

    /// Zero-pads to `k` channels so tensors of a pair stay comparable.
    pub fn pad_channels(&self, k: usize) -> Result<RpeTensor> {
        if k < self.k {
            return Err(Error::ChannelMismatch { a: self.k, b: k });
        }
        if k == self.k {
            return Ok(self.clone());
        }
        let mut values = Vec::with_capacity(self.n * self.n * k);
        for u in 0..self.n {
            for v in 0..self.n {
                values.extend_from_slice(self.entry(u, v));
                values.resize(values.len() + (k - self.k), 0.0);
            }
        }
        RpeTensor::new(self.n, k, values, &self.name, self.quant_step)
    }

    /// JSON export: { name, n, k, quant_step, values: nested arrays }.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.n)
            .map(|u| {
                let cols: Vec<serde_json::Value> =
                    (0..self.n).map(|v| serde_json::json!(self.entry(u, v))).collect();
                serde_json::json!(cols)
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "quant_step": self.quant_step,
            "values": rows,
        })
    }
}

/// n x l real matrix holding an absolute positional encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApeMatrix {
    n: usize,
    l: usize,
    values: Vec<f64>,
    pub name: String,
    pub quant_step: f64,
}

impl ApeMatrix {
    pub fn new(n: usize, l: usize, values: Vec<f64>, name: &str, quant_step: f64) -> Result<Self> {
        if values.len() != n * l {
            return Err(Error::SizeMismatch { expected: n * l, got: values.len() });
        }
        if quant_step.is_nan() || quant_step <= 0.0 {
            return Err(Error::BadQuantStep(quant_step));
        }
        for &x in &values {
            if !x.is_finite() {
                return Err(Error::NonFinite { value: x, context: format!("ape matrix {name}") });
            }
        }
        Ok(ApeMatrix { n, l, values, name: name.to_string(), quant_step })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.l
    }

    pub fn row(&self, v: usize) -> &[f64] {
        &self.values[v * self.l..(v + 1) * self.l]
    }

    pub fn tokenize(&self) -> Result<TokenizedApe> {
        let mut tokens = Vec::with_capacity(self.values.len());
        for &x in &self.values {
            tokens.push(quantize(x, self.quant_step)?);
        }
        Ok(TokenizedApe { n: self.n, l: self.l, tokens })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> =
            (0..self.n).map(|v| serde_json::json!(self.row(v))).collect();
        serde_json::json!({
            "name": self.name,
            "n": self.n,
            "k": self.l,
            "quant_step": self.quant_step,
            "values": rows,
        })
    }
}

/// Quantized RPE: one token per (u, v, channel).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedRpe {
    n: usize,
    k: usize,
    tokens: Vec<Token>,
}

impl TokenizedRpe {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn channels(&self) -> usize {
        self.k
    }

    pub fn entry(&self, u: usize, v: usize) -> &[Token] {
        let base = (u * self.n + v) * self.k;
        &self.tokens[base..base + self.k]
    }

    /// Hash-ready bytes of the pair token.
    pub fn entry_bytes(&self, u: usize, v: usize) -> Vec<u8> {
        row_bytes(self.entry(u, v))
    }
}

/// Quantized APE: one token per (node, channel).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedApe {
    n: usize,
    l: usize,
    tokens: Vec<Token>,
}

impl TokenizedApe {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, v: usize) -> &[Token] {
        &self.tokens[v * self.l..(v + 1) * self.l]
    }

    pub fn row_bytes(&self, v: usize) -> Vec<u8> {
        row_bytes(self.row(v))
    }
}

/// The three RPE augmentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AugmentKind {
    /// Prepend an identity channel; makes any RPE diagonally aware.
    Diagonal,
    /// Prepend the adjacency channel; makes any RPE combinatorially aware.
    Combinatorial,
    /// Concatenate (psi, psi^T), doubling channels; makes any RPE
    /// pseudo-symmetric under coordinate swap.
    PseudoSymmetric,
}

/// Augments an RPE with structural channels from its graph.
pub fn augment(psi: &RpeTensor, kind: AugmentKind, g: &Graph) -> Result<RpeTensor> {
    if g.n() != psi.n() {
        return Err(Error::SizeMismatch { expected: psi.n(), got: g.n() });
    }
    let n = psi.n();
    match kind {
        AugmentKind::Diagonal => {
            let mut id = Vec::with_capacity(n * n);
            for u in 0..n {
                for v in 0..n {
                    id.push(if u == v { 1.0 } else { 0.0 });
                }
            }
            let id = RpeTensor::new(n, 1, id, "identity", psi.quant_step)?;
            id.stack(psi, &format!("{}+diag", psi.name))
        }
        AugmentKind::Combinatorial => {
            let mut adj = Vec::with_capacity(n * n);
            for u in 0..n {
                for v in 0..n {
                    adj.push(if g.has_edge(u, v) { 1.0 } else { 0.0 });
                }
            }
            let adj = RpeTensor::new(n, 1, adj, "adjacency", psi.quant_step)?;
            adj.stack(psi, &format!("{}+comb", psi.name))
        }
        AugmentKind::PseudoSymmetric => {
            let k = psi.channels();
            let mut transposed = Vec::with_capacity(n * n * k);
            for u in 0..n {
                for v in 0..n {
                    transposed.extend_from_slice(psi.entry(v, u));
                }
            }
            let t = RpeTensor::new(n, k, transposed, "transpose", psi.quant_step)?;
            psi.stack(&t, &format!("{}+sym", psi.name))
        }
    }
}
