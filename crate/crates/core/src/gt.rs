//! Forward-pass graph transformers with seeded random weights.
//!
//! No training happens here; the module exists to property-test
//! permutation equivariance and the refinement/transformer equivalences.

use crate::encode::{ApeMatrix, RpeTensor};
use crate::error::{Error, Result};
use crate::graph::FeaturedGraph;
use crate::refine::{ColorBuilder, Tag};
use crate::spectral::DenseMatrix;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// How an APE enters the input features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ApeMode {
    /// X' = [X | phi]; model dimension is d_x + l.
    Concat,
    /// X' = X + phi; requires l == d_x.
    Add,
}

/// Which family of entrywise attention maps f1, f2 to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RpeMapKind {
    /// f(x) = w . x + b with seeded random weights.
    ChannelLinear,
    /// Gaussian kernel embeddings followed by a two-layer random
    /// perceptron.
    GaussianMlp,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformerConfig {
    pub layers: usize,
    pub heads: usize,
    /// Model dimension d (after APE incorporation).
    pub d_model: usize,
    /// Per-head dimension d_h.
    pub d_head: usize,
    /// Feed-forward (residual) dimension d_r.
    pub d_ff: usize,
    pub seed: u64,
    pub ape_mode: ApeMode,
    pub rpe_map_kind: RpeMapKind,
}

impl TransformerConfig {
    pub fn small(seed: u64) -> Self {
        TransformerConfig {
            layers: 2,
            heads: 2,
            d_model: 6,
            d_head: 4,
            d_ff: 8,
            seed,
            ape_mode: ApeMode::Concat,
            rpe_map_kind: RpeMapKind::GaussianMlp,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d_model == 0 || self.d_head == 0 || self.d_ff == 0 {
            return Err(Error::GtDimension("dimensions must be at least 1".into()));
        }
        Ok(())
    }
}

/// tanh-form GELU with fixed constants.
fn gelu(x: f64) -> f64 {
    const C: f64 = 0.7978845608028654; // sqrt(2/pi)
    0.5 * x * (1.0 + (C * (x + 0.044715 * x * x * x)).tanh())
}

/// Seeded weight matrix for a named role; entries uniform in
/// (-1/sqrt(fan_in), 1/sqrt(fan_in)). The stream is keyed by
/// (seed, layer, head, role), so every consumer regenerates identical
/// weights without sharing state.
fn weight(seed: u64, layer: usize, head: usize, role: u8, rows: usize, cols: usize) -> DenseMatrix {
    let key = seed
        ^ (layer as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (head as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
        ^ (role as u64).wrapping_mul(0x1656_67b1_9e37_79f9);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    let scale = 1.0 / (rows.max(1) as f64).sqrt();
    let mut m = DenseMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, (unit(&mut rng) * 2.0 - 1.0) * scale);
        }
    }
    m
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// All-zero weights of the same shapes; with them the transformer is
/// exactly the identity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightInit {
    Seeded,
    Zero,
}

/// Entrywise maps f1, f2 applied to the RPE tensor.
#[derive(Debug, Clone)]
pub struct RpeAttentionMaps {
    kind: RpeMapKind,
    /// (weights, bias) per map for the linear kind.
    linear: [(Vec<f64>, f64); 2],
    /// Gaussian kernel centers/widths and MLP weights per map.
    gaussian: [GaussianMlp; 2],
    /// f1 = 1 and f2 = 0, ignoring the parameters above.
    neutral: bool,
}

#[derive(Debug, Clone)]
struct GaussianMlp {
    centers: Vec<Vec<f64>>,
    widths: Vec<f64>,
    w1: DenseMatrix,
    w2: Vec<f64>,
}

const GAUSSIAN_KERNELS: usize = 8;

impl RpeAttentionMaps {
    pub fn seeded(kind: RpeMapKind, channels: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa076_1d64_78bd_642f);
        let mut linear = Vec::new();
        let mut gaussian = Vec::new();
        for _ in 0..2 {
            let weights: Vec<f64> =
                (0..channels).map(|_| unit(&mut rng) * 2.0 - 1.0).collect();
            let bias = unit(&mut rng) * 2.0 - 1.0;
            linear.push((weights, bias));

            let centers: Vec<Vec<f64>> = (0..GAUSSIAN_KERNELS)
                .map(|_| (0..channels).map(|_| unit(&mut rng) * 4.0 - 2.0).collect())
                .collect();
            let widths: Vec<f64> =
                (0..GAUSSIAN_KERNELS).map(|_| 0.5 + unit(&mut rng)).collect();
            let mut w1 = DenseMatrix::zeros(GAUSSIAN_KERNELS, GAUSSIAN_KERNELS);
            for i in 0..GAUSSIAN_KERNELS {
                for j in 0..GAUSSIAN_KERNELS {
                    w1.set(i, j, unit(&mut rng) * 2.0 - 1.0);
                }
            }
            let w2: Vec<f64> =
                (0..GAUSSIAN_KERNELS).map(|_| unit(&mut rng) * 2.0 - 1.0).collect();
            gaussian.push(GaussianMlp { centers, widths, w1, w2 });
        }
        RpeAttentionMaps {
            kind,
            linear: [linear.remove(0), linear.remove(0)],
            gaussian: [gaussian.remove(0), gaussian.remove(0)],
            neutral: false,
        }
    }

    /// f1 = 1, f2 = 0: the RPE contributes nothing and the layer reduces
    /// to plain attention.
    pub fn neutral(channels: usize) -> Self {
        let mut maps = Self::seeded(RpeMapKind::ChannelLinear, channels, 0);
        maps.neutral = true;
        maps
    }

    fn eval(&self, which: usize, x: &[f64]) -> f64 {
        if self.neutral {
            return if which == 0 { 1.0 } else { 0.0 };
        }
        match self.kind {
            RpeMapKind::ChannelLinear => {
                let (w, b) = &self.linear[which];
                w.iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>() + b
            }
            RpeMapKind::GaussianMlp => {
                let g = &self.gaussian[which];
                let mut hidden_in = [0.0; GAUSSIAN_KERNELS];
                for (k, (c, s)) in g.centers.iter().zip(&g.widths).enumerate() {
                    let sq: f64 = c.iter().zip(x).map(|(ci, xi)| (ci - xi) * (ci - xi)).sum();
                    hidden_in[k] = (-sq / (2.0 * s * s)).exp();
                }
                let mut out = 0.0;
                for j in 0..GAUSSIAN_KERNELS {
                    let mut pre = 0.0;
                    for (k, h) in hidden_in.iter().enumerate() {
                        pre += g.w1.get(k, j) * h;
                    }
                    out += g.w2[j] * gelu(pre);
                }
                out
            }
        }
    }
}

/// One multiheaded attention + feed-forward layer.
#[allow(clippy::too_many_arguments)]
fn layer_forward(
    x: &DenseMatrix,
    cfg: &TransformerConfig,
    layer: usize,
    init: WeightInit,
    rpe: Option<(&RpeTensor, &RpeAttentionMaps)>,
) -> Result<DenseMatrix> {
    let n = x.rows();
    let d = cfg.d_model;
    let get_weight = |head: usize, role: u8, rows: usize, cols: usize| match init {
        WeightInit::Seeded => weight(cfg.seed, layer, head, role, rows, cols),
        WeightInit::Zero => DenseMatrix::zeros(rows, cols),
    };

    let mut head_sum = DenseMatrix::zeros(n, cfg.d_head);
    for h in 0..cfg.heads {
        let wq = get_weight(h, 1, d, cfg.d_head);
        let wk = get_weight(h, 2, d, cfg.d_head);
        let wv = get_weight(h, 3, d, cfg.d_head);
        let q = x.mul(&wq);
        let k = x.mul(&wk);
        let v = x.mul(&wv);

        let inv_sqrt = 1.0 / (cfg.d_head as f64).sqrt();
        let mut scores = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut dot = 0.0;
                for c in 0..cfg.d_head {
                    dot += q.get(i, c) * k.get(j, c);
                }
                let mut s = dot * inv_sqrt;
                if let Some((psi, maps)) = rpe {
                    let bias = maps.eval(1, psi.entry(i, j));
                    if !bias.is_finite() {
                        return Err(Error::NonFinite {
                            value: bias,
                            context: "attention bias f2".into(),
                        });
                    }
                    s += bias;
                }
                scores.set(i, j, s);
            }
        }

        // Row softmax with max subtraction; each row must sum to 1
        // before any gate is applied.
        let mut attn = DenseMatrix::zeros(n, n);
        for i in 0..n {
            let row_max =
                (0..n).map(|j| scores.get(i, j)).fold(f64::NEG_INFINITY, f64::max);
            let mut total = 0.0;
            for j in 0..n {
                let e = (scores.get(i, j) - row_max).exp();
                attn.set(i, j, e);
                total += e;
            }
            for j in 0..n {
                attn.set(i, j, attn.get(i, j) / total);
            }
            let check: f64 = (0..n).map(|j| attn.get(i, j)).sum();
            if n > 0 && (check - 1.0).abs() > 1e-9 {
                return Err(Error::SoftmaxRowSum { row: i, sum: check });
            }
            if let Some((psi, maps)) = rpe {
                for j in 0..n {
                    attn.set(i, j, attn.get(i, j) * maps.eval(0, psi.entry(i, j)));
                }
            }
        }

        head_sum = head_sum.add(&attn.mul(&v));
    }

    let wo = get_weight(0, 4, cfg.d_head, d);
    let y = x.add(&head_sum.mul(&wo));

    let w1 = get_weight(0, 5, d, cfg.d_ff);
    let w2 = get_weight(0, 6, cfg.d_ff, d);
    let mut hidden = y.mul(&w1);
    for i in 0..n {
        for j in 0..cfg.d_ff {
            hidden.set(i, j, gelu(hidden.get(i, j)));
        }
    }
    Ok(y.add(&hidden.mul(&w2)))
}

fn assemble_input(x: &FeaturedGraph, phi: &ApeMatrix, cfg: &TransformerConfig) -> Result<DenseMatrix> {
    let n = x.n();
    if phi.n() != n {
        return Err(Error::SizeMismatch { expected: n, got: phi.n() });
    }
    let d_x = x.feature_dim();
    match cfg.ape_mode {
        ApeMode::Concat => {
            if d_x + phi.dim() != cfg.d_model {
                return Err(Error::GtDimension(format!(
                    "concat input dim {} != d_model {}",
                    d_x + phi.dim(),
                    cfg.d_model
                )));
            }
            let mut out = DenseMatrix::zeros(n, cfg.d_model);
            for v in 0..n {
                for (c, &val) in x.feature_row(v).iter().enumerate() {
                    out.set(v, c, val);
                }
                for (c, &val) in phi.row(v).iter().enumerate() {
                    out.set(v, d_x + c, val);
                }
            }
            Ok(out)
        }
        ApeMode::Add => {
            if d_x != cfg.d_model || phi.dim() != cfg.d_model {
                return Err(Error::GtDimension(format!(
                    "add mode needs feature dim {} and ape dim {} equal to d_model {}",
                    d_x,
                    phi.dim(),
                    cfg.d_model
                )));
            }
            let mut out = DenseMatrix::zeros(n, cfg.d_model);
            for v in 0..n {
                for c in 0..cfg.d_model {
                    out.set(v, c, x.feature_row(v)[c] + phi.row(v)[c]);
                }
            }
            Ok(out)
        }
    }
}

fn plain_input(x: &FeaturedGraph, cfg: &TransformerConfig) -> Result<DenseMatrix> {
    if x.feature_dim() != cfg.d_model {
        return Err(Error::GtDimension(format!(
            "feature dim {} != d_model {}",
            x.feature_dim(),
            cfg.d_model
        )));
    }
    let n = x.n();
    let mut out = DenseMatrix::zeros(n, cfg.d_model);
    for v in 0..n {
        for (c, &val) in x.feature_row(v).iter().enumerate() {
            out.set(v, c, val);
        }
    }
    Ok(out)
}

/// APE transformer forward pass: APE enters the features, attention is
/// unmodified.
pub fn forward_ape_gt(
    x: &FeaturedGraph,
    phi: &ApeMatrix,
    cfg: &TransformerConfig,
    init: WeightInit,
) -> Result<DenseMatrix> {
    cfg.validate()?;
    let mut state = assemble_input(x, phi, cfg)?;
    for l in 0..cfg.layers {
        state = layer_forward(&state, cfg, l, init, None)?;
    }
    Ok(state)
}

/// RPE transformer forward pass: f1 gates attention after the softmax,
/// f2 biases the scores inside it.
pub fn forward_rpe_gt(
    x: &FeaturedGraph,
    psi: &RpeTensor,
    maps: &RpeAttentionMaps,
    cfg: &TransformerConfig,
    init: WeightInit,
) -> Result<DenseMatrix> {
    cfg.validate()?;
    if psi.n() != x.n() {
        return Err(Error::SizeMismatch { expected: x.n(), got: psi.n() });
    }
    let mut state = plain_input(x, cfg)?;
    for l in 0..cfg.layers {
        state = layer_forward(&state, cfg, l, init, Some((psi, maps)))?;
    }
    Ok(state)
}

/// Embeds categorical token rows (e.g. canonical APE tokens) through a
/// seeded random codebook: one fixed random vector per distinct token
/// row, keyed by the token content so the embedding is a pure function
/// of the token.
pub fn embed_tokens(ape: &ApeMatrix, dim: usize, seed: u64) -> Result<ApeMatrix> {
    let tokens = ape.tokenize()?;
    let n = ape.n();
    let mut values = Vec::with_capacity(n * dim);
    for v in 0..n {
        let key = ColorBuilder::new(Tag::NodeInit).bytes(&tokens.row_bytes(v)).finish();
        let mut key_bytes = [0u8; 8];
        key_bytes.copy_from_slice(&key.0[..8]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from_le_bytes(key_bytes));
        for _ in 0..dim {
            values.push(unit(&mut rng) * 2.0 - 1.0);
        }
    }
    ApeMatrix::new(n, dim, values, &format!("embed[{}]", ape.name), ape.quant_step)
}

/// Rows sorted lexicographically; the multiset view of an output.
pub fn sorted_rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    rows.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    rows
}

/// Max relative difference between two row sets.
pub fn max_rel_row_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            let scale = x.abs().max(y.abs()).max(1.0);
            worst = worst.max((x - y).abs() / scale);
        }
    }
    worst
}
