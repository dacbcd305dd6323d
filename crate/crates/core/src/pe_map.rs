//! Conversions between absolute and relative positional encodings.
//!
//! APE -> RPE: an injective symmetric pairing of the two endpoint tokens.
//! Only token equality matters to refinement, so hashing the sorted pair
//! realizes an injective sum-of-features map on the observed finite value
//! set without magnitude blowup.
//!
//! RPE -> APE: a canonical per-node readout of the stable pair-refinement
//! coloring of the unfeatured graph. Pair refinement upper-bounds every
//! second-order equivariant readout, so verdict-level equivalence holds
//! on any finite corpus without training.

use crate::encode::{ApeMatrix, RpeTensor};
use crate::error::Result;
use crate::graph::{FeaturedGraph, Graph};
use crate::refine::{rpe_2_wl, ColorBuilder, ColorId, Tag};

/// Hash of the unordered token pair {phi(u), phi(v)} spread over four
/// exact u32 channels.
pub fn ape_to_rpe(phi: &ApeMatrix) -> Result<RpeTensor> {
    let n = phi.n();
    let tokens = phi.tokenize()?;
    let mut values = Vec::with_capacity(n * n * 4);
    for u in 0..n {
        for v in 0..n {
            let mut parts = vec![tokens.row_bytes(u), tokens.row_bytes(v)];
            parts.sort_unstable();
            let mut b = ColorBuilder::new(Tag::UnorderedPair);
            for part in &parts {
                b.bytes(part);
            }
            push_hash_channels(&mut values, b.finish());
        }
    }
    RpeTensor::new(n, 4, values, &format!("pair[{}]", phi.name), 1.0)
}

/// Canonical APE readout produced by `rpe_to_ape_canonical`.
#[derive(Debug, Clone)]
pub struct CanonicalApe {
    pub ape: ApeMatrix,
    /// True when the input lacked an identity channel and diagonal
    /// augmentation was applied automatically.
    pub auto_augmented: bool,
}

/// Per-node token from the stable pair-refinement coloring of the
/// unfeatured graph: hash of (chi(v,v), row multiset, column multiset).
/// Tensors without an identity channel are diagonally augmented first.
pub fn rpe_to_ape_canonical(g: &Graph, psi: &RpeTensor) -> Result<CanonicalApe> {
    let auto_augmented = !has_identity_channel(psi);
    let augmented;
    let working = if auto_augmented {
        augmented = crate::encode::augment(psi, crate::encode::AugmentKind::Diagonal, g)?;
        &augmented
    } else {
        psi
    };
    let unfeatured = FeaturedGraph::unfeatured(g.clone());
    let history = rpe_2_wl(&unfeatured, working)?;
    let n = g.n();
    let stable = history.stable_round;
    let mut values = Vec::with_capacity(n * 4);
    for v in 0..n {
        let mut row: Vec<ColorId> = (0..n).map(|w| history.color(stable, v, w)).collect();
        let mut col: Vec<ColorId> = (0..n).map(|w| history.color(stable, w, v)).collect();
        let token = ColorBuilder::new(Tag::CanonicalReadout)
            .color(&history.color(stable, v, v))
            .sorted_colors(&mut row)
            .sorted_colors(&mut col)
            .finish();
        push_hash_channels(&mut values, token);
    }
    let ape = ApeMatrix::new(n, 4, values, &format!("canon[{}]", psi.name), 1.0)?;
    Ok(CanonicalApe { ape, auto_augmented })
}

fn push_hash_channels(values: &mut Vec<f64>, id: ColorId) {
    for chunk in id.0.chunks(4) {
        let word = u32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
        values.push(word as f64);
    }
}

fn has_identity_channel(psi: &RpeTensor) -> bool {
    let n = psi.n();
    'channel: for c in 0..psi.channels() {
        for u in 0..n {
            for v in 0..n {
                let want = if u == v { 1.0 } else { 0.0 };
                if psi.value(u, v, c) != want {
                    continue 'channel;
                }
            }
        }
        return true;
    }
    false
}
