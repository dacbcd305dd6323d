//! WL refinement engines and the indistinguishability predicates.
//!
//! Three engines share the color machinery: classical WL over neighbor
//! multisets, RPE-augmented WL whose update ranges over all nodes, and
//! pair refinement over V x V. Colors are content-addressed, so
//! histories from different graphs compare exactly.

mod color;

pub use color::{histogram_digest, multiset_square, ColorBuilder, ColorId, Tag};

use crate::encode::{quantize, row_bytes, ApeMatrix, RpeTensor, TokenizedRpe, DEFAULT_QUANT_STEP};
use crate::error::{Error, Result};
use crate::graph::FeaturedGraph;
use serde::{Deserialize, Serialize};

/// Practical cap for pair refinement: n^2 pair colors, up to n^2 rounds.
pub const PAIR_REFINEMENT_CAP: usize = 64;

/// Per-round node colorings plus the first round whose partition
/// repeats the previous one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColorHistory {
    pub rounds: Vec<Vec<ColorId>>,
    pub stable_round: usize,
}

impl ColorHistory {
    pub fn digests(&self) -> Vec<ColorId> {
        self.rounds.iter().map(|r| histogram_digest(r)).collect()
    }

    /// Number of color classes per round.
    pub fn class_counts(&self) -> Vec<usize> {
        self.rounds.iter().map(|r| distinct(r)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "stable_round": self.stable_round,
            "rounds": self.rounds.iter().map(|r| {
                r.iter().map(ColorId::hex).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "histogram_digests": self.digests().iter().map(ColorId::hex).collect::<Vec<_>>(),
        })
    }
}

/// Per-round colorings of ordered vertex pairs, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairColorHistory {
    pub n: usize,
    pub rounds: Vec<Vec<ColorId>>,
    pub stable_round: usize,
}

impl PairColorHistory {
    pub fn digests(&self) -> Vec<ColorId> {
        self.rounds.iter().map(|r| histogram_digest(r)).collect()
    }

    pub fn color(&self, round: usize, u: usize, v: usize) -> ColorId {
        self.rounds[round][u * self.n + v]
    }

    pub fn class_counts(&self) -> Vec<usize> {
        self.rounds.iter().map(|r| distinct(r)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "stable_round": self.stable_round,
            "rounds": self.rounds.iter().map(|r| {
                r.iter().map(ColorId::hex).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "histogram_digests": self.digests().iter().map(ColorId::hex).collect::<Vec<_>>(),
        })
    }
}

fn distinct(colors: &[ColorId]) -> usize {
    let mut sorted: Vec<&ColorId> = colors.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Initial color of a node: its quantized feature row. Unfeatured graphs
/// (d = 0) use the constant feature 1.
fn feature_token_bytes(g: &FeaturedGraph, v: usize) -> Result<Vec<u8>> {
    let row = g.feature_row(v);
    if row.is_empty() {
        return Ok(row_bytes(&[quantize(1.0, DEFAULT_QUANT_STEP)?]));
    }
    let tokens: Result<Vec<_>> =
        row.iter().map(|&x| quantize(x, DEFAULT_QUANT_STEP)).collect();
    Ok(row_bytes(&tokens?))
}

fn initial_colors(g: &FeaturedGraph) -> Result<Vec<ColorId>> {
    (0..g.n())
        .map(|v| {
            let bytes = feature_token_bytes(g, v)?;
            Ok(ColorBuilder::new(Tag::NodeInit).bytes(&bytes).finish())
        })
        .collect()
}

/// Classical WL: update over neighbor color multisets. Runs to the
/// stable partition, and past it up to `min_rounds` when a pair
/// comparison needs aligned histories.
pub fn wl_classical_with(g: &FeaturedGraph, min_rounds: usize) -> Result<ColorHistory> {
    let n = g.n();
    let mut rounds = vec![initial_colors(g)?];
    let mut stable = None;
    while stable.is_none() || rounds.len() <= min_rounds {
        let prev = rounds.last().expect("at least one round");
        let next: Vec<ColorId> = (0..n)
            .map(|v| {
                let mut children: Vec<ColorId> =
                    g.graph.neighbors(v).iter().map(|&u| prev[u]).collect();
                ColorBuilder::new(Tag::ClassicalUpdate)
                    .color(&prev[v])
                    .sorted_colors(&mut children)
                    .finish()
            })
            .collect();
        if stable.is_none() && distinct(&next) == distinct(prev) {
            stable = Some(rounds.len());
        }
        rounds.push(next);
        debug_assert!(rounds.len() <= n.max(min_rounds) + 2);
    }
    Ok(ColorHistory { rounds, stable_round: stable.expect("stability reached") })
}

pub fn wl_classical(g: &FeaturedGraph) -> Result<ColorHistory> {
    wl_classical_with(g, 0)
}

/// RPE-augmented WL: the update aggregates (color, token) pairs over all
/// nodes, pairing each node u with the token of psi(v, u).
pub fn rpe_aug_wl_with(
    g: &FeaturedGraph,
    psi: &RpeTensor,
    min_rounds: usize,
) -> Result<ColorHistory> {
    let n = g.n();
    if psi.n() != n {
        return Err(Error::SizeMismatch { expected: n, got: psi.n() });
    }
    let tokens = psi.tokenize()?;
    let mut rounds = vec![initial_colors(g)?];
    let mut stable = None;
    while stable.is_none() || rounds.len() <= min_rounds {
        let prev = rounds.last().expect("at least one round");
        let next: Vec<ColorId> = (0..n)
            .map(|v| {
                let mut items: Vec<Vec<u8>> = (0..n)
                    .map(|u| {
                        let mut item = Vec::with_capacity(16 + psi.channels() * 16);
                        item.extend_from_slice(&prev[u].0);
                        item.extend_from_slice(&tokens.entry_bytes(v, u));
                        item
                    })
                    .collect();
                ColorBuilder::new(Tag::AugUpdate)
                    .color(&prev[v])
                    .count(psi.channels())
                    .sorted_items(&mut items)
                    .finish()
            })
            .collect();
        if stable.is_none() && distinct(&next) == distinct(prev) {
            stable = Some(rounds.len());
        }
        rounds.push(next);
        debug_assert!(rounds.len() <= n.max(min_rounds) + 2);
    }
    Ok(ColorHistory { rounds, stable_round: stable.expect("stability reached") })
}

pub fn rpe_aug_wl(g: &FeaturedGraph, psi: &RpeTensor) -> Result<ColorHistory> {
    rpe_aug_wl_with(g, psi, 0)
}

fn pair_initial(g: &FeaturedGraph, tokens: &TokenizedRpe) -> Result<Vec<ColorId>> {
    let n = g.n();
    let feats: Result<Vec<Vec<u8>>> = (0..n).map(|v| feature_token_bytes(g, v)).collect();
    let feats = feats?;
    let mut colors = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            colors.push(
                ColorBuilder::new(Tag::PairInit)
                    .bytes(&feats[u])
                    .bytes(&feats[v])
                    .bytes(&tokens.entry_bytes(u, v))
                    .finish(),
            );
        }
    }
    Ok(colors)
}

/// Pair refinement: initial color (X(u), X(v), psi(u,v)); update combines
/// the pair's own color with its row and column color multisets.
pub fn rpe_2_wl_with(
    g: &FeaturedGraph,
    psi: &RpeTensor,
    min_rounds: usize,
) -> Result<PairColorHistory> {
    let n = g.n();
    if psi.n() != n {
        return Err(Error::SizeMismatch { expected: n, got: psi.n() });
    }
    if n > PAIR_REFINEMENT_CAP {
        return Err(Error::PairCapExceeded { n, cap: PAIR_REFINEMENT_CAP });
    }
    let tokens = psi.tokenize()?;
    let mut rounds = vec![pair_initial(g, &tokens)?];
    let mut stable = None;
    while stable.is_none() || rounds.len() <= min_rounds {
        let prev = rounds.last().expect("at least one round");
        let mut next = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let mut row: Vec<ColorId> = (0..n).map(|w| prev[u * n + w]).collect();
                let mut col: Vec<ColorId> = (0..n).map(|w| prev[w * n + v]).collect();
                next.push(
                    ColorBuilder::new(Tag::PairUpdate)
                        .color(&prev[u * n + v])
                        .sorted_colors(&mut row)
                        .sorted_colors(&mut col)
                        .finish(),
                );
            }
        }
        if stable.is_none() && distinct(&next) == distinct(prev) {
            stable = Some(rounds.len());
        }
        rounds.push(next);
        debug_assert!(rounds.len() <= (n * n).max(min_rounds) + 2);
    }
    Ok(PairColorHistory { n, rounds, stable_round: stable.expect("stability reached") })
}

pub fn rpe_2_wl(g: &FeaturedGraph, psi: &RpeTensor) -> Result<PairColorHistory> {
    rpe_2_wl_with(g, psi, 0)
}

/// Outcome of a pair comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub distinguishable: bool,
    /// First round whose histograms differ, when distinguishable.
    pub separating_round: Option<usize>,
    pub rounds_compared: usize,
    pub digests_a: Vec<String>,
    pub digests_b: Vec<String>,
}

impl Verdict {
    fn from_digests(da: Vec<ColorId>, db: Vec<ColorId>) -> Verdict {
        debug_assert_eq!(da.len(), db.len());
        let separating_round = da.iter().zip(&db).position(|(a, b)| a != b);
        Verdict {
            distinguishable: separating_round.is_some(),
            separating_round,
            rounds_compared: da.len(),
            digests_a: da.iter().map(ColorId::hex).collect(),
            digests_b: db.iter().map(ColorId::hex).collect(),
        }
    }

    /// Single-round verdict for the raw (round-0) predicates.
    fn from_multisets(a: ColorId, b: ColorId) -> Verdict {
        Verdict::from_digests(vec![a], vec![b])
    }
}

/// The indistinguishability predicates: raw encodings compare multisets,
/// refinement tests compare per-round histograms through the later
/// stabilization. Stable partitions reproduce themselves, so agreement
/// through that round settles every later round.
pub enum PairTest<'a> {
    Classical,
    RawApe(&'a ApeMatrix, &'a ApeMatrix),
    RawRpe(&'a RpeTensor, &'a RpeTensor),
    PsiWl(&'a RpeTensor, &'a RpeTensor),
    Psi2Wl(&'a RpeTensor, &'a RpeTensor),
}

pub fn compare(a: &FeaturedGraph, b: &FeaturedGraph, test: PairTest<'_>) -> Result<Verdict> {
    match test {
        PairTest::Classical => {
            let ha = wl_classical(a)?;
            let hb = wl_classical(b)?;
            let target = ha.stable_round.max(hb.stable_round);
            let ha = if ha.rounds.len() <= target { wl_classical_with(a, target)? } else { ha };
            let hb = if hb.rounds.len() <= target { wl_classical_with(b, target)? } else { hb };
            Ok(Verdict::from_digests(
                ha.digests()[..=target].to_vec(),
                hb.digests()[..=target].to_vec(),
            ))
        }
        PairTest::PsiWl(pa, pb) => {
            check_compatible(pa.channels(), pb.channels(), pa.quant_step, pb.quant_step)?;
            let ha = rpe_aug_wl(a, pa)?;
            let hb = rpe_aug_wl(b, pb)?;
            let target = ha.stable_round.max(hb.stable_round);
            let ha =
                if ha.rounds.len() <= target { rpe_aug_wl_with(a, pa, target)? } else { ha };
            let hb =
                if hb.rounds.len() <= target { rpe_aug_wl_with(b, pb, target)? } else { hb };
            Ok(Verdict::from_digests(
                ha.digests()[..=target].to_vec(),
                hb.digests()[..=target].to_vec(),
            ))
        }
        PairTest::Psi2Wl(pa, pb) => {
            check_compatible(pa.channels(), pb.channels(), pa.quant_step, pb.quant_step)?;
            let ha = rpe_2_wl(a, pa)?;
            let hb = rpe_2_wl(b, pb)?;
            let target = ha.stable_round.max(hb.stable_round);
            let ha = if ha.rounds.len() <= target { rpe_2_wl_with(a, pa, target)? } else { ha };
            let hb = if hb.rounds.len() <= target { rpe_2_wl_with(b, pb, target)? } else { hb };
            Ok(Verdict::from_digests(
                ha.digests()[..=target].to_vec(),
                hb.digests()[..=target].to_vec(),
            ))
        }
        PairTest::RawApe(pa, pb) => {
            check_compatible(pa.dim(), pb.dim(), pa.quant_step, pb.quant_step)?;
            Ok(Verdict::from_multisets(raw_ape_digest(a, pa)?, raw_ape_digest(b, pb)?))
        }
        PairTest::RawRpe(pa, pb) => {
            check_compatible(pa.channels(), pb.channels(), pa.quant_step, pb.quant_step)?;
            Ok(Verdict::from_multisets(raw_rpe_digest(a, pa)?, raw_rpe_digest(b, pb)?))
        }
    }
}

fn check_compatible(ka: usize, kb: usize, qa: f64, qb: f64) -> Result<()> {
    if ka != kb {
        return Err(Error::ChannelMismatch { a: ka, b: kb });
    }
    if qa != qb {
        return Err(Error::QuantStepMismatch { a: qa, b: qb });
    }
    Ok(())
}

/// Digest of the multiset {(feature(v), phi(v))}.
fn raw_ape_digest(g: &FeaturedGraph, phi: &ApeMatrix) -> Result<ColorId> {
    if phi.n() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), got: phi.n() });
    }
    let tokens = phi.tokenize()?;
    let mut items: Vec<Vec<u8>> = (0..g.n())
        .map(|v| {
            let mut item = feature_token_bytes(g, v)?;
            item.extend_from_slice(&tokens.row_bytes(v));
            Ok(item)
        })
        .collect::<Result<_>>()?;
    Ok(ColorBuilder::new(Tag::Histogram).sorted_items(&mut items).finish())
}

/// Digest of the multiset {(feature(u), feature(v), psi(u,v))} over all
/// ordered pairs.
fn raw_rpe_digest(g: &FeaturedGraph, psi: &RpeTensor) -> Result<ColorId> {
    if psi.n() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), got: psi.n() });
    }
    let tokens = psi.tokenize()?;
    let n = g.n();
    let feats: Result<Vec<Vec<u8>>> = (0..n).map(|v| feature_token_bytes(g, v)).collect();
    let feats = feats?;
    let mut items: Vec<Vec<u8>> = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let mut item = feats[u].clone();
            item.extend_from_slice(&feats[v]);
            item.extend_from_slice(&tokens.entry_bytes(u, v));
            items.push(item);
        }
    }
    Ok(ColorBuilder::new(Tag::Histogram).sorted_items(&mut items).finish())
}
