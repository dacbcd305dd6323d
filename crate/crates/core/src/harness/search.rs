//! Exhaustive enumeration oracles over small graphs.

use super::encoding::RpeId;
use crate::error::Result;
use crate::graph::{FeaturedGraph, Graph};
use crate::refine::{rpe_aug_wl, ColorId, ColorHistory};
use rayon::prelude::*;

/// Refinement signature faithful to indistinguishability: the per-round
/// histogram digests through the first stable round. Two graphs are
/// indistinguishable iff their signatures are equal (a graph that
/// stabilizes later has strictly more classes at the extra rounds, which
/// already separates the histograms).
fn signature(history: &ColorHistory) -> Vec<ColorId> {
    history.digests()[..=history.stable_round].to_vec()
}

fn wl_signature(g: &Graph, id: &RpeId) -> Result<Vec<ColorId>> {
    let psi = id.compute(g, g.n())?;
    let fg = FeaturedGraph::unfeatured(g.clone());
    Ok(signature(&rpe_aug_wl(&fg, &psi)?))
}

/// Result of the smallest-pair enumeration.
#[derive(Debug, Clone)]
pub struct SearchHit {
    pub n: usize,
    pub mask_a: u64,
    pub mask_b: u64,
    pub a: Graph,
    pub b: Graph,
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edge_list(n, false, &edges).expect("mask edges are valid")
}

/// Smallest pair of connected graphs (by vertex count, then by the
/// lexicographic (mask_a, mask_b) order over the ascending-pair edge
/// bitmask encoding) that resistance refinement separates while
/// shortest-path refinement does not. The frozen result feeds the
/// `CutvertexPair` generator.
pub fn smallest_rd_not_spd_pair(max_n: usize) -> Result<Option<SearchHit>> {
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let total: u64 = 1 << pairs.len();

        // Pass 1: shortest-path signatures for every connected graph, in
        // ascending mask order.
        let masks: Vec<u64> = (0..total).collect();
        let spd_sigs: Vec<Option<(u64, Vec<ColorId>)>> = masks
            .par_iter()
            .map(|&mask| {
                let g = graph_from_mask(n, &pairs, mask);
                if !g.is_connected() {
                    return Ok(None);
                }
                Ok(Some((mask, wl_signature(&g, &RpeId::Spd)?)))
            })
            .collect::<Result<_>>()?;
        let mut buckets: std::collections::HashMap<Vec<ColorId>, Vec<u64>> =
            std::collections::HashMap::new();
        for (mask, sig) in spd_sigs.into_iter().flatten() {
            buckets.entry(sig).or_default().push(mask);
        }

        // Pass 2: resistance signatures only inside shared buckets; any
        // two members with different resistance signatures witness the
        // property.
        let mut best: Option<(u64, u64)> = None;
        for group in buckets.values() {
            if group.len() < 2 {
                continue;
            }
            let rd_sigs: Vec<(u64, Vec<ColorId>)> = group
                .par_iter()
                .map(|&mask| {
                    let g = graph_from_mask(n, &pairs, mask);
                    Ok((mask, wl_signature(&g, &RpeId::Resistance)?))
                })
                .collect::<Result<_>>()?;
            // Members are already in ascending mask order.
            for i in 0..rd_sigs.len() {
                for j in i + 1..rd_sigs.len() {
                    if rd_sigs[i].1 != rd_sigs[j].1 {
                        let candidate = (rd_sigs[i].0, rd_sigs[j].0);
                        if best.is_none() || candidate < best.unwrap() {
                            best = Some(candidate);
                        }
                        break; // later j only increases the second mask
                    }
                }
            }
        }

        if let Some((mask_a, mask_b)) = best {
            return Ok(Some(SearchHit {
                n,
                mask_a,
                mask_b,
                a: graph_from_mask(n, &pairs, mask_a),
                b: graph_from_mask(n, &pairs, mask_b),
            }));
        }
    }
    Ok(None)
}
