//! Brute-force feature-isomorphism oracle for small graphs.

use super::FeaturedGraph;
use crate::error::{Error, Result};

/// Hard cap on the oracle; beyond this it refuses rather than guesses.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// True iff some permutation maps edges to edges and feature rows to
/// equal feature rows. Prunes by degree and feature multisets before
/// searching.
pub fn brute_force_isomorphic(a: &FeaturedGraph, b: &FeaturedGraph) -> Result<bool> {
    let n = a.n();
    if n != b.n() {
        return Ok(false);
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleScaleExceeded { n, limit: BRUTE_FORCE_LIMIT });
    }
    if a.graph.directed() != b.graph.directed() {
        return Ok(false);
    }
    if a.feature_dim() != b.feature_dim() {
        return Ok(false);
    }
    if a.graph.edge_count() != b.graph.edge_count() {
        return Ok(false);
    }
    if a.graph.degree_multiset() != b.graph.degree_multiset() {
        return Ok(false);
    }
    if sorted_feature_rows(a) != sorted_feature_rows(b) {
        return Ok(false);
    }

    // Candidate images for each vertex, filtered by (degree, feature row).
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for u in 0..n {
        let row: Vec<u64> = a.feature_row(u).iter().map(|x| x.to_bits()).collect();
        let cand: Vec<usize> = (0..n)
            .filter(|&x| {
                b.graph.degree(x) == a.graph.degree(u)
                    && b.feature_row(x).iter().map(|v| v.to_bits()).collect::<Vec<_>>() == row
            })
            .collect();
        if cand.is_empty() {
            return Ok(false);
        }
        candidates.push(cand);
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(a, b, 0, &mut image, &mut used, &candidates))
}

fn sorted_feature_rows(g: &FeaturedGraph) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = (0..g.n())
        .map(|v| g.feature_row(v).iter().map(|x| x.to_bits()).collect())
        .collect();
    rows.sort();
    rows
}

fn extend(
    a: &FeaturedGraph,
    b: &FeaturedGraph,
    u: usize,
    image: &mut [usize],
    used: &mut [bool],
    candidates: &[Vec<usize>],
) -> bool {
    let n = a.n();
    if u == n {
        return true;
    }
    'next: for &x in &candidates[u] {
        if used[x] {
            continue;
        }
        // Consistency with already-mapped vertices.
        for w in 0..u {
            if a.graph.has_edge(u, w) != b.graph.has_edge(x, image[w]) {
                continue 'next;
            }
            if a.graph.directed() && a.graph.has_edge(w, u) != b.graph.has_edge(image[w], x) {
                continue 'next;
            }
        }
        image[u] = x;
        used[x] = true;
        if extend(a, b, u + 1, image, used, candidates) {
            return true;
        }
        image[u] = usize::MAX;
        used[x] = false;
    }
    false
}
