//! Deterministic generators for the benchmark graph families.

use super::{FeaturedGraph, Graph};
use crate::error::{Error, Result};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Graph family descriptor. Every family is deterministic given its
/// parameters (and seed, where one applies).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    /// Star with `k` leaves (k + 1 vertices, center 0).
    Star(usize),
    /// Circular skip links graph: cycle edges {i, i±1 mod n} plus skip
    /// edges {i, i±s mod n}.
    Csl { n: usize, skip: usize },
    Gnp { n: usize, p: f64, seed: u64 },
    /// Cayley graph of Z4 x Z4, connection set ±{(1,0),(0,1),(1,1)}.
    Shrikhande,
    /// 4x4 rook's graph: vertices (i,j), adjacent iff same row or column.
    Rook4x4,
    /// Four-vertex, four-edge pair: C4 versus triangle with a pendant.
    FigAPair,
    /// C4 with features [1,2,3,4] versus C4 with features [1,3,2,4].
    FeaturedC4Pair,
    /// Smallest pair distinguishable by RD-WL but not by SPD-WL, found by
    /// exhaustive enumeration (see `harness::search`) and frozen here.
    CutvertexPair,
}

/// Output of a generator: a single graph or a labeled pair.
#[derive(Debug, Clone)]
pub enum Generated {
    Single(Graph),
    Pair(FeaturedGraph, FeaturedGraph),
}

impl Generated {
    /// Unwraps a single graph; panics on pair families.
    pub fn into_single(self) -> Graph {
        match self {
            Generated::Single(g) => g,
            Generated::Pair(..) => panic!("generator produced a pair, expected a single graph"),
        }
    }

    pub fn into_pair(self) -> (FeaturedGraph, FeaturedGraph) {
        match self {
            Generated::Pair(a, b) => (a, b),
            Generated::Single(_) => panic!("generator produced a single graph, expected a pair"),
        }
    }
}

pub fn generate(family: &Family) -> Result<Generated> {
    match *family {
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidFamily(format!("cycle requires n >= 3, got {n}")));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Ok(Generated::Single(Graph::from_edge_list(n, false, &edges)?))
        }
        Family::Path(n) => {
            if n == 0 {
                return Err(Error::InvalidFamily("path requires n >= 1".into()));
            }
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Ok(Generated::Single(Graph::from_edge_list(n, false, &edges)?))
        }
        Family::Complete(n) => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Ok(Generated::Single(Graph::from_edge_list(n, false, &edges)?))
        }
        Family::Star(k) => {
            if k == 0 {
                return Err(Error::InvalidFamily("star requires at least one leaf".into()));
            }
            let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
            Ok(Generated::Single(Graph::from_edge_list(k + 1, false, &edges)?))
        }
        Family::Csl { n, skip } => Ok(Generated::Single(csl(n, skip)?)),
        Family::Gnp { n, p, seed } => Ok(Generated::Single(gnp(n, p, seed)?)),
        Family::Shrikhande => Ok(Generated::Single(shrikhande())),
        Family::Rook4x4 => Ok(Generated::Single(rook4x4())),
        Family::FigAPair => {
            let c4 = generate(&Family::Cycle(4))?.into_single();
            let tri_pendant = Graph::from_edge_list(4, false, &[(0, 1), (1, 2), (2, 0), (2, 3)])?;
            Ok(Generated::Pair(
                FeaturedGraph::unfeatured(c4),
                FeaturedGraph::unfeatured(tri_pendant),
            ))
        }
        Family::FeaturedC4Pair => {
            let c4 = generate(&Family::Cycle(4))?.into_single();
            let a = FeaturedGraph::new(c4.clone(), 1, vec![1.0, 2.0, 3.0, 4.0])?;
            let b = FeaturedGraph::new(c4, 1, vec![1.0, 3.0, 2.0, 4.0])?;
            Ok(Generated::Pair(a, b))
        }
        Family::CutvertexPair => {
            let (a, b) = cutvertex_pair_frozen()?;
            Ok(Generated::Pair(FeaturedGraph::unfeatured(a), FeaturedGraph::unfeatured(b)))
        }
    }
}

fn csl(n: usize, skip: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidFamily(format!("csl requires n >= 4, got {n}")));
    }
    if skip == 0 || skip == 1 || skip + 1 == n || skip >= n {
        return Err(Error::InvalidFamily(format!(
            "csl skip must satisfy 2 <= s <= n-2, got s={skip}, n={n}"
        )));
    }
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, (i + skip) % n));
    }
    Graph::from_edge_list(n, false, &edges)
}

fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidFamily(format!("gnp probability out of [0,1]: {p}")));
    }
    // Integer threshold comparison keeps the stream byte-reproducible;
    // the boundary probabilities stay exact.
    let threshold = (p * (u64::MAX as f64)) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let draw = rng.next_u64();
            let keep = match p {
                0.0 => false,
                1.0 => true,
                _ => draw <= threshold,
            };
            if keep {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, false, &edges)
}

fn shrikhande() -> Graph {
    let idx = |i: usize, j: usize| 4 * (i % 4) + (j % 4);
    let conn: [(usize, usize); 6] = [(1, 0), (0, 1), (1, 1), (3, 0), (0, 3), (3, 3)];
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for &(di, dj) in &conn {
                let u = idx(i, j);
                let v = idx(i + di, j + dj);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::from_edge_list(16, false, &edges).expect("shrikhande construction is valid")
}

fn rook4x4() -> Graph {
    let idx = |i: usize, j: usize| 4 * i + j;
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in j + 1..4 {
                edges.push((idx(i, j), idx(i, k))); // same row
                edges.push((idx(j, i), idx(k, i))); // same column
            }
        }
    }
    Graph::from_edge_list(16, false, &edges).expect("rook construction is valid")
}

/// The frozen output of `harness::search::smallest_rd_not_spd_pair`:
/// the lexicographically first pair of connected graphs on the smallest
/// vertex count where resistance-distance refinement separates the pair
/// while shortest-path-distance refinement does not.
pub fn cutvertex_pair_frozen() -> Result<(Graph, Graph)> {
    let a = Graph::from_edge_list(6, false, CUTVERTEX_PAIR_EDGES_A)?;
    let b = Graph::from_edge_list(6, false, CUTVERTEX_PAIR_EDGES_B)?;
    Ok((a, b))
}

// Enumeration output: vertex count 6, edge bitmasks 2012 and 5941 over
// the ascending (u, v) pair order.
pub(crate) const CUTVERTEX_PAIR_EDGES_A: &[(usize, usize)] =
    &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4)];
pub(crate) const CUTVERTEX_PAIR_EDGES_B: &[(usize, usize)] =
    &[(0, 1), (0, 3), (0, 5), (1, 2), (1, 5), (2, 3), (2, 4), (3, 4)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csl_is_four_regular() {
        let g = csl(41, 2).unwrap();
        assert_eq!(g.n(), 41);
        assert_eq!(g.degree_multiset(), vec![4; 41]);
    }

    #[test]
    fn csl_rejects_degenerate_skips() {
        assert!(csl(41, 0).is_err());
        assert!(csl(41, 1).is_err());
        assert!(csl(41, 40).is_err());
    }

    #[test]
    fn fig_a_degree_multisets() {
        let (a, b) = generate(&Family::FigAPair).unwrap().into_pair();
        assert_eq!(a.graph.degree_multiset(), vec![2, 2, 2, 2]);
        assert_eq!(b.graph.degree_multiset(), vec![1, 2, 2, 3]);
        assert_eq!(a.graph.edge_count(), 4);
        assert_eq!(b.graph.edge_count(), 4);
    }

    #[test]
    fn srg_16_6_2_2_parameters() {
        // Brute-force common-neighbor counts for both graphs.
        for g in [shrikhande(), rook4x4()] {
            assert_eq!(g.n(), 16);
            assert_eq!(g.degree_multiset(), vec![6; 16]);
            // lambda = mu = 2: every pair has exactly two common neighbors.
            for u in 0..16 {
                for v in u + 1..16 {
                    let common = (0..16)
                        .filter(|&w| g.has_edge(u, w) && g.has_edge(v, w))
                        .count();
                    assert_eq!(common, 2, "common neighbors of ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn gnp_is_deterministic() {
        let a = gnp(12, 0.4, 7).unwrap();
        let b = gnp(12, 0.4, 7).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = gnp(12, 0.4, 8).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn generators_are_reproducible() {
        for family in [
            Family::Cycle(6),
            Family::Path(5),
            Family::Complete(4),
            Family::Star(3),
            Family::Csl { n: 41, skip: 3 },
            Family::Shrikhande,
            Family::Rook4x4,
        ] {
            let a = generate(&family).unwrap().into_single();
            let b = generate(&family).unwrap().into_single();
            assert_eq!(a.edges(), b.edges());
        }
    }
}
