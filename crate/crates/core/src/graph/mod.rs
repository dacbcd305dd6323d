//! Graph representation, permutations, generators, and structural algorithms.

mod bridges;
mod generate;
mod io;
mod iso;
mod tree;

pub use bridges::{block_cut_edge_tree, bridges, BlockCutEdgeTree};
pub use generate::{cutvertex_pair_frozen, generate, Family, Generated};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};
pub use iso::{brute_force_isomorphic, BRUTE_FORCE_LIMIT};
pub use tree::tree_isomorphic;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Simple unweighted graph, directed or undirected. No self-loops, no
/// duplicate edges. Undirected edges are stored once as (min, max).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
    /// In-neighbors; only populated for directed graphs.
    #[serde(skip)]
    radj: Vec<Vec<usize>>,
}

/// Deserialization revalidates and rebuilds the adjacency caches.
impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            directed: bool,
            edges: Vec<(usize, usize)>,
        }
        let raw = Raw::deserialize(d)?;
        Graph::from_edge_list(raw.n, raw.directed, &raw.edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Builds a canonical graph from an edge list. Undirected inputs are
    /// symmetrized and deduplicated; self-loops and out-of-range indices
    /// are rejected.
    pub fn from_edge_list(n: usize, directed: bool, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if directed {
                edges.push((u, v));
            } else {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        if directed {
            // Directed graphs reject exact duplicates but allow both orientations.
            for w in edges.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateEdge(w[0].0, w[0].1));
                }
            }
        } else {
            edges.dedup();
        }
        Ok(Self::assemble(n, directed, edges))
    }

    fn assemble(n: usize, directed: bool, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut radj = vec![Vec::new(); if directed { n } else { 0 }];
        for &(u, v) in &edges {
            adj[u].push(v);
            if directed {
                radj[v].push(u);
            } else {
                adj[v].push(u);
            }
        }
        for list in adj.iter_mut().chain(radj.iter_mut()) {
            list.sort_unstable();
        }
        Graph { n, directed, edges, adj, radj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    /// Edges in canonical order: unordered pairs for undirected graphs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge count; unordered pairs for undirected graphs.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Out-neighbors for directed graphs, neighbors for undirected.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        if self.directed {
            &self.radj[v]
        } else {
            &self.adj[v]
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Connected components as a vertex -> component id map (weak
    /// connectivity for directed graphs) plus the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                let out = self.adj[v].iter();
                let inn = if self.directed { self.radj[v].iter() } else { [].iter() };
                for &w in out.chain(inn) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().1 == 1
    }

    /// All-pairs shortest path distances by BFS; unreachable pairs get
    /// `usize::MAX`.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Graph plus an n x d real feature matrix. d = 0 encodes "unfeatured",
/// which downstream code treats as the constant feature 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeaturedGraph {
    pub graph: Graph,
    d: usize,
    features: Vec<f64>,
}

impl FeaturedGraph {
    pub fn new(graph: Graph, d: usize, features: Vec<f64>) -> Result<Self> {
        if features.len() != graph.n() * d {
            return Err(Error::SizeMismatch { expected: graph.n() * d, got: features.len() });
        }
        for &x in &features {
            if !x.is_finite() {
                return Err(Error::NonFinite { value: x, context: "feature matrix".into() });
            }
        }
        Ok(FeaturedGraph { graph, d, features })
    }

    pub fn unfeatured(graph: Graph) -> Self {
        FeaturedGraph { graph, d: 0, features: Vec::new() }
    }

    pub fn feature_dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Feature row of a vertex; empty slice when unfeatured.
    pub fn feature_row(&self, v: usize) -> &[f64] {
        &self.features[v * self.d..(v + 1) * self.d]
    }
}

/// A bijection on {0, ..., n-1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if seen[i] {
                return Err(Error::InvalidFamily(format!("permutation repeats image {i}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Seeded Fisher-Yates shuffle; deterministic across platforms.
    pub fn random(n: usize, rng: &mut impl rand::RngCore) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            map.swap(i, j);
        }
        Permutation { map }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { map: inv }
    }
}

/// Relabels vertices: edge (u,v) maps to (p(u), p(v)) and feature row v
/// moves to row p(v).
pub fn apply_permutation(g: &FeaturedGraph, p: &Permutation) -> Result<FeaturedGraph> {
    if p.n() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), got: p.n() });
    }
    let mapped: Vec<(usize, usize)> = g
        .graph
        .edges()
        .iter()
        .map(|&(u, v)| (p.apply(u), p.apply(v)))
        .collect();
    let graph = Graph::from_edge_list(g.n(), g.graph.directed(), &mapped)?;
    let d = g.feature_dim();
    let mut features = vec![0.0; g.n() * d];
    for v in 0..g.n() {
        let target = p.apply(v);
        features[target * d..(target + 1) * d].copy_from_slice(g.feature_row(v));
    }
    FeaturedGraph::new(graph, d, features)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_edge_list() {
        let g = Graph::from_edge_list(3, false, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree_multiset(), vec![2, 2, 2]);
    }

    #[test]
    fn symmetrization_dedupes() {
        let g = Graph::from_edge_list(2, false, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            Graph::from_edge_list(2, false, &[(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            Graph::from_edge_list(2, false, &[(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn identity_permutation_is_noop() {
        let g = generate(&Family::Cycle(4)).unwrap().into_single();
        let fg = FeaturedGraph::unfeatured(g);
        let p = Permutation::identity(4);
        let h = apply_permutation(&fg, &p).unwrap();
        assert_eq!(fg, h);
    }

    #[test]
    fn cycle_rotation_preserves_edges() {
        let g = generate(&Family::Cycle(4)).unwrap().into_single();
        let fg = FeaturedGraph::unfeatured(g.clone());
        let p = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let h = apply_permutation(&fg, &p).unwrap();
        assert_eq!(g.edges(), h.graph.edges());
    }

    #[test]
    fn path_swap_preserves_edges() {
        let g = generate(&Family::Path(3)).unwrap().into_single();
        let fg = FeaturedGraph::unfeatured(g.clone());
        let p = Permutation::new(vec![2, 1, 0]).unwrap();
        let h = apply_permutation(&fg, &p).unwrap();
        assert_eq!(g.edges(), h.graph.edges());
    }

    #[test]
    fn permutation_size_mismatch() {
        let g = generate(&Family::Cycle(4)).unwrap().into_single();
        let fg = FeaturedGraph::unfeatured(g);
        let p = Permutation::identity(3);
        assert!(apply_permutation(&fg, &p).is_err());
    }

    #[test]
    fn deserialized_graphs_have_adjacency() {
        let g = generate(&Family::Cycle(5)).unwrap().into_single();
        let json = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.neighbors(0), &[1, 4]);
        // Invalid payloads are rejected, not silently accepted.
        assert!(serde_json::from_str::<Graph>(
            r#"{"n":2,"directed":false,"edges":[[0,0]]}"#
        )
        .is_err());
    }

    #[test]
    fn feature_rows_follow_vertices() {
        let g = Graph::from_edge_list(3, false, &[(0, 1), (1, 2)]).unwrap();
        let fg = FeaturedGraph::new(g, 1, vec![10.0, 20.0, 30.0]).unwrap();
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let h = apply_permutation(&fg, &p).unwrap();
        // vertex 0 (feature 10) moved to position 2
        assert_eq!(h.feature_row(2), &[10.0]);
        assert_eq!(h.feature_row(0), &[20.0]);
    }
}
