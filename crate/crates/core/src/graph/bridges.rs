//! Bridge finding and block cut-edge trees.

use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Edge-biconnected components joined by bridges. Tree vertices are the
/// components; tree edges correspond one-to-one with bridges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCutEdgeTree {
    pub components: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// Bridges of an undirected graph via iterative low-link DFS; an edge is
/// a bridge iff its removal increases the component count.
pub fn bridges(g: &Graph) -> Result<Vec<(usize, usize)>> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let mut t_in = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut out = Vec::new();
    // (vertex, parent edge index into neighbors of vertex's parent, next child index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if t_in[root] != usize::MAX {
            continue;
        }
        t_in[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut child_idx)) = stack.last_mut() {
            let nbrs = g.neighbors(v);
            if *child_idx < nbrs.len() {
                let w = nbrs[*child_idx];
                *child_idx += 1;
                if w == parent {
                    // The unique tree edge back to the parent; simple
                    // graphs have no parallel edges, so skipping every
                    // occurrence is safe.
                    continue;
                }
                if t_in[w] == usize::MAX {
                    t_in[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(t_in[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > t_in[p] {
                        out.push((p.min(v), p.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Decomposes a connected undirected graph into edge-biconnected
/// components and the tree of bridges between them.
pub fn block_cut_edge_tree(g: &Graph) -> Result<BlockCutEdgeTree> {
    if g.directed() {
        return Err(Error::DirectedInput);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let bridge_list = bridges(g)?;
    let is_bridge = |u: usize, v: usize| {
        bridge_list.binary_search(&(u.min(v), u.max(v))).is_ok()
    };

    // Components of the graph with bridges removed.
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0usize;
    let mut stack = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX && !is_bridge(v, w) {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }

    let mut components = vec![Vec::new(); count];
    for v in 0..n {
        components[comp[v]].push(v);
    }
    let mut tree_edges: Vec<(usize, usize)> = bridge_list
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (comp[u], comp[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    tree_edges.sort_unstable();
    Ok(BlockCutEdgeTree { components, tree_edges })
}
