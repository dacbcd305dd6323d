//! Unlabeled tree isomorphism via canonical forms rooted at tree centers.

use super::BlockCutEdgeTree;
use crate::error::{Error, Result};

/// True iff the two block cut-edge trees are isomorphic as unlabeled
/// trees. Compares canonical forms rooted at the tree center(s).
pub fn tree_isomorphic(a: &BlockCutEdgeTree, b: &BlockCutEdgeTree) -> Result<bool> {
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Canonical bracket string of an unlabeled tree: the minimum over the
/// one or two center vertices of the rooted canonical form.
fn canonical_form(t: &BlockCutEdgeTree) -> Result<String> {
    let n = t.components.len();
    if n == 0 {
        return Err(Error::NotATree("empty tree".into()));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &t.tree_edges {
        if u >= n || v >= n {
            return Err(Error::NotATree(format!("edge ({u},{v}) out of range")));
        }
        if u == v {
            return Err(Error::NotATree(format!("self-loop at {u}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    if t.tree_edges.len() + 1 != n {
        return Err(Error::NotATree(format!(
            "{} edges on {} vertices",
            t.tree_edges.len(),
            n
        )));
    }
    // Connectivity check (edge count alone admits cycle + isolated vertex).
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                visited += 1;
                stack.push(w);
            }
        }
    }
    if visited != n {
        return Err(Error::NotATree("disconnected".into()));
    }

    let centers = tree_centers(&adj);
    let form = centers
        .iter()
        .map(|&c| rooted_canonical(&adj, c))
        .min()
        .expect("at least one center");
    Ok(form)
}

/// Leaf-peeling: the one or two vertices left after repeatedly removing
/// all current leaves.
fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n == 1 {
        return vec![0];
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut removed = vec![false; n];
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in &adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// AHU-style canonical bracket string of the tree rooted at `root`:
/// children forms sorted, then concatenated inside brackets.
fn rooted_canonical(adj: &[Vec<usize>], root: usize) -> String {
    // Post-order traversal without recursion.
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut forms: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut done = vec![String::new(); n];
    for &v in order.iter().rev() {
        forms[v].sort();
        let inner: String = forms[v].concat();
        done[v] = format!("({inner})");
        if parent[v] != usize::MAX {
            let f = std::mem::take(&mut done[v]);
            forms[parent[v]].push(f.clone());
            done[v] = f;
        }
    }
    done[root].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{block_cut_edge_tree, generate, Family};

    fn singleton_tree() -> BlockCutEdgeTree {
        BlockCutEdgeTree { components: vec![vec![0]], tree_edges: vec![] }
    }

    #[test]
    fn single_node_trees_match() {
        assert!(tree_isomorphic(&singleton_tree(), &singleton_tree()).unwrap());
    }

    #[test]
    fn different_sizes_differ() {
        let path3 = BlockCutEdgeTree {
            components: vec![vec![0], vec![1], vec![2]],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        let star4 = BlockCutEdgeTree {
            components: vec![vec![0], vec![1], vec![2], vec![3]],
            tree_edges: vec![(0, 1), (0, 2), (0, 3)],
        };
        assert!(!tree_isomorphic(&path3, &star4).unwrap());
    }

    #[test]
    fn path_tree_vs_star_tree() {
        let p4 = generate(&Family::Path(4)).unwrap().into_single();
        let s3 = generate(&Family::Star(3)).unwrap().into_single();
        let tp = block_cut_edge_tree(&p4).unwrap();
        let ts = block_cut_edge_tree(&s3).unwrap();
        assert_eq!(tp.components.len(), 4);
        assert_eq!(ts.components.len(), 4);
        assert!(!tree_isomorphic(&tp, &ts).unwrap());
    }

    #[test]
    fn relabeled_trees_match() {
        // Same caterpillar numbered two ways.
        let a = BlockCutEdgeTree {
            components: vec![vec![0], vec![1], vec![2], vec![3], vec![4]],
            tree_edges: vec![(0, 1), (1, 2), (1, 3), (3, 4)],
        };
        let b = BlockCutEdgeTree {
            components: vec![vec![0], vec![1], vec![2], vec![3], vec![4]],
            tree_edges: vec![(4, 3), (3, 2), (3, 1), (1, 0)],
        };
        assert!(tree_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn non_tree_rejected() {
        let cyclic = BlockCutEdgeTree {
            components: vec![vec![0], vec![1], vec![2]],
            tree_edges: vec![(0, 1), (1, 2), (2, 0)],
        };
        assert!(tree_isomorphic(&cyclic, &singleton_tree()).is_err());
    }
}
