use std::collections::VecDeque;

use super::DirectedTree;
use crate::error::{Error, Result};
use crate::multigraph::DirectedMultigraph;

/// Shortest-path tree of a tour edge set, rooted at `root`.
///
/// Breadth-first search expanding out-neighbours in increasing index order
/// picks, for every vertex, the lexicographically smallest among its
/// shortest paths from `root`. The result is pointwise dominated by `g`.
pub fn extract_spanning_tree(g: &DirectedMultigraph, root: usize) -> Result<DirectedTree> {
    let n = g.n();
    if root >= n {
        return Err(Error::InvalidInput(format!("root {root} out of range")));
    }
    if !g.is_balanced() || !g.is_connected() || g.out_degrees().contains(&0) {
        return Err(Error::InvalidInput(
            "not the edge set of a tour: must be balanced, connected and cover every vertex".into(),
        ));
    }
    let mut adj = vec![Vec::new(); n];
    for (i, j, _) in g.edges() {
        if i != j {
            adj[i].push(j);
        }
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    DirectedTree::from_parents(root, parent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle() {
        let g = DirectedMultigraph::from_edges(2, [(0, 1, 1), (1, 0, 1)]).unwrap();
        let t = extract_spanning_tree(&g, 0).unwrap();
        assert_eq!(t.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn directed_triangle() {
        let g = DirectedMultigraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let t = extract_spanning_tree(&g, 0).unwrap();
        assert_eq!(t.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn ties_prefer_smaller_paths() {
        // 0 -> 1 -> 3 and 0 -> 2 -> 3 both have two hops; 3 hangs below 1.
        let g = DirectedMultigraph::from_edges(
            4,
            [(0, 2, 1), (0, 1, 1), (1, 3, 1), (2, 3, 1), (3, 0, 2)],
        )
        .unwrap();
        let t = extract_spanning_tree(&g, 0).unwrap();
        assert_eq!(t.parent(3), Some(1));
    }

    #[test]
    fn rejects_unbalanced() {
        let g = DirectedMultigraph::from_edges(2, [(0, 1, 1)]).unwrap();
        assert!(extract_spanning_tree(&g, 0).is_err());
    }
}
