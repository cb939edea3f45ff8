#![allow(dead_code)]

use mvtsp::cost::Cost;
use mvtsp::instance::Instance;
use mvtsp::trees::DirectedTree;
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniform labelled tree from a random Prüfer code, rooted at `root`.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize, root: usize) -> DirectedTree {
    if n == 1 {
        return DirectedTree::from_parents(0, vec![None]).unwrap();
    }
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut undirected = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        undirected.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    undirected.push((rest[0], rest[1]));

    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &undirected {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                stack.push(v);
            }
        }
    }
    DirectedTree::from_parents(root, parent).unwrap()
}

/// Random instance with finite costs on a random Hamiltonian cycle and the
/// diagonal, other entries `inf` with probability `inf_prob`.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    k_max: u64,
    cost_max: u64,
    inf_prob: f64,
) -> Instance {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut forced = vec![false; n * n];
    for i in 0..n {
        forced[order[i] * n + order[(i + 1) % n]] = true;
        forced[i * n + i] = true;
    }
    let cost = (0..n * n)
        .map(|idx| {
            if !forced[idx] && rng.gen_bool(inf_prob) {
                Cost::Infinite
            } else {
                Cost::Finite(rng.gen_range(0..=cost_max))
            }
        })
        .collect();
    let k = (0..n).map(|_| rng.gen_range(1..=k_max)).collect();
    Instance::new(cost, k).unwrap()
}
