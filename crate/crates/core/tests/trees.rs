mod common;

use std::collections::{HashMap, HashSet};

use mvtsp::degseq::enumerate_feasible;
use mvtsp::solvers::{solve, Algorithm, SolverConfig};
use mvtsp::trees::{
    ceil_log2, centroid_partition, extract_spanning_tree, perfectly_balanced_partition,
    DirectedTree, TreeEnumerator,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn separators_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2, 3, 4, 5, 16, 33, 64] {
        for _ in 0..500 {
            let t = common::random_tree(&mut rng, n, 0);
            let c = centroid_partition(&t);
            assert!(c.within_bounds() && c.separates(&t), "{c:?} {t:?}");
            let p = perfectly_balanced_partition(&t);
            assert!(p.within_bounds() && p.separates(&t), "{p:?} {t:?}");
        }
    }
}

/// Every parent vector rooted at `root` that forms a tree.
fn all_trees(n: usize, root: usize) -> Vec<DirectedTree> {
    let mut out = Vec::new();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let total = n.pow(others.len() as u32);
    for code in 0..total {
        let mut parent = vec![None; n];
        let mut c = code;
        for &v in &others {
            parent[v] = Some(c % n);
            c /= n;
        }
        if let Ok(t) = DirectedTree::from_parents(root, parent) {
            out.push(t);
        }
    }
    out
}

#[test]
fn enumeration_matches_parent_vector_search() {
    for n in 2..=6 {
        let root = n / 2;
        let brute = all_trees(n, root);
        assert_eq!(brute.len(), n.pow(n as u32 - 2));
        let mut by_seq: HashMap<Vec<u32>, HashSet<DirectedTree>> = HashMap::new();
        for t in brute {
            by_seq.entry(t.out_degrees()).or_default().insert(t);
        }
        let mut seen = 0;
        for ds in enumerate_feasible(n, root) {
            let got: Vec<DirectedTree> = TreeEnumerator::new(&ds).collect();
            let set: HashSet<DirectedTree> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicates for {ds:?}");
            assert_eq!(Some(&set), by_seq.get(ds.out_degrees()), "{ds:?}");
            seen += got.len();
        }
        assert_eq!(seen, n.pow(n as u32 - 2));
    }
}

#[test]
fn extracted_tree_is_dominated_by_solver_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for round in 0..60 {
        let n = 2 + round % 5;
        let inst = common::random_instance(&mut rng, n, 4, 20, 0.1);
        let g = solve(&inst, &SolverConfig::with_algorithm(Algorithm::Dp)).unwrap().edges;
        for root in 0..n {
            let t = extract_spanning_tree(&g, root).unwrap();
            assert_eq!(t.root(), root);
            let tg = t.to_multigraph();
            for (i, j, m) in tg.edges() {
                assert!(m == 1 && g.multiplicity(i, j) >= 1);
            }
            let x = g.difference(&tg).unwrap();
            assert_eq!(x.sum(&tg).unwrap(), g);
            assert_eq!(x.total_edges() + n as u64 - 1, g.total_edges());
        }
    }
}

proptest! {
    #[test]
    fn partitions_hold_on_any_tree(seed in any::<u64>(), n in 2usize..80) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let root = rng.gen_range(0..n);
        let t = common::random_tree(&mut rng, n, root);
        let c = centroid_partition(&t);
        prop_assert_eq!(c.boundary.len(), 1);
        prop_assert!(c.within_bounds() && c.separates(&t));
        let p = perfectly_balanced_partition(&t);
        prop_assert!(p.boundary.len() <= ceil_log2(n).max(1));
        prop_assert!(p.max_side() <= n.div_ceil(2));
        prop_assert!(p.within_bounds() && p.separates(&t));
    }
}
