use std::collections::BTreeSet;

use mvtsp::degseq::{
    binomial, count_feasible, distribute, enumerate_feasible, is_feasible, Combinations,
    DegreeSequence,
};
use mvtsp::trees::realize_tree;
use proptest::prelude::*;

/// Every vector in `0..=max` of length `n`, lexicographic.
fn all_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn enumeration_matches_exhaustive_filter() {
    for n in 2..=6 {
        for root in [0, n - 1] {
            let want: Vec<Vec<u32>> = all_vectors(n, n as u32 - 1)
                .into_iter()
                .filter(|v| v.iter().sum::<u32>() == n as u32 - 1 && v[root] >= 1)
                .collect();
            let got: Vec<Vec<u32>> =
                enumerate_feasible(n, root).map(|ds| ds.out_degrees().to_vec()).collect();
            let mut sorted = got.clone();
            sorted.sort();
            assert_eq!(got, sorted, "stream is lexicographic");
            assert_eq!(got, want, "n={n} root={root}");
            assert!(got.iter().all(|v| is_feasible(v, root)));
        }
    }
}

#[test]
fn counts_match_closed_form() {
    for n in 2..=10 {
        let c = count_feasible(n).unwrap();
        assert_eq!(c, enumerate_feasible(n, 0).count() as u64);
        assert_eq!(c, binomial(2 * n as u64 - 3, n as u64 - 1).unwrap());
    }
    assert_eq!(count_feasible(4).unwrap(), 10);
}

#[test]
fn distribute_lists_every_composition_once() {
    for bins in 1..=5 {
        for total in 0..=5 {
            let got: Vec<Vec<u32>> = distribute(total, bins).collect();
            let want: Vec<Vec<u32>> = all_vectors(bins, total as u32)
                .into_iter()
                .filter(|v| v.iter().sum::<u32>() == total as u32)
                .collect();
            assert_eq!(got.len(), want.len());
            assert_eq!(got.iter().collect::<BTreeSet<_>>(), want.iter().collect::<BTreeSet<_>>());
            let expected = binomial((total + bins - 1) as u64, (bins - 1) as u64).unwrap();
            assert_eq!(got.len() as u64, expected);
        }
    }
}

#[test]
fn combinations_are_ascending_subsets() {
    for n in 0..=7 {
        for r in 0..=n + 1 {
            let got: Vec<Vec<usize>> = Combinations::new(n, r).collect();
            let want: Vec<Vec<usize>> = (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == r)
                .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect())
                .collect::<BTreeSet<Vec<usize>>>()
                .into_iter()
                .collect();
            assert_eq!(got, want, "n={n} r={r}");
        }
    }
}

proptest! {
    #[test]
    fn feasible_vectors_are_realizable(out in proptest::collection::vec(0u32..6, 2..8), root in 0usize..8) {
        let root = root % out.len();
        let feasible = is_feasible(&out, root);
        prop_assert_eq!(DegreeSequence::new(out.clone(), root).is_ok(), feasible);
        if feasible {
            let ds = DegreeSequence::new(out.clone(), root).unwrap();
            let t = realize_tree(&ds);
            prop_assert_eq!(t.out_degrees(), out);
            prop_assert_eq!(t.root(), root);
        }
    }
}
