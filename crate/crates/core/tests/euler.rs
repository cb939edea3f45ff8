use mvtsp::error::Error;
use mvtsp::euler::{cycle_certificate, cycles_multigraph, eulerian_expand, walk_multigraph};
use mvtsp::multigraph::DirectedMultigraph;
use proptest::prelude::*;

/// Closed walk through every vertex in `order`, then extra random closed
/// walks from `loops`; the union is balanced and connected.
fn tour_graph(n: usize, order: &[usize], loops: &[Vec<usize>]) -> DirectedMultigraph {
    let mut g = walk_multigraph(n, order).unwrap();
    for w in loops {
        // Anchor every extra walk at a vertex already on the main walk.
        g = g.sum(&walk_multigraph(n, w).unwrap()).unwrap();
    }
    g
}

fn walk_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, 1..8)
}

proptest! {
    #[test]
    fn expansion_reinduces_the_multigraph(
        n in 1usize..6,
        perm_seed in any::<u64>(),
        loops in proptest::collection::vec(walk_strategy(5), 0..4),
    ) {
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let loops: Vec<Vec<usize>> =
            loops.into_iter().map(|w| w.into_iter().map(|v| v % n).collect()).collect();
        let g = tour_graph(n, &order, &loops);
        prop_assume!(g.total_edges() <= 40);
        for start in 0..n {
            let seq = eulerian_expand(&g, start, 1000).unwrap();
            prop_assert_eq!(seq[0], start);
            prop_assert_eq!(seq.len() as u64, g.total_edges());
            prop_assert_eq!(&walk_multigraph(n, &seq).unwrap(), &g);
            for v in 0..n {
                let visits = seq.iter().filter(|&&x| x == v).count() as u64;
                prop_assert_eq!(visits, g.out_degree(v));
            }
        }
    }

    #[test]
    fn certificate_reproduces_balanced_graphs(
        walks in proptest::collection::vec((walk_strategy(6), 1u64..1_000_000_000_000), 1..6),
    ) {
        let mut g = DirectedMultigraph::new(6);
        for (w, times) in &walks {
            for (idx, &u) in w.iter().enumerate() {
                g.add_edge(u, w[(idx + 1) % w.len()], *times).unwrap();
            }
        }
        let cycles = cycle_certificate(&g).unwrap();
        prop_assert!(cycles.len() <= g.distinct_edges());
        for (c, count) in &cycles {
            prop_assert!(*count > 0);
            let mut seen = [false; 6];
            for &v in c {
                prop_assert!(!seen[v], "cycle {:?} repeats a vertex", c);
                seen[v] = true;
            }
        }
        prop_assert_eq!(cycles_multigraph(6, &cycles).unwrap(), g);
    }
}

#[test]
fn rejects_invalid_inputs() {
    let unbalanced = DirectedMultigraph::from_edges(2, [(0, 1, 2), (1, 0, 1)]).unwrap();
    assert!(eulerian_expand(&unbalanced, 0, 100).is_err());
    assert!(cycle_certificate(&unbalanced).is_err());

    let split = DirectedMultigraph::from_edges(2, [(0, 0, 1), (1, 1, 1)]).unwrap();
    assert!(eulerian_expand(&split, 0, 100).is_err());

    let big = DirectedMultigraph::from_edges(1, [(0, 0, 5_000_000)]).unwrap();
    assert!(matches!(eulerian_expand(&big, 0, 1_000_000), Err(Error::Guard(_))));
    assert_eq!(cycle_certificate(&big).unwrap(), vec![(vec![0], 5_000_000)]);
}
