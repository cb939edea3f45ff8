mod common;

use mvtsp::cost::Cost;
use mvtsp::error::Error;
use mvtsp::instance::Instance;
use mvtsp::opttree::min_tree_dp;
use mvtsp::solvers::{
    brute_permutation, brute_psaraftis, solve, Algorithm, SolverConfig, TourSolution,
};
use mvtsp::transport::{solve_transport, TransportProblem};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(algorithm: Algorithm) -> SolverConfig {
    SolverConfig::with_algorithm(algorithm)
}

fn check_solution(inst: &Instance, sol: &TourSolution) {
    assert!(sol.edges.is_valid_tour_edgeset(inst));
    assert_eq!(sol.edges.cost(inst).unwrap(), sol.cost);
    if let Some(seq) = &sol.expansion {
        assert_eq!(mvtsp::euler::walk_multigraph(inst.n(), seq).unwrap(), sol.edges);
    }
    assert_eq!(mvtsp::euler::cycles_multigraph(inst.n(), &sol.cycles).unwrap(), sol.edges);
}

#[test]
fn agreement_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..60 {
        let n = 2 + round % 4;
        let inst = common::random_instance(&mut rng, n, 3, 20, 0.1);
        let want = brute_psaraftis(&inst).unwrap();
        for alg in
            [Algorithm::Enum, Algorithm::EnumGrouped, Algorithm::Dp, Algorithm::Dc, Algorithm::Dc2]
        {
            let sol = solve(&inst, &cfg(alg)).unwrap();
            assert_eq!(sol.cost, want, "{alg} on {inst:?}");
            check_solution(&inst, &sol);
        }
    }
}

#[test]
fn single_city() {
    let inst = Instance::uniform(1, 7, vec![5]).unwrap();
    let sol = solve(&inst, &cfg(Algorithm::Dp)).unwrap();
    assert_eq!(sol.cost, Cost::Finite(35));
    assert_eq!(sol.edges.multiplicity(0, 0), 5);
}

#[test]
fn huge_multiplicities() {
    let inst = Instance::uniform(5, 3, vec![1_000_000_000_000; 5]).unwrap();
    let sol = solve(&inst, &cfg(Algorithm::Dc2)).unwrap();
    assert_eq!(sol.cost, Cost::Finite(15_000_000_000_000));
    assert!(sol.expansion.is_none());
    check_solution(&inst, &sol);
}

#[test]
fn infeasible_instance() {
    let inf = Cost::Infinite;
    let inst = Instance::from_rows(
        vec![vec![Cost::Finite(1), inf], vec![inf, Cost::Finite(1)]],
        vec![1, 1],
    )
    .unwrap();
    for alg in [
        Algorithm::Dp,
        Algorithm::Dc,
        Algorithm::Dc2,
        Algorithm::Enum,
        Algorithm::EnumGrouped,
        Algorithm::BrutePsaraftis,
    ] {
        assert!(matches!(solve(&inst, &cfg(alg)), Err(Error::Infeasible { .. })), "{alg}");
    }
}

#[test]
fn permutation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for round in 0..40 {
        let n = 2 + round % 3;
        let inst = common::random_instance(&mut rng, n, 2, 20, 0.1);
        assert_eq!(brute_permutation(&inst).unwrap(), brute_psaraftis(&inst).unwrap());
    }
}

#[test]
fn three_city_example_matches_oracle() {
    let rows = [[9, 1, 2], [1, 9, 7], [3, 7, 9]];
    let inst = Instance::from_rows(
        rows.iter().map(|r| r.iter().map(|&c| Cost::Finite(c)).collect()).collect(),
        vec![2, 1, 1],
    )
    .unwrap();
    let want = brute_psaraftis(&inst).unwrap();
    assert_eq!(want, brute_permutation(&inst).unwrap());
    for alg in Algorithm::ALL {
        assert_eq!(solve(&inst, &cfg(alg)).unwrap().cost, want, "{alg}");
    }
}

#[test]
fn two_cities_single_visit() {
    let inst = Instance::from_rows(
        vec![vec![Cost::Finite(4), Cost::Finite(3)], vec![Cost::Finite(8), Cost::Infinite]],
        vec![1, 1],
    )
    .unwrap();
    assert_eq!(solve(&inst, &cfg(Algorithm::Dc2)).unwrap().cost, Cost::Finite(11));
}

#[test]
fn skipped_sequences_do_not_error() {
    // City 3 has one visit, so any tree giving it two children is skipped.
    let inst = Instance::uniform(4, 2, vec![3, 2, 2, 1]).unwrap();
    for alg in
        [Algorithm::Enum, Algorithm::EnumGrouped, Algorithm::Dp, Algorithm::Dc, Algorithm::Dc2]
    {
        assert_eq!(solve(&inst, &cfg(alg)).unwrap().cost, Cost::Finite(16), "{alg}");
    }
}

#[test]
fn root_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for round in 0..30 {
        let n = 2 + round % 4;
        let inst = common::random_instance(&mut rng, n, 3, 20, 0.1);
        let want = solve(&inst, &cfg(Algorithm::Dp)).unwrap().cost;
        for root in 0..n {
            for alg in [Algorithm::Dp, Algorithm::Dc2, Algorithm::EnumGrouped] {
                let c = SolverConfig { root, ..cfg(alg) };
                assert_eq!(solve(&inst, &c).unwrap().cost, want, "{alg} root {root}");
            }
        }
    }
}

#[test]
fn raising_a_cost_never_lowers_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut pairs = 0;
    while pairs < 50 {
        let n = 2 + rng.gen_range(0..4);
        let inst = common::random_instance(&mut rng, n, 3, 20, 0.1);
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let Cost::Finite(c) = inst.d(i, j) else { continue };
        let raised = inst.with_cost(i, j, Cost::Finite(c + rng.gen_range(1..10)));
        let before = solve(&inst, &cfg(Algorithm::Dp)).unwrap().cost;
        let after = solve(&raised, &cfg(Algorithm::Dc)).unwrap().cost;
        assert!(after >= before, "{inst:?} ({i},{j})");
        pairs += 1;
    }
}

#[test]
fn decomposition_is_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for round in 0..40 {
        let n = 2 + round % 4;
        let inst = common::random_instance(&mut rng, n, 4, 20, 0.1);
        for alg in [Algorithm::Dp, Algorithm::Dc, Algorithm::Dc2, Algorithm::EnumGrouped] {
            let sol = solve(&inst, &cfg(alg)).unwrap();
            let cert = sol.certificate.as_ref().expect("tree-based solvers return a certificate");
            let ds = cert.tree.degree_sequence().unwrap();
            assert_eq!(cert.tree.cost(&inst).unwrap(), cert.tree_cost);
            assert_eq!(min_tree_dp(&ds, &inst).unwrap().1, cert.tree_cost, "{alg}");

            let supply = (0..n).map(|v| inst.multiplicity(v) - ds.out_degree(v) as u64).collect();
            let demand = (0..n).map(|v| inst.multiplicity(v) - ds.in_degree(v) as u64).collect();
            let p = TransportProblem::new(supply, demand, inst.costs()).unwrap();
            let x = solve_transport(&p).unwrap();
            assert_eq!(x.cost, cert.completion.cost);
            assert!(cert.completion.check_certificate(&p));

            let whole = cert.tree.to_multigraph().sum(&cert.completion.flow).unwrap();
            assert_eq!(whole, sol.edges);
            assert_eq!(cert.tree_cost.checked_add(x.cost).unwrap(), sol.cost);
        }
    }
}

#[test]
fn thread_count_does_not_change_the_result() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for round in 0..10 {
        let inst = common::random_instance(&mut rng, 4 + round % 3, 3, 5, 0.0);
        for alg in [Algorithm::Dp, Algorithm::Dc2, Algorithm::Enum] {
            let seq = solve(&inst, &SolverConfig { threads: 1, ..cfg(alg) }).unwrap();
            for threads in [0, 3] {
                let par = solve(&inst, &SolverConfig { threads, ..cfg(alg) }).unwrap();
                assert_eq!(par, seq, "{alg} threads {threads}");
            }
        }
    }
}

#[test]
fn permutation_guard() {
    let inst = Instance::uniform(2, 1, vec![6, 5]).unwrap();
    assert!(matches!(solve(&inst, &cfg(Algorithm::BrutePermutation)), Err(Error::Guard(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uniform_cost_is_cost_times_visits(
        n in 1usize..6,
        c in 0u64..50,
        k in proptest::collection::vec(1u64..1_000_000_000, 6),
    ) {
        let k = k[..n].to_vec();
        let total: u64 = k.iter().sum();
        let inst = Instance::uniform(n, c, k).unwrap();
        for alg in [Algorithm::Dp, Algorithm::Dc2] {
            let sol = solve(&inst, &cfg(alg)).unwrap();
            prop_assert_eq!(sol.cost, Cost::Finite(c * total));
            prop_assert!(sol.edges.is_valid_tour_edgeset(&inst));
        }
    }

    #[test]
    fn dp_matches_psaraftis(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = common::random_instance(&mut rng, n, 3, 15, 0.2);
        let sol = solve(&inst, &cfg(Algorithm::Dp)).unwrap();
        prop_assert_eq!(sol.cost, brute_psaraftis(&inst).unwrap());
        check_solution(&inst, &sol);
    }
}
