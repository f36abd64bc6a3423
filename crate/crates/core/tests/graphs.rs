use fair_radii::graphs::{min_cost_dcs, min_cost_dcs_bruteforce, min_weight_perfect_matching, BipartiteGraph};
use fair_radii::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn best_permutation(rows: &[Vec<i64>]) -> i64 {
    permutations(rows.len()).iter().map(|p| p.iter().enumerate().map(|(i, &j)| rows[i][j]).sum()).min().unwrap()
}

#[test]
fn single_edge() {
    let g = BipartiteGraph::from_matrix(&[vec![5i64]]).unwrap();
    let dcs = min_cost_dcs(&g, 1, 3).unwrap();
    assert_eq!(dcs.total_weight, 5);
    assert_eq!(dcs.edges.len(), 1);
}

#[test]
fn crossing_weights_pick_diagonal() {
    let g = BipartiteGraph::from_matrix(&[vec![1i64, 4], vec![4, 1]]).unwrap();
    let dcs = min_cost_dcs(&g, 1, 1).unwrap();
    assert_eq!(dcs.total_weight, 2);
    assert_eq!(dcs.edges, vec![(0, 2), (1, 3)]);
    assert_eq!(min_weight_perfect_matching(&g).unwrap().total_weight, 2);
}

#[test]
fn overloaded_right_vertex() {
    let g = BipartiteGraph::from_matrix(&[vec![1i64], vec![1], vec![1]]).unwrap();
    assert!(matches!(min_cost_dcs(&g, 1, 2), Err(Error::Infeasible(_))));
    assert!(matches!(min_cost_dcs_bruteforce(&g, 1, 2), Err(Error::Infeasible(_))));
}

#[test]
fn random_three_by_three_against_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(1..=9)).collect()).collect();
        let g = BipartiteGraph::from_matrix(&rows).unwrap();
        let fast = min_cost_dcs(&g, 1, 2).unwrap();
        let slow = min_cost_dcs_bruteforce(&g, 1, 2).unwrap();
        assert_eq!(fast.total_weight, slow.total_weight, "{rows:?}");
        assert!(fast.is_star_forest());
        assert!(fast.respects_bounds(1, 2));
    }
}

#[test]
fn matching_against_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(0..=30)).collect()).collect();
        let g = BipartiteGraph::from_matrix(&rows).unwrap();
        let m = min_weight_perfect_matching(&g).unwrap();
        assert_eq!(m.total_weight, best_permutation(&rows));
        let mut lefts: Vec<usize> = m.pairs.iter().map(|p| p.0).collect();
        let mut rights: Vec<usize> = m.pairs.iter().map(|p| p.1).collect();
        lefts.dedup();
        rights.sort_unstable();
        rights.dedup();
        assert_eq!((lefts.len(), rights.len()), (4, 4));
    }
}

#[test]
fn real_weights() {
    let rows = vec![vec![0.5, 2.25, 1.0], vec![1.5, 0.25, 3.0], vec![2.0, 2.0, 0.75]];
    let g = BipartiteGraph::from_matrix(&rows).unwrap();
    assert_eq!(min_weight_perfect_matching(&g).unwrap().total_weight, 1.5);
    assert_eq!(min_cost_dcs(&g, 1, 1).unwrap().total_weight, 1.5);
}

proptest! {
    #[test]
    fn dcs_is_an_optimal_star_forest(
        a in 1usize..4,
        b in 1usize..4,
        upper in 1usize..4,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<i64>> = (0..a).map(|_| (0..b).map(|_| rng.gen_range(0..=6)).collect()).collect();
        let g = BipartiteGraph::from_matrix(&rows).unwrap();
        match (min_cost_dcs(&g, 1, upper), min_cost_dcs_bruteforce(&g, 1, upper)) {
            (Ok(fast), Ok(slow)) => {
                prop_assert_eq!(fast.total_weight, slow.total_weight);
                prop_assert!(fast.is_star_forest());
                prop_assert!(fast.respects_bounds(1, upper));
            }
            (Err(x), Err(y)) => prop_assert!(x.is_infeasible() && y.is_infeasible()),
            (x, y) => prop_assert!(false, "disagreement: {:?} vs {:?}", x.map(|d| d.total_weight), y.map(|d| d.total_weight)),
        }
    }

    #[test]
    fn matching_equals_unit_degree_subgraph(n in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..=50)).collect()).collect();
        let g = BipartiteGraph::from_matrix(&rows).unwrap();
        let m = min_weight_perfect_matching(&g).unwrap();
        prop_assert_eq!(m.total_weight, min_cost_dcs(&g, 1, 1).unwrap().total_weight);
        prop_assert_eq!(m.total_weight, best_permutation(&rows));
    }
}
