use fair_radii::analysis::diagnose;
use fair_radii::metric::{generate_instance, generate_with_sizes, validate_metric};
use fair_radii::*;
use proptest::prelude::*;

fn plane(points: &[(f64, f64)], groups: Vec<usize>) -> RealInstance {
    Instance::from_points(groups, points.iter().map(|&(x, y)| [x, y]).collect()).unwrap()
}

fn line(xs: &[f64], groups: Vec<usize>) -> RealInstance {
    Instance::new(groups, DistanceMatrix::from_fn(xs.len(), |i, j| (xs[i] - xs[j]).abs())).unwrap()
}

fn configs() -> [SolverConfig; 2] {
    [SolverConfig::exact(), SolverConfig::primal_dual(0.01)]
}

#[test]
fn colocated_pairs_agree_with_oracle() {
    let inst = plane(&[(0.0, 0.0), (0.0, 0.0), (10.0, 0.0), (10.0, 0.0)], vec![1, 2, 1, 2]);
    assert_eq!(opt_fair_bruteforce(&inst, 1, 2).unwrap().cost, 0.0);
    for config in configs() {
        let res = fair_tk_cluster(&inst, 1, 2, &config).unwrap();
        assert_eq!(res.cost, 0.0);
        assert_eq!(res.clustering.len(), 2);
    }
}

#[test]
fn colocated_triples_agree_with_oracle() {
    let inst = plane(
        &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (4.0, 4.0), (4.0, 4.0), (4.0, 4.0)],
        vec![1, 2, 3, 1, 2, 3],
    );
    assert_eq!(opt_balanced_bruteforce(&inst, 2).unwrap().cost, 0.0);
    for config in configs() {
        assert_eq!(balanced_cluster(&inst, 2, &config).unwrap().cost, 0.0);
    }
}

#[test]
fn alternating_line_within_bound() {
    let inst = line(&[0.0, 1.0, 2.0, 3.0], vec![1, 2, 1, 2]);
    let opt = opt_fair_bruteforce(&inst, 1, 2).unwrap();
    assert_eq!(opt.cost, 2.0);
    for config in configs() {
        let res = fair_tk_cluster(&inst, 1, 2, &config).unwrap();
        assert!(res.cost <= end_to_end_bound(config.alpha(), 2) * opt.cost);
    }
}

#[test]
fn both_pipelines_on_two_equal_groups() {
    for seed in 0..20 {
        let inst = generate_with_sizes(seed, &[3, 3], GenMode::EuclideanPlane, 50.0).unwrap();
        for k in 1..=3 {
            let opt = opt_fair_bruteforce(&inst, 1, k).unwrap();
            assert_eq!(opt.cost, opt_balanced_bruteforce(&inst, k).unwrap().cost);
            let fair = fair_tk_cluster(&inst, 1, k, &SolverConfig::exact()).unwrap();
            let bal = balanced_cluster(&inst, k, &SolverConfig::exact()).unwrap();
            assert!(verify_balanced(&fair.clustering, &inst) && verify_balanced(&bal.clustering, &inst));
            assert!(opt.cost <= fair.cost && opt.cost <= bal.cost);
            assert!(fair.cost <= 48.0 * opt.cost + 1e-9 && bal.cost <= 48.0 * opt.cost + 1e-9);
        }
    }
}

#[test]
fn integer_instances_run_exactly() {
    let real = generate_instance(3, 8, 2, GenMode::RandomMetric, 20.0).unwrap();
    let inst: IntInstance = real.cast();
    let res = fair_tk_cluster(&inst, 2, 2, &SolverConfig::exact()).unwrap();
    let opt = opt_fair_bruteforce(&inst, 2, 2).unwrap();
    assert!(res.fairness_ok);
    assert!(opt.cost <= res.cost);
    assert_eq!(res.cost, clustering_cost(&res.clustering, &inst));
}

#[test]
fn single_precision_instances() {
    let inst: F32Instance = generate_instance(9, 6, 2, GenMode::EuclideanPlane, 10.0).unwrap().cast();
    let res = fair_tk_cluster(&inst, 1, 2, &SolverConfig::primal_dual(0.05)).unwrap();
    assert!(verify_fair(&res.clustering, &inst, 1));
}

#[test]
fn diagnostics_pass_on_samples() {
    for seed in 0..30u64 {
        let inst = generate_with_sizes(seed, &[2, 2, 2], GenMode::RandomMetric, 30.0).unwrap();
        let opt = opt_balanced_bruteforce(&inst, 2).unwrap();
        let res = balanced_cluster(&inst, 2, &SolverConfig::exact()).unwrap();
        let rep = diagnose(seed.to_string(), &inst, &opt.clustering, &res.edges, &res.forest, res.mode);
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(rep.color_degree_balance);
    }
}

fn fair_instance() -> impl Strategy<Value = (RealInstance, u32, usize)> {
    (any::<u64>(), 1usize..5, 1u32..4, 1usize..4, any::<bool>()).prop_map(|(seed, reds, t, k, euclid)| {
        let blues = (reds * t as usize).min(9 - reds).max(1);
        let mode = if euclid { GenMode::EuclideanPlane } else { GenMode::RandomMetric };
        (generate_with_sizes(seed, &[reds, blues], mode, 40.0).unwrap(), t, k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pipeline_output_is_fair_and_bounded((inst, t, k) in fair_instance()) {
        let opt = opt_fair_bruteforce(&inst, t, k).unwrap();
        for config in configs() {
            let res = fair_tk_cluster(&inst, t, k, &config).unwrap();
            prop_assert!(verify_fair(&res.clustering, &inst, t));
            prop_assert!(res.clustering.len() <= k);
            prop_assert!(res.cost >= opt.cost - 1e-9);
            prop_assert!(res.cost <= end_to_end_bound(config.alpha(), 2) * opt.cost + 1e-9);
        }
    }

    #[test]
    fn generated_instances_are_metrics(seed in any::<u64>(), n in 1usize..12, ell in 1usize..4, euclid in any::<bool>()) {
        let mode = if euclid { GenMode::EuclideanPlane } else { GenMode::RandomMetric };
        let inst = generate_instance(seed, n, ell.min(n), mode, 100.0).unwrap();
        prop_assert!(validate_metric(inst.dist(), 0.0).is_metric());
    }

    #[test]
    fn exact_cost_shrinks_with_k(seed in any::<u64>(), m in 1usize..8) {
        let inst = generate_instance(seed, m, 1, GenMode::RandomMetric, 20.0).unwrap();
        let costs: Vec<f64> = (1..=m).map(|k| sor_exact(inst.dist(), k).unwrap().cost).collect();
        prop_assert!(costs.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(*costs.last().unwrap(), 0.0);
    }

    #[test]
    fn exact_cost_scales(seed in any::<u64>(), m in 1usize..8, k in 1usize..4) {
        let inst: IntInstance = generate_instance(seed, m, 1, GenMode::RandomMetric, 20.0).unwrap().cast();
        let base = sor_exact(inst.dist(), k).unwrap().cost;
        prop_assert_eq!(sor_exact(&inst.dist().scaled(3), k).unwrap().cost, 3 * base);
    }

    #[test]
    fn approximate_clusterings_are_valid(seed in any::<u64>(), m in 1usize..11, k in 1usize..5) {
        let inst = generate_instance(seed, m, 1, GenMode::EuclideanPlane, 50.0).unwrap();
        let c = sor_approx(inst.dist(), k, 0.05).unwrap();
        prop_assert!(sor::verify_clustering(&c, inst.dist(), k));
    }
}

/// Two colocated hubs of opposite groups, `m` leaves of each group at
/// distance 1 from both hubs and 1.9 from each other. The cheapest pairing
/// matches the hubs together and the leaves among themselves, so with one
/// cluster per star the star-level cost is 0 while each leaf pair still
/// needs radius 1 in the original metric. A single cluster centered at a
/// hub costs 1.
fn hub_instance(m: usize) -> RealInstance {
    let n = 2 + 2 * m;
    let groups: Vec<usize> = (0..n).map(|p| 1 + p % 2).collect();
    let d = DistanceMatrix::from_fn(n, |i, j| match (i == j, i < 2, j < 2) {
        (true, _, _) => 0.0,
        (_, true, true) => 0.0,
        (_, true, false) | (_, false, true) => 1.0,
        _ => 1.9,
    });
    Instance::new(groups, d).unwrap()
}

#[test]
fn singleton_stars_expand_past_three_times() {
    let m = 4;
    let inst = hub_instance(m);
    assert!(validate_metric(inst.dist(), 0.0).is_metric());
    let opt = opt_fair_bruteforce(&inst, 1, m + 1).unwrap();
    assert_eq!(opt.cost, 1.0);
    let res = fair_tk_cluster(&inst, 1, m + 1, &SolverConfig::exact()).unwrap();
    assert_eq!(res.star_clustering.cost, 0.0);
    assert_eq!(res.cost, m as f64);
    assert!(res.expansion_ratio.is_infinite());
    // every expanded radius stays within max(3 r, spread of its center star)
    let caps = fair_radii::stars::expansion_ceiling(&res.star_clustering, &res.forest, &inst);
    for (c, cap) in res.clustering.clusters.iter().zip(caps) {
        assert!(c.radius <= cap);
    }
}
