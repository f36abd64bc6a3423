use super::flow::MinCostFlow;
use super::{BipartiteGraph, DegreeConstrainedSubgraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest `|left| * |right|` accepted by [`min_cost_dcs_bruteforce`].
pub const BRUTEFORCE_EDGE_LIMIT: usize = 20;

/// Closed-form feasibility of uniform degree bounds on a complete bipartite
/// graph with sides `a` and `b`.
///
/// A subgraph exists iff each side's lower bound fits the other side and
/// the edge-count ranges `[a*lower, a*min(upper, b)]` and
/// `[b*lower, b*min(upper, a)]` intersect; near-regular degree sequences
/// realise any edge count in that intersection.
pub fn dcs_feasible(a: usize, b: usize, lower: usize, upper: usize) -> bool {
    if lower > upper {
        return false;
    }
    if lower == 0 {
        return true;
    }
    if (a > 0 && lower > b) || (b > 0 && lower > a) {
        return false;
    }
    let lo = (a * lower).max(b * lower);
    let hi = (a * upper.min(b)).min(b * upper.min(a));
    lo <= hi
}

fn check_feasible<T: Scalar>(g: &BipartiteGraph<T>, lower: usize, upper: usize) -> Result<()> {
    if lower > upper {
        return Err(Error::InvalidInput(format!("lower bound {lower} exceeds upper bound {upper}")));
    }
    let (a, b) = (g.left().len(), g.right().len());
    if dcs_feasible(a, b, lower, upper) {
        Ok(())
    } else {
        Err(Error::Infeasible(format!(
            "no subgraph of K({a},{b}) has all degrees in [{lower}, {upper}]"
        )))
    }
}

/// Removes edges whose endpoints both sit strictly above the lower bound.
/// Weights are nonnegative, so this never raises the cost; on an optimal
/// input it only drops zero-weight edges and leaves a star forest when
/// `lower = 1`.
fn prune_slack_edges(local: &mut Vec<(usize, usize)>, a: usize, b: usize, lower: usize) {
    let mut left_deg = vec![0usize; a];
    let mut right_deg = vec![0usize; b];
    for &(i, j) in local.iter() {
        left_deg[i] += 1;
        right_deg[j] += 1;
    }
    local.sort_unstable();
    local.retain(|&(i, j)| {
        if left_deg[i] > lower && right_deg[j] > lower {
            left_deg[i] -= 1;
            right_deg[j] -= 1;
            false
        } else {
            true
        }
    });
}

/// Minimum-weight subgraph with every degree in `[lower, upper]`.
///
/// Solved as a min-cost circulation: source → left and right → sink arcs
/// carry the degree bounds, left → right arcs have unit capacity and the
/// edge weight as cost. Lower bounds are moved onto an auxiliary
/// source/sink pair and the resulting flow problem is solved by successive
/// shortest paths.
pub fn min_cost_dcs<T: Scalar>(
    g: &BipartiteGraph<T>,
    lower: usize,
    upper: usize,
) -> Result<DegreeConstrainedSubgraph<T>> {
    check_feasible(g, lower, upper)?;
    let (a, b) = (g.left().len(), g.right().len());
    let lo = lower as i64;
    let up = upper as i64;

    // 0: aux source, 1: aux sink, 2: source, 3: sink, then left, then right.
    let (aux_s, aux_t, s, t) = (0, 1, 2, 3);
    let left = |i: usize| 4 + i;
    let right = |j: usize| 4 + a + j;
    let mut net = MinCostFlow::new(4 + a + b);

    for i in 0..a {
        net.add_arc(s, left(i), up - lo, T::zero());
        if lo > 0 {
            net.add_arc(aux_s, left(i), lo, T::zero());
        }
    }
    let mut edge_arcs = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            edge_arcs.push(((i, j), net.add_arc(left(i), right(j), 1, g.weight(i, j))));
        }
    }
    for j in 0..b {
        net.add_arc(right(j), t, up - lo, T::zero());
        if lo > 0 {
            net.add_arc(right(j), aux_t, lo, T::zero());
        }
    }
    if lo > 0 {
        net.add_arc(aux_s, t, lo * b as i64, T::zero());
        net.add_arc(s, aux_t, lo * a as i64, T::zero());
    }
    net.add_arc(t, s, up * (a + b) as i64 + 1, T::zero());

    let required = lo * (a + b) as i64;
    let (pushed, _) = net.run(aux_s, aux_t, required);
    if pushed < required {
        return Err(Error::Infeasible(format!(
            "degree bounds [{lower}, {upper}] cannot be met on K({a},{b})"
        )));
    }

    let mut local: Vec<(usize, usize)> =
        edge_arcs.into_iter().filter(|&(_, id)| net.flow(id) > 0).map(|(e, _)| e).collect();
    prune_slack_edges(&mut local, a, b, lower);
    Ok(DegreeConstrainedSubgraph::from_local(g, &local))
}

/// Exhaustive minimum over all edge subsets. Among equal weights the
/// subset with fewer edges wins, then the one found first.
pub fn min_cost_dcs_bruteforce<T: Scalar>(
    g: &BipartiteGraph<T>,
    lower: usize,
    upper: usize,
) -> Result<DegreeConstrainedSubgraph<T>> {
    let (a, b) = (g.left().len(), g.right().len());
    let m = a * b;
    if m > BRUTEFORCE_EDGE_LIMIT {
        return Err(Error::TooLarge { size: m, limit: BRUTEFORCE_EDGE_LIMIT });
    }
    let mut best: Option<(T, u32, u32)> = None;
    let mut left_deg = vec![0usize; a];
    let mut right_deg = vec![0usize; b];
    for mask in 0u32..(1u32 << m) {
        left_deg.iter_mut().for_each(|d| *d = 0);
        right_deg.iter_mut().for_each(|d| *d = 0);
        let mut weight = T::zero();
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (i, j) = (e / b, e % b);
                left_deg[i] += 1;
                right_deg[j] += 1;
                weight += g.weight(i, j);
            }
        }
        let ok = left_deg.iter().chain(right_deg.iter()).all(|&d| lower <= d && d <= upper);
        if !ok {
            continue;
        }
        let edges = mask.count_ones();
        let better = match best {
            None => true,
            Some((bw, be, _)) => weight < bw || (weight == bw && edges < be),
        };
        if better {
            best = Some((weight, edges, mask));
        }
    }
    let (_, _, mask) = best.ok_or_else(|| {
        Error::Infeasible(format!("degree bounds [{lower}, {upper}] cannot be met on K({a},{b})"))
    })?;
    let local: Vec<(usize, usize)> = (0..m).filter(|e| mask >> e & 1 == 1).map(|e| (e / b, e % b)).collect();
    Ok(DegreeConstrainedSubgraph::from_local(g, &local))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(rows: &[Vec<i64>]) -> BipartiteGraph<i64> {
        BipartiteGraph::from_matrix(rows).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = graph(&[vec![5]]);
        let h = min_cost_dcs(&g, 1, 3).unwrap();
        assert_eq!(h.edges, vec![(0, 1)]);
        assert_eq!(h.total_weight, 5);
        assert_eq!(min_cost_dcs_bruteforce(&g, 1, 3).unwrap().total_weight, 5);
    }

    #[test]
    fn unique_perfect_matching() {
        let g = graph(&[vec![1, 4], vec![4, 1]]);
        let h = min_cost_dcs(&g, 1, 1).unwrap();
        assert_eq!(h.edges, vec![(0, 2), (1, 3)]);
        assert_eq!(h.total_weight, 2);
        assert_eq!(min_cost_dcs_bruteforce(&g, 1, 1).unwrap().total_weight, 2);
    }

    #[test]
    fn overloaded_right_vertex_is_infeasible() {
        let g = graph(&[vec![1], vec![1], vec![1]]);
        assert!(matches!(min_cost_dcs(&g, 1, 2), Err(Error::Infeasible(_))));
        assert!(matches!(min_cost_dcs_bruteforce(&g, 1, 2), Err(Error::Infeasible(_))));
        assert!(min_cost_dcs(&g, 1, 3).is_ok());
    }

    #[test]
    fn bruteforce_size_limit() {
        let g = graph(&vec![vec![1; 5]; 5]);
        assert!(matches!(min_cost_dcs_bruteforce(&g, 1, 2), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn zero_weight_paths_are_pruned_to_stars() {
        let g = graph(&[vec![0, 0], vec![0, 0]]);
        let h = min_cost_dcs(&g, 1, 2).unwrap();
        assert_eq!(h.total_weight, 0);
        assert!(h.is_star_forest());
        assert!(h.respects_bounds(1, 2));
    }

    #[test]
    fn inverted_bounds_rejected() {
        let g = graph(&[vec![1]]);
        assert!(matches!(min_cost_dcs(&g, 2, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn feasibility_formula() {
        assert!(dcs_feasible(1, 3, 1, 3));
        assert!(!dcs_feasible(1, 3, 1, 2));
        assert!(dcs_feasible(2, 2, 1, 1));
        assert!(!dcs_feasible(2, 3, 1, 1));
        assert!(!dcs_feasible(0, 2, 1, 4));
        assert!(dcs_feasible(0, 0, 1, 1));
        assert!(dcs_feasible(3, 0, 0, 1));
    }

    #[test]
    fn feasibility_formula_matches_enumeration() {
        for a in 0..=3 {
            for b in 0..=3 {
                for lower in 0..=3 {
                    for upper in lower..=3 {
                        let g = BipartiteGraph::<i64>::from_matrix(&vec![vec![1; b]; a]).unwrap();
                        let g = if a == 0 {
                            BipartiteGraph { left: vec![], right: (0..b).collect(), weights: vec![] }
                        } else {
                            g
                        };
                        let brute = min_cost_dcs_bruteforce(&g, lower, upper).is_ok();
                        assert_eq!(dcs_feasible(a, b, lower, upper), brute, "a={a} b={b} [{lower},{upper}]");
                    }
                }
            }
        }
    }
}
