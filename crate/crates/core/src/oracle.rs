//! Exhaustive optimal fair and balanced clusterings for small instances.

use crate::error::{Error, Result};
use crate::fair::is_t_balanced;
use crate::metric::Instance;
use crate::scalar::Scalar;
use crate::sor::{best_partition, Clustering, EXACT_LIMIT};

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSolution<T = f64> {
    pub cost: T,
    pub clustering: Clustering<T>,
}

fn counts_per_part<T: Scalar>(inst: &Instance<T>, labels: &[usize]) -> Vec<Vec<usize>> {
    let parts = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut counts = vec![vec![0usize; inst.ell()]; parts];
    for (p, &l) in labels.iter().enumerate() {
        counts[l][inst.group_of(p) - 1] += 1;
    }
    counts
}

fn solve<T: Scalar>(
    inst: &Instance<T>,
    k: usize,
    accept: impl Fn(&[usize]) -> bool,
    what: &str,
) -> Result<OracleSolution<T>> {
    if inst.len() > EXACT_LIMIT {
        return Err(Error::TooLarge { size: inst.len(), limit: EXACT_LIMIT });
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let (_, labels) = best_partition(inst.dist(), k, accept)
        .ok_or_else(|| Error::Infeasible(format!("no {what} clustering with at most {k} clusters")))?;
    let clustering = Clustering::from_labels(inst.dist(), &labels);
    Ok(OracleSolution { cost: clustering.cost, clustering })
}

/// Optimal (t,k)-fair clustering by enumerating every partition into at
/// most `k` parts. Only the cost bound prunes the search.
pub fn opt_fair_bruteforce<T: Scalar>(inst: &Instance<T>, t: u32, k: usize) -> Result<OracleSolution<T>> {
    if inst.ell() != 2 {
        return Err(Error::InvalidInput(format!("expected exactly two groups, found {}", inst.ell())));
    }
    if t == 0 {
        return Err(Error::NonIntegralBalance(t.to_string()));
    }
    solve(
        inst,
        k,
        |labels| counts_per_part(inst, labels).iter().all(|c| is_t_balanced(c[0], c[1], t)),
        &format!("{t}-fair"),
    )
}

/// Optimal balanced clustering by exhaustive enumeration.
pub fn opt_balanced_bruteforce<T: Scalar>(inst: &Instance<T>, k: usize) -> Result<OracleSolution<T>> {
    let sizes = inst.group_sizes();
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(Error::GroupSizesUnequal { sizes });
    }
    solve(
        inst,
        k,
        |labels| counts_per_part(inst, labels).iter().all(|c| c.iter().all(|&x| x == c[0])),
        "balanced",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fair::{verify_balanced, verify_fair};
    use crate::metric::DistanceMatrix;

    fn line(xs: &[f64], groups: Vec<usize>) -> Instance<f64> {
        Instance::new(groups, DistanceMatrix::from_fn(xs.len(), |i, j| (xs[i] - xs[j]).abs())).unwrap()
    }

    #[test]
    fn colocated_pairs() {
        let inst = line(&[0.0, 0.0, 10.0, 10.0], vec![1, 2, 1, 2]);
        assert_eq!(opt_fair_bruteforce(&inst, 1, 2).unwrap().cost, 0.0);
    }

    #[test]
    fn forced_single_cluster() {
        let inst = line(&[0.0, 3.0], vec![1, 2]);
        let sol = opt_fair_bruteforce(&inst, 1, 2).unwrap();
        assert_eq!(sol.cost, 3.0);
        assert_eq!(sol.clustering.len(), 1);
    }

    #[test]
    fn alternating_line() {
        // r@0 b@1 r@2 b@3; oracle: enumerate all 15 partitions and keep fair ones
        let xs = [0.0, 1.0, 2.0, 3.0];
        let inst = line(&xs, vec![1, 2, 1, 2]);
        let mut best = f64::INFINITY;
        let mut labels = [0usize; 4];
        fn rec(i: usize, parts: usize, labels: &mut [usize; 4], inst: &Instance<f64>, best: &mut f64) {
            if i == 4 {
                if parts > 2 {
                    return;
                }
                let mut total = 0.0;
                for part in 0..parts {
                    let members: Vec<usize> = (0..4).filter(|&p| labels[p] == part).collect();
                    let reds = members.iter().filter(|&&p| inst.group_of(p) == 1).count();
                    if reds * 2 != members.len() {
                        return;
                    }
                    total += (0..4)
                        .map(|c| members.iter().map(|&p| inst.d(c, p)).fold(0.0, f64::max))
                        .fold(f64::INFINITY, f64::min);
                }
                *best = best.min(total);
                return;
            }
            for part in 0..=parts {
                labels[i] = part;
                rec(i + 1, parts.max(part + 1), labels, inst, best);
            }
        }
        rec(0, 0, &mut labels, &inst, &mut best);
        assert_eq!(best, 2.0);
        let sol = opt_fair_bruteforce(&inst, 1, 2).unwrap();
        assert_eq!(sol.cost, best);
        assert!(verify_fair(&sol.clustering, &inst, 1));
    }

    #[test]
    fn infeasible_and_too_large() {
        let inst = line(&[0.0, 1.0, 2.0, 3.0], vec![1, 2, 2, 2]);
        assert!(matches!(opt_fair_bruteforce(&inst, 2, 3), Err(Error::Infeasible(_))));
        let big = line(&[0.0; 13], (0..13).map(|i| 1 + i % 2).collect());
        assert!(matches!(opt_fair_bruteforce(&big, 1, 2), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn balanced_cases() {
        let inst = line(&[0.0, 0.0, 0.0, 7.0, 7.0, 7.0], vec![1, 2, 3, 2, 3, 1]);
        let sol = opt_balanced_bruteforce(&inst, 2).unwrap();
        assert_eq!(sol.cost, 0.0);
        assert!(verify_balanced(&sol.clustering, &inst));
        let pair = line(&[0.0, 5.0], vec![1, 2]);
        assert_eq!(opt_balanced_bruteforce(&pair, 2).unwrap().cost, 5.0);
        let uneven = line(&[0.0, 5.0, 6.0], vec![1, 2, 2]);
        assert!(matches!(opt_balanced_bruteforce(&uneven, 2), Err(Error::GroupSizesUnequal { .. })));
    }

    #[test]
    fn monotone_in_k_and_t() {
        let inst = line(&[0.0, 1.0, 4.0, 9.0, 9.5, 20.0], vec![1, 2, 1, 1, 2, 2]);
        let mut prev = f64::INFINITY;
        for k in 1..=4 {
            let c = opt_fair_bruteforce(&inst, 1, k).unwrap().cost;
            assert!(c <= prev);
            prev = c;
        }
        let t1 = opt_fair_bruteforce(&inst, 1, 3).unwrap().cost;
        let t2 = opt_fair_bruteforce(&inst, 2, 3).unwrap().cost;
        assert!(t2 <= t1);
    }
}
