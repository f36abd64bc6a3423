//! Lagrangian primal-dual sum-of-radii.
//!
//! For a per-ball opening charge `lambda`, duals of uncovered elements grow
//! uniformly until some ball `(c, r)` pays for `r + lambda`; that ball opens
//! tentatively and freezes its elements. Tentative balls are then pruned to
//! a pairwise element-disjoint subfamily, largest radius first, and every
//! pruned ball is absorbed by the selected ball it conflicts with (which
//! covers it at three times its own radius). Bisection on `lambda` trades
//! ball count against radius.

use super::{parts_from_labels, Clustering};
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::scalar::Scalar;

/// Approximation factor recorded for this routine.
pub const PRIMAL_DUAL_ALPHA: f64 = 3.504;

const MAX_BISECTIONS: usize = 100;

struct Ball {
    radius: f64,
    members: Vec<usize>,
}

struct Balls {
    balls: Vec<Ball>,
    /// `containing[j]`: balls that hold element `j`.
    containing: Vec<Vec<usize>>,
    covers: Vec<Vec<bool>>,
}

impl Balls {
    /// One ball per (center, distinct distance from that center), ordered by
    /// center then radius.
    fn new(d: &[Vec<f64>]) -> Self {
        let m = d.len();
        let mut balls = Vec::new();
        for row in d {
            let mut radii: Vec<f64> = row.clone();
            radii.sort_by(f64::total_cmp);
            radii.dedup();
            for r in radii {
                let members: Vec<usize> = (0..m).filter(|&j| row[j] <= r).collect();
                balls.push(Ball { radius: r, members });
            }
        }
        let mut containing = vec![Vec::new(); m];
        let mut covers = vec![vec![false; m]; balls.len()];
        for (b, ball) in balls.iter().enumerate() {
            for &j in &ball.members {
                containing[j].push(b);
                covers[b][j] = true;
            }
        }
        Self { balls, containing, covers }
    }

    fn conflict(&self, a: usize, b: usize) -> bool {
        self.balls[a].members.iter().any(|&j| self.covers[b][j])
    }

    /// Runs dual growth for one `lambda` and returns a label per element.
    fn cover(&self, m: usize, lambda: f64) -> Vec<usize> {
        let nb = self.balls.len();
        let mut active = vec![true; m];
        let mut remaining = m;
        let mut paid = vec![0.0f64; nb];
        let mut active_in: Vec<usize> = self.balls.iter().map(|b| b.members.len()).collect();
        let mut tight = vec![false; nb];
        let mut opened = Vec::new();
        let mut frozen_by = vec![usize::MAX; m];

        while remaining > 0 {
            let mut next: Option<(usize, f64)> = None;
            for b in 0..nb {
                if tight[b] || active_in[b] == 0 {
                    continue;
                }
                let slack = (self.balls[b].radius + lambda - paid[b]).max(0.0);
                let dt = slack / active_in[b] as f64;
                if next.is_none_or(|(_, best)| dt < best) {
                    next = Some((b, dt));
                }
            }
            let (b, dt) = next.expect("an active element lies in some ball");
            for x in 0..nb {
                paid[x] += dt * active_in[x] as f64;
            }
            tight[b] = true;
            opened.push(b);
            for &j in &self.balls[b].members {
                if active[j] {
                    active[j] = false;
                    remaining -= 1;
                    frozen_by[j] = b;
                    for &x in &self.containing[j] {
                        active_in[x] -= 1;
                    }
                }
            }
        }

        let mut order: Vec<(usize, usize)> = opened.iter().copied().enumerate().collect();
        order.sort_by(|&(ia, a), &(ib, b)| self.balls[b].radius.total_cmp(&self.balls[a].radius).then(ia.cmp(&ib)));
        let mut owner = vec![usize::MAX; nb];
        let mut selected: Vec<usize> = Vec::new();
        for &(_, b) in &order {
            match selected.iter().find(|&&s| self.conflict(s, b)) {
                Some(&s) => owner[b] = s,
                None => {
                    owner[b] = b;
                    selected.push(b);
                }
            }
        }
        (0..m).map(|j| owner[frozen_by[j]]).collect()
    }
}

/// Greedily merges the pair of parts whose union raises the cost least
/// until at most `k` parts remain.
fn merge_down<T: Scalar>(metric: &DistanceMatrix<T>, mut parts: Vec<Vec<usize>>, k: usize) -> Vec<Vec<usize>> {
    let radius = |p: &[usize]| metric.best_center(p, 0..metric.len()).map_or(0.0, |(_, r)| r.to_f64_lossy());
    let mut radii: Vec<f64> = parts.iter().map(|p| radius(p)).collect();
    while parts.len() > k.max(1) {
        let mut best: Option<(usize, usize, f64, f64)> = None;
        for a in 0..parts.len() {
            for b in (a + 1)..parts.len() {
                let mut union = parts[a].clone();
                union.extend_from_slice(&parts[b]);
                let r = radius(&union);
                let delta = r - radii[a] - radii[b];
                if best.is_none_or(|(_, _, bd, _)| delta < bd) {
                    best = Some((a, b, delta, r));
                }
            }
        }
        let (a, b, _, r) = best.expect("at least two parts");
        let tail = parts.remove(b);
        radii.remove(b);
        parts[a].extend(tail);
        parts[a].sort_unstable();
        radii[a] = r;
    }
    parts
}

/// Sum-of-radii clustering with at most `k` clusters by Lagrangian
/// primal-dual. Bisection stops once the feasible and infeasible brackets
/// are within `epsilon / 4` of the best cost found.
pub fn sor_approx<T: Scalar>(metric: &DistanceMatrix<T>, k: usize, epsilon: f64) -> Result<Clustering<T>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
    }
    let m = metric.len();
    if m == 0 {
        return Ok(Clustering::from_clusters(Vec::new()));
    }
    if k >= m {
        let singletons: Vec<Vec<usize>> = (0..m).map(|e| vec![e]).collect();
        return Ok(Clustering::from_parts(metric, &singletons));
    }
    let d: Vec<Vec<f64>> = (0..m).map(|i| metric.row(i).iter().map(|v| v.to_f64_lossy()).collect()).collect();
    let max_d = d.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    let everything = Clustering::from_parts(metric, &[(0..m).collect()]);
    if max_d == 0.0 {
        return Ok(everything);
    }

    let balls = Balls::new(&d);
    let mut best = everything;
    let consider = |parts: Vec<Vec<usize>>, best: &mut Clustering<T>| {
        let candidate = Clustering::from_parts(metric, &parts);
        if candidate.cost < best.cost {
            *best = candidate;
        }
    };

    let (mut lo, mut hi) = (0.0f64, max_d * m as f64 + 1.0);
    let mut lo_cost = 0.0f64;
    let hi_parts = parts_from_labels(&balls.cover(m, hi));
    if hi_parts.len() <= k {
        consider(hi_parts, &mut best);
    }
    for _ in 0..MAX_BISECTIONS {
        let best_cost = best.cost.to_f64_lossy();
        if (best_cost - lo_cost).abs() <= epsilon * best_cost / 4.0 || hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let parts = parts_from_labels(&balls.cover(m, mid));
        if parts.len() <= k {
            hi = mid;
            consider(parts, &mut best);
        } else {
            lo = mid;
            let over = Clustering::from_parts(metric, &parts);
            lo_cost = over.cost.to_f64_lossy();
            consider(merge_down(metric, parts, k), &mut best);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sor::{sor_exact, verify_clustering};

    fn line(xs: &[f64]) -> DistanceMatrix<f64> {
        DistanceMatrix::from_fn(xs.len(), |i, j| (xs[i] - xs[j]).abs())
    }

    #[test]
    fn enough_budget_gives_singletons() {
        let d = line(&[0.0, 5.0, 9.0]);
        let c = sor_approx(&d, 3, 0.1).unwrap();
        assert_eq!(c.cost, 0.0);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn single_element() {
        let c = sor_approx(&line(&[2.0]), 1, 0.1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.cost, 0.0);
    }

    #[test]
    fn separated_pairs_are_found() {
        let d = line(&[0.0, 1.0, 10.0, 11.0]);
        let c = sor_approx(&d, 2, 0.01).unwrap();
        assert!(verify_clustering(&c, &d, 2));
        assert_eq!(c.cost, sor_exact(&d, 2).unwrap().cost);
    }

    #[test]
    fn colocated_points() {
        let d = line(&[1.0; 5]);
        let c = sor_approx(&d, 2, 0.01).unwrap();
        assert_eq!(c.cost, 0.0);
        assert!(verify_clustering(&c, &d, 2));
    }

    #[test]
    fn bad_parameters() {
        let d = line(&[0.0, 1.0]);
        assert!(sor_approx(&d, 0, 0.1).is_err());
        assert!(sor_approx(&d, 1, 0.0).is_err());
    }

    #[test]
    fn integer_metric() {
        let d = DistanceMatrix::<i64>::from_fn(5, |i, j| (i as i64 - j as i64).abs() * 3);
        let c = sor_approx(&d, 2, 0.1).unwrap();
        assert!(verify_clustering(&c, &d, 2));
    }
}
