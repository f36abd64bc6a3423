use super::Clustering;
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::scalar::{sum, Scalar};

/// Largest element count handled by exhaustive partition search.
pub const EXACT_LIMIT: usize = 12;

struct Search<'a, T, F> {
    metric: &'a DistanceMatrix<T>,
    k: usize,
    accept: F,
    labels: Vec<usize>,
    /// `ecc[part][c]`: largest distance from candidate center `c` to the part.
    ecc: Vec<Vec<T>>,
    radii: Vec<T>,
    best: Option<(T, Vec<usize>)>,
}

impl<T: Scalar, F: FnMut(&[usize]) -> bool> Search<'_, T, F> {
    fn run(&mut self, i: usize, parts: usize) {
        let m = self.metric.len();
        if i == m {
            if (self.accept)(&self.labels) {
                let cost = sum(self.radii[..parts].iter().copied());
                if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    self.best = Some((cost, self.labels.clone()));
                }
            }
            return;
        }
        let limit = if parts < self.k { parts + 1 } else { parts };
        for part in 0..limit {
            let saved_row = self.ecc[part].clone();
            let saved_radius = self.radii[part];
            let mut radius: Option<T> = None;
            for c in 0..m {
                let v = self.ecc[part][c].max_of(self.metric.get(c, i));
                self.ecc[part][c] = v;
                radius = Some(radius.map_or(v, |r| r.min_of(v)));
            }
            self.radii[part] = radius.unwrap_or_else(T::zero);
            let next_parts = parts.max(part + 1);
            let partial = sum(self.radii[..next_parts].iter().copied());
            let pruned = self.best.as_ref().is_some_and(|(b, _)| partial >= *b);
            if !pruned {
                self.labels[i] = part;
                self.run(i + 1, next_parts);
            }
            self.ecc[part] = saved_row;
            self.radii[part] = saved_radius;
        }
    }
}

/// Enumerates set partitions of the metric's elements into at most `k`
/// parts as restricted-growth strings and returns the cheapest one that
/// `accept` admits, with its cost.
///
/// A part costs the smallest eccentricity over all elements. Partial
/// assignments whose cost already reaches the incumbent are pruned (radii
/// never shrink as parts grow); `accept` only sees complete assignments.
/// Among equal costs the lexicographically first string wins.
pub fn best_partition<T: Scalar>(
    metric: &DistanceMatrix<T>,
    k: usize,
    accept: impl FnMut(&[usize]) -> bool,
) -> Option<(T, Vec<usize>)> {
    let m = metric.len();
    if m == 0 {
        return if k > 0 { Some((T::zero(), Vec::new())) } else { None };
    }
    if k == 0 {
        return None;
    }
    let mut search = Search {
        metric,
        k: k.min(m),
        accept,
        labels: vec![0; m],
        ecc: vec![vec![T::zero(); m]; k.min(m)],
        radii: vec![T::zero(); k.min(m)],
        best: None,
    };
    search.run(0, 0);
    search.best
}

/// Optimal sum-of-radii clustering with at most `k` clusters by exhaustive
/// search, for at most [`EXACT_LIMIT`] elements.
pub fn sor_exact<T: Scalar>(metric: &DistanceMatrix<T>, k: usize) -> Result<Clustering<T>> {
    if metric.len() > EXACT_LIMIT {
        return Err(Error::TooLarge { size: metric.len(), limit: EXACT_LIMIT });
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let (_, labels) = best_partition(metric, k, |_| true).expect("one part is always admissible");
    Ok(Clustering::from_labels(metric, &labels))
}
