//! Plain sum-of-radii clustering on a finite metric whose elements are also
//! the candidate centers.

mod partition;
mod primal_dual;

pub use partition::{best_partition, sor_exact, EXACT_LIMIT};
pub use primal_dual::{sor_approx, PRIMAL_DUAL_ALPHA};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::scalar::{sum, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Cluster<T = f64> {
    /// Element ids, sorted.
    pub members: Vec<usize>,
    pub center: usize,
    pub radius: T,
}

/// A partition with a center and radius per part; `cost` is the sum of radii.
#[derive(Clone, Debug, PartialEq)]
pub struct Clustering<T = f64> {
    pub clusters: Vec<Cluster<T>>,
    pub cost: T,
}

impl<T: Scalar> Clustering<T> {
    pub fn from_clusters(clusters: Vec<Cluster<T>>) -> Self {
        let cost = sum(clusters.iter().map(|c| c.radius));
        Self { clusters, cost }
    }

    /// Clusters `parts`, each centered at its best element of the whole metric.
    pub fn from_parts(metric: &DistanceMatrix<T>, parts: &[Vec<usize>]) -> Self {
        let clusters = parts
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| {
                let mut members = p.clone();
                members.sort_unstable();
                let (center, radius) = metric.best_center(&members, 0..metric.len()).expect("nonempty metric");
                Cluster { members, center, radius }
            })
            .collect();
        Self::from_clusters(clusters)
    }

    /// Clusters from a label vector (`labels[e]` = part of element `e`),
    /// parts ordered by first occurrence.
    pub fn from_labels(metric: &DistanceMatrix<T>, labels: &[usize]) -> Self {
        let parts = parts_from_labels(labels);
        Self::from_parts(metric, &parts)
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        self.clusters.iter().map(|c| c.members.clone()).collect()
    }

    /// `labels[e]` = index of the cluster holding `e`.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        let mut labels = vec![usize::MAX; n];
        for (i, c) in self.clusters.iter().enumerate() {
            for &m in &c.members {
                if m < n {
                    labels[m] = i;
                }
            }
        }
        labels
    }
}

pub(crate) fn parts_from_labels(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = Vec::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for (e, &l) in labels.iter().enumerate() {
        match order.iter().position(|&o| o == l) {
            Some(i) => parts[i].push(e),
            None => {
                order.push(l);
                parts.push(vec![e]);
            }
        }
    }
    parts
}

/// True iff `c` partitions `0..metric.len()` into at most `k` nonempty
/// clusters, every member lies within its cluster's radius, and the stored
/// cost is the sum of radii.
pub fn verify_clustering<T: Scalar>(c: &Clustering<T>, metric: &DistanceMatrix<T>, k: usize) -> bool {
    let n = metric.len();
    if c.clusters.len() > k {
        return false;
    }
    let mut seen = vec![false; n];
    for cluster in &c.clusters {
        if cluster.members.is_empty() || cluster.center >= n || cluster.radius.is_negative_value() {
            return false;
        }
        for &m in &cluster.members {
            if m >= n || seen[m] || metric.get(cluster.center, m) > cluster.radius {
                return false;
            }
            seen[m] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return false;
    }
    let total = sum(c.clusters.iter().map(|cl| cl.radius)).to_f64_lossy();
    (total - c.cost.to_f64_lossy()).abs() <= 1e-9 * total.abs().max(1.0)
}

/// Which sum-of-radii routine clusters the star-level metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Solver {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "primal-dual")]
    PrimalDual,
}

impl Solver {
    /// Approximation factor the routine is configured with.
    pub fn alpha(self) -> f64 {
        match self {
            Solver::Exact => 1.0,
            Solver::PrimalDual => PRIMAL_DUAL_ALPHA,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Solver::Exact => "exact",
            Solver::PrimalDual => "primal-dual",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Solver::Exact),
            "primal-dual" => Ok(Solver::PrimalDual),
            other => Err(Error::InvalidInput(format!("unknown solver `{other}` (expected exact or primal-dual)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub solver: Solver,
    pub epsilon: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { solver: Solver::PrimalDual, epsilon: 0.01 }
    }
}

impl SolverConfig {
    pub fn new(solver: Solver, epsilon: f64) -> Result<Self> {
        if epsilon <= 0.0 || !epsilon.is_finite() {
            return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(Self { solver, epsilon })
    }

    pub fn exact() -> Self {
        Self { solver: Solver::Exact, epsilon: 0.01 }
    }

    pub fn primal_dual(epsilon: f64) -> Self {
        Self { solver: Solver::PrimalDual, epsilon }
    }

    pub fn alpha(&self) -> f64 {
        self.solver.alpha()
    }

    pub fn solve<T: Scalar>(&self, metric: &DistanceMatrix<T>, k: usize) -> Result<Clustering<T>> {
        match self.solver {
            Solver::Exact => sor_exact(metric, k),
            Solver::PrimalDual => sor_approx(metric, k, self.epsilon),
        }
    }
}
