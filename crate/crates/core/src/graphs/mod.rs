//! Complete bipartite graphs, degree-constrained subgraphs and perfect matchings.

mod dcs;
mod flow;
mod matching;

pub use dcs::{dcs_feasible, min_cost_dcs, min_cost_dcs_bruteforce, BRUTEFORCE_EDGE_LIMIT};
pub use flow::MinCostFlow;
pub use matching::{min_weight_perfect_matching, Matching};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metric::Instance;
use crate::scalar::{sum, Scalar};

/// Complete bipartite graph with a weight on every left–right pair.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteGraph<T = f64> {
    left: Vec<usize>,
    right: Vec<usize>,
    weights: Vec<T>,
}

impl<T: Scalar> BipartiteGraph<T> {
    /// Left side is `group_a`, right side `group_b`, weights are instance distances.
    pub fn from_instance(inst: &Instance<T>, group_a: usize, group_b: usize) -> Self {
        let left = inst.group_members(group_a);
        let right = inst.group_members(group_b);
        let weights = left.iter().flat_map(|&p| right.iter().map(move |&q| inst.d(p, q))).collect();
        Self { left, right, weights }
    }

    /// Left ids `0..rows`, right ids `rows..rows + cols`.
    pub fn from_matrix(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(row) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::NotSquare { row, len: rows[row].len(), n: cols });
        }
        if rows.iter().flatten().any(|w| w.is_negative_value()) {
            return Err(Error::InvalidInput("edge weights must be nonnegative".into()));
        }
        Ok(Self {
            left: (0..rows.len()).collect(),
            right: (rows.len()..rows.len() + cols).collect(),
            weights: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Weight between the `i`-th left and `j`-th right vertex.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> T {
        self.weights[i * self.right.len() + j]
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }
}

/// A subgraph whose degrees respect the bounds it was solved for.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeConstrainedSubgraph<T = f64> {
    /// `(left point, right point)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
    pub total_weight: T,
    pub degree: BTreeMap<usize, usize>,
}

impl<T: Scalar> DegreeConstrainedSubgraph<T> {
    pub(crate) fn from_local(g: &BipartiteGraph<T>, local: &[(usize, usize)]) -> Self {
        let mut degree: BTreeMap<usize, usize> =
            g.left.iter().chain(g.right.iter()).map(|&v| (v, 0)).collect();
        let mut edges = Vec::with_capacity(local.len());
        for &(i, j) in local {
            let (a, b) = (g.left[i], g.right[j]);
            *degree.get_mut(&a).unwrap() += 1;
            *degree.get_mut(&b).unwrap() += 1;
            edges.push((a, b));
        }
        edges.sort_unstable();
        let total_weight = sum(local.iter().map(|&(i, j)| g.weight(i, j)));
        Self { edges, total_weight, degree }
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.degree.get(&v).copied().unwrap_or(0)
    }

    pub fn respects_bounds(&self, lower: usize, upper: usize) -> bool {
        self.degree.values().all(|&d| lower <= d && d <= upper)
    }

    /// True iff no edge joins two vertices of degree at least two, i.e. the
    /// subgraph has no path of three edges and is a disjoint union of stars.
    pub fn is_star_forest(&self) -> bool {
        self.edges.iter().all(|&(a, b)| self.degree_of(a) < 2 || self.degree_of(b) < 2)
    }
}
