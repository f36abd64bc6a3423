//! End-to-end pipelines for (t,k)-fair two-color clustering and balanced
//! ℓ-group clustering, plus the fairness and cost checks they rely on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{dcs_feasible, min_cost_dcs, min_weight_perfect_matching, BipartiteGraph, Matching};
use crate::metric::Instance;
use crate::scalar::{sum, Scalar};
use crate::sor::{Clustering, Solver, SolverConfig};
use crate::stars::{
    build_derived_metric, expand_clustering, expansion_ratio, extract_stars, stars_from_matchings, StarForest,
};

/// Which pipeline produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Two groups with integer balance parameter `t`.
    Fair { t: u32 },
    /// ℓ groups of equal size, every cluster exactly balanced.
    Balanced,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FairClusteringResult<T = f64> {
    pub mode: Mode,
    pub clustering: Clustering<T>,
    pub star_clustering: Clustering<T>,
    pub forest: StarForest,
    /// Edges of the degree-constrained subgraph, or of all matchings.
    pub edges: Vec<(usize, usize)>,
    pub dcs_weight: T,
    pub cost: T,
    pub fairness_ok: bool,
    pub expansion_ratio: f64,
    pub solver: Solver,
    pub alpha: f64,
}

/// End-to-end approximation factor implied by a star-level routine with
/// factor `alpha`: the expansion factor 3 times the merge factor 2 times the
/// supercluster factor (8 for two groups, 10 for three or more).
pub fn end_to_end_bound(alpha: f64, ell: usize) -> f64 {
    let merge = if ell <= 2 { 8.0 } else { 10.0 };
    3.0 * 2.0 * merge * alpha
}

fn two_groups<T: Scalar>(inst: &Instance<T>) -> Result<(usize, usize)> {
    if inst.ell() != 2 {
        return Err(Error::InvalidInput(format!("expected exactly two groups, found {}", inst.ell())));
    }
    let sizes = inst.group_sizes();
    Ok((sizes[0], sizes[1]))
}

/// Whole point set is t-balanced, hence a (t,k)-fair clustering exists.
pub fn is_t_balanced(reds: usize, blues: usize, t: u32) -> bool {
    let t = t as usize;
    reds <= t * blues && blues <= t * reds
}

fn finish<T: Scalar>(
    mode: Mode,
    inst: &Instance<T>,
    forest: StarForest,
    edges: Vec<(usize, usize)>,
    dcs_weight: T,
    k: usize,
    config: &SolverConfig,
) -> Result<FairClusteringResult<T>> {
    let derived = build_derived_metric(inst, &forest);
    let star_clustering = config.solve(&derived.dprime, k)?;
    let clustering = expand_clustering(&star_clustering, &forest, inst)?;
    let fairness_ok = match mode {
        Mode::Fair { t } => verify_fair(&clustering, inst, t),
        Mode::Balanced => verify_balanced(&clustering, inst),
    };
    if !fairness_ok || clustering.len() > k {
        return Err(Error::BoundViolated(format!(
            "pipeline produced an invalid clustering ({} clusters, fair = {fairness_ok})",
            clustering.len()
        )));
    }
    Ok(FairClusteringResult {
        mode,
        cost: clustering.cost,
        expansion_ratio: expansion_ratio(&clustering, &star_clustering),
        clustering,
        star_clustering,
        forest,
        edges,
        dcs_weight,
        fairness_ok,
        solver: config.solver,
        alpha: config.alpha(),
    })
}

/// (t,k)-fair sum-of-radii clustering of a two-group instance.
///
/// 1. min-cost subgraph of the red–blue complete bipartite graph with all
///    degrees in `[1, t]`;
/// 2. its stars and the star-level shortest-path metric;
/// 3. sum-of-radii clustering of the stars;
/// 4. expansion back to points.
pub fn fair_tk_cluster<T: Scalar>(
    inst: &Instance<T>,
    t: u32,
    k: usize,
    config: &SolverConfig,
) -> Result<FairClusteringResult<T>> {
    if t == 0 {
        return Err(Error::NonIntegralBalance(t.to_string()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let (reds, blues) = two_groups(inst)?;
    if !is_t_balanced(reds, blues, t) || !dcs_feasible(reds, blues, 1, t as usize) {
        return Err(Error::Infeasible(format!("{reds} red and {blues} blue points are not {t}-balanced")));
    }
    let g = BipartiteGraph::from_instance(inst, 1, 2);
    let dcs = min_cost_dcs(&g, 1, t as usize)?;
    let forest = extract_stars(&dcs, inst)?;
    finish(Mode::Fair { t }, inst, forest, dcs.edges, dcs.total_weight, k, config)
}

/// Per-group perfect matchings from group 1 to every other group.
pub fn group_matchings<T: Scalar>(inst: &Instance<T>) -> Result<Vec<Matching<T>>> {
    let sizes = inst.group_sizes();
    if inst.ell() < 2 {
        return Err(Error::InvalidInput("at least two groups are required".into()));
    }
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(Error::GroupSizesUnequal { sizes });
    }
    (2..=inst.ell())
        .map(|z| min_weight_perfect_matching(&BipartiteGraph::from_instance(inst, 1, z)))
        .collect()
}

/// Balanced sum-of-radii clustering of an instance whose groups all have
/// the same size.
pub fn balanced_cluster<T: Scalar>(
    inst: &Instance<T>,
    k: usize,
    config: &SolverConfig,
) -> Result<FairClusteringResult<T>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let matchings = group_matchings(inst)?;
    let forest = stars_from_matchings(&matchings, inst)?;
    let weight = sum(matchings.iter().map(|m| m.total_weight));
    let mut edges: Vec<(usize, usize)> = matchings.iter().flat_map(|m| m.pairs.iter().copied()).collect();
    edges.sort_unstable();
    finish(Mode::Balanced, inst, forest, edges, weight, k, config)
}

/// Every cluster has red and blue counts within a factor `t` of each other.
pub fn verify_fair<T: Scalar>(clustering: &Clustering<T>, inst: &Instance<T>, t: u32) -> bool {
    if inst.ell() != 2 {
        return false;
    }
    clustering.clusters.iter().all(|c| {
        let counts = inst.group_counts(&c.members);
        is_t_balanced(counts[0], counts[1], t)
    })
}

/// Every cluster holds the same number of points from every group.
pub fn verify_balanced<T: Scalar>(clustering: &Clustering<T>, inst: &Instance<T>) -> bool {
    clustering.clusters.iter().all(|c| {
        let counts = inst.group_counts(&c.members);
        counts.iter().all(|&x| x == counts[0])
    })
}

/// Sum over clusters of the smallest eccentricity over all points.
pub fn clustering_cost<T: Scalar>(clustering: &Clustering<T>, inst: &Instance<T>) -> T {
    sum(clustering
        .clusters
        .iter()
        .map(|c| inst.dist().best_center(&c.members, 0..inst.len()).map_or(T::zero(), |(_, r)| r)))
}

/// JSON form of a clustering result.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClusterRecord {
    pub members: Vec<usize>,
    pub center: usize,
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResultRecord {
    pub clusters: Vec<ClusterRecord>,
    pub cost: f64,
    pub fair: bool,
    pub k_used: usize,
    pub dcs_weight: f64,
    pub expansion_ratio: f64,
    pub solver: Solver,
    pub alpha: f64,
}

pub fn cluster_records<T: Scalar>(clustering: &Clustering<T>) -> Vec<ClusterRecord> {
    clustering
        .clusters
        .iter()
        .map(|c| ClusterRecord { members: c.members.clone(), center: c.center, radius: c.radius.to_f64_lossy() })
        .collect()
}

impl<T: Scalar> FairClusteringResult<T> {
    pub fn to_record(&self) -> ResultRecord {
        ResultRecord {
            clusters: cluster_records(&self.clustering),
            cost: self.cost.to_f64_lossy(),
            fair: self.fairness_ok,
            k_used: self.clustering.len(),
            dcs_weight: self.dcs_weight.to_f64_lossy(),
            expansion_ratio: self.expansion_ratio,
            solver: self.solver,
            alpha: self.alpha,
        }
    }
}
