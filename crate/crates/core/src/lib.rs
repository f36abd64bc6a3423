//! Fair sum-of-radii clustering.
//!
//! Two pipelines share one backbone: pair every point of the first group
//! with points of the other groups through a cheap bipartite structure
//! (a degree-constrained subgraph for two groups with balance `t`, perfect
//! matchings for exactly balanced groups), cluster the resulting stars in
//! a shortest-path metric, and expand the star clusters back to points.
//!
//! Everything is generic over the distance scalar; the aliases at the
//! bottom name the common choices.

pub mod analysis;
pub mod error;
pub mod fair;
pub mod graphs;
pub mod metric;
pub mod oracle;
pub mod scalar;
pub mod sor;
pub mod stars;

pub use error::{Error, Result};
pub use fair::{
    balanced_cluster, clustering_cost, end_to_end_bound, fair_tk_cluster, verify_balanced, verify_fair,
    FairClusteringResult, Mode, ResultRecord,
};
pub use graphs::{min_cost_dcs, min_weight_perfect_matching, BipartiteGraph, DegreeConstrainedSubgraph, Matching};
pub use metric::{parse_balance, validate_metric, DistanceMatrix, FairnessSpec, GenMode, Instance};
pub use oracle::{opt_balanced_bruteforce, opt_fair_bruteforce, OracleSolution};
pub use scalar::Scalar;
pub use sor::{sor_approx, sor_exact, Cluster, Clustering, Solver, SolverConfig};
pub use stars::{Star, StarForest};

/// Instances with real-valued distances.
pub type RealInstance = Instance<f64>;
/// Instances with single-precision distances.
pub type F32Instance = Instance<f32>;
/// Instances with integer distances; every comparison is exact.
pub type IntInstance = Instance<i64>;
pub type RealClustering = Clustering<f64>;
pub type IntClustering = Clustering<i64>;
pub type RealMatrix = DistanceMatrix<f64>;
pub type IntMatrix = DistanceMatrix<i64>;
