//! Diagnostics that check the structural bounds behind the pipelines on
//! small instances with a known optimal clustering.
//!
//! Optimal clusters linked by a pairing edge are merged into superclusters.
//! Within a supercluster the checks are:
//!
//! - clustering the stars by supercluster costs at most twice the
//!   superclusters under the star metric;
//! - the superclusters cost at most 8 (10 for three or more groups) times
//!   the optimum;
//! - cluster-graph path witnesses stay within their radius multiples;
//! - exactly balanced instances keep their per-color degree structure.

mod graph;

pub use graph::{
    check_color_graph, check_switch_bounds, min_color_switch_path, min_switch_path, ClusterEdge, ClusterGraph,
    ColorReport, SwitchPath, SwitchReport, BOUND_TOLERANCE,
};

use serde::{Deserialize, Serialize};

use crate::fair::Mode;
use crate::metric::Instance;
use crate::scalar::{le_rel, ratio, sum, Scalar};
use crate::sor::Clustering;
use crate::stars::{build_derived_metric, StarForest};

/// Union of optimal clusters joined, directly or transitively, by pairing
/// edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Supercluster {
    /// Optimal-cluster ids, ascending.
    pub clusters: Vec<usize>,
    /// Points, ascending.
    pub points: Vec<usize>,
}

/// Merges the clusters of `opt` along every edge whose endpoints lie in
/// different clusters. Representatives are the smallest cluster ids, and the
/// result is ordered by representative.
pub fn build_superclusters<T: Scalar>(opt: &Clustering<T>, edges: &[(usize, usize)]) -> Vec<Supercluster> {
    let n = opt.clusters.iter().flat_map(|c| c.members.iter()).map(|&p| p + 1).max().unwrap_or(0);
    let labels = opt.labels(n);
    let k = opt.clusters.len();
    let mut rep: Vec<usize> = (0..k).collect();
    fn find(rep: &mut [usize], mut x: usize) -> usize {
        while rep[x] != x {
            rep[x] = rep[rep[x]];
            x = rep[x];
        }
        x
    }
    for &(a, b) in edges {
        if a >= n || b >= n {
            continue;
        }
        let (x, y) = (find(&mut rep, labels[a]), find(&mut rep, labels[b]));
        if x != y {
            rep[x.max(y)] = x.min(y);
        }
    }
    let mut out: Vec<Supercluster> = Vec::new();
    let mut index_of = vec![usize::MAX; k];
    for c in 0..k {
        let r = find(&mut rep, c);
        if index_of[r] == usize::MAX {
            index_of[r] = out.len();
            out.push(Supercluster { clusters: Vec::new(), points: Vec::new() });
        }
        let sc = &mut out[index_of[r]];
        sc.clusters.push(c);
        sc.points.extend_from_slice(&opt.clusters[c].members);
    }
    for sc in &mut out {
        sc.points.sort_unstable();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MergeReport {
    /// Star clustering by supercluster under the star metric, over the
    /// supercluster cost.
    pub lemma5_ratio: f64,
    /// Supercluster cost over the optimal cost.
    pub lemma6_ratio: f64,
    pub lemma6_bound: f64,
    pub supercluster_cost: f64,
    pub star_cost: f64,
    pub optimal_cost: f64,
    pub violations: Vec<String>,
}

/// Ceiling on the supercluster-to-optimum ratio for `ell` groups.
pub fn merge_bound(ell: usize) -> f64 {
    if ell <= 2 {
        8.0
    } else {
        10.0
    }
}

/// Compares superclusters against the optimum and against the stars they
/// contain. `edges` are the pairing edges the forest was built from.
pub fn check_merge_bounds<T: Scalar>(
    inst: &Instance<T>,
    opt: &Clustering<T>,
    edges: &[(usize, usize)],
    forest: &StarForest,
) -> MergeReport {
    let supers = build_superclusters(opt, edges);
    let mut violations = Vec::new();
    let radius = |pts: &[usize]| inst.dist().best_center(pts, 0..inst.len()).map_or(T::zero(), |(_, r)| r);
    let hat = sum(supers.iter().map(|s| radius(&s.points))).to_f64_lossy();
    let optimal = opt.cost.to_f64_lossy();

    let mut super_of = vec![usize::MAX; inst.len()];
    for (i, s) in supers.iter().enumerate() {
        for &p in &s.points {
            super_of[p] = i;
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); supers.len()];
    for (sid, star) in forest.stars.iter().enumerate() {
        let home = super_of[star.center];
        if star.points().any(|p| super_of[p] != home) {
            violations.push(format!("star centered at {} spans several superclusters", star.center));
        }
        groups[home].push(sid);
    }
    let derived = build_derived_metric(inst, forest);
    let star_cost = sum(groups
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| derived.dprime.best_center(g, 0..derived.len()).map_or(T::zero(), |(_, r)| r)))
    .to_f64_lossy();

    let lemma5_ratio = ratio(star_cost, hat);
    let lemma6_ratio = ratio(hat, optimal);
    let bound = merge_bound(inst.ell());
    if !le_rel(star_cost, 2.0 * hat, BOUND_TOLERANCE) {
        violations.push(format!("star clustering costs {star_cost}, above 2 x {hat}"));
    }
    if !le_rel(hat, bound * optimal, BOUND_TOLERANCE) {
        violations.push(format!("superclusters cost {hat}, above {bound} x {optimal}"));
    }
    MergeReport {
        lemma5_ratio,
        lemma6_ratio,
        lemma6_bound: bound,
        supercluster_cost: hat,
        star_cost,
        optimal_cost: optimal,
        violations,
    }
}

/// Serialized diagnostics for one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub instance_id: String,
    pub lemma5_ratio: f64,
    pub lemma6_ratio: f64,
    pub max_switch_weight_ratio: f64,
    pub color_degree_balance: bool,
    pub violations: Vec<String>,
}

impl DiagnosticReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs every check that applies to `mode` for the optimum `opt` and the
/// pipeline's pairing edges and stars.
///
/// Path bounds use parity switches for two groups and color switches for
/// three or more. Per-color checks run when the pairing is a perfect
/// matching per color (balanced mode, or balance parameter 1); otherwise
/// `color_degree_balance` is reported as vacuously true.
pub fn diagnose<T: Scalar>(
    instance_id: impl Into<String>,
    inst: &Instance<T>,
    opt: &Clustering<T>,
    edges: &[(usize, usize)],
    forest: &StarForest,
    mode: Mode,
) -> DiagnosticReport {
    let merge = check_merge_bounds(inst, opt, edges, forest);
    let mut violations = merge.violations.clone();
    let mut max_switch = 0.0f64;
    let mut balance = true;
    let matched = matches!(mode, Mode::Balanced | Mode::Fair { t: 1 });

    for sc in build_superclusters(opt, edges) {
        let g = ClusterGraph::build(inst, opt, &sc, edges);
        if !g.pairing_holds() {
            violations.push(format!("clusters {:?}: unpaired cluster-graph edge", sc.clusters));
        }
        let radii: Vec<T> = sc.clusters.iter().map(|&c| opt.clusters[c].radius).collect();
        if sum(radii.iter().copied()) == T::zero() {
            let inside = sum(edges
                .iter()
                .filter(|&&(a, b)| sc.points.binary_search(&a).is_ok() && sc.points.binary_search(&b).is_ok())
                .map(|&(a, b)| inst.d(a, b)));
            if inside != T::zero() {
                violations.push(format!("clusters {:?}: zero radii but pairing weight {inside:?}", sc.clusters));
            }
        }
        if inst.ell() == 2 {
            let rep = check_switch_bounds(&g, &radii);
            max_switch = max_switch.max(rep.max_ratio);
            violations.extend(rep.violations);
        }
        if matched {
            let rep = check_color_graph(&g, inst, opt, &radii);
            balance &= rep.degree_balance;
            if inst.ell() > 2 {
                max_switch = max_switch.max(rep.max_ratio);
            }
            violations.extend(rep.violations);
        }
    }
    DiagnosticReport {
        instance_id: instance_id.into(),
        lemma5_ratio: merge.lemma5_ratio,
        lemma6_ratio: merge.lemma6_ratio,
        max_switch_weight_ratio: max_switch,
        color_degree_balance: balance,
        violations,
    }
}
