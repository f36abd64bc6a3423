//! Stars of the degree-constrained subgraph (or of the per-group matchings)
//! and the star-level metric built on top of them.

use crate::error::{Error, Result};
use crate::graphs::{DegreeConstrainedSubgraph, Matching};
use crate::metric::{DistanceMatrix, Instance};
use crate::scalar::{le_rel, ratio, Scalar};
use crate::sor::{Cluster, Clustering};

/// Relative slack used when asserting expansion ceilings.
pub const EXPANSION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl Star {
    /// Center first, then leaves in ascending order.
    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }

    pub fn len(&self) -> usize {
        1 + self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A partition of the points into stars, ordered by center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarForest {
    pub stars: Vec<Star>,
    pub star_of: Vec<usize>,
}

impl StarForest {
    fn from_stars(mut stars: Vec<Star>, n: usize) -> Result<Self> {
        stars.sort_by_key(|s| s.center);
        let mut star_of = vec![usize::MAX; n];
        for (idx, star) in stars.iter().enumerate() {
            for p in star.points() {
                star_of[p] = idx;
            }
        }
        if let Some(point) = star_of.iter().position(|&s| s == usize::MAX) {
            return Err(Error::UncoveredPoint { point });
        }
        Ok(Self { stars, star_of })
    }

    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    /// All points of the stars in `star_ids`, sorted.
    pub fn union_points(&self, star_ids: &[usize]) -> Vec<usize> {
        let mut pts: Vec<usize> = star_ids.iter().flat_map(|&s| self.stars[s].points()).collect();
        pts.sort_unstable();
        pts
    }
}

/// Splits a degree-constrained subgraph into its star components.
///
/// A component's center is its unique vertex of degree at least two; a
/// single-edge component is centered at its group-1 endpoint.
pub fn extract_stars<T: Scalar>(dcs: &DegreeConstrainedSubgraph<T>, inst: &Instance<T>) -> Result<StarForest> {
    let n = inst.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &dcs.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    if let Some(point) = (0..n).find(|&p| adj[p].is_empty()) {
        return Err(Error::UncoveredPoint { point });
    }

    let mut seen = vec![false; n];
    let mut stars = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut component = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < component.len() {
            let v = component[head];
            head += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    component.push(w);
                }
            }
        }
        component.sort_unstable();
        let hubs: Vec<usize> = component.iter().copied().filter(|&v| adj[v].len() >= 2).collect();
        let center = match hubs.as_slice() {
            [] => {
                // single edge
                let (a, b) = (component[0], component[1]);
                if inst.group_of(b) == 1 && inst.group_of(a) != 1 {
                    b
                } else {
                    a
                }
            }
            [hub] => *hub,
            _ => return Err(Error::ComponentNotAStar { point: start }),
        };
        let leaves: Vec<usize> = component.iter().copied().filter(|&v| v != center).collect();
        if leaves.iter().any(|&leaf| adj[leaf] != [center]) {
            return Err(Error::ComponentNotAStar { point: start });
        }
        stars.push(Star { center, leaves });
    }
    StarForest::from_stars(stars, n)
}

/// Builds the sets `S_p = {p} ∪ {partners of p}` for every group-1 point `p`
/// from one perfect matching per other group.
pub fn stars_from_matchings<T: Scalar>(matchings: &[Matching<T>], inst: &Instance<T>) -> Result<StarForest> {
    let anchors = inst.group_members(1);
    let mut leaves: Vec<Vec<usize>> = vec![Vec::new(); inst.len()];
    for m in matchings {
        for &(p, q) in &m.pairs {
            if inst.group_of(p) != 1 {
                return Err(Error::InvalidInput(format!("matching edge ({p}, {q}) does not start in group 1")));
            }
            leaves[p].push(q);
        }
    }
    let stars = anchors
        .into_iter()
        .map(|p| {
            let mut l = std::mem::take(&mut leaves[p]);
            l.sort_unstable();
            Star { center: p, leaves: l }
        })
        .collect();
    StarForest::from_stars(stars, inst.len())
}

/// Shortest-path metric of the auxiliary graph on points and stars,
/// restricted to stars, plus point-to-star distances.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedMetric<T = f64> {
    pub dprime: DistanceMatrix<T>,
    point_to_star: Vec<T>,
    stars: usize,
}

impl<T: Scalar> DerivedMetric<T> {
    pub fn len(&self) -> usize {
        self.stars
    }

    pub fn is_empty(&self) -> bool {
        self.stars == 0
    }

    /// `d'(p, S)` after shortest-path closure.
    pub fn point_to_star(&self, p: usize, s: usize) -> T {
        self.point_to_star[p * self.stars + s]
    }
}

/// Constructs the auxiliary graph with point–point edges `d(p, q)` and
/// point–star edges `max_{q in S} d(p, q)`, and closes it under shortest paths.
pub fn build_derived_metric<T: Scalar>(inst: &Instance<T>, forest: &StarForest) -> DerivedMetric<T> {
    let n = inst.len();
    let m = forest.len();
    let star_points: Vec<Vec<usize>> = forest.stars.iter().map(|s| s.points().collect()).collect();
    let hop: Vec<Vec<T>> =
        (0..n).map(|p| star_points.iter().map(|pts| inst.dist().eccentricity(p, pts)).collect()).collect();

    // Vertices 0..n are points, n..n+m are stars. Star–star pairs start at
    // their best two-hop route through a point, which is a real path in G'.
    let mut full = DistanceMatrix::from_fn(n + m, |i, j| match (i < n, j < n) {
        (true, true) => inst.d(i, j),
        (true, false) => hop[i][j - n],
        (false, true) => hop[j][i - n],
        (false, false) => {
            if i == j {
                T::zero()
            } else {
                (0..n)
                    .map(|p| hop[p][i - n] + hop[p][j - n])
                    .reduce(|a, b| a.min_of(b))
                    .unwrap_or_else(T::zero)
            }
        }
    });
    full.shortest_path_closure();

    let dprime = DistanceMatrix::from_fn(m, |i, j| full.get(n + i, n + j));
    let mut point_to_star = Vec::with_capacity(n * m);
    for p in 0..n {
        for s in 0..m {
            point_to_star.push(full.get(p, n + s));
        }
    }
    DerivedMetric { dprime, point_to_star, stars: m }
}

/// Per-cluster ceiling on the expanded radius: `max(3 r_i, ecc(c, S))` where
/// `S` is the cluster's center star and `c` that star's center point.
///
/// Every other star `S'` of the cluster satisfies `d'(c, S') <= 3 d'(S, S')`;
/// the center star itself sits at star-level distance zero but still has
/// spread `ecc(c, S)` in the original metric.
pub fn expansion_ceiling<T: Scalar>(star_clusters: &Clustering<T>, forest: &StarForest, inst: &Instance<T>) -> Vec<T> {
    let three = T::one() + T::one() + T::one();
    star_clusters
        .clusters
        .iter()
        .map(|c| {
            let star = &forest.stars[c.center];
            let pts: Vec<usize> = star.points().collect();
            (three * c.radius).max_of(inst.dist().eccentricity(star.center, &pts))
        })
        .collect()
}

/// Replaces every star by its points. Each expanded cluster is re-centered
/// at its best center in the whole point set.
///
/// Fails with [`Error::BoundViolated`] if an expanded radius exceeds its
/// [`expansion_ceiling`].
pub fn expand_clustering<T: Scalar>(
    star_clusters: &Clustering<T>,
    forest: &StarForest,
    inst: &Instance<T>,
) -> Result<Clustering<T>> {
    let ceiling = expansion_ceiling(star_clusters, forest, inst);
    let mut clusters = Vec::with_capacity(star_clusters.clusters.len());
    for (c, cap) in star_clusters.clusters.iter().zip(ceiling) {
        let members = forest.union_points(&c.members);
        let (center, radius) = inst.dist().best_center(&members, 0..inst.len()).expect("nonempty point set");
        if !le_rel(radius.to_f64_lossy(), cap.to_f64_lossy(), EXPANSION_TOLERANCE) {
            return Err(Error::BoundViolated(format!(
                "expanded radius {radius:?} exceeds ceiling {cap:?} for stars {:?}",
                c.members
            )));
        }
        clusters.push(Cluster { members, center, radius });
    }
    Ok(Clustering::from_clusters(clusters))
}

/// `cost(X') / cost(X)` with `0 / 0 = 0`.
pub fn expansion_ratio<T: Scalar>(expanded: &Clustering<T>, star_clusters: &Clustering<T>) -> f64 {
    ratio(expanded.cost.to_f64_lossy(), star_clusters.cost.to_f64_lossy())
}
