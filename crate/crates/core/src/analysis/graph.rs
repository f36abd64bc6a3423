//! Directed cluster multigraph over the optimal clusters of one
//! supercluster, and minimum-switch paths through it.

use serde::{Deserialize, Serialize};

use super::Supercluster;
use crate::error::{Error, Result};
use crate::metric::Instance;
use crate::scalar::{le_rel, ratio, sum, Scalar};
use crate::sor::Clustering;

/// Relative slack for every bound checked here.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// One direction of a cross-cluster pairing edge `{p, q}`, `p` in group 1.
///
/// Parity 0 runs from `p`'s cluster to `q`'s, parity 1 from `q`'s to `p`'s.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterEdge<T = f64> {
    pub from: usize,
    pub to: usize,
    pub parity: u8,
    /// Group of the non-group-1 endpoint.
    pub color: usize,
    pub weight: T,
    pub source: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterGraph<T = f64> {
    /// Optimal-cluster id of each vertex.
    pub clusters: Vec<usize>,
    pub edges: Vec<ClusterEdge<T>>,
}

impl<T: Scalar> ClusterGraph<T> {
    /// Graph of the supercluster `sc` under the clustering `opt`, with one
    /// 0-edge and one reverse 1-edge per pairing edge joining two of its
    /// clusters. Edges inside a single cluster are dropped.
    pub fn build(inst: &Instance<T>, opt: &Clustering<T>, sc: &Supercluster, edges: &[(usize, usize)]) -> Self {
        let labels = opt.labels(inst.len());
        let vertex_of = |p: usize| sc.clusters.iter().position(|&c| c == labels[p]);
        let mut out = Vec::new();
        for &(a, b) in edges {
            let (p, q) = if inst.group_of(a) == 1 { (a, b) } else { (b, a) };
            let (Some(vp), Some(vq)) = (vertex_of(p), vertex_of(q)) else { continue };
            if vp == vq {
                continue;
            }
            let weight = inst.d(p, q);
            let color = inst.group_of(q);
            out.push(ClusterEdge { from: vp, to: vq, parity: 0, color, weight, source: (p, q) });
            out.push(ClusterEdge { from: vq, to: vp, parity: 1, color, weight, source: (p, q) });
        }
        Self { clusters: sc.clusters.clone(), edges: out }
    }

    pub fn vertex_count(&self) -> usize {
        self.clusters.len()
    }

    /// Every 0-edge has a reverse 1-edge of equal weight from the same
    /// source edge, and vice versa.
    pub fn pairing_holds(&self) -> bool {
        self.edges.iter().all(|e| {
            self.edges.iter().any(|f| {
                f.from == e.to
                    && f.to == e.from
                    && f.parity != e.parity
                    && f.source == e.source
                    && f.weight == e.weight
                    && f.color == e.color
            })
        })
    }

    /// Subgraph of the edges of one color.
    pub fn color_subgraph(&self, color: usize) -> Self {
        Self {
            clusters: self.clusters.clone(),
            edges: self.edges.iter().filter(|e| e.color == color).cloned().collect(),
        }
    }

    /// Weakly connected component label per vertex; labels are the smallest
    /// vertex of each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp: Vec<usize> = (0..n).collect();
        let find = |comp: &mut Vec<usize>, mut x: usize| {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        };
        for e in &self.edges {
            let (a, b) = (find(&mut comp, e.from), find(&mut comp, e.to));
            if a != b {
                comp[a.max(b)] = a.min(b);
            }
        }
        (0..n).map(|v| find(&mut comp, v)).collect()
    }

    /// Vertices reachable from `a` along edges of one parity only.
    pub fn reachable_by_parity(&self, a: usize, parity: u8) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.from == v && e.parity == parity) {
                if !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

/// A simple directed path with the edges it uses.
#[derive(Clone, Debug, PartialEq)]
pub struct SwitchPath<T = f64> {
    pub vertices: Vec<usize>,
    /// Indices into the graph's edge list.
    pub edges: Vec<usize>,
    pub switches: usize,
    pub weight: T,
}

fn count_switches<T>(g: &ClusterGraph<T>, edges: &[usize], key: impl Fn(&ClusterEdge<T>) -> usize) -> usize {
    edges.windows(2).filter(|w| key(&g.edges[w[0]]) != key(&g.edges[w[1]])).count()
}

/// Lexicographic `(switches, weight)` shortest walk over states
/// `(vertex, key of the last edge)`, shortened to a simple path. Cutting a
/// loop never adds a switch or weight, so the result stays optimal.
fn min_switch_by<T: Scalar>(
    g: &ClusterGraph<T>,
    a: usize,
    b: usize,
    keys: usize,
    key: impl Fn(&ClusterEdge<T>) -> usize,
) -> Result<SwitchPath<T>> {
    let n = g.vertex_count();
    if a >= n || b >= n {
        return Err(Error::InvalidInput(format!("vertex out of range for a graph on {n} vertices")));
    }
    if a == b {
        return Ok(SwitchPath { vertices: vec![a], edges: Vec::new(), switches: 0, weight: T::zero() });
    }
    // state = vertex * (keys + 1) + last key, where `keys` marks "no edge yet"
    let width = keys + 1;
    let states = n * width;
    let mut label: Vec<Option<(usize, T)>> = vec![None; states];
    let mut back: Vec<Option<(usize, usize)>> = vec![None; states];
    let mut done = vec![false; states];
    label[a * width + keys] = Some((0, T::zero()));
    loop {
        let mut pick: Option<usize> = None;
        for s in 0..states {
            if done[s] {
                continue;
            }
            if let Some((sw, w)) = label[s] {
                let better = pick.is_none_or(|p| {
                    let (psw, pw) = label[p].unwrap();
                    sw < psw || (sw == psw && w < pw)
                });
                if better {
                    pick = Some(s);
                }
            }
        }
        let Some(s) = pick else { break };
        done[s] = true;
        let (v, last) = (s / width, s % width);
        let (sw, w) = label[s].unwrap();
        for (idx, e) in g.edges.iter().enumerate().filter(|(_, e)| e.from == v) {
            let k = key(e);
            let nsw = sw + usize::from(last != keys && last != k);
            let nw = w + e.weight;
            let t = e.to * width + k;
            let improves = label[t].is_none_or(|(tsw, tw)| nsw < tsw || (nsw == tsw && nw < tw));
            if !done[t] && improves {
                label[t] = Some((nsw, nw));
                back[t] = Some((s, idx));
            }
        }
    }
    let end = (0..keys)
        .map(|k| b * width + k)
        .filter(|&s| label[s].is_some())
        .min_by(|&x, &y| {
            let (xs, xw) = label[x].unwrap();
            let (ys, yw) = label[y].unwrap();
            xs.cmp(&ys).then(xw.partial_cmp(&yw).unwrap_or(std::cmp::Ordering::Equal))
        })
        .ok_or(Error::Unreachable { from: a, to: b })?;

    let mut walk = Vec::new();
    let mut s = end;
    while let Some((prev, idx)) = back[s] {
        walk.push(idx);
        s = prev;
    }
    walk.reverse();

    let mut vertices = vec![a];
    let mut edges: Vec<usize> = Vec::new();
    for idx in walk {
        let to = g.edges[idx].to;
        if let Some(pos) = vertices.iter().position(|&v| v == to) {
            vertices.truncate(pos + 1);
            edges.truncate(pos);
        } else {
            vertices.push(to);
            edges.push(idx);
        }
    }
    let switches = count_switches(g, &edges, &key);
    let weight = sum(edges.iter().map(|&i| g.edges[i].weight));
    Ok(SwitchPath { vertices, edges, switches, weight })
}

/// Path from `a` to `b` with the fewest parity switches, then least weight.
pub fn min_switch_path<T: Scalar>(g: &ClusterGraph<T>, a: usize, b: usize) -> Result<SwitchPath<T>> {
    min_switch_by(g, a, b, 2, |e| e.parity as usize)
}

/// Path from `a` to `b` with the fewest color changes, then least weight.
pub fn min_color_switch_path<T: Scalar>(g: &ClusterGraph<T>, a: usize, b: usize) -> Result<SwitchPath<T>> {
    let keys = g.edges.iter().map(|e| e.color + 1).max().unwrap_or(1);
    min_switch_by(g, a, b, keys, |e| e.color)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SwitchReport {
    /// Largest witness weight over the radius sum.
    pub max_ratio: f64,
    pub pairs_checked: usize,
    pub violations: Vec<String>,
}

/// For every ordered vertex pair, the minimum-switch witness weighs at most
/// `6 * sum(radii)`, and at most `4 * sum(radii)` when it has no switch.
/// `radii[v]` is the radius of vertex `v`'s cluster.
pub fn check_switch_bounds<T: Scalar>(g: &ClusterGraph<T>, radii: &[T]) -> SwitchReport {
    let total = sum(radii.iter().copied()).to_f64_lossy();
    let mut report = SwitchReport::default();
    let n = g.vertex_count();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            report.pairs_checked += 1;
            let path = match min_switch_path(g, a, b) {
                Ok(p) => p,
                Err(e) => {
                    report.violations.push(format!("clusters {:?}: {e}", (g.clusters[a], g.clusters[b])));
                    continue;
                }
            };
            let w = path.weight.to_f64_lossy();
            report.max_ratio = report.max_ratio.max(ratio(w, total));
            let factor = if path.switches == 0 { 4.0 } else { 6.0 };
            if !le_rel(w, factor * total, BOUND_TOLERANCE) {
                report.violations.push(format!(
                    "path {:?} with {} switches weighs {w}, above {factor} x {total}",
                    path.vertices.iter().map(|&v| g.clusters[v]).collect::<Vec<_>>(),
                    path.switches
                ));
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorReport {
    /// 0-in-degree equals 0-out-degree at every vertex of every color graph.
    pub degree_balance: bool,
    /// Every pair inside a color component is joined by a switchless path.
    pub switchless: bool,
    /// Color components of non-adjacent segments never share a vertex.
    pub disjoint_segments: bool,
    /// Largest color-switch witness weight over the radius sum.
    pub max_ratio: f64,
    pub violations: Vec<String>,
}

impl Default for ColorReport {
    fn default() -> Self {
        Self { degree_balance: true, switchless: true, disjoint_segments: true, max_ratio: 0.0, violations: Vec::new() }
    }
}

/// Per-color structure of an exactly balanced instance's cluster graph:
///
/// - every vertex of every color graph has equal 0-in and 0-out degree;
/// - every ordered pair in a color component is joined by a pure-0 or
///   pure-1 path, and the minimum-switch one weighs at most four times the
///   component's radii restricted to group 1 and that color;
/// - along each minimum color-switch path, the color components of segments
///   two or more apart are vertex-disjoint, and the path weighs at most
///   `8 * sum(radii)`.
pub fn check_color_graph<T: Scalar>(
    g: &ClusterGraph<T>,
    inst: &Instance<T>,
    opt: &Clustering<T>,
    radii: &[T],
) -> ColorReport {
    let mut report = ColorReport::default();
    let n = g.vertex_count();
    let name = |v: usize| g.clusters[v];
    let total = sum(radii.iter().copied()).to_f64_lossy();

    // comps[z] for color z; colors start at 2
    let mut comps: Vec<Vec<usize>> = vec![Vec::new(); 2];
    for z in 2..=inst.ell() {
        let gz = g.color_subgraph(z);
        for v in 0..n {
            let out = gz.edges.iter().filter(|e| e.parity == 0 && e.from == v).count();
            let inn = gz.edges.iter().filter(|e| e.parity == 0 && e.to == v).count();
            if out != inn {
                report.degree_balance = false;
                report.violations.push(format!("color {z}, cluster {}: 0-in {inn} vs 0-out {out}", name(v)));
            }
        }
        let comp = gz.components();
        let restricted: Vec<f64> = g
            .clusters
            .iter()
            .map(|&c| {
                let pts: Vec<usize> = opt.clusters[c]
                    .members
                    .iter()
                    .copied()
                    .filter(|&p| inst.group_of(p) == 1 || inst.group_of(p) == z)
                    .collect();
                inst.dist().best_center(&pts, 0..inst.len()).map_or(0.0, |(_, r)| r.to_f64_lossy())
            })
            .collect();
        for a in 0..n {
            let zero = gz.reachable_by_parity(a, 0);
            let one = gz.reachable_by_parity(a, 1);
            for b in 0..n {
                if a == b || comp[a] != comp[b] {
                    continue;
                }
                if !zero[b] && !one[b] {
                    report.switchless = false;
                    report.violations.push(format!("color {z}: no switchless path {} -> {}", name(a), name(b)));
                }
                let bound: f64 = (0..n).filter(|&v| comp[v] == comp[a]).map(|v| restricted[v]).sum();
                if let Ok(p) = min_switch_path(&gz, a, b) {
                    let w = p.weight.to_f64_lossy();
                    if !le_rel(w, 4.0 * bound, BOUND_TOLERANCE) {
                        report.violations.push(format!(
                            "color {z}: path {} -> {} weighs {w}, above 4 x {bound}",
                            name(a),
                            name(b)
                        ));
                    }
                }
            }
        }
        comps.push(comp);
    }

    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let path = match min_color_switch_path(g, a, b) {
                Ok(p) => p,
                Err(e) => {
                    report.violations.push(format!("clusters {:?}: {e}", (name(a), name(b))));
                    continue;
                }
            };
            let w = path.weight.to_f64_lossy();
            report.max_ratio = report.max_ratio.max(ratio(w, total));
            if !le_rel(w, 8.0 * total, BOUND_TOLERANCE) {
                report.violations.push(format!("color-switch path {} -> {} weighs {w}, above 8 x {total}", name(a), name(b)));
            }
            // segment h starts at vertex index starts[h] and has color colors[h]
            let mut starts = vec![0usize];
            let mut colors = vec![g.edges[path.edges[0]].color];
            for (i, w2) in path.edges.windows(2).enumerate() {
                if g.edges[w2[0]].color != g.edges[w2[1]].color {
                    starts.push(i + 1);
                    colors.push(g.edges[w2[1]].color);
                }
            }
            let members = |h: usize| -> Vec<usize> {
                let c = &comps[colors[h]];
                let root = c[path.vertices[starts[h]]];
                (0..n).filter(|&v| c[v] == root).collect()
            };
            for x in 0..starts.len() {
                for y in (x + 2)..starts.len() {
                    let (mx, my) = (members(x), members(y));
                    if mx.iter().any(|v| my.contains(v)) {
                        report.disjoint_segments = false;
                        report.violations.push(format!(
                            "color-switch path {} -> {}: segments {x} and {y} share a component vertex",
                            name(a),
                            name(b)
                        ));
                    }
                }
            }
        }
    }
    report
}
