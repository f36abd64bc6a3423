use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Arc<T> {
    to: usize,
    cap: i64,
    cost: T,
}

/// Successive-shortest-path min-cost flow on a small dense network.
///
/// Arc costs must be nonnegative. Dijkstra runs in `O(V^2)` and always
/// settles the lowest-index vertex among equal labels, so the result only
/// depends on the order in which arcs were added.
#[derive(Clone, Debug)]
pub struct MinCostFlow<T> {
    arcs: Vec<Arc<T>>,
    adj: Vec<Vec<usize>>,
}

impl<T: Scalar> MinCostFlow<T> {
    pub fn new(nodes: usize) -> Self {
        Self { arcs: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    /// Adds `from -> to` and its residual twin; returns the forward arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: T) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: 0, cost: T::zero() - cost });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently routed through forward arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[id ^ 1].cap
    }

    /// Pushes up to `limit` units from `source` to `sink` at minimum cost.
    /// Returns the amount pushed and its cost.
    pub fn run(&mut self, source: usize, sink: usize, limit: i64) -> (i64, T) {
        let n = self.adj.len();
        let mut potential = vec![T::zero(); n];
        let mut pushed = 0;
        let mut cost = T::zero();

        while pushed < limit {
            let mut dist: Vec<Option<T>> = vec![None; n];
            let mut parent: Vec<Option<usize>> = vec![None; n];
            let mut done = vec![false; n];
            dist[source] = Some(T::zero());
            loop {
                let mut pick: Option<(usize, T)> = None;
                for v in 0..n {
                    if done[v] {
                        continue;
                    }
                    if let Some(dv) = dist[v] {
                        if pick.is_none_or(|(_, best)| dv < best) {
                            pick = Some((v, dv));
                        }
                    }
                }
                let Some((u, du)) = pick else { break };
                done[u] = true;
                for &id in &self.adj[u] {
                    let arc = &self.arcs[id];
                    if arc.cap <= 0 || done[arc.to] {
                        continue;
                    }
                    let reduced = (arc.cost + potential[u] - potential[arc.to]).max_of(T::zero());
                    let cand = du + reduced;
                    if dist[arc.to].is_none_or(|d| cand < d) {
                        dist[arc.to] = Some(cand);
                        parent[arc.to] = Some(id);
                    }
                }
            }
            let Some(_) = dist[sink] else { break };

            let far = dist.iter().flatten().fold(T::zero(), |acc, &d| acc.max_of(d));
            for v in 0..n {
                potential[v] += dist[v].unwrap_or(far);
            }

            let mut bottleneck = limit - pushed;
            let mut v = sink;
            while let Some(id) = parent[v] {
                bottleneck = bottleneck.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = sink;
            while let Some(id) = parent[v] {
                self.arcs[id].cap -= bottleneck;
                self.arcs[id ^ 1].cap += bottleneck;
                cost += self.arcs[id].cost * T::from_i64(bottleneck).unwrap_or_else(T::one);
                v = self.arcs[id ^ 1].to;
            }
            pushed += bottleneck;
        }
        (pushed, cost)
    }
}
