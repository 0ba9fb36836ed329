//! Limit functions of the RSP measures and their classical relatives.
//!
//! All sums run over ordered pairs `(s, t)`, `s ≠ t`, so every measure is the
//! literal limit of its RSP counterpart without halving.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::{DMatrix, DVector};

use crate::centrality::{CentralityVector, MeasureTag};
use crate::error::{Result, RspError};
use crate::graph::{reference_transitions, Graph, GraphBuilder, TransitionModel, TransitionPolicy};
use crate::par;

/// Relative tie tolerance for shortest-path membership.
pub const TIE_TOLERANCE: f64 = 1e-9;
/// Absolute part of the tie test.
pub const TIE_ABSOLUTE: f64 = 1e-12;

/// How much a pair contributes to the nodes on its shortest paths, per unit
/// of path probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathCounting {
    pub intermediate: f64,
    pub source: f64,
    pub sink: f64,
}

impl PathCounting {
    /// Both endpoints and every intermediate node count once.
    pub const ENDPOINTS: PathCounting = PathCounting {
        intermediate: 1.0,
        source: 1.0,
        sink: 1.0,
    };
    /// Departures: the source and intermediates count, the sink does not.
    /// This is the β → ∞ limit of simple RSP betweenness.
    pub const DEPARTURES: PathCounting = PathCounting {
        intermediate: 1.0,
        source: 1.0,
        sink: 0.0,
    };
    /// Incident net flow: intermediates see flow on an inbound and an
    /// outbound edge, endpoints on one. The β → ∞ limit of RSP net
    /// betweenness.
    pub const INCIDENT_FLOW: PathCounting = PathCounting {
        intermediate: 2.0,
        source: 1.0,
        sink: 1.0,
    };
}

/// Cost-minimal distances from one source and the arcs lying on shortest
/// paths, in topological (settle) order.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathDag {
    pub source: usize,
    /// `f64::INFINITY` for unreachable nodes.
    pub distances: Vec<f64>,
    /// Reachable nodes in Dijkstra settle order, a topological order of the dag.
    pub order: Vec<usize>,
    /// Dag predecessors of every node.
    pub preds: Vec<Vec<usize>>,
}

#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn on_shortest_path(du: f64, cost: f64, dv: f64) -> bool {
    du + cost <= dv * (1.0 + TIE_TOLERANCE) + TIE_ABSOLUTE
}

impl ShortestPathDag {
    pub fn build(g: &Graph, source: usize) -> Result<Self> {
        let n = g.node_count();
        if source >= n {
            return Err(RspError::NodeOutOfRange { node: source, n });
        }
        if let Some(a) = g.arcs().iter().find(|a| !(a.cost >= 0.0)) {
            return Err(RspError::NegativeCost { line: 0, value: a.cost });
        }
        let mut dist = vec![f64::INFINITY; n];
        let mut settled = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapEntry {
            dist: 0.0,
            node: source,
        });
        while let Some(HeapEntry { dist: d, node: u }) = heap.pop() {
            if settled[u] || d > dist[u] {
                continue;
            }
            settled[u] = true;
            order.push(u);
            for a in g.out_arcs(u) {
                let nd = d + a.cost;
                if nd < dist[a.dst] {
                    dist[a.dst] = nd;
                    heap.push(HeapEntry { dist: nd, node: a.dst });
                }
            }
        }
        let mut position = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mut preds = vec![Vec::new(); n];
        for a in g.arcs() {
            let (u, v) = (a.src, a.dst);
            if settled[u] && settled[v] && position[u] < position[v] && on_shortest_path(dist[u], a.cost, dist[v]) {
                preds[v].push(u);
            }
        }
        Ok(ShortestPathDag {
            source,
            distances: dist,
            order,
            preds,
        })
    }

    pub fn dag_arcs(&self) -> Vec<(usize, usize)> {
        self.preds
            .iter()
            .enumerate()
            .flat_map(|(v, ps)| ps.iter().map(move |&u| (u, v)))
            .collect()
    }

    /// Weighted count of dag paths `source → v`, with path weight the product
    /// of `weight(u, v)` along it.
    pub fn forward(&self, weight: impl Fn(usize, usize) -> f64) -> Vec<f64> {
        let mut f = vec![0.0; self.distances.len()];
        f[self.source] = 1.0;
        for &v in self.order.iter().skip(1) {
            f[v] = self.preds[v].iter().map(|&u| f[u] * weight(u, v)).sum();
        }
        f
    }

    /// Weighted count of dag paths `v → target`.
    pub fn backward(&self, target: usize, weight: impl Fn(usize, usize) -> f64) -> Vec<f64> {
        let mut b = vec![0.0; self.distances.len()];
        if !self.distances[target].is_finite() {
            return b;
        }
        b[target] = 1.0;
        for &v in self.order.iter().rev() {
            if b[v] == 0.0 {
                continue;
            }
            for &u in &self.preds[v] {
                b[u] += weight(u, v) * b[v];
            }
        }
        b
    }

    /// Adds this source's contributions to `scores` (Brandes accumulation with
    /// weighted path counts).
    fn accumulate(&self, weight: &dyn Fn(usize, usize) -> f64, counting: PathCounting, scores: &mut [f64]) {
        let sigma = self.forward(weight);
        let mut delta = vec![0.0; sigma.len()];
        for &w in self.order.iter().rev() {
            for &v in &self.preds[w] {
                delta[v] += sigma[v] * weight(v, w) / sigma[w] * (1.0 + delta[w]);
            }
        }
        let s = self.source;
        for &v in self.order.iter().skip(1) {
            scores[v] += counting.intermediate * delta[v] + counting.sink;
        }
        scores[s] += counting.source * (self.order.len() - 1) as f64;
    }
}

fn sum_over_sources(
    g: &Graph,
    weight: &(dyn Fn(usize, usize) -> f64 + Sync),
    counting: PathCounting,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    let partials = par::map_range(n, |s| -> Result<Vec<f64>> {
        let dag = ShortestPathDag::build(g, s)?;
        let mut local = vec![0.0; n];
        dag.accumulate(weight, counting, &mut local);
        Ok(local)
    });
    let mut scores = vec![0.0; n];
    for part in partials {
        for (acc, v) in scores.iter_mut().zip(part?) {
            *acc += v;
        }
    }
    Ok(scores)
}

/// Freeman betweenness with both endpoints counted: each shortest `s → t`
/// path contributes `1 / |P*_st|` to every node on it.
pub fn shortest_path_betweenness(g: &Graph) -> Result<CentralityVector> {
    let scores = sum_over_sources(g, &|_, _| 1.0, PathCounting::ENDPOINTS)?;
    Ok(CentralityVector::new(scores, MeasureTag::new("sp")))
}

/// Each shortest path contributes its reference likelihood normalized over all
/// shortest paths of the pair. Both endpoints count.
pub fn shortest_path_likelihood_betweenness(g: &Graph, policy: TransitionPolicy) -> Result<CentralityVector> {
    shortest_path_likelihood_betweenness_with(g, policy, PathCounting::ENDPOINTS)
}

pub fn shortest_path_likelihood_betweenness_with(
    g: &Graph,
    policy: TransitionPolicy,
    counting: PathCounting,
) -> Result<CentralityVector> {
    let t = reference_transitions(g, policy)?;
    let scores = sum_over_sources(g, &|u, v| t.prob(u, v), counting)?;
    Ok(CentralityVector::new(
        scores,
        MeasureTag::new("sp-likelihood").with_policy(policy.name()),
    ))
}

fn support_graph(t: &TransitionModel) -> Graph {
    let n = t.node_count();
    let mut b = GraphBuilder::with_nodes(n, false);
    for i in 0..n {
        for j in 0..n {
            if i != j && t.prob(i, j) > 0.0 {
                b.add_edge(i, j, t.prob(i, j), 1.0).expect("support arc");
            }
        }
    }
    b.build()
}

/// Solves `π = P_refᵀ π`, `Σ π = 1`.
pub fn stationary_distribution(t: &TransitionModel) -> Result<Vec<f64>> {
    support_graph(t).check_strong_connectivity()?;
    let n = t.node_count();
    let p = t.matrix();
    let mut a = DMatrix::<f64>::identity(n, n) - p.transpose();
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut rhs = DVector::zeros(n);
    rhs[n - 1] = 1.0;
    let pi = a.lu().solve(&rhs).ok_or_else(|| RspError::Singular {
        reason: "stationary system is singular".into(),
    })?;
    let residual = (p.transpose() * &pi - &pi).amax();
    if residual > 1e-10 {
        return Err(RspError::Singular {
            reason: format!("stationary residual {residual:e}"),
        });
    }
    Ok(pi.iter().map(|&v| v.max(0.0)).collect())
}

/// `h[s][t]`: expected steps of the reference walk from `s` to its first
/// arrival at `t`; zero on the diagonal.
pub fn hitting_times(t: &TransitionModel) -> Result<DMatrix<f64>> {
    support_graph(t).check_strong_connectivity()?;
    let n = t.node_count();
    let p = t.matrix();
    let columns = par::map_range(n, |target| -> Result<Vec<f64>> {
        let keep: Vec<usize> = (0..n).filter(|&v| v != target).collect();
        let m = keep.len();
        let a = DMatrix::from_fn(m, m, |r, c| {
            let delta = if r == c { 1.0 } else { 0.0 };
            delta - p[(keep[r], keep[c])]
        });
        let h = a
            .lu()
            .solve(&DVector::from_element(m, 1.0))
            .ok_or_else(|| RspError::Singular {
                reason: format!("absorbing system for target {target} is singular"),
            })?;
        let mut col = vec![0.0; n];
        for (r, &v) in keep.iter().enumerate() {
            col[v] = h[r];
        }
        Ok(col)
    });
    let mut h = DMatrix::zeros(n, n);
    for (target, col) in columns.into_iter().enumerate() {
        h.set_column(target, &DVector::from_vec(col?));
    }
    Ok(h)
}

/// `Σ_{s≠t} h(s → t)`.
pub fn summed_hitting_times(t: &TransitionModel) -> Result<f64> {
    Ok(hitting_times(t)?.sum())
}

/// Strength (sum of incident weights) of every node.
pub fn degree_centrality(g: &Graph) -> CentralityVector {
    CentralityVector::new(g.strengths(), MeasureTag::new("degree"))
}

/// `π_i · Σ_{s≠t} h(s → t)`, the β → 0⁺ limit of simple RSP betweenness.
pub fn stationary_hitting_limit(g: &Graph, policy: TransitionPolicy) -> Result<CentralityVector> {
    let t = reference_transitions(g, policy)?;
    let pi = stationary_distribution(&t)?;
    let total = summed_hitting_times(&t)?;
    Ok(CentralityVector::new(
        pi.iter().map(|p| p * total).collect(),
        MeasureTag::new("degree-limit").with_policy(policy.name()),
    ))
}

fn require_connected_undirected(g: &Graph) -> Result<()> {
    if !g.is_undirected() {
        return Err(RspError::UndirectedRequired);
    }
    g.check_strong_connectivity()
}

fn laplacian_pseudoinverse(g: &Graph) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    let shift = 1.0 / n as f64;
    let mut l = DMatrix::from_element(n, n, shift);
    for a in g.arcs() {
        l[(a.src, a.dst)] -= a.weight;
        l[(a.src, a.src)] += a.weight;
    }
    let inv = l.lu().try_inverse().ok_or_else(|| RspError::Singular {
        reason: "Laplacian with rank-one shift is singular".into(),
    })?;
    Ok(inv.add_scalar(-shift))
}

/// Current-flow betweenness: total absolute current on a node's incident
/// edges over unit injections at `s` extracted at `t`, all ordered pairs.
///
/// Potentials come from one Laplacian pseudoinverse; each edge's pair
/// currents `a_ij (u_s - u_t)` with `u = L⁺_i· - L⁺_j·` are summed in
/// `O(n log n)` by sorting `u`.
pub fn current_flow_betweenness(g: &Graph) -> Result<CentralityVector> {
    require_connected_undirected(g)?;
    let n = g.node_count();
    let lp = laplacian_pseudoinverse(g)?;
    let edges: Vec<_> = g.edges().copied().collect();
    let per_edge = par::map_slice(&edges, |a| {
        let mut u: Vec<f64> = (0..n).map(|s| lp[(a.src, s)] - lp[(a.dst, s)]).collect();
        u.sort_by(f64::total_cmp);
        let half: f64 = u
            .iter()
            .enumerate()
            .map(|(k, v)| v * (2.0 * k as f64 - (n as f64 - 1.0)))
            .sum();
        2.0 * a.weight * half
    });
    let mut scores = vec![0.0; n];
    for (a, flow) in edges.iter().zip(per_edge) {
        scores[a.src] += flow;
        scores[a.dst] += flow;
    }
    Ok(CentralityVector::new(scores, MeasureTag::new("current-flow")))
}

/// Currents on every arc (aligned with [`Graph::arcs`]) for a unit injection
/// at `s` extracted at `t`, from a grounded Laplacian solve for this pair
/// alone. Used as the per-pair check on [`current_flow_betweenness`].
pub fn current_flow_pair_currents(g: &Graph, s: usize, t: usize) -> Result<Vec<f64>> {
    require_connected_undirected(g)?;
    if s == t {
        return Err(RspError::SameNode(s));
    }
    let n = g.node_count();
    let keep: Vec<usize> = (0..n).filter(|&v| v != t).collect();
    let mut index = vec![usize::MAX; n];
    for (r, &v) in keep.iter().enumerate() {
        index[v] = r;
    }
    let m = keep.len();
    let mut l = DMatrix::zeros(m, m);
    for a in g.arcs() {
        if a.src == t {
            continue;
        }
        let r = index[a.src];
        l[(r, r)] += a.weight;
        if a.dst != t {
            l[(r, index[a.dst])] -= a.weight;
        }
    }
    let mut rhs = DVector::zeros(m);
    rhs[index[s]] = 1.0;
    let v = l.lu().solve(&rhs).ok_or_else(|| RspError::Singular {
        reason: "grounded Laplacian is singular".into(),
    })?;
    let potential = |node: usize| if node == t { 0.0 } else { v[index[node]] };
    Ok(g.arcs()
        .iter()
        .map(|a| a.weight * (potential(a.src) - potential(a.dst)))
        .collect())
}
