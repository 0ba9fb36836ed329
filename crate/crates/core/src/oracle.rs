//! Brute-force truncated RSP sums over absorbing paths, with no matrix
//! inversion anywhere.
//!
//! [`enumerate_paths`] lists every absorbing `s → t` path of at most `cap`
//! edges. [`walk_oracle`] computes the same truncated sums by dynamic
//! programming over path length, which stays cheap where the path count
//! explodes (a 4-clique has about 10⁹ absorbing paths of ≤ 30 edges).

use crate::error::{Result, RspError};
use crate::graph::{reference_transitions, Graph, TransitionModel, TransitionPolicy};

/// Default cap on the number of enumerated paths.
pub const DEFAULT_PATH_BUDGET: u64 = 10_000_000;

/// Default length cap, in edges.
pub const DEFAULT_CAP: usize = 30;

/// All absorbing `source → target` paths of at most `cap` edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PathEnsemble {
    source: usize,
    target: usize,
    cap: usize,
    offsets: Vec<usize>,
    nodes: Vec<u32>,
    costs: Vec<f64>,
    likelihoods: Vec<f64>,
}

impl PathEnsemble {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    /// Node sequence of path `k`.
    pub fn path(&self, k: usize) -> &[u32] {
        &self.nodes[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Total cost `c̃(℘)` of path `k`.
    pub fn cost(&self, k: usize) -> f64 {
        self.costs[k]
    }

    /// Reference likelihood `P̃_ref(℘)` of path `k`.
    pub fn likelihood(&self, k: usize) -> f64 {
        self.likelihoods[k]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.len()).map(|k| self.path(k))
    }
}

fn check_pair(g: &Graph, s: usize, t: usize, cap: usize) -> Result<()> {
    let n = g.node_count();
    for node in [s, t] {
        if node >= n {
            return Err(RspError::NodeOutOfRange { node, n });
        }
    }
    if s == t {
        return Err(RspError::SameNode(s));
    }
    if cap == 0 {
        return Err(RspError::InvalidCap);
    }
    Ok(())
}

/// Number of absorbing `s → t` paths with at most `cap` edges, saturating at
/// `u128::MAX`.
pub fn count_absorbing_paths(g: &Graph, s: usize, t: usize, cap: usize) -> Result<u128> {
    check_pair(g, s, t, cap)?;
    let n = g.node_count();
    let mut walks = vec![0u128; n];
    walks[s] = 1;
    let mut total = 0u128;
    for _ in 0..cap {
        let mut next = vec![0u128; n];
        for (u, &c) in walks.iter().enumerate() {
            if c == 0 || u == t {
                continue;
            }
            for a in g.out_arcs(u) {
                next[a.dst] = next[a.dst].saturating_add(c);
            }
        }
        total = total.saturating_add(next[t]);
        walks = next;
    }
    Ok(total)
}

pub fn enumerate_paths(g: &Graph, policy: TransitionPolicy, s: usize, t: usize, cap: usize) -> Result<PathEnsemble> {
    let transitions = reference_transitions(g, policy)?;
    enumerate_paths_with_budget(g, &transitions, s, t, cap, DEFAULT_PATH_BUDGET)
}

/// Depth-first enumeration; fails before allocating when the exact path count
/// exceeds `budget`.
pub fn enumerate_paths_with_budget(
    g: &Graph,
    transitions: &TransitionModel,
    s: usize,
    t: usize,
    cap: usize,
    budget: u64,
) -> Result<PathEnsemble> {
    let count = count_absorbing_paths(g, s, t, cap)?;
    if count > budget as u128 {
        return Err(RspError::PathBudgetExceeded { count, budget });
    }
    let mut e = PathEnsemble {
        source: s,
        target: t,
        cap,
        offsets: vec![0],
        nodes: Vec::new(),
        costs: Vec::with_capacity(count as usize),
        likelihoods: Vec::with_capacity(count as usize),
    };
    // stack of (node, next out-arc position)
    let out: Vec<Vec<(usize, f64, f64)>> = (0..g.node_count())
        .map(|u| {
            g.out_arcs(u)
                .map(|a| (a.dst, a.cost, transitions.prob(u, a.dst)))
                .collect()
        })
        .collect();
    let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
    let mut cost = vec![0.0];
    let mut lik = vec![1.0];
    while let Some(&(u, next)) = stack.last() {
        if next >= out[u].len() || stack.len() > cap {
            stack.pop();
            cost.pop();
            lik.pop();
            continue;
        }
        let (v, c, p) = out[u][next];
        stack.last_mut().expect("nonempty").1 += 1;
        let (pc, pl) = (cost[cost.len() - 1] + c, lik[lik.len() - 1] * p);
        if v == t {
            e.nodes.extend(stack.iter().map(|&(x, _)| x as u32));
            e.nodes.push(t as u32);
            e.offsets.push(e.nodes.len());
            e.costs.push(pc);
            e.likelihoods.push(pl);
        } else {
            stack.push((v, 0));
            cost.push(pc);
            lik.push(pl);
        }
    }
    debug_assert_eq!(e.len() as u128, count);
    Ok(e)
}

/// Truncated RSP quantities for one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleEstimate {
    /// `Σ_℘ P̃_ref(℘) e^{-β c̃(℘)}` over the truncated ensemble.
    pub partition: f64,
    /// Expected departures from each node; the target gets 0.
    pub visits: Vec<f64>,
    /// Expected occurrences of each node; the target gets 1.
    pub terminal_visits: Vec<f64>,
    /// Expected passages through each arc, aligned with [`Graph::arcs`].
    pub edge_flows: Vec<f64>,
    /// Partition mass of the paths of exactly `cap` edges.
    pub last_increment: f64,
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(RspError::InvalidBeta(beta))
    }
}

pub fn oracle_rsp_quantities(e: &PathEnsemble, g: &Graph, beta: f64) -> Result<OracleEstimate> {
    check_beta(beta)?;
    if e.is_empty() {
        return Err(RspError::EmptyEnsemble {
            s: e.source,
            t: e.target,
            cap: e.cap,
        });
    }
    let n = g.node_count();
    let mut est = OracleEstimate {
        partition: 0.0,
        visits: vec![0.0; n],
        terminal_visits: vec![0.0; n],
        edge_flows: vec![0.0; g.arc_count()],
        last_increment: 0.0,
    };
    for k in 0..e.len() {
        let path = e.path(k);
        let w = e.likelihood(k) * (-beta * e.cost(k)).exp();
        est.partition += w;
        if path.len() - 1 == e.cap {
            est.last_increment += w;
        }
        for &v in &path[..path.len() - 1] {
            est.visits[v as usize] += w;
        }
        for step in path.windows(2) {
            let arc = g
                .arc_index(step[0] as usize, step[1] as usize)
                .expect("enumerated arcs exist");
            est.edge_flows[arc] += w;
        }
    }
    normalize(&mut est, e.target);
    Ok(est)
}

fn normalize(est: &mut OracleEstimate, target: usize) {
    let z = est.partition;
    for v in est.visits.iter_mut().chain(est.edge_flows.iter_mut()) {
        *v /= z;
    }
    est.terminal_visits.clone_from(&est.visits);
    est.terminal_visits[target] = 1.0;
}

/// Same truncated sums as enumerating with `cap` and calling
/// [`oracle_rsp_quantities`], in `O(cap · m)`.
///
/// `α_k(v)` is the killed-walk weight of length-`k` walks from `s` to `v`
/// that have not met `t`; `γ_m(v)` the weight of walks from `v` that first
/// meet `t` after exactly `m` steps. A path of length `k + 1 + m ≤ cap`
/// through arc `(i, j)` at step `k` contributes `α_k(i) w_ij γ_m(j)`.
pub fn walk_oracle(
    g: &Graph,
    transitions: &TransitionModel,
    s: usize,
    t: usize,
    cap: usize,
    beta: f64,
) -> Result<OracleEstimate> {
    check_pair(g, s, t, cap)?;
    check_beta(beta)?;
    let n = g.node_count();
    let arcs = g.arcs();
    let w: Vec<f64> = arcs
        .iter()
        .map(|a| transitions.prob(a.src, a.dst) * (-beta * a.cost).exp())
        .collect();

    let mut alpha = vec![vec![0.0; n]; cap + 1];
    alpha[0][s] = 1.0;
    for k in 0..cap {
        let (head, tail) = alpha.split_at_mut(k + 1);
        let (cur, next) = (&head[k], &mut tail[0]);
        for (a, &wa) in arcs.iter().zip(&w) {
            if a.src != t {
                next[a.dst] += cur[a.src] * wa;
            }
        }
    }
    let mut gamma = vec![vec![0.0; n]; cap + 1];
    gamma[0][t] = 1.0;
    for m in 0..cap {
        let (head, tail) = gamma.split_at_mut(m + 1);
        let (cur, next) = (&head[m], &mut tail[0]);
        for (a, &wa) in arcs.iter().zip(&w) {
            if a.src != t {
                next[a.src] += wa * cur[a.dst];
            }
        }
    }
    // prefix[r][v] = Σ_{m ≤ r} γ_m(v)
    let mut prefix = gamma.clone();
    for r in 1..=cap {
        let (done, rest) = prefix.split_at_mut(r);
        for (p, q) in rest[0].iter_mut().zip(&done[r - 1]) {
            *p += q;
        }
    }

    let partition: f64 = (1..=cap).map(|k| alpha[k][t]).sum();
    if partition == 0.0 {
        return Err(RspError::EmptyEnsemble { s, t, cap });
    }
    let mut est = OracleEstimate {
        partition,
        visits: vec![0.0; n],
        terminal_visits: vec![0.0; n],
        edge_flows: vec![0.0; arcs.len()],
        last_increment: alpha[cap][t],
    };
    for (k, row) in alpha.iter().enumerate().take(cap) {
        for v in (0..n).filter(|&v| v != t) {
            est.visits[v] += row[v] * prefix[cap - k][v];
        }
    }
    for (idx, (a, &wa)) in arcs.iter().zip(&w).enumerate() {
        if a.src == t {
            continue;
        }
        est.edge_flows[idx] = (0..cap)
            .map(|k| alpha[k][a.src] * wa * prefix[cap - 1 - k][a.dst])
            .sum();
    }
    normalize(&mut est, t);
    Ok(est)
}

/// Upper bound `ρ̂^{L+1} / (1 - ρ̂)` on the partition mass of absorbing paths
/// longer than `cap`, where `ρ̂` is the largest row sum of the killed walk.
pub fn truncation_bound(max_row_sum: f64, cap: usize) -> f64 {
    if max_row_sum >= 1.0 {
        return f64::INFINITY;
    }
    max_row_sum.powi(cap as i32 + 1) / (1.0 - max_row_sum)
}

/// True when the mass at exactly `cap` edges respects the geometric decay
/// `ρ̂^cap` implied by the row-sum bound.
pub fn last_increment_within_bound(est: &OracleEstimate, max_row_sum: f64, cap: usize) -> bool {
    est.last_increment <= max_row_sum.powi(cap as i32) * (1.0 + 1e-12)
}
