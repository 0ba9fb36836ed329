//! Simple RSP betweenness: expected departures from each node under the
//! Boltzmann distribution over absorbing paths, summed over ordered pairs.
//!
//! With `Z = (I - W)^-1`, the expected passages through arc `(i, j)` on
//! absorbing `s → t` walks are
//!
//! ```text
//! η_ij(s,t) = (z_si / z_st - z_ti / z_tt) · w_ij · z_jt
//! n_i(s,t)  = (z_si / z_st - z_ti / z_tt) · z_it
//! ```
//!
//! and the all-pairs sum is `diag(Z (Z^÷ - n·Diag(Z^÷))ᵀ Z)`, where `Z^÷` is
//! the elementwise reciprocal. The sink never departs, so `n_t(s,t) = 0`.

use crate::centrality::{CentralityVector, MeasureTag};
use crate::error::{Result, RspError};
use crate::graph::{Graph, TransitionPolicy};
use crate::linalg::FundamentalSolve;
use crate::model::RspModel;
use crate::par;

/// Relative slack for negative rounding noise in expected flows.
pub const FLOW_SLACK: f64 = 1e-9;

/// Expected arc passages and node departures for one source-target pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFlowField {
    pub source: usize,
    pub target: usize,
    /// Aligned with [`Graph::arcs`].
    pub edge_flows: Vec<f64>,
    pub node_visits: Vec<f64>,
}

impl PairFlowField {
    pub fn flow(&self, g: &Graph, i: usize, j: usize) -> f64 {
        g.arc_index(i, j).map_or(0.0, |k| self.edge_flows[k])
    }
}

/// Clamps `value` to zero when it is negative by no more than the slack
/// relative to `scale`.
pub(crate) fn clamp_nonnegative(value: f64, scale: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if -value <= FLOW_SLACK * scale.abs().max(1.0) {
        Ok(0.0)
    } else {
        Err(RspError::NegativeFlow { value })
    }
}

impl RspModel<'_> {
    pub fn pair_edge_flows(&self, s: usize, t: usize) -> Result<PairFlowField> {
        pair_edge_flows(self, s, t)
    }

    /// Simple RSP betweenness via the batch matrix formula.
    pub fn simple_betweenness(&self) -> Result<CentralityVector> {
        self.graph().check_strong_connectivity()?;
        self.solve().ensure_positive()?;
        let scores = simple_scores(self.solve())?;
        Ok(CentralityVector::new(
            scores,
            MeasureTag::new("rsp")
                .with_beta(self.beta())
                .with_policy(self.policy().name()),
        ))
    }
}

pub fn pair_edge_flows(m: &RspModel<'_>, s: usize, t: usize) -> Result<PairFlowField> {
    let g = m.graph();
    let z = m.solve();
    let n = g.node_count();
    for node in [s, t] {
        if node >= n {
            return Err(RspError::NodeOutOfRange { node, n });
        }
    }
    if s == t {
        return Err(RspError::SameNode(s));
    }
    let z_st = z.get(s, t);
    if !(z_st > 0.0) {
        return Err(RspError::UnreachablePair { s, t });
    }
    let z_tt = z.get(t, t);
    let lead = |i: usize| z.get(s, i) / z_st;
    let bracket = |i: usize| lead(i) - z.get(t, i) / z_tt;

    let mut node_visits = vec![0.0; n];
    for (i, visits) in node_visits.iter_mut().enumerate() {
        if i != t {
            let z_it = z.get(i, t);
            *visits = clamp_nonnegative(bracket(i) * z_it, lead(i) * z_it)?;
        }
    }
    let mut edge_flows = Vec::with_capacity(g.arc_count());
    for a in g.arcs() {
        let tail = m.killed().get(a.src, a.dst) * z.get(a.dst, t);
        let flow = if a.src == t {
            0.0
        } else {
            clamp_nonnegative(bracket(a.src) * tail, lead(a.src) * tail)?
        };
        edge_flows.push(flow);
    }
    Ok(PairFlowField {
        source: s,
        target: t,
        edge_flows,
        node_visits,
    })
}

/// `bet_i = Σ_t z_it [(Z^÷ - n·Diag(Z^÷))ᵀ Z]_ti`.
///
/// Requires every entry of `Z` to be positive.
pub fn simple_scores(f: &FundamentalSolve) -> Result<Vec<f64>> {
    let z = f.matrix();
    let n = z.nrows();
    let mut m = z.map(|v| 1.0 / v);
    for i in 0..n {
        m[(i, i)] *= 1.0 - n as f64;
    }
    let x = m.tr_mul(z);
    let nf = n as f64;
    (0..n)
        .map(|i| {
            let mut acc = 0.0;
            let mut subtracted = 0.0;
            for t in 0..n {
                acc += z[(i, t)] * x[(t, i)];
                subtracted += z[(i, t)] * z[(t, i)] / z[(t, t)];
            }
            clamp_nonnegative(acc, acc.abs() + nf * subtracted)
        })
        .collect()
}

pub fn rsp_betweenness(g: &Graph, policy: TransitionPolicy, beta: f64) -> Result<CentralityVector> {
    g.check_strong_connectivity()?;
    RspModel::new(g, policy, beta)?.simple_betweenness()
}

/// One independent [`rsp_betweenness`] per β, evaluated in parallel.
pub fn rsp_betweenness_sweep(g: &Graph, policy: TransitionPolicy, betas: &[f64]) -> Result<Vec<CentralityVector>> {
    if betas.is_empty() {
        return Err(RspError::Invalid("beta list is empty".into()));
    }
    g.check_strong_connectivity()?;
    par::map_slice(betas, |&beta| {
        rsp_betweenness(g, policy, beta).map_err(|e| RspError::AtBeta {
            beta,
            source: Box::new(e),
        })
    })
    .into_iter()
    .collect()
}
