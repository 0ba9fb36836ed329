//! RSP net betweenness: absolute net flow `|η_ij(s,t) - η_ji(s,t)|` per
//! ordered pair, summed over pairs and over the edges incident to a node.
//!
//! The edge loop materializes `N^ij - N^ji` for one edge at a time, where
//! `[N^ij]_st = (z_si z_jt / z_st - z_ti z_jt / z_tt) · w_ij`, giving
//! `O(n³ + m n²)` overall.

use nalgebra::DMatrix;

use crate::centrality::{CentralityVector, MeasureTag};
use crate::error::{Result, RspError};
use crate::graph::{Graph, TransitionPolicy};
use crate::model::RspModel;
use crate::par;

pub const DIRECTED_NOTE: &str =
    "directed graph: net flows follow the random-walk reading only, no electrical interpretation";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeNetFlow {
    pub i: usize,
    pub j: usize,
    /// `Σ_st |η_ij(s,t) - η_ji(s,t)|`.
    pub net_flow: f64,
    /// `Σ_st η_ij(s,t) + η_ji(s,t)`.
    pub gross_flow: f64,
}

/// Shared read-only pieces of `Z` used by every edge.
struct NetKernel<'a> {
    z: &'a DMatrix<f64>,
    recip: DMatrix<f64>,
    inv_diag: Vec<f64>,
}

impl<'a> NetKernel<'a> {
    fn new(z: &'a DMatrix<f64>) -> Self {
        let recip = z.map(|v| if v > 0.0 { 1.0 / v } else { 0.0 });
        let inv_diag = (0..z.nrows()).map(|t| 1.0 / z[(t, t)]).collect();
        NetKernel { z, recip, inv_diag }
    }

    /// Writes `w_ij N^ij - w_ji N^ji` (column-major, zero diagonal) into `out`.
    fn fill_difference(&self, i: usize, j: usize, w_ij: f64, w_ji: f64, out: &mut [f64]) {
        let z = self.z;
        let n = z.nrows();
        let col_i = z.column(i);
        let col_j = z.column(j);
        for t in 0..n {
            let a = w_ij * z[(j, t)];
            let b = w_ji * z[(i, t)];
            let c = self.inv_diag[t] * (z[(t, i)] * a - z[(t, j)] * b);
            let recip_t = self.recip.column(t);
            let dst = &mut out[t * n..(t + 1) * n];
            for s in 0..n {
                dst[s] = if recip_t[s] == 0.0 {
                    0.0
                } else {
                    recip_t[s] * (col_i[s] * a - col_j[s] * b) - c
                };
            }
            dst[t] = 0.0;
        }
    }
}

impl RspModel<'_> {
    /// `N^ij`: entry `(s, t)` is the expected passages through `(i, j)` on
    /// absorbing `s → t` walks; diagonal and unreachable entries are zero.
    pub fn pair_flow_matrix(&self, i: usize, j: usize) -> Result<DMatrix<f64>> {
        if self.graph().arc(i, j).is_none() {
            return Err(RspError::MissingArc { i, j });
        }
        let n = self.node_count();
        let kernel = NetKernel::new(self.solve().matrix());
        let mut buf = vec![0.0; n * n];
        kernel.fill_difference(i, j, self.killed().get(i, j), 0.0, &mut buf);
        Ok(DMatrix::from_vec(n, n, buf))
    }

    pub fn edge_net_flow(&self, i: usize, j: usize) -> Result<EdgeNetFlow> {
        let g = self.graph();
        let w_ij = if g.arc(i, j).is_some() {
            self.killed().get(i, j)
        } else {
            0.0
        };
        let w_ji = if g.arc(j, i).is_some() {
            self.killed().get(j, i)
        } else {
            0.0
        };
        if w_ij == 0.0 && w_ji == 0.0 {
            return Err(RspError::MissingArc { i, j });
        }
        let n = self.node_count();
        let kernel = NetKernel::new(self.solve().matrix());
        let mut diff = vec![0.0; n * n];
        kernel.fill_difference(i, j, w_ij, w_ji, &mut diff);
        let mut forward = vec![0.0; n * n];
        let mut backward = vec![0.0; n * n];
        kernel.fill_difference(i, j, w_ij, 0.0, &mut forward);
        kernel.fill_difference(j, i, w_ji, 0.0, &mut backward);
        Ok(EdgeNetFlow {
            i,
            j,
            net_flow: diff.iter().map(|v| v.abs()).sum(),
            gross_flow: forward.iter().chain(&backward).sum(),
        })
    }

    /// RSP net betweenness via the edge loop.
    pub fn net_betweenness(&self) -> Result<CentralityVector> {
        let g = self.graph();
        g.check_strong_connectivity()?;
        self.solve().ensure_positive()?;
        let n = g.node_count();
        let kernel = NetKernel::new(self.solve().matrix());
        let edges: Vec<(usize, usize)> = g.edges().map(|a| (a.src, a.dst)).collect();
        let w = self.killed();
        let net = par::map_slice_init(
            &edges,
            || vec![0.0; n * n],
            |scratch, &(i, j)| {
                let w_ji = if g.arc(j, i).is_some() { w.get(j, i) } else { 0.0 };
                kernel.fill_difference(i, j, w.get(i, j), w_ji, scratch);
                scratch.iter().map(|v| v.abs()).sum::<f64>()
            },
        );
        let mut scores = vec![0.0; n];
        for (&(i, j), flow) in edges.iter().zip(net) {
            scores[i] += flow;
            if g.is_undirected() {
                scores[j] += flow;
            }
        }
        let tag = MeasureTag::new("rsp-net")
            .with_beta(self.beta())
            .with_policy(self.policy().name());
        let v = CentralityVector::new(scores, tag);
        Ok(if g.is_undirected() {
            v
        } else {
            v.with_note(DIRECTED_NOTE)
        })
    }
}

pub fn rsp_net_betweenness(g: &Graph, policy: TransitionPolicy, beta: f64) -> Result<CentralityVector> {
    g.check_strong_connectivity()?;
    RspModel::new(g, policy, beta)?.net_betweenness()
}
