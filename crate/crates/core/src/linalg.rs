//! The killed random walk `W = P_ref ∘ exp(-βC)` and its fundamental matrix
//! `Z = (I - W)^-1`.
//!
//! One LU factorization per β is computed and the full inverse is kept, since
//! both betweenness algorithms consume whole rows and columns of `Z`.

use nalgebra::DMatrix;

use crate::error::{Result, RspError};
use crate::graph::{Graph, TransitionModel};

/// Largest admissible `β · max_ij c_ij`.
pub const OVERFLOW_GUARD: f64 = 700.0;
/// Residual `‖(I-W)Z - I‖_max` above which the inverse is rejected.
pub const RESIDUAL_LIMIT: f64 = 1e-6;
/// Reciprocal 1-norm condition number below which the inverse is rejected.
pub const RCOND_LIMIT: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct KilledWalkMatrix {
    w: DMatrix<f64>,
    beta: f64,
}

impl KilledWalkMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.w
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.w[(i, j)]
    }

    pub fn node_count(&self) -> usize {
        self.w.nrows()
    }

    /// Largest row sum; strictly below one whenever every node can be killed.
    pub fn max_row_sum(&self) -> f64 {
        (0..self.w.nrows()).map(|i| self.w.row(i).sum()).fold(0.0, f64::max)
    }
}

pub fn validate_beta(g: &Graph, beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(RspError::InvalidBeta(beta));
    }
    let product = beta * g.max_cost();
    if product > OVERFLOW_GUARD {
        return Err(RspError::CostOverflow { product });
    }
    Ok(())
}

/// Builds `w_ij = p_ij · exp(-β c_ij)` over the arcs of `g`.
///
/// Entries that underflow stay exactly zero and act as absent arcs.
pub fn killed_transition_matrix(g: &Graph, t: &TransitionModel, beta: f64) -> Result<KilledWalkMatrix> {
    validate_beta(g, beta)?;
    if t.node_count() != g.node_count() {
        return Err(RspError::Invalid(format!(
            "transition model has {} nodes, graph has {}",
            t.node_count(),
            g.node_count()
        )));
    }
    let n = g.node_count();
    let mut w = DMatrix::zeros(n, n);
    for a in g.arcs() {
        w[(a.src, a.dst)] = t.prob(a.src, a.dst) * (-beta * a.cost).exp();
    }
    Ok(KilledWalkMatrix { w, beta })
}

/// `Z = (I - W)^-1` with conditioning diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalSolve {
    z: DMatrix<f64>,
    rcond: f64,
    residual: f64,
    beta: f64,
}

impl FundamentalSolve {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.z
    }

    pub fn get(&self, s: usize, t: usize) -> f64 {
        self.z[(s, t)]
    }

    pub fn node_count(&self) -> usize {
        self.z.nrows()
    }

    /// Estimate of `1 / (‖I-W‖_1 ‖Z‖_1)`.
    pub fn reciprocal_condition_estimate(&self) -> f64 {
        self.rcond
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Partition function of absorbing `s → t` walks, `z_st / z_tt`.
    pub fn pair_partition_function(&self, s: usize, t: usize) -> Result<f64> {
        let n = self.node_count();
        for node in [s, t] {
            if node >= n {
                return Err(RspError::NodeOutOfRange { node, n });
            }
        }
        if s == t {
            return Err(RspError::SameNode(s));
        }
        Ok(self.z[(s, t)] / self.z[(t, t)])
    }

    /// Fails unless every entry of `Z` is strictly positive, which holds for a
    /// strongly connected graph unless underflow cut the killed walk apart.
    pub fn ensure_positive(&self) -> Result<()> {
        match self.z.iter().position(|&v| !(v > 0.0)) {
            None => Ok(()),
            Some(k) => {
                let n = self.node_count();
                Err(RspError::Singular {
                    reason: format!(
                        "z[{}][{}] = 0: killed walk disconnected at beta = {} (W underflow)",
                        k % n,
                        k / n,
                        self.beta
                    ),
                })
            }
        }
    }
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn fundamental_matrix(w: &KilledWalkMatrix) -> Result<FundamentalSolve> {
    let n = w.node_count();
    let identity = DMatrix::<f64>::identity(n, n);
    let a = &identity - &w.w;
    let z = a.clone().lu().try_inverse().ok_or_else(|| RspError::Singular {
        reason: "zero pivot in LU factorization of (I - W)".into(),
    })?;
    if z.iter().any(|v| !v.is_finite()) {
        return Err(RspError::Singular {
            reason: "non-finite entries in (I - W)^-1".into(),
        });
    }
    let residual = (&a * &z - &identity).amax();
    let rcond = 1.0 / (one_norm(&a) * one_norm(&z));
    if !(residual <= RESIDUAL_LIMIT) {
        return Err(RspError::Singular {
            reason: format!("residual {residual:e} exceeds {RESIDUAL_LIMIT:e}"),
        });
    }
    if !(rcond >= RCOND_LIMIT) {
        return Err(RspError::Singular {
            reason: format!("reciprocal condition {rcond:e} below {RCOND_LIMIT:e}"),
        });
    }
    let floor = -1e-9 * z.amax().max(1.0);
    if z.iter().any(|&v| v < floor) {
        return Err(RspError::Singular {
            reason: "negative entries in (I - W)^-1: spectral radius of W is not below 1".into(),
        });
    }
    Ok(FundamentalSolve {
        z,
        rcond,
        residual,
        beta: w.beta,
    })
}

/// Convenience: `W` and `Z` for a graph at one β.
pub fn solve(g: &Graph, t: &TransitionModel, beta: f64) -> Result<(KilledWalkMatrix, FundamentalSolve)> {
    let w = killed_transition_matrix(g, t, beta)?;
    let f = fundamental_matrix(&w)?;
    Ok((w, f))
}
