use nalgebra::DMatrix;

use super::Graph;
use crate::error::{Result, RspError};

/// How the unbiased reference walk chooses among outgoing arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransitionPolicy {
    /// `p_ij = a_ij / sum_k a_ik`.
    Weight,
    /// `p_ij = 1 / outdeg(i)`.
    Degree,
}

impl TransitionPolicy {
    pub fn name(self) -> &'static str {
        match self {
            TransitionPolicy::Weight => "weight",
            TransitionPolicy::Degree => "degree",
        }
    }
}

impl std::str::FromStr for TransitionPolicy {
    type Err = RspError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weight" => Ok(TransitionPolicy::Weight),
            "degree" => Ok(TransitionPolicy::Degree),
            other => Err(RspError::Invalid(format!("unknown transition policy `{other}`"))),
        }
    }
}

/// Row-stochastic reference transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionModel {
    p_ref: DMatrix<f64>,
    policy: TransitionPolicy,
}

impl TransitionModel {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p_ref
    }

    pub fn policy(&self) -> TransitionPolicy {
        self.policy
    }

    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.p_ref[(i, j)]
    }

    pub fn node_count(&self) -> usize {
        self.p_ref.nrows()
    }
}

pub fn reference_transitions(g: &Graph, policy: TransitionPolicy) -> Result<TransitionModel> {
    let n = g.node_count();
    let mut p_ref = DMatrix::zeros(n, n);
    for i in 0..n {
        if g.out_degree(i) == 0 {
            return Err(RspError::DanglingNode { node: i });
        }
        match policy {
            TransitionPolicy::Weight => {
                let total: f64 = g.out_arcs(i).map(|a| a.weight).sum();
                for a in g.out_arcs(i) {
                    p_ref[(i, a.dst)] = a.weight / total;
                }
            }
            TransitionPolicy::Degree => {
                let share = 1.0 / g.out_degree(i) as f64;
                for a in g.out_arcs(i) {
                    p_ref[(i, a.dst)] = share;
                }
            }
        }
    }
    Ok(TransitionModel { p_ref, policy })
}
