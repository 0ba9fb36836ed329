use clap::ValueEnum;
use rsp_core::{
    classical, current_flow_betweenness, reference_transitions, shortest_path_betweenness,
    shortest_path_likelihood_betweenness, stationary_distribution, stationary_hitting_limit, CentralityVector, Graph,
    MeasureTag, RspModel, TransitionPolicy,
};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    /// Simple RSP betweenness (expected departures).
    Rsp,
    /// RSP net betweenness (absolute net flow on incident edges).
    RspNet,
    /// Shortest-path betweenness, endpoints included.
    Sp,
    /// Shortest-path likelihood betweenness, endpoints included.
    SpLikelihood,
    /// Current-flow betweenness (undirected graphs).
    CurrentFlow,
    /// Stationary distribution of the reference walk.
    Stationary,
    /// Stationary probability times the summed hitting times.
    DegreeLimit,
    /// Expected hitting time into each node, summed over sources.
    HittingSum,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Rsp => "rsp",
            Measure::RspNet => "rsp-net",
            Measure::Sp => "sp",
            Measure::SpLikelihood => "sp-likelihood",
            Measure::CurrentFlow => "current-flow",
            Measure::Stationary => "stationary",
            Measure::DegreeLimit => "degree-limit",
            Measure::HittingSum => "hitting-sum",
        }
    }

    pub fn uses_beta(self) -> bool {
        matches!(self, Measure::Rsp | Measure::RspNet)
    }

    pub fn uses_policy(self) -> bool {
        !matches!(self, Measure::Sp | Measure::CurrentFlow)
    }
}

/// Scores of a β-dependent measure from a prepared model.
pub fn from_model(measure: Measure, model: &RspModel<'_>) -> CliResult<CentralityVector> {
    Ok(match measure {
        Measure::Rsp => model.simple_betweenness()?,
        Measure::RspNet => model.net_betweenness()?,
        other => unreachable!("{} has no beta", other.name()),
    })
}

pub fn compute(
    measure: Measure,
    g: &Graph,
    policy: TransitionPolicy,
    beta: Option<f64>,
) -> CliResult<CentralityVector> {
    if measure.uses_beta() {
        let beta = beta.ok_or_else(|| {
            CliError::validation(
                "beta-required",
                format!("measure {} needs exactly one --beta", measure.name()),
            )
        })?;
        let model = RspModel::new(g, policy, beta)?;
        return from_model(measure, &model);
    }
    Ok(match measure {
        Measure::Sp => shortest_path_betweenness(g)?,
        Measure::SpLikelihood => shortest_path_likelihood_betweenness(g, policy)?,
        Measure::CurrentFlow => current_flow_betweenness(g)?,
        Measure::Stationary => {
            let t = reference_transitions(g, policy)?;
            CentralityVector::new(
                stationary_distribution(&t)?,
                MeasureTag::new("stationary").with_policy(policy.name()),
            )
        }
        Measure::DegreeLimit => stationary_hitting_limit(g, policy)?,
        Measure::HittingSum => {
            let t = reference_transitions(g, policy)?;
            let h = classical::hitting_times(&t)?;
            let into: Vec<f64> = (0..g.node_count()).map(|v| h.column(v).sum()).collect();
            CentralityVector::new(into, MeasureTag::new("hitting-sum").with_policy(policy.name()))
        }
        Measure::Rsp | Measure::RspNet => unreachable!(),
    })
}
