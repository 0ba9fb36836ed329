use crate::error::Result;
use crate::graph::{reference_transitions, Graph, TransitionModel, TransitionPolicy};
use crate::linalg::{fundamental_matrix, killed_transition_matrix, FundamentalSolve, KilledWalkMatrix};

/// A graph together with its killed walk and fundamental matrix at one β.
///
/// Building the model performs the single `O(n³)` inversion; every pair,
/// edge and batch query afterwards reads from it.
#[derive(Debug, Clone)]
pub struct RspModel<'g> {
    graph: &'g Graph,
    transitions: TransitionModel,
    killed: KilledWalkMatrix,
    solve: FundamentalSolve,
}

impl<'g> RspModel<'g> {
    pub fn new(graph: &'g Graph, policy: TransitionPolicy, beta: f64) -> Result<Self> {
        let transitions = reference_transitions(graph, policy)?;
        Self::with_transitions(graph, transitions, beta)
    }

    pub fn with_transitions(graph: &'g Graph, transitions: TransitionModel, beta: f64) -> Result<Self> {
        let killed = killed_transition_matrix(graph, &transitions, beta)?;
        let solve = fundamental_matrix(&killed)?;
        Ok(RspModel {
            graph,
            transitions,
            killed,
            solve,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn transitions(&self) -> &TransitionModel {
        &self.transitions
    }

    pub fn killed(&self) -> &KilledWalkMatrix {
        &self.killed
    }

    pub fn solve(&self) -> &FundamentalSolve {
        &self.solve
    }

    pub fn beta(&self) -> f64 {
        self.killed.beta()
    }

    pub fn policy(&self) -> TransitionPolicy {
        self.transitions.policy()
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }
}
