//! Randomized shortest path betweenness on weighted directed graphs.
//!
//! Build a [`Graph`], pick a [`TransitionPolicy`], and either call the
//! one-shot functions ([`rsp_betweenness`], [`rsp_net_betweenness`]) or build
//! an [`RspModel`] once per β and query it repeatedly.
//!
//! ```
//! use rsp_core::{generators::path_graph, rsp_net_betweenness, TransitionPolicy};
//!
//! let g = path_graph(3).unwrap();
//! let net = rsp_net_betweenness(&g, TransitionPolicy::Weight, 1.0).unwrap();
//! assert!((net.scores()[1] - 8.0).abs() < 1e-9);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod centrality;
pub mod classical;
pub mod error;
pub mod generators;
pub mod graph;
pub mod linalg;
pub mod model;
pub mod net;
pub mod oracle;
pub mod par;
pub mod rank;
pub mod simple;

pub use centrality::{CentralityVector, MeasureTag};
pub use classical::{
    current_flow_betweenness, degree_centrality, hitting_times, shortest_path_betweenness,
    shortest_path_likelihood_betweenness, shortest_path_likelihood_betweenness_with, stationary_distribution,
    stationary_hitting_limit, summed_hitting_times, PathCounting,
};
pub use error::{Result, RspError};
pub use graph::{
    load_edge_list, reference_transitions, write_edge_list, CostPolicy, Graph, GraphBuilder, TransitionModel,
    TransitionPolicy,
};
pub use linalg::{fundamental_matrix, killed_transition_matrix, FundamentalSolve, KilledWalkMatrix};
pub use model::RspModel;
pub use net::{rsp_net_betweenness, EdgeNetFlow};
pub use simple::{pair_edge_flows, rsp_betweenness, rsp_betweenness_sweep, PairFlowField};
