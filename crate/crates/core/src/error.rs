use thiserror::Error;

pub type Result<T> = std::result::Result<T, RspError>;

/// Everything that can go wrong between reading an edge list and returning scores.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RspError {
    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("line {line}: weight must be positive and finite, got {value}")]
    NonPositiveWeight { line: usize, value: f64 },
    #[error("line {line}: cost must be nonnegative and finite, got {value}")]
    NegativeCost { line: usize, value: f64 },
    #[error("line {line}: duplicate arc {src} -> {dst}")]
    DuplicateArc { line: usize, src: String, dst: String },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: String },
    #[error("line {line}: cost column required by the explicit-column cost policy")]
    MissingCost { line: usize },
    #[error("node {node} has no outgoing arcs")]
    DanglingNode { node: usize },
    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("graph is not strongly connected ({components} components)")]
    NotStronglyConnected { components: usize },
    #[error("measure requires an undirected graph")]
    UndirectedRequired,
    #[error("beta must be positive and finite, got {0}")]
    InvalidBeta(f64),
    #[error("beta * max cost = {product} exceeds 700; rescale costs or lower beta")]
    CostOverflow { product: f64 },
    #[error("(I - W) is numerically singular: {reason}")]
    Singular { reason: String },
    #[error("source and target must differ (node {0})")]
    SameNode(usize),
    #[error("target {t} is unreachable from source {s}")]
    UnreachablePair { s: usize, t: usize },
    #[error("arc {i} -> {j} does not exist")]
    MissingArc { i: usize, j: usize },
    #[error("internal consistency: negative flow {value} beyond rounding slack")]
    NegativeFlow { value: f64 },
    #[error("path count {count} exceeds the enumeration budget {budget}")]
    PathBudgetExceeded { count: u128, budget: u64 },
    #[error("no absorbing path from {s} to {t} within {cap} edges")]
    EmptyEnsemble { s: usize, t: usize, cap: usize },
    #[error("length cap must be at least 1")]
    InvalidCap,
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("no connected sample after {attempts} attempts")]
    ConnectivityNotAchieved { attempts: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("at beta = {beta}: {source}")]
    AtBeta { beta: f64, source: Box<RspError> },
}

impl RspError {
    /// Machine-parsable reason tag, stable across releases.
    pub fn reason(&self) -> &'static str {
        match self {
            RspError::MalformedRow { .. } => "malformed-row",
            RspError::NonPositiveWeight { .. } => "nonpositive-weight",
            RspError::NegativeCost { .. } => "negative-cost",
            RspError::DuplicateArc { .. } => "duplicate-arc",
            RspError::SelfLoop { .. } => "self-loop",
            RspError::MissingCost { .. } => "missing-cost",
            RspError::DanglingNode { .. } => "dangling-node",
            RspError::NodeOutOfRange { .. } => "node-out-of-range",
            RspError::NotStronglyConnected { .. } => "not-strongly-connected",
            RspError::UndirectedRequired => "undirected-required",
            RspError::InvalidBeta(_) => "invalid-beta",
            RspError::CostOverflow { .. } => "cost-overflow",
            RspError::Singular { .. } => "singular-system",
            RspError::SameNode(_) => "same-node",
            RspError::UnreachablePair { .. } => "unreachable-pair",
            RspError::MissingArc { .. } => "missing-arc",
            RspError::NegativeFlow { .. } => "negative-flow",
            RspError::PathBudgetExceeded { .. } => "path-budget-exceeded",
            RspError::EmptyEnsemble { .. } => "unreachable-within-cap",
            RspError::InvalidCap => "invalid-cap",
            RspError::InvalidGenerator(_) => "invalid-generator",
            RspError::ConnectivityNotAchieved { .. } => "connectivity-not-achieved",
            RspError::Invalid(_) => "invalid-input",
            RspError::AtBeta { source, .. } => source.reason(),
        }
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        match self {
            RspError::AtBeta { source, .. } => source.is_numerical(),
            other => matches!(other, RspError::Singular { .. } | RspError::NegativeFlow { .. }),
        }
    }
}
