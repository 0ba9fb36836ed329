//! Weighted directed graphs with separate affinities and costs.
//!
//! Every arc carries an affinity `weight` (drives the reference random walk)
//! and a `cost` (drives path optimality). Undirected graphs are stored as pairs
//! of opposite arcs with identical weight and cost, so every downstream
//! computation works on the directed form.

mod io;
mod scc;
mod transition;

use std::collections::HashMap;

use crate::error::{Result, RspError};

pub use io::{load_edge_list, write_edge_list};
pub use scc::ComponentReport;
pub use transition::{reference_transitions, TransitionModel, TransitionPolicy};

/// How arc costs are obtained from an edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostPolicy {
    /// Costs are read from the fourth column.
    Column,
    /// `c_ij = 1 / a_ij`.
    Reciprocal,
    /// `c_ij = 1`.
    Unit,
}

impl CostPolicy {
    pub fn name(self) -> &'static str {
        match self {
            CostPolicy::Column => "column",
            CostPolicy::Reciprocal => "reciprocal",
            CostPolicy::Unit => "unit",
        }
    }
}

impl std::str::FromStr for CostPolicy {
    type Err = RspError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "column" => Ok(CostPolicy::Column),
            "reciprocal" => Ok(CostPolicy::Reciprocal),
            "unit" => Ok(CostPolicy::Unit),
            other => Err(RspError::Invalid(format!("unknown cost policy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    lookup: HashMap<(usize, usize), usize>,
    undirected: bool,
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    /// Node id for an external label, if present.
    pub fn node_id(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn arc_index(&self, src: usize, dst: usize) -> Option<usize> {
        self.lookup.get(&(src, dst)).copied()
    }

    pub fn arc(&self, src: usize, dst: usize) -> Option<&Arc> {
        self.arc_index(src, dst).map(|k| &self.arcs[k])
    }

    pub fn out_arcs(&self, node: usize) -> impl Iterator<Item = &Arc> + '_ {
        self.out[node].iter().map(move |&k| &self.arcs[k])
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.out[node].len()
    }

    /// Declared edges: each undirected edge once (as `src < dst`), every arc of
    /// a directed graph.
    pub fn edges(&self) -> impl Iterator<Item = &Arc> + '_ {
        let undirected = self.undirected;
        self.arcs.iter().filter(move |a| !undirected || a.src < a.dst)
    }

    pub fn max_cost(&self) -> f64 {
        self.arcs.iter().map(|a| a.cost).fold(0.0, f64::max)
    }

    /// Sum of outgoing weights of every node.
    pub fn strengths(&self) -> Vec<f64> {
        (0..self.node_count())
            .map(|i| self.out_arcs(i).map(|a| a.weight).sum())
            .collect()
    }

    pub fn components(&self) -> ComponentReport {
        scc::strongly_connected_components(self)
    }

    pub fn check_strong_connectivity(&self) -> Result<()> {
        let report = self.components();
        if report.count == 1 {
            Ok(())
        } else {
            Err(RspError::NotStronglyConnected {
                components: report.count,
            })
        }
    }

    /// Returns the graph with node `i` renamed to `perm[i]`. Labels move with
    /// their nodes.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.node_count(), "permutation length");
        let mut labels = vec![String::new(); self.node_count()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[old].clone();
        }
        let mut b = GraphBuilder::with_labels(labels, self.undirected);
        for a in self.edges() {
            b.add_edge(perm[a.src], perm[a.dst], a.weight, a.cost)
                .expect("permutation preserves validity");
        }
        b.build()
    }
}

/// Incrementally assembles a validated [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    label_ids: HashMap<String, usize>,
    arcs: Vec<Arc>,
    lookup: HashMap<(usize, usize), usize>,
    undirected: bool,
}

impl GraphBuilder {
    pub fn new(undirected: bool) -> Self {
        GraphBuilder {
            labels: Vec::new(),
            label_ids: HashMap::new(),
            arcs: Vec::new(),
            lookup: HashMap::new(),
            undirected,
        }
    }

    /// Builder with `n` nodes labelled `1..=n`.
    pub fn with_nodes(n: usize, undirected: bool) -> Self {
        Self::with_labels((1..=n).map(|i| i.to_string()).collect(), undirected)
    }

    pub fn with_labels(labels: Vec<String>, undirected: bool) -> Self {
        let mut b = Self::new(undirected);
        for label in labels {
            b.intern(&label);
        }
        b
    }

    /// Id of `label`, allocating the next id on first sight.
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.label_ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.label_ids.insert(label.to_string(), id);
        id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, weight: f64, cost: f64) -> Result<()> {
        self.add_edge_at(0, src, dst, weight, cost)
    }

    pub(crate) fn add_edge_at(&mut self, line: usize, src: usize, dst: usize, weight: f64, cost: f64) -> Result<()> {
        let n = self.labels.len();
        for node in [src, dst] {
            if node >= n {
                return Err(RspError::NodeOutOfRange { node, n });
            }
        }
        if src == dst {
            return Err(RspError::SelfLoop {
                line,
                node: self.labels[src].clone(),
            });
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(RspError::NonPositiveWeight { line, value: weight });
        }
        if !(cost >= 0.0 && cost.is_finite()) {
            return Err(RspError::NegativeCost { line, value: cost });
        }
        let duplicate =
            self.lookup.contains_key(&(src, dst)) || (self.undirected && self.lookup.contains_key(&(dst, src)));
        if duplicate {
            return Err(RspError::DuplicateArc {
                line,
                src: self.labels[src].clone(),
                dst: self.labels[dst].clone(),
            });
        }
        self.push_arc(src, dst, weight, cost);
        if self.undirected {
            self.push_arc(dst, src, weight, cost);
        }
        Ok(())
    }

    fn push_arc(&mut self, src: usize, dst: usize, weight: f64, cost: f64) {
        self.lookup.insert((src, dst), self.arcs.len());
        self.arcs.push(Arc { src, dst, weight, cost });
    }

    pub fn build(self) -> Graph {
        let mut out = vec![Vec::new(); self.labels.len()];
        for (k, a) in self.arcs.iter().enumerate() {
            out[a.src].push(k);
        }
        for list in &mut out {
            list.sort_by_key(|&k| self.arcs[k].dst);
        }
        Graph {
            labels: self.labels,
            arcs: self.arcs,
            out,
            lookup: self.lookup,
            undirected: self.undirected,
        }
    }
}
