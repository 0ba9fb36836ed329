//! Where a graph comes from: an edge-list file or a generator spec.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rsp_core::generators::{
    complete_graph, cycle_graph, grid_graph, path_graph, random_connected, random_tree, sbm_three_block,
    three_community_regular, CommunitySpec, RandomGraphSpec,
};
use rsp_core::{load_edge_list, CostPolicy, Graph, GraphBuilder, TransitionPolicy};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Weight,
    Degree,
}

impl From<PolicyArg> for TransitionPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Weight => TransitionPolicy::Weight,
            PolicyArg::Degree => TransitionPolicy::Degree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostArg {
    Column,
    Reciprocal,
    Unit,
}

impl From<CostArg> for CostPolicy {
    fn from(c: CostArg) -> Self {
        match c {
            CostArg::Column => CostPolicy::Column,
            CostArg::Reciprocal => CostPolicy::Reciprocal,
            CostArg::Unit => CostPolicy::Unit,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Edge-list file: `src dst weight [cost]` per row.
    #[arg(long, required_unless_present = "generate", conflicts_with = "generate")]
    pub input: Option<PathBuf>,

    /// Generator spec: path:N, cycle:N, complete:N, grid:WxH, three-community,
    /// sbm:NA,NB,NC:P_IN:P_BRIDGE, random:N:P[:MAX_WEIGHT:MAX_COST], tree:N[:MAX_COST].
    #[arg(long)]
    pub generate: Option<String>,

    /// Treat each input row as a single arc.
    #[arg(long)]
    pub directed: bool,

    /// Cost policy. Files default to unit; generators keep their own costs.
    #[arg(long, value_enum)]
    pub cost: Option<CostArg>,

    /// Seed for random generators.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GraphArgs {
    /// Cost policy as recorded in the manifest.
    pub fn cost_name(&self) -> &'static str {
        match (self.cost, &self.input) {
            (Some(c), _) => CostPolicy::from(c).name(),
            (None, Some(_)) => "unit",
            (None, None) => "generated",
        }
    }

    pub fn load(&self) -> CliResult<Graph> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::validation("io-error", format!("{}: {e}", path.display())))?;
            let policy = self.cost.map_or(CostPolicy::Unit, CostPolicy::from);
            return Ok(load_edge_list(&text, !self.directed, policy)?);
        }
        let spec = self.generate.as_deref().expect("clap enforces one source");
        let g = generate(spec, self.seed)?;
        Ok(match self.cost {
            None | Some(CostArg::Column) => g,
            Some(c) => recost(&g, c.into()),
        })
    }
}

fn bad_spec(spec: &str, why: &str) -> CliError {
    CliError::validation("invalid-generator", format!("`{spec}`: {why}"))
}

fn num<T: std::str::FromStr>(spec: &str, tok: &str) -> CliResult<T> {
    tok.parse()
        .map_err(|_| bad_spec(spec, &format!("cannot parse `{tok}`")))
}

/// Builds the graph named by a generator spec.
pub fn generate(spec: &str, seed: u64) -> CliResult<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let g = match parts.as_slice() {
        ["path", n] => path_graph(num(spec, n)?)?,
        ["cycle", n] => cycle_graph(num(spec, n)?)?,
        ["complete", n] => complete_graph(num(spec, n)?)?,
        ["grid", dims] => {
            let (w, h) = dims.split_once('x').ok_or_else(|| bad_spec(spec, "expected WxH"))?;
            grid_graph(num(spec, w)?, num(spec, h)?)?
        }
        ["three-community"] => three_community_regular(),
        ["sbm", sizes, p_in, p_bridge] => {
            let sizes: Vec<usize> = sizes.split(',').map(|s| num(spec, s)).collect::<CliResult<_>>()?;
            let sizes: [usize; 3] = sizes
                .try_into()
                .map_err(|_| bad_spec(spec, "expected three block sizes"))?;
            sbm_three_block(&CommunitySpec {
                sizes,
                p_in: num(spec, p_in)?,
                p_bridge: num(spec, p_bridge)?,
                seed,
            })?
        }
        ["random", n, p, rest @ ..] => {
            let mut rs = RandomGraphSpec::new(num(spec, n)?, num(spec, p)?, seed);
            match rest {
                [] => {}
                [w, c] => rs = rs.with_weights(num(spec, w)?).with_costs(num(spec, c)?),
                _ => return Err(bad_spec(spec, "expected random:N:P[:MAX_WEIGHT:MAX_COST]")),
            }
            random_connected(&rs)?
        }
        ["tree", n] => random_tree(num(spec, n)?, 1, seed)?,
        ["tree", n, c] => random_tree(num(spec, n)?, num(spec, c)?, seed)?,
        _ => return Err(bad_spec(spec, "unknown generator")),
    };
    Ok(g)
}

fn recost(g: &Graph, policy: CostPolicy) -> Graph {
    let mut b = GraphBuilder::with_labels(g.labels().to_vec(), g.is_undirected());
    let arcs: Vec<_> = if g.is_undirected() {
        g.edges().copied().collect()
    } else {
        g.arcs().to_vec()
    };
    for a in arcs {
        let cost = match policy {
            CostPolicy::Reciprocal => 1.0 / a.weight,
            CostPolicy::Unit => 1.0,
            CostPolicy::Column => a.cost,
        };
        b.add_edge(a.src, a.dst, a.weight, cost)
            .expect("recosting keeps validity");
    }
    b.build()
}

/// Reads node labels separated by whitespace; `#` starts a comment.
pub fn read_group(path: &std::path::Path, g: &Graph) -> CliResult<Vec<usize>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation("io-error", format!("{}: {e}", path.display())))?;
    let mut ids = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        for label in body.split_whitespace() {
            let id = g
                .node_id(label)
                .ok_or_else(|| CliError::validation("unknown-node", format!("group names unknown node `{label}`")))?;
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    if ids.is_empty() {
        return Err(CliError::validation(
            "empty-group",
            format!("{} lists no nodes", path.display()),
        ));
    }
    Ok(ids)
}
