//! Deterministic and seeded synthetic graphs.
//!
//! Every generator returns an undirected graph labelled `1..=n` unless noted.
//! Random generators draw from `ChaCha8Rng` seeded with `seed_from_u64`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RspError};
use crate::graph::{Graph, GraphBuilder};

/// Name of the pseudo-random generator used by every seeded generator.
pub const RNG_NAME: &str = "chacha8/rand_chacha-0.9";

/// Regeneration limit for samples that must be connected.
pub const MAX_ATTEMPTS: usize = 100;

fn invalid(msg: impl Into<String>) -> RspError {
    RspError::InvalidGenerator(msg.into())
}

fn unit_graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let mut b = GraphBuilder::with_nodes(n, true);
    for (i, j) in edges {
        b.add_edge(i, j, 1.0, 1.0).expect("generator edge");
    }
    b.build()
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("path needs at least 1 node"));
    }
    Ok(unit_graph(n, (1..n).map(|i| (i - 1, i))))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs at least 3 nodes"));
    }
    Ok(unit_graph(n, (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("complete graph needs at least 1 node"));
    }
    Ok(unit_graph(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))))
}

/// `width × height` lattice; node `(x, y)` has id `y * width + x`.
pub fn grid_graph(width: usize, height: usize) -> Result<Graph> {
    if width < 1 || height < 1 {
        return Err(invalid("grid dimensions must be at least 1"));
    }
    let id = |x: usize, y: usize| y * width + x;
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < height {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Ok(unit_graph(width * height, edges))
}

/// Index of the block (0 = A, 1 = B, 2 = C) of each node of
/// [`three_community_regular`].
pub fn three_community_blocks() -> Vec<usize> {
    (0..18).map(|v| v / 6).collect()
}

/// 18-node 5-regular graph with three communities A, B, C of 6 nodes.
///
/// Start from three disjoint 6-cliques. At the A–B interface drop `a1–a2`
/// and `b1–b2` and join `a1–b1`, `a2–b2`; at the B–C interface drop `b3–b4`
/// and `c1–c2` and join `b3–c1`, `b4–c2`. A and C share no edge.
pub fn three_community_regular() -> Graph {
    let labels = ["A", "B", "C"]
        .iter()
        .flat_map(|b| (1..=6).map(move |k| format!("{b}{k}")))
        .collect();
    let (a, b, c) = (0, 6, 12);
    let removed = [(a, a + 1), (b, b + 1), (b + 2, b + 3), (c, c + 1)];
    let added = [(a, b), (a + 1, b + 1), (b + 2, c), (b + 3, c + 1)];
    let mut builder = GraphBuilder::with_labels(labels, true);
    for base in [a, b, c] {
        for i in base..base + 6 {
            for j in i + 1..base + 6 {
                if !removed.contains(&(i, j)) {
                    builder.add_edge(i, j, 1.0, 1.0).expect("clique edge");
                }
            }
        }
    }
    for (i, j) in added {
        builder.add_edge(i, j, 1.0, 1.0).expect("bridge edge");
    }
    builder.build()
}

/// Three-block stochastic block model with blocks A, B, C in id order and
/// no A–C edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommunitySpec {
    pub sizes: [usize; 3],
    pub p_in: f64,
    pub p_bridge: f64,
    pub seed: u64,
}

impl CommunitySpec {
    pub fn node_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Block index of every node.
    pub fn blocks(&self) -> Vec<usize> {
        (0..3).flat_map(|b| std::iter::repeat_n(b, self.sizes[b])).collect()
    }

    /// Node ids of block `b`.
    pub fn members(&self, b: usize) -> Vec<usize> {
        let start: usize = self.sizes[..b].iter().sum();
        (start..start + self.sizes[b]).collect()
    }

    fn validate(&self) -> Result<()> {
        if self.sizes.contains(&0) {
            return Err(invalid("block sizes must be positive"));
        }
        if !(self.p_bridge > 0.0 && self.p_bridge < self.p_in && self.p_in <= 1.0) {
            return Err(invalid(format!(
                "need 0 < p_bridge < p_in <= 1, got p_bridge={} p_in={}",
                self.p_bridge, self.p_in
            )));
        }
        Ok(())
    }
}

fn sample_sbm(spec: &CommunitySpec, seed: u64) -> Graph {
    let blocks = spec.blocks();
    let n = blocks.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = match blocks[i].abs_diff(blocks[j]) {
                0 => spec.p_in,
                1 => spec.p_bridge,
                _ => 0.0,
            };
            // draw for every pair so the stream layout does not depend on p
            let u: f64 = rng.random();
            if u < p {
                edges.push((i, j));
            }
        }
    }
    unit_graph(n, edges)
}

/// Samples until connected, trying seeds `seed, seed + 1, …` up to
/// [`MAX_ATTEMPTS`] times.
pub fn sbm_three_block(spec: &CommunitySpec) -> Result<Graph> {
    spec.validate()?;
    for attempt in 0..MAX_ATTEMPTS as u64 {
        let g = sample_sbm(spec, spec.seed.wrapping_add(attempt));
        if g.components().is_strongly_connected() {
            return Ok(g);
        }
    }
    Err(RspError::ConnectivityNotAchieved { attempts: MAX_ATTEMPTS })
}

/// Random connected undirected graph: a uniform random recursive tree plus
/// every remaining pair independently with `edge_probability`. Weights and
/// costs are integers drawn uniformly from `1..=max_weight` and
/// `1..=max_cost`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphSpec {
    pub nodes: usize,
    pub edge_probability: f64,
    pub max_weight: u32,
    pub max_cost: u32,
    pub seed: u64,
}

impl RandomGraphSpec {
    pub fn new(nodes: usize, edge_probability: f64, seed: u64) -> Self {
        RandomGraphSpec {
            nodes,
            edge_probability,
            max_weight: 1,
            max_cost: 1,
            seed,
        }
    }

    pub fn with_weights(mut self, max_weight: u32) -> Self {
        self.max_weight = max_weight;
        self
    }

    pub fn with_costs(mut self, max_cost: u32) -> Self {
        self.max_cost = max_cost;
        self
    }
}

pub fn random_connected(spec: &RandomGraphSpec) -> Result<Graph> {
    let n = spec.nodes;
    if n < 2 {
        return Err(invalid("random graph needs at least 2 nodes"));
    }
    if !(0.0..=1.0).contains(&spec.edge_probability) {
        return Err(invalid("edge probability must lie in [0, 1]"));
    }
    if spec.max_weight < 1 || spec.max_cost < 1 {
        return Err(invalid("weight and cost ranges must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut in_tree = vec![usize::MAX; n];
    for (v, parent) in in_tree.iter_mut().enumerate().skip(1) {
        *parent = rng.random_range(0..v);
    }
    let mut b = GraphBuilder::with_nodes(n, true);
    let draw = |rng: &mut ChaCha8Rng| {
        let w = rng.random_range(1..=spec.max_weight) as f64;
        let c = rng.random_range(1..=spec.max_cost) as f64;
        (w, c)
    };
    for i in 0..n {
        for (j, &parent) in in_tree.iter().enumerate().skip(i + 1) {
            let tree_edge = parent == i;
            let u: f64 = rng.random();
            if tree_edge || u < spec.edge_probability {
                let (w, c) = draw(&mut rng);
                b.add_edge(i, j, w, c)?;
            }
        }
    }
    Ok(b.build())
}

/// Uniform random recursive tree on `n` nodes with unit weights and integer
/// costs in `1..=max_cost`.
pub fn random_tree(n: usize, max_cost: u32, seed: u64) -> Result<Graph> {
    random_connected(&RandomGraphSpec::new(n, 0.0, seed).with_costs(max_cost))
}
