//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsp_core::classical::ShortestPathDag;
use rsp_core::generators::{
    complete_graph, cycle_graph, path_graph, random_connected, random_tree, sbm_three_block, three_community_blocks,
    three_community_regular, CommunitySpec, RandomGraphSpec,
};
use rsp_core::oracle::{count_absorbing_paths, enumerate_paths_with_budget, oracle_rsp_quantities, walk_oracle};
use rsp_core::rank::{mean_group_rank, relative_linf, spearman};
use rsp_core::{
    current_flow_betweenness, degree_centrality, load_edge_list, reference_transitions,
    shortest_path_likelihood_betweenness, shortest_path_likelihood_betweenness_with, stationary_distribution,
    summed_hitting_times, CostPolicy, Graph, GraphBuilder, PathCounting, RspModel, TransitionPolicy,
};

const W: TransitionPolicy = TransitionPolicy::Weight;
const TIE: f64 = 1e-9;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let took = start.elapsed();
    (
        took <= limit,
        format!("{:.1}s of {}s", took.as_secs_f64(), limit.as_secs()),
    )
}

/// Largest cost-distance over all ordered pairs.
fn max_distance(g: &Graph) -> f64 {
    (0..g.node_count())
        .map(|s| {
            ShortestPathDag::build(g, s)
                .unwrap()
                .distances
                .into_iter()
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn unique_shortest_paths(g: &Graph) -> bool {
    (0..g.node_count()).all(|s| {
        let counts = ShortestPathDag::build(g, s).unwrap().forward(|_, _| 1.0);
        counts.iter().all(|&c| c == 1.0)
    })
}

fn non_bipartite(g: &Graph) -> bool {
    let n = g.node_count();
    let mut color = vec![u8::MAX; n];
    color[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for a in g.out_arcs(u) {
            if color[a.dst] == u8::MAX {
                color[a.dst] = 1 - color[u];
                queue.push_back(a.dst);
            } else if color[a.dst] == color[u] {
                return true;
            }
        }
    }
    false
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let two_cycle = load_edge_list("1 2 1\n2 1 1\n", false, CostPolicy::Unit).unwrap();
    let random6 = random_connected(&RandomGraphSpec::new(6, 0.4, 2).with_weights(3).with_costs(3)).unwrap();
    let graphs = [
        ("path(3)", path_graph(3).unwrap()),
        ("cycle(4)", cycle_graph(4).unwrap()),
        ("K3", complete_graph(3).unwrap()),
        ("K4", complete_graph(4).unwrap()),
        ("2-cycle", two_cycle),
        ("random(6)", random6),
    ];
    let cap = 40;
    let mut worst: f64 = 0.0;
    let mut enumerated = 0;
    let mut pairs = 0;
    for (_, g) in &graphs {
        let t = reference_transitions(g, W).unwrap();
        for beta in [0.5, 1.0, 5.0] {
            let m = RspModel::with_transitions(g, t.clone(), beta).unwrap();
            for s in 0..g.node_count() {
                for tt in (0..g.node_count()).filter(|&x| x != s) {
                    pairs += 1;
                    let mut estimates = vec![walk_oracle(g, &t, s, tt, cap, beta).unwrap()];
                    if count_absorbing_paths(g, s, tt, cap).unwrap() <= 200_000 {
                        let e = enumerate_paths_with_budget(g, &t, s, tt, cap, 200_000).unwrap();
                        estimates.push(oracle_rsp_quantities(&e, g, beta).unwrap());
                        enumerated += 1;
                    }
                    let z = m.solve().pair_partition_function(s, tt).unwrap();
                    let f = m.pair_edge_flows(s, tt).unwrap();
                    for est in &estimates {
                        worst = worst.max((est.partition - z).abs());
                        for (a, b) in f.edge_flows.iter().zip(&est.edge_flows) {
                            worst = worst.max((a - b).abs());
                        }
                        for (a, b) in f.node_visits.iter().zip(&est.visits) {
                            worst = worst.max((a - b).abs());
                        }
                    }
                }
            }
        }
    }
    let (fast, took) = within(Duration::from_secs(60), start);
    verdict(
        worst <= 1e-6 && fast,
        format!("{pairs} pair/beta cases ({enumerated} also enumerated), cap {cap}, max |dev| {worst:.2e} (tol 1e-6), {took}"),
    )
}

/// Random tree with integer costs in 1..=5 and root distance at most 6, plus
/// chords that cost strictly more than the tree path they shortcut. Every
/// shortest path is then the tree path, and no distance exceeds 12.
fn geodesic_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::with_nodes(n, true);
    let mut depth = vec![0u32; n];
    let mut tree: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for v in 1..n {
        let c = rng.random_range(1..=5u32);
        let open: Vec<usize> = (0..v).filter(|&u| depth[u] + c <= 6).collect();
        let u = open[rng.random_range(0..open.len())];
        depth[v] = depth[u] + c;
        tree[u].push((v, c));
        tree[v].push((u, c));
        b.add_edge(u, v, rng.random_range(1..=3u32).into(), c.into()).unwrap();
    }
    for s in 0..n {
        let mut d = vec![u32::MAX; n];
        d[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(v, c) in &tree[u] {
                if d[v] == u32::MAX {
                    d[v] = d[u] + c;
                    stack.push(v);
                }
            }
        }
        for (t, &dt) in d.iter().enumerate().skip(s + 1) {
            let adjacent = tree[s].iter().any(|&(v, _)| v == t);
            if dt <= 4 && !adjacent && rng.random_bool(0.6) {
                let c = rng.random_range(dt + 1..=5);
                b.add_edge(s, t, rng.random_range(1..=3u32).into(), c.into()).unwrap();
            }
        }
    }
    b.build()
}

fn shortest_path_limit() -> Verdict {
    let start = Instant::now();
    let graphs: Vec<Graph> = (0..20).map(|seed| geodesic_graph(20, seed)).collect();
    let unique = graphs.iter().all(unique_shortest_paths);
    let diameter = graphs.iter().map(max_distance).fold(0.0, f64::max);
    let edges: usize = graphs.iter().map(|g| g.edges().count()).sum();
    let (mut worst_simple, mut worst_net, mut min_rho) = (0.0f64, 0.0f64, 1.0f64);
    let mut worst_raw = 0.0f64;
    for g in &graphs {
        let m = RspModel::new(g, W, 50.0).unwrap();
        let simple = m.simple_betweenness().unwrap();
        let net = m.net_betweenness().unwrap();
        let lik = shortest_path_likelihood_betweenness(g, W).unwrap();
        let departures = shortest_path_likelihood_betweenness_with(g, W, PathCounting::DEPARTURES).unwrap();
        let incident = shortest_path_likelihood_betweenness_with(g, W, PathCounting::INCIDENT_FLOW).unwrap();
        worst_simple = worst_simple.max(relative_linf(simple.scores(), departures.scores()));
        worst_net = worst_net.max(relative_linf(net.scores(), incident.scores()));
        worst_raw = worst_raw.max(relative_linf(simple.scores(), lik.scores()));
        min_rho =
            min_rho
                .min(spearman(simple.scores(), lik.scores(), TIE))
                .min(spearman(net.scores(), lik.scores(), TIE));
    }
    let (fast, took) = within(Duration::from_secs(60), start);
    verdict(
        unique && worst_simple <= 1e-4 && worst_net <= 1e-4 && min_rho == 1.0 && fast,
        format!(
            "20 graphs ({edges} edges, unique shortest paths {unique}, max distance {diameter}), rel Linf rsp {worst_simple:.1e} rsp-net {worst_net:.1e} \
             against the matching endpoint convention (tol 1e-4; endpoints-counted gap {worst_raw:.2}), \
             min Spearman {min_rho}, {took}"
        ),
    )
}

fn random_walk_limit() -> Verdict {
    let start = Instant::now();
    let mut graphs = Vec::new();
    let mut seed = 100;
    while graphs.len() < 20 {
        let n = 10 + (seed as usize * 7) % 21;
        let g = random_connected(&RandomGraphSpec::new(n, 0.15, seed).with_weights(3).with_costs(3)).unwrap();
        seed += 1;
        if non_bipartite(&g) {
            graphs.push(g);
        }
    }
    let beta = 1e-6;
    let (mut spread, mut hit_gap, mut cf_gap) = (0.0f64, 0.0f64, 0.0f64);
    for g in &graphs {
        let t = reference_transitions(g, W).unwrap();
        let pi = stationary_distribution(&t).unwrap();
        let h = summed_hitting_times(&t).unwrap();
        let m = RspModel::with_transitions(g, t, beta).unwrap();
        let ratio: Vec<f64> = m
            .simple_betweenness()
            .unwrap()
            .scores()
            .iter()
            .zip(&pi)
            .map(|(s, p)| s / p)
            .collect();
        let (lo, hi) = ratio
            .iter()
            .fold((f64::MAX, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
        let mean = ratio.iter().sum::<f64>() / ratio.len() as f64;
        spread = spread.max((hi - lo) / mean);
        hit_gap = hit_gap.max((mean - h).abs() / h);
        let cf = current_flow_betweenness(g).unwrap();
        cf_gap = cf_gap.max(relative_linf(m.net_betweenness().unwrap().scores(), cf.scores()));
    }
    let (fast, took) = within(Duration::from_secs(120), start);
    verdict(
        spread <= 1e-3 && hit_gap <= 1e-3 && cf_gap <= 1e-3 && fast,
        format!(
            "20 non-bipartite graphs at beta 1e-6: rsp/pi spread {spread:.1e}, vs summed hitting times {hit_gap:.1e}, \
             rsp-net vs current flow {cf_gap:.1e} (tol 1e-3), {took}"
        ),
    )
}

fn tree_invariance() -> Verdict {
    let mut trees: Vec<(String, Graph)> = (3..=10)
        .map(|n| (format!("path({n})"), path_graph(n).unwrap()))
        .collect();
    for seed in [1, 2, 3] {
        trees.push((format!("tree(20, seed {seed})"), random_tree(20, 1, seed).unwrap()));
    }
    let (mut worst, mut path3) = (0.0f64, 0.0f64);
    for (name, g) in &trees {
        let cf = current_flow_betweenness(g).unwrap();
        for beta in [1e-6, 1.0, 50.0] {
            let net = RspModel::new(g, W, beta).unwrap().net_betweenness().unwrap();
            for (a, b) in net.scores().iter().zip(cf.scores()) {
                worst = worst.max((a - b).abs());
            }
            if name == "path(3)" {
                for (a, b) in net.scores().iter().zip([4.0, 8.0, 4.0]) {
                    path3 = path3.max((a - b).abs());
                }
            }
        }
    }
    verdict(
        worst <= 1e-6 && path3 <= 1e-6,
        format!(
            "{} trees x 3 betas, max |rsp-net - current flow| {worst:.1e}, path(3) vs (4,8,4) {path3:.1e} (tol 1e-6)",
            trees.len()
        ),
    )
}

fn three_community_pattern() -> Verdict {
    let g = three_community_regular();
    let blocks = three_community_blocks();
    let v = RspModel::new(&g, W, 0.01).unwrap().simple_betweenness().unwrap();
    let top_b = v.ranking()[..6].iter().all(|&i| blocks[i] == 1);
    let gap = v.scores()[v.ranking()[5]] - v.scores()[v.ranking()[6]];
    let degree = degree_centrality(&g);
    let constant = degree.scores().iter().all(|&d| d == degree.scores()[0]);
    verdict(
        top_b && gap > 0.0 && constant,
        format!(
            "top six simple-RSP ranks at beta 0.01 all in block B: {top_b} (gap to 7th {gap:.3}), degree constant: {constant}"
        ),
    )
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn community_trend() -> Verdict {
    let start = Instant::now();
    let betas = [1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0];
    let graphs_per_setting = 50;
    let mut ok = true;
    let mut details = Vec::new();
    for p_bridge in [0.01, 0.03] {
        let mut simple = vec![Vec::new(); betas.len()];
        let mut net = vec![Vec::new(); betas.len()];
        let (mut sp, mut deg, mut cf) = (Vec::new(), Vec::new(), Vec::new());
        for k in 0..graphs_per_setting {
            let spec = CommunitySpec {
                sizes: [40, 40, 40],
                p_in: 0.2,
                p_bridge,
                seed: 1_000 * k + 17,
            };
            let g = sbm_three_block(&spec).unwrap();
            let b = spec.members(1);
            let t = reference_transitions(&g, W).unwrap();
            for (j, &beta) in betas.iter().enumerate() {
                let m = RspModel::with_transitions(&g, t.clone(), beta).unwrap();
                simple[j].push(mean_group_rank(m.simple_betweenness().unwrap().scores(), &b, TIE));
                net[j].push(mean_group_rank(m.net_betweenness().unwrap().scores(), &b, TIE));
            }
            sp.push(mean_group_rank(
                shortest_path_likelihood_betweenness(&g, W).unwrap().scores(),
                &b,
                TIE,
            ));
            deg.push(mean_group_rank(&stationary_distribution(&t).unwrap(), &b, TIE));
            cf.push(mean_group_rank(current_flow_betweenness(&g).unwrap().scores(), &b, TIE));
        }
        let (sp, deg, cf) = (mean_and_se(&sp), mean_and_se(&deg), mean_and_se(&cf));
        for (name, curve, limits) in [("rsp", &simple, [sp, deg]), ("rsp-net", &net, [sp, cf])] {
            let stats: Vec<(f64, f64)> = curve.iter().map(|xs| mean_and_se(xs)).collect();
            let (j, best) = stats
                .iter()
                .enumerate()
                .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
                .map(|(j, s)| (j, *s))
                .unwrap();
            let below = best.0 < limits[0].0 && best.0 < limits[1].0;
            ok &= below;
            details.push(format!(
                "p_bridge {p_bridge} {name}: best {:.2}±{:.2} at beta {} vs limits {:.2}±{:.2} / {:.2}±{:.2}",
                best.0, best.1, betas[j], limits[0].0, limits[0].1, limits[1].0, limits[1].1
            ));
        }
    }
    let (fast, took) = within(Duration::from_secs(900), start);
    verdict(ok && fast, format!("{}; {took}", details.join("; ")))
}

fn time_it(mut f: impl FnMut()) -> f64 {
    (0..3)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .fold(f64::MAX, f64::min)
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn complexity_contract() -> Verdict {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| {
        let sizes = [250usize, 500, 1000];
        let mut times = Vec::new();
        for &n in &sizes {
            let g = random_connected(&RandomGraphSpec::new(n, 0.5, 3)).unwrap();
            times.push(time_it(|| {
                let m = RspModel::new(&g, W, 1.0).unwrap();
                m.simple_betweenness().unwrap();
            }));
        }
        let p = slope(
            &sizes.iter().map(|&n| (n as f64).ln()).collect::<Vec<_>>(),
            &times.iter().map(|t| t.ln()).collect::<Vec<_>>(),
        );

        let n = 150;
        let mut edge_rows = Vec::new();
        for density in [0.1, 0.2, 0.4] {
            let g = random_connected(&RandomGraphSpec::new(n, density, 4)).unwrap();
            let m = RspModel::new(&g, W, 1.0).unwrap();
            let t = time_it(|| {
                m.net_betweenness().unwrap();
            });
            edge_rows.push((g.edges().count() as f64, t));
        }
        let (m0, t0) = edge_rows[0];
        let ratios: Vec<f64> = edge_rows.iter().map(|(m, t)| (t / t0) / (m / m0)).collect();
        let linear = ratios.iter().all(|r| (0.5..=2.0).contains(r));
        verdict(
            (2.5..=3.5).contains(&p) && linear && times[2] < 300.0,
            format!(
                "Algorithm 1 times {:.3}/{:.3}/{:.3}s at n=250/500/1000, fitted exponent {p:.2} (want 2.5..3.5); \
                 Algorithm 2 edge loop at n={n}, m={:.0}/{:.0}/{:.0}: time/m ratios {:.2}/{:.2}/{:.2} (want 0.5..2)",
                times[0],
                times[1],
                times[2],
                edge_rows[0].0,
                edge_rows[1].0,
                edge_rows[2].0,
                ratios[0],
                ratios[1],
                ratios[2]
            ),
        )
    })
}

fn determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("rspbet-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| -> Option<(Vec<u8>, Vec<u8>)> {
        let prefix = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_rspbet"))
            .args([
                "--threads",
                "1",
                "sweep",
                "--generate",
                "sbm:20,20,20:0.3:0.03",
                "--seed",
                "5",
            ])
            .args(["--measure", "rsp-net", "--beta", "0.01", "--beta", "1", "--out"])
            .arg(&prefix)
            .status()
            .ok()?;
        if !status.success() {
            return None;
        }
        // the manifest names its own output paths, so compare with the prefix normalized
        let json = std::fs::read_to_string(dir.join(format!("{name}.json"))).ok()?;
        let csv = std::fs::read(dir.join(format!("{name}.csv"))).ok()?;
        Some((csv, json.replace(prefix.to_str()?, "PREFIX").into_bytes()))
    };
    let first = run("first");
    let second = run("second");
    let _ = std::fs::remove_dir_all(&dir);
    match (first, second) {
        (Some(a), Some(b)) => verdict(
            a == b,
            format!(
                "two --threads 1 sweeps: CSV identical {}, JSON identical {}",
                a.0 == b.0,
                a.1 == b.1
            ),
        ),
        _ => verdict(false, "CLI run failed"),
    }
}

fn main() {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check); 8] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 shortest-path limit", shortest_path_limit),
        ("3 random-walk limit", random_walk_limit),
        ("4 tree invariance", tree_invariance),
        ("5 three-community pattern", three_community_pattern),
        ("6 community trend", community_trend),
        ("7 complexity", complexity_contract),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check();
        println!("[{}] {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
