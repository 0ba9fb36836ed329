use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rsp_core::generators::{random_connected, RandomGraphSpec};
use rsp_core::{rsp_betweenness_sweep, RspModel, TransitionPolicy};

const BETAS: [f64; 4] = [0.01, 0.1, 1.0, 10.0];

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("sequential", one), ("parallel", all)]
}

fn net_betweenness(c: &mut Criterion) {
    let mut group = c.benchmark_group("rsp_net");
    group.sample_size(10);
    for n in [60, 120] {
        let g = random_connected(&RandomGraphSpec::new(n, 0.15, 5).with_costs(3)).unwrap();
        let model = RspModel::new(&g, TransitionPolicy::Weight, 1.0).unwrap();
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(name, n), &model, |b, m| {
                b.iter(|| pool.install(|| m.net_betweenness().unwrap()))
            });
        }
    }
    group.finish();
}

fn beta_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("rsp_sweep");
    group.sample_size(10);
    let g = random_connected(&RandomGraphSpec::new(150, 0.1, 9).with_costs(3)).unwrap();
    for (name, pool) in pools() {
        group.bench_function(name, |b| {
            b.iter(|| pool.install(|| rsp_betweenness_sweep(&g, TransitionPolicy::Weight, &BETAS).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, net_betweenness, beta_sweep);
criterion_main!(benches);
