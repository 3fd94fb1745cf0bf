use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use edgeflow::boundary::{green_numeric, limit_flow, Window};
use edgeflow::metabelian::fox_flow_oracle;
use edgeflow::walk::{drift_estimate, Trajectory, Variety, WalkConfig};
use edgeflow::{mb_eval, min_word_exact, min_word_upper, placket, LatticePoint, MetabelianElement, Word};

fn long_word(d: usize, n: u64) -> Word {
    Word::new(d, Trajectory::new(1, 0, d, n).letters().collect()).unwrap()
}

fn algebra(c: &mut Criterion) {
    let w = long_word(3, 2000);
    c.bench_function("mb_eval 2000 letters d=3", |b| b.iter(|| mb_eval(black_box(&w))));
    c.bench_function("fox oracle 2000 letters d=3", |b| b.iter(|| fox_flow_oracle(black_box(&w))));
    let g = mb_eval(&w);
    c.bench_function("heuristic word 2000 letters d=3", |b| b.iter(|| min_word_upper(black_box(&g))));
}

fn geodesic(c: &mut Criterion) {
    let o = LatticePoint::origin(2);
    let flow = &placket(1, 2, &o).unwrap() + &placket(1, 2, &LatticePoint::new(vec![2, 0])).unwrap();
    let g = MetabelianElement::from_parts(o, flow).unwrap();
    c.bench_function("exact geodesic two plackets", |b| b.iter(|| min_word_exact(black_box(&g), 10).unwrap()));
}

fn walks(c: &mut Criterion) {
    let t = Trajectory::new(7, 0, 3, 100_000);
    c.bench_function("letters 1e5", |b| b.iter(|| t.letters().fold(0i64, |acc, l| acc + i64::from(l))));
    let window = Window::new(3, 5);
    c.bench_function("window flow 1e5 steps", |b| b.iter(|| limit_flow(black_box(&t), 100_000, &window)));
    let cfg = WalkConfig::new(Variety::Metabelian, 3, None).unwrap();
    c.bench_function("metabelian drift 16x1000", |b| b.iter(|| drift_estimate(&cfg, &[1000], 16, 3)));
}

fn green(c: &mut Criterion) {
    let mut group = c.benchmark_group("green");
    group.sample_size(10);
    group.bench_function("G(0,0) tol 1e-6", |b| b.iter(|| green_numeric(&LatticePoint::origin(3), 3, 1e-6).unwrap()));
    group.finish();
}

criterion_group!(benches, algebra, geodesic, walks, green);
criterion_main!(benches);
