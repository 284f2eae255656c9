use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use crown_bench::{matrix, sample};
use crown_core::curves::{dehn_twist, minimal_position};
use crown_core::grading::build_grading_system;
use crown_core::lattice::{hnf, snf, solve_sparse};
use crown_core::salient_set;

fn normal_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_forms");
    for n in [8, 16, 32] {
        let m = matrix(n, n + 2, n as u64);
        g.bench_with_input(BenchmarkId::new("hnf", n), &m, |b, m| b.iter(|| hnf(black_box(m))));
        g.bench_with_input(BenchmarkId::new("snf", n), &m, |b, m| b.iter(|| snf(black_box(m))));
    }
    g.finish();
}

fn grading(c: &mut Criterion) {
    let mut g = c.benchmark_group("grading");
    for (genus, k) in [(2, 4), (3, 6), (4, 8)] {
        let d = sample(genus, k, 1).diagram;
        let id = format!("g{genus}k{k}x{}", d.crossing_count());
        g.bench_with_input(BenchmarkId::new("build", &id), &d, |b, d| b.iter(|| build_grading_system(black_box(d))));
        let sys = build_grading_system(&d).to_sparse();
        g.bench_with_input(BenchmarkId::new("solve", &id), &sys, |b, s| b.iter(|| solve_sparse(black_box(s))));
        g.bench_with_input(BenchmarkId::new("salient", &id), &d, |b, d| b.iter(|| salient_set(black_box(d))));
    }
    g.finish();
}

fn curves(c: &mut Criterion) {
    let s = sample(3, 5, 4);
    let (a, t) = (&s.curves[0], &s.curves[1]);
    let mut sys = s.curves.clone();
    sys[1] = dehn_twist(&s.model, a, &dehn_twist(&s.model, a, t, 1).unwrap(), -1).unwrap();
    c.bench_function("twist_g3", |b| b.iter(|| dehn_twist(&s.model, black_box(a), black_box(t), 1)));
    c.bench_function("minimal_position_g3", |b| b.iter(|| minimal_position(&s.model, black_box(&sys))));
}

criterion_group!(benches, normal_forms, grading, curves);
criterion_main!(benches);
