use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use vbraid::gpv::ideal_basis;
use vbraid::{build_presentation, omega, rewrite, Family, Target};
use vbraid_bench::kernel_pool;

fn rewriting(c: &mut Criterion) {
    let mut g = c.benchmark_group("rewrite");
    for n in [3, 5] {
        for target in [Target::H, Target::VP] {
            let pool = kernel_pool(n, target);
            g.bench_with_input(BenchmarkId::new(target.map_name(), n), &pool, |b, pool| {
                b.iter(|| pool.iter().map(|w| rewrite(w, target).unwrap().len()).sum::<usize>())
            });
        }
    }
    g.finish();
    let pool = kernel_pool(4, Target::VP);
    c.bench_function("omega n=4", |b| b.iter(|| pool.iter().map(|w| omega(w).pure.len()).sum::<usize>()));
}

fn ideals(c: &mut Criterion) {
    let mut g = c.benchmark_group("ideal basis");
    g.sample_size(10);
    for (n, d) in [(3, 3), (4, 3)] {
        let p = build_presentation(Family::VP, n).unwrap();
        g.bench_with_input(BenchmarkId::new(format!("VP{n}"), d), &d, |b, &d| b.iter(|| ideal_basis(&p, d).rank()));
    }
    g.finish();
}

criterion_group!(benches, rewriting, ideals);
criterion_main!(benches);
