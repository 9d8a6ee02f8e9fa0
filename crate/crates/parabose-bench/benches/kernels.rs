use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use num_complex::Complex64;
use parabose::moments;
use parabose::oracle;
use parabose::specfun::{hyp1f1, hyp1f1_damped, hyp2f2};
use parabose::state::{self, Order, Parity};
use parabose::Method;
use parabose_bench::{bench_alphas, bench_orders};

fn bench_specfun(c: &mut Criterion) {
    let mut g = c.benchmark_group("specfun");
    g.bench_function("hyp1f1 terminating", |b| {
        b.iter(|| hyp1f1(black_box(-3.0), 1.5, black_box(5.0)).unwrap().value)
    });
    g.bench_function("hyp1f1 series z=72", |b| {
        b.iter(|| hyp1f1(black_box(-2.5), 0.5, black_box(72.0)).unwrap().value)
    });
    g.bench_function("hyp1f1 damped asymptotic", |b| {
        b.iter(|| {
            hyp1f1_damped(black_box(-1.5), 10.5, black_box(5_000.0))
                .unwrap()
                .value
        })
    });
    g.bench_function("hyp2f2 double-word z=-30", |b| {
        b.iter(|| hyp2f2(1.0, 1.0, 1.5, 2.0, black_box(-30.0)).unwrap().value)
    });
    g.bench_function("hyp2f2 dawson route z=-200", |b| {
        b.iter(|| hyp2f2(1.0, 1.0, 1.5, 2.0, black_box(-200.0)).unwrap().value)
    });
    g.finish();
}

fn bench_state(c: &mut Criterion) {
    let mut g = c.benchmark_group("state");
    let order = Order::new(5).unwrap();
    let alpha = Complex64::new(10f64.sqrt(), 0.0);
    g.bench_function("amplitude vector p=5 alpha=sqrt10", |b| {
        b.iter(|| state::FockAmplitudes::build(order, black_box(alpha)).unwrap())
    });
    g.bench_function("identity residual p=2 j=3 even", |b| {
        b.iter(|| {
            state::identity_resolution_residual(Order::new(2).unwrap(), 3, Parity::Even).unwrap()
        })
    });
    g.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    for order in bench_orders() {
        let alpha = Complex64::new(10f64.sqrt(), 0.0);
        let dim = state::truncation_dim(order, alpha) + 2;
        let ops = oracle::build_operators(order, dim);
        g.bench_with_input(
            BenchmarkId::new("displace_vacuum", order.get()),
            &ops,
            |b, ops| b.iter(|| oracle::displace_vacuum(ops, black_box(alpha)).unwrap()),
        );
    }
    g.finish();
}

fn bench_moments(c: &mut Criterion) {
    let mut g = c.benchmark_group("moments");
    for order in bench_orders() {
        for alpha in bench_alphas() {
            let id = format!("p{}_a{:.2}", order.get(), alpha.norm());
            g.bench_with_input(
                BenchmarkId::new("analytic report", &id),
                &(order, alpha),
                |b, &(order, alpha)| {
                    b.iter(|| moments::moment_report(order, alpha, Method::Analytic).unwrap())
                },
            );
        }
    }
    g.bench_function("critical alpha p=2", |b| {
        b.iter(|| moments::critical_alpha(Order::new(2).unwrap()).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_specfun,
    bench_state,
    bench_oracle,
    bench_moments
);
criterion_main!(benches);
