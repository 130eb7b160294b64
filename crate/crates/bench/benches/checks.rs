use criterion::{criterion_group, criterion_main, Criterion};
use logtk_bench::{cone, log_point, node};
use logtk_core::regcheck::{is_log_regular, kato_criterion, regularity_smoothness_crosscheck};
use logtk_core::{replay, CheckOptions, Field};
use std::hint::black_box;

fn regularity(c: &mut Criterion) {
    let opts = CheckOptions::default();
    let mut g = c.benchmark_group("regularity");
    for (name, p) in [
        ("logpoint3", log_point(3, Field::Rational)),
        ("node", node(Field::Rational)),
        ("cone", cone(Field::Rational)),
    ] {
        g.bench_function(format!("log_regular/{name}"), |b| {
            b.iter(|| is_log_regular(black_box(&p), &opts).status)
        });
        g.bench_function(format!("kato/{name}"), |b| b.iter(|| kato_criterion(black_box(&p), &opts).status));
    }
    let p = cone(Field::Prime(3));
    g.bench_function("crosscheck/cone_F3", |b| {
        b.iter(|| regularity_smoothness_crosscheck(black_box(&p), &opts).status)
    });
    g.finish();
}

fn replay_cost(c: &mut Criterion) {
    let opts = CheckOptions::default();
    let cert = is_log_regular(&node(Field::Rational), &opts).certificate;
    c.bench_function("replay/node", |b| b.iter(|| replay(black_box(&cert)).ok()));
}

criterion_group!(benches, regularity, replay_cost);
criterion_main!(benches);
