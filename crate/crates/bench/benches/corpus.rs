//! Benchmarks over the bundled examples: parsing, solving, each causation
//! definition, responsibility verdicts, degree, and the full corpus sweep.

use criterion::{criterion_group, criterion_main, Criterion};
use resp_core::causation::{decide_cause, CausationDef, Event, Limits};
use resp_core::dsl::{parse_document, parse_model, parse_scenario, serialize};
use resp_core::responsibility::{degree_of_responsibility, responsible, ResponsibilityDef};
use resp_core::{corpus, Rational};
use std::hint::black_box;

fn fixture(name: &str) -> &'static str {
    let entry = corpus::entry(name).unwrap();
    entry.scenario.or(entry.model).unwrap()
}

fn bench_parse(c: &mut Criterion) {
    let source = fixture("ex5_bombing");
    c.bench_function("parse_scenario/ex5_bombing", |b| {
        b.iter(|| parse_scenario(black_box(source)).unwrap())
    });
    let document = parse_document(source).unwrap();
    c.bench_function("serialize/ex5_bombing", |b| {
        b.iter(|| serialize(black_box(&document)))
    });
}

fn bench_solve(c: &mut Criterion) {
    let (model, ctx) = parse_model(fixture("ex2_latepreemption")).unwrap();
    c.bench_function("solve/ex2_latepreemption", |b| {
        b.iter(|| model.solve(black_box(&ctx)).unwrap())
    });
}

fn bench_causation(c: &mut Criterion) {
    let (model, ctx) = parse_model(fixture("ex2_latepreemption")).unwrap();
    let cause = Event::new("A1", "1");
    let effect = Event::new("V", "1");
    let limits = Limits::default();
    let mut group = c.benchmark_group("cause/ex2_latepreemption");
    for def in CausationDef::ALL {
        group.bench_function(def.as_str(), |b| {
            b.iter(|| {
                decide_cause(
                    black_box(&model),
                    black_box(&ctx),
                    &cause,
                    &effect,
                    def,
                    &limits,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_responsibility(c: &mut Criterion) {
    let scenario = parse_scenario(fixture("ex5_bombing")).unwrap();
    let setting = scenario.agent("Assassin2").unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("responsibility/ex5_bombing");
    for def in ResponsibilityDef::ALL {
        group.bench_function(def.as_str(), |b| {
            b.iter(|| responsible(black_box(setting), def, &limits).unwrap())
        });
    }
    group.finish();

    let scenario = parse_scenario(fixture("ex6_typicality")).unwrap();
    let setting = scenario.agent("Assassin1").unwrap();
    let alpha = Rational::new(1.into(), 2.into());
    c.bench_function("degree/ex6_typicality", |b| {
        b.iter(|| degree_of_responsibility(black_box(setting), &alpha, &limits).unwrap())
    });
}

fn bench_corpus(c: &mut Criterion) {
    let limits = Limits::default();
    c.bench_function("corpus/verify_all", |b| {
        b.iter(|| {
            let results = corpus::verify(black_box(&limits));
            assert!(results.iter().all(|(_, r)| r.is_ok()));
            results
        })
    });
}

criterion_group!(
    benches,
    bench_parse,
    bench_solve,
    bench_causation,
    bench_responsibility,
    bench_corpus
);
criterion_main!(benches);
