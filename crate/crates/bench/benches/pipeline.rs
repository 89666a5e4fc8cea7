//! End-to-end timings of the four constructions: derivative closure,
//! minimization, syntactic monoid, and the full cross-verification bridge.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use regulus::automata::{minimal_automaton, naive_derivative_automaton};
use regulus::bridge::{four_witnesses, verify_bridge};
use regulus::monoid::syntactic_monoid;
use regulus_bench::{languages, small_languages};

fn bench_minimal_automaton(c: &mut Criterion) {
    let corpus = languages();
    c.bench_function("minimal_automaton/corpus-50", |b| {
        b.iter(|| {
            for language in &corpus {
                black_box(minimal_automaton(language));
            }
        })
    });
}

fn bench_minimize_naive(c: &mut Criterion) {
    let corpus = languages();
    let naive: Vec<_> = corpus.iter().map(naive_derivative_automaton).collect();
    c.bench_function("minimize/naive-closure-50", |b| {
        b.iter(|| {
            for automaton in &naive {
                black_box(automaton.minimize());
            }
        })
    });
}

fn bench_equivalence(c: &mut Criterion) {
    let corpus = languages();
    let minimal: Vec<_> = corpus.iter().map(minimal_automaton).collect();
    c.bench_function("equivalent/adjacent-pairs-49", |b| {
        b.iter(|| {
            for pair in minimal.windows(2) {
                black_box(pair[0].equivalent(&pair[1]).expect("same alphabet"));
            }
        })
    });
}

fn bench_syntactic_monoid(c: &mut Criterion) {
    let corpus = small_languages();
    c.bench_function("syntactic_monoid/corpus-10", |b| {
        b.iter(|| {
            for language in &corpus {
                black_box(syntactic_monoid(language));
            }
        })
    });
}

fn bench_bridge(c: &mut Criterion) {
    let corpus = small_languages();
    c.bench_function("bridge/verify-10", |b| {
        b.iter(|| {
            for language in &corpus {
                let witnesses = four_witnesses(language);
                black_box(verify_bridge(&witnesses, language));
            }
        })
    });
}

criterion_group!(
    benches,
    bench_minimal_automaton,
    bench_minimize_naive,
    bench_equivalence,
    bench_syntactic_monoid,
    bench_bridge
);
criterion_main!(benches);
