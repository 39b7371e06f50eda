use cacc::complexity::d_sequence_with;
use cacc::evolve::{tabulate_with, TabulateOptions};
use cacc::matrices::{build_center_matrix_with, profile_with};
use cacc::{eca_from_wolfram, Exec};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn opts(exec: Exec) -> TabulateOptions {
    TabulateOptions {
        exec,
        ..TabulateOptions::default()
    }
}

fn tabulation(c: &mut Criterion) {
    let rule = eca_from_wolfram(30).unwrap();
    let mut group = c.benchmark_group("tabulate_rule30");
    group.sample_size(10);
    for n in [8u32, 10] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| tabulate_with(&rule, black_box(n), &opts(exec)).unwrap())
            });
        }
    }
    group.finish();
}

fn center_matrices(c: &mut Criterion) {
    let rule = eca_from_wolfram(110).unwrap();
    let table = tabulate_with(&rule, 10, &TabulateOptions::default()).unwrap();
    let mut group = c.benchmark_group("center_matrix_profile_n10");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let m = build_center_matrix_with(&table, 1, exec).unwrap();
                profile_with(&m, exec)
            })
        });
    }
    group.finish();
}

fn sequences(c: &mut Criterion) {
    let rule = eca_from_wolfram(57).unwrap();
    let mut group = c.benchmark_group("d_sequence_rule57_n9");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| d_sequence_with(&rule, 9, &opts(exec)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, tabulation, center_matrices, sequences);
criterion_main!(benches);
