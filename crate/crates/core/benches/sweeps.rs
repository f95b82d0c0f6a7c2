use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use moore_kit::acceptance::brute_force_homs;
use moore_kit::chain::Theory;
use moore_kit::corpus::{crossed_module_corpus, moore_corpus};
use moore_kit::crossed::mutate::{mutation_sweep, Structure};
use moore_kit::group::library::groups_up_to_order_12;
use moore_kit::group::FiniteGroup;
use moore_kit::par::{self, ExecMode};
use moore_kit::torsion::tt_axioms_check;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn hom_oracle(c: &mut Criterion) {
    let groups: Vec<FiniteGroup> = groups_up_to_order_12().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 6).collect();
    let pairs: Vec<(usize, usize)> = (0..groups.len()).flat_map(|i| (0..groups.len()).map(move |j| (i, j))).collect();
    let mut group = c.benchmark_group("hom_oracle_order_6");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::map(mode, &pairs, |&(i, j)| brute_force_homs(&groups[i], &groups[j]).len()).into_iter().sum::<usize>())
        });
    }
    group.finish();
}

fn tt_axioms(c: &mut Criterion) {
    let corpus = moore_corpus().unwrap();
    let mut group = c.benchmark_group("tt_axioms_mu_ngeq_1");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| tt_axioms_check(black_box(Theory::MuNgeq(1)), &corpus, mode).unwrap().homs)
        });
    }
    group.finish();
}

fn mutations(c: &mut Criterion) {
    let base = Structure::Crossed(crossed_module_corpus().unwrap().swap_remove(0).1);
    let mut group = c.benchmark_group("mutation_sweep_100");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| mutation_sweep(&base, 100, 7, mode).unwrap().detected)
        });
    }
    group.finish();
}

criterion_group!(benches, hom_oracle, tt_axioms, mutations);
criterion_main!(benches);
