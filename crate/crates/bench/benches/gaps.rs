use criterion::{BenchmarkId, Criterion};
use gepgap::coset::{regularity_defect, DoubleCosetPartition};
use gepgap::perm::Subgroup;
use gepgap::processes::{
    block_product, extended_graph, gep_graph, interchange_group, last_point_stabilizer, BaseGraph, GepConfig, RateMode,
};
use gepgap::verify::random_graph;
use std::hint::black_box;

fn ip_spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("ip_spectrum");
    group.sample_size(10);
    for n in [4, 5, 6] {
        let cay = interchange_group(&random_graph(n, 1).unwrap()).cayley_graph().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &cay, |b, cay| {
            b.iter(|| cay.spectrum().unwrap().gap());
        });
    }
    group.finish();
}

fn partition(c: &mut Criterion) {
    let x = BaseGraph::complete(3, 1.0).unwrap();
    let eg = extended_graph(&x, &[2, 2, 2]).unwrap();
    let blocks = block_product(&eg).unwrap();
    let last = last_point_stabilizer(6).unwrap();
    c.bench_function("partition_n6", |b| {
        b.iter(|| DoubleCosetPartition::new(black_box(&blocks), &last).unwrap().len());
    });

    let group = interchange_group(eg.graph());
    let p = DoubleCosetPartition::new(&blocks, &last).unwrap();
    c.bench_function("regularity_defect_n6", |b| {
        b.iter(|| regularity_defect(black_box(&group), &p).unwrap());
    });
    let trivial = DoubleCosetPartition::new(&Subgroup::trivial(6), &last).unwrap();
    c.bench_function("regularity_defect_n6_trivial_left", |b| {
        b.iter(|| regularity_defect(black_box(&group), &trivial).unwrap());
    });
}

fn gep(c: &mut Criterion) {
    let mut group = c.benchmark_group("gep_graph");
    for (n, k, l) in [(3, 3, 4), (4, 2, 4), (4, 3, 6)] {
        let cfg = GepConfig::uniform(random_graph(n, 3).unwrap(), k, l).unwrap();
        let id = format!("n{n}_k{k}_l{l}");
        group.bench_with_input(BenchmarkId::new("build", &id), &cfg, |b, cfg| {
            b.iter(|| gep_graph(cfg, RateMode::Normal).unwrap().len());
        });
        let g = gep_graph(&cfg, RateMode::Normal).unwrap();
        group.bench_with_input(BenchmarkId::new("gap", &id), &g, |b, g| {
            b.iter(|| g.spectrum().unwrap().gap());
        });
    }
    group.finish();
}

criterion::criterion_group!(benches, ip_spectrum, partition, gep);
criterion::criterion_main!(benches);
