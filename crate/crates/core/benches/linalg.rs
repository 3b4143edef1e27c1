use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dkoszul::field::Evaluated;
use dkoszul::hecke::{build_standard_r, Side, SymKind, TensorAlgebra};
use dkoszul::koszul::Koszul;
use dkoszul::par::Strategy;

fn algebra(strategy: Strategy) -> TensorAlgebra<Evaluated> {
    TensorAlgebra::new(&build_standard_r(3, 1).unwrap(), Evaluated::default())
        .unwrap()
        .with_strategy(strategy)
}

fn strategies() -> [(&'static str, Strategy); 2] {
    [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)]
}

fn products_and_ranks(c: &mut Criterion) {
    let t = algebra(Strategy::Sequential);
    let x = t.symmetrizer(Side::Co, SymKind::Sym, 4).unwrap();
    let y = t.symmetrizer(Side::Co, SymKind::Ext, 4).unwrap();
    let mut g = c.benchmark_group("degree4_symmetrizers");
    g.sample_size(10);
    for (name, s) in strategies() {
        g.bench_with_input(BenchmarkId::new("mul", name), &s, |b, &s| {
            b.iter(|| black_box(x.mul_with(&y, s)))
        });
        g.bench_with_input(BenchmarkId::new("rank", name), &s, |b, &s| {
            b.iter(|| black_box(x.rank_with(s)))
        });
    }
    g.finish();
}

fn koszul_maps(c: &mut Criterion) {
    let mut g = c.benchmark_group("koszul_identities");
    g.sample_size(10);
    for (name, s) in strategies() {
        g.bench_with_input(BenchmarkId::new("pq_identity_2_2", name), &s, |b, &s| {
            b.iter(|| {
                let kz = Koszul::new(algebra(s));
                black_box(kz.verify_ct60(2, 2).unwrap())
            })
        });
        g.bench_with_input(BenchmarkId::new("image_d_2_2", name), &s, |b, &s| {
            b.iter(|| {
                let kz = Koszul::new(algebra(s));
                black_box(kz.image_d(2, 2).unwrap().sub.dim())
            })
        });
    }
    g.finish();
}

criterion_group!(benches, products_and_ranks, koszul_maps);
criterion_main!(benches);
