use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use projmet_core::family::{hamming, phase_rotation, rank};
use projmet_core::isometry::aut_group;
use projmet_core::matroid::ball_sizes_via_extended_matroid;
use projmet_core::parent::coset_leader_weight_distribution;
use projmet_core::weight::{projective_weight, weight_table};
use projmet_core::{Budget, FiniteField, FqVector, ParentFunction, SpanningFamily};

fn field(q: u64) -> FiniteField {
    FiniteField::with_order(q).unwrap()
}

fn families() -> Vec<(&'static str, SpanningFamily)> {
    vec![
        ("phase_rotation:12/F2", phase_rotation(&field(2), 12).unwrap()),
        ("rank:3,3/F2", rank(&field(2), 3, 3).unwrap()),
        ("hamming:7/F3", hamming(&field(3), 7).unwrap()),
        ("phase_rotation:5/F4", phase_rotation(&field(4), 5).unwrap()),
    ]
}

fn bfs_tables(c: &mut Criterion) {
    let b = Budget::default();
    let mut g = c.benchmark_group("weight_table");
    for (name, fam) in families() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &fam, |bench, fam| {
            bench.iter(|| weight_table(black_box(fam), &b).unwrap())
        });
    }
    g.finish();
}

fn single_weight(c: &mut Criterion) {
    let b = Budget::default();
    let f2 = field(2);
    let fam = rank(&f2, 4, 4).unwrap();
    let x = FqVector::new(&f2, (0..16).map(|i| (i % 5 == 0) as u16).collect()).unwrap();
    c.bench_function("projective_weight rank:4,4 identity", |bench| {
        bench.iter(|| projective_weight(black_box(&fam), black_box(&x), &b).unwrap())
    });
}

fn coset_distribution(c: &mut Criterion) {
    let b = Budget::default();
    let pc = ParentFunction::new(&rank(&field(2), 2, 3).unwrap()).parent_code();
    c.bench_function("coset distribution rank:2,3/F2", |bench| {
        bench.iter(|| coset_leader_weight_distribution(black_box(&pc), &b).unwrap())
    });
}

fn matroid_balls(c: &mut Criterion) {
    let b = Budget::default();
    let fam = phase_rotation(&field(3), 4).unwrap();
    c.bench_function("extended-matroid ball t=2 phase_rotation:4/F3", |bench| {
        bench.iter(|| ball_sizes_via_extended_matroid(black_box(&fam), 2, &b).unwrap())
    });
}

fn automorphisms(c: &mut Criterion) {
    let b = Budget::default();
    let fam = phase_rotation(&field(2), 4).unwrap();
    c.bench_function("aut_group phase_rotation:4/F2", |bench| bench.iter(|| aut_group(black_box(&fam), &b).unwrap()));
}

criterion_group!(benches, bfs_tables, single_weight, coset_distribution, matroid_balls, automorphisms);
criterion_main!(benches);
