use actorkit::{catalog, external_weak_actor, nullspace_basis, usga, Field, Matrix, Preset, Variety};
use criterion::{criterion_group, criterion_main, Criterion};

fn nullspace(c: &mut Criterion) {
    let q = Field::Rational;
    let m = Matrix::from_columns(
        q,
        24,
        &(0..32).map(|j| (0..24).map(|i| q.from_i64(((i * 7 + j * 3) % 11) as i64 - 5)).collect()).collect::<Vec<_>>(),
    );
    c.bench_function("nullspace 24x32 over Q", |b| b.iter(|| nullspace_basis(&m)));
}

fn octonion_actor(c: &mut Criterion) {
    let o = catalog::octonions(Field::Rational);
    let alt = Variety::preset(Preset::Alt);
    let mut g = c.benchmark_group("actor");
    g.sample_size(10);
    g.bench_function("E(octonions) in alt", |b| b.iter(|| external_weak_actor(&o, &alt).unwrap()));
    g.bench_function("E(M2) in assoc", |b| {
        let m2 = catalog::matrix_algebra(Field::Rational);
        let assoc = Variety::preset(Preset::Assoc);
        b.iter(|| external_weak_actor(&m2, &assoc).unwrap())
    });
    g.finish();
}

fn poisson_actor(c: &mut Criterion) {
    let m2 = catalog::matrix_poisson(Field::Rational);
    let mut g = c.benchmark_group("usga");
    g.sample_size(10);
    g.bench_function("[M2] commutator bracket", |b| b.iter(|| usga(&m2).unwrap()));
    g.finish();
}

criterion_group!(benches, nullspace, octonion_actor, poisson_actor);
criterion_main!(benches);
