use criterion::{black_box, criterion_group, criterion_main, Criterion};
use zetacorr::drinfeld::torsion_basis;
use zetacorr::level::{build_level_data_from, solve_nu, tau_n_matrix};
use zetacorr::zeta::{scan_members, zeta_member};
use zetacorr_bench::fixture;

fn field(c: &mut Criterion) {
    let fx = fixture(3, 2, "0:1,1:1");
    let tw = &fx.s.tower;
    let a = fx.s.module.theta.clone();
    let b = fx.s.module.a[0].clone();
    c.bench_function("field mul F_3^12", |bch| bch.iter(|| tw.mul(black_box(&a), black_box(&b))));
    c.bench_function("field inv F_3^12", |bch| bch.iter(|| tw.inv(black_box(&a))));
    c.bench_function("frobenius F_3^12", |bch| bch.iter(|| tw.frobenius_q(black_box(&a), 5)));
}

fn ore(c: &mut Criterion) {
    let fx = fixture(3, 2, "0:1,1:1");
    let tw = &fx.s.tower;
    let f = fx.s.module.phi(&fx.div.p_poly(tw), tw).unwrap();
    c.bench_function("ore mul deg 4 x deg 4", |bch| bch.iter(|| black_box(&f).mul(black_box(&f), tw)));
    c.bench_function("additive kernel deg 4", |bch| bch.iter(|| black_box(&f).additive_kernel(tw)));
}

fn level(c: &mut Criterion) {
    let fx = fixture(3, 2, "0:1,1:1");
    let (tw, dm) = (&fx.s.tower, &fx.s.module);
    c.bench_function("torsion basis rank 2", |bch| bch.iter(|| torsion_basis(dm, &fx.div, tw)));
    let cp = tau_n_matrix(dm, tw);
    c.bench_function("nu solve rank 2", |bch| bch.iter(|| solve_nu(black_box(&cp), 2, tw)));
    c.bench_function("build level data rank 2", |bch| {
        bch.iter(|| build_level_data_from(dm, &fx.div, &fx.s.torsion, tw))
    });
}

fn zeta(c: &mut Criterion) {
    let fx = fixture(3, 2, "0:1,1:1");
    let tw = &fx.s.tower;
    c.bench_function("zeta member rank 2", |bch| bch.iter(|| zeta_member(black_box(&fx.x), &fx.x, tw)));
    let r1 = fixture(3, 1, "0:1,1:1");
    c.bench_function("census rank 1 q=3", |bch| bch.iter(|| scan_members(&r1.x, 1, u128::MAX, &r1.s.tower)));
    let mut group = c.benchmark_group("census rank 2");
    group.sample_size(10);
    group.bench_function("q=3 p=t(t-1)", |bch| bch.iter(|| scan_members(&fx.x, 2, u128::MAX, tw)));
    group.finish();
}

criterion_group!(benches, field, ore, level, zeta);
criterion_main!(benches);
