use criterion::{black_box, criterion_group, criterion_main, Criterion};
use multisym::syzygy::{psi, rewrite_product};
use multisym::trace::random_rat_matrix;
use multisym::{fundamental_identity_rat, s4, BasedAlgebra, RatMatrix, WordMultiset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_psi(c: &mut Criterion) {
    let alg = BasedAlgebra::polynomial(2);
    let mu = |texts: &[&str]| -> WordMultiset {
        texts.iter().map(|t| alg.parse_word(t).unwrap()).collect()
    };
    let m3 = mu(&["x", "x*y", "y^2", "x^2"]);
    let m4 = mu(&["x", "y", "x*y", "x^2", "y^2"]);
    c.bench_function("psi n=3 height-4", |b| {
        b.iter(|| psi(&alg, 3, black_box(&m3)).unwrap())
    });
    c.bench_function("psi n=4 height-5", |b| {
        b.iter(|| psi(&alg, 4, black_box(&m4)).unwrap())
    });
}

fn bench_rewrite(c: &mut Criterion) {
    let alg = BasedAlgebra::polynomial(2);
    let mu: WordMultiset = ["x", "y", "x*y", "x^2", "y^2", "x"]
        .iter()
        .map(|t| alg.parse_word(t).unwrap())
        .collect();
    c.bench_function("rewrite height-6 product, n=3", |b| {
        b.iter(|| rewrite_product(&alg, 3, black_box(&mu)).unwrap())
    });
}

fn bench_poly_mul(c: &mut Criterion) {
    let alg = BasedAlgebra::polynomial(2);
    let mu: WordMultiset = ["x", "y", "x*y", "x^2"]
        .iter()
        .map(|t| alg.parse_word(t).unwrap())
        .collect();
    c.bench_function("bracket product expansion, n=4", |b| {
        b.iter(|| alg.bracket_product(4, black_box(&mu)).unwrap())
    });
}

fn bench_s4(c: &mut Criterion) {
    c.bench_function("pairs-ring kernel report, degree <= 8", |b| {
        b.iter(|| s4::kernel_report(black_box(8)))
    });
    c.bench_function("graph classification", |b| {
        b.iter(s4::isomorphism_classes)
    });
}

fn bench_trace_identity(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 5;
    let y: Vec<RatMatrix> = (0..=n).map(|_| random_rat_matrix(n, &mut rng)).collect();
    c.bench_function("trace identity at rational 5x5 tuple", |b| {
        b.iter(|| fundamental_identity_rat(n, black_box(&y)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_psi,
    bench_rewrite,
    bench_poly_mul,
    bench_s4,
    bench_trace_identity
);
criterion_main!(benches);
