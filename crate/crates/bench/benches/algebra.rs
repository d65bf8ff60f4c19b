use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unitri_core::hnn::fp_image;
use unitri_core::{HnnWord, UniTri};

fn compose(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs: Vec<(UniTri, UniTri)> = (0..64)
        .map(|_| {
            (
                UniTri::random_with(&mut rng, 6, 12).unwrap(),
                UniTri::random_with(&mut rng, 6, 12).unwrap(),
            )
        })
        .collect();
    c.bench_function("unitri/compose rank 6", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                std::hint::black_box(x.compose(y).unwrap());
            }
        })
    });
    c.bench_function("unitri/inverse rank 6", |b| {
        b.iter(|| {
            for (x, _) in &pairs {
                std::hint::black_box(x.inverse());
            }
        })
    });
    c.bench_function("unitri/endo oracle rank 6", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                std::hint::black_box(x.to_endo().compose(&y.to_endo()).unwrap());
            }
        })
    });
}

fn britton(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let words: Vec<HnnWord> = (0..64)
        .map(|_| HnnWord::random_with(&mut rng, 2, 8, 10).unwrap())
        .collect();
    c.bench_function("hnn/britton reduce", |b| {
        b.iter(|| {
            for w in &words {
                std::hint::black_box(w.britton_reduce());
            }
        })
    });
    c.bench_function("hnn/fp image", |b| {
        b.iter(|| {
            for w in &words {
                std::hint::black_box(fp_image(w).unwrap());
            }
        })
    });
}

criterion_group!(benches, compose, britton);
criterion_main!(benches);
