use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use cm_core::cherednik::build_dunkl_rep;
use cm_core::cm::{fiber_solve, validate, UpsilonTarget};
use cm_core::sample;
use cm_core::tau::{sato_wave, tau_from_cm, wave_from_cm};
use cm_core::{ApproxScalar, ExactScalar, Scalar};

fn bench_validate(c: &mut Criterion) {
    let mut rng = sample::rng(11);
    let pairs: Vec<_> = (0..16).map(|_| sample::pair(&mut rng, 5, false)).collect();
    c.bench_function("validate_n5", |b| {
        let mut i = 0usize;
        b.iter(|| {
            let p = &pairs[i % pairs.len()];
            i += 1;
            validate(&p.x, &p.z).unwrap()
        })
    });
}

fn bench_tau(c: &mut Criterion) {
    let mut rng = sample::rng(12);
    let p = sample::pair(&mut rng, 4, false);
    c.bench_function("tau_n4_m4", |b| b.iter(|| tau_from_cm(&p, 4).unwrap()));
}

fn bench_wave(c: &mut Criterion) {
    let mut rng = sample::rng(13);
    let p = sample::pair(&mut rng, 3, false);
    c.bench_function("wave_n3_m6", |b| b.iter(|| wave_from_cm(&p, 6).unwrap()));
    c.bench_function("sato_n3_m6", |b| b.iter(|| sato_wave(&p, 6).unwrap()));
}

fn bench_fiber(c: &mut Criterion) {
    let mut rng = sample::rng(14);
    let spec = |rng: &mut _| -> Vec<ApproxScalar> {
        sample::distinct_rationals(rng, 3, 4)
            .iter()
            .map(|v| ApproxScalar(v.to_complex()))
            .collect()
    };
    let target = UpsilonTarget::new(spec(&mut rng), spec(&mut rng)).unwrap();
    c.bench_function("fiber_solve_n3", |b| {
        b.iter_batched(
            || target.clone(),
            |t| fiber_solve(&t, 5).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_dunkl(c: &mut Criterion) {
    let mut rng = sample::rng(15);
    let lam = sample::distinct_rationals(&mut rng, 3, 4);
    let mu: Vec<ExactScalar> = (0..3).map(|_| sample::rational(&mut rng, 4)).collect();
    c.bench_function("dunkl_build_n3", |b| {
        b.iter(|| build_dunkl_rep(&lam, &mu, &ExactScalar::one()).unwrap())
    });
}

criterion_group!(benches, bench_validate, bench_tau, bench_wave, bench_fiber, bench_dunkl);
criterion_main!(benches);
