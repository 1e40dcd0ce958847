use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use stringalg::bridges::OrderMode;
use stringalg::fixtures;

const NAMES: [&str; 3] = ["lambda2", "gp23", "stable_omega"];

fn strings(c: &mut Criterion) {
    let mut g = c.benchmark_group("strings");
    for name in NAMES {
        let a = fixtures::by_name(name).unwrap();
        g.bench_with_input(BenchmarkId::new("max_len_8", name), &a, |b, a| {
            b.iter(|| black_box(a.enumerate_strings(8, false)).len())
        });
    }
    g.finish();
}

fn bands(c: &mut Criterion) {
    let mut g = c.benchmark_group("bands");
    for name in NAMES {
        let a = fixtures::by_name(name).unwrap();
        g.bench_with_input(BenchmarkId::new("prime", name), &a, |b, a| {
            b.iter(|| black_box(a.enumerate_prime_bands_upto(a.prime_band_bound())).len())
        });
        g.bench_with_input(BenchmarkId::new("band_free", name), &a, |b, a| {
            b.iter(|| {
                black_box(a.enumerate_band_free_upto(a.band_free_bound()))
                    .strings
                    .len()
            })
        });
    }
    g.finish();
}

fn bridges(c: &mut Criterion) {
    let mut g = c.benchmark_group("bridges");
    for name in NAMES {
        let a = fixtures::by_name(name).unwrap();
        a.prime_bands();
        g.bench_with_input(BenchmarkId::new("data", name), &a, |b, a| {
            b.iter(|| {
                black_box(a.compute_bridge_data(OrderMode::Closure))
                    .half
                    .len()
            })
        });
        let words = a.enumerate_strings(6, false);
        g.bench_with_input(BenchmarkId::new("generating_paths", name), &a, |b, a| {
            b.iter(|| {
                words
                    .iter()
                    .filter_map(|u| a.find_generating_path(u))
                    .count()
            })
        });
    }
    g.finish();
}

fn ranks(c: &mut Criterion) {
    let mut g = c.benchmark_group("ranks");
    g.sample_size(10);
    for name in ["gp23", "stable_omega_plus_two"] {
        let a = fixtures::by_name(name).unwrap();
        g.bench_with_input(BenchmarkId::new("ss_audit_5", name), &a, |b, a| {
            b.iter(|| black_box(a.ss_audit(5)).descriptors)
        });
    }
    g.finish();
}

criterion_group!(benches, strings, bands, bridges, ranks);
criterion_main!(benches);
