use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frobsum::bruteforce::{bruteforce_g1_dim, DEFAULT_BUDGET};
use frobsum::decomposition::square_decomp;
use frobsum::ncr::hom_hilbert_matrix;
use frobsum::{par, Params};

fn both<F: Fn() + Sync + Send>(c: &mut Criterion, group: &str, label: &str, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("parallel", label), |b| b.iter(&f));
    g.bench_function(BenchmarkId::new("sequential", label), |b| {
        b.iter(|| par::single_threaded(&f))
    });
    g.finish();
}

fn engines(c: &mut Criterion) {
    let params = Params::new(8, 7).unwrap();
    both(c, "square_decomp", "n8_p7", || {
        square_decomp(&params).unwrap();
    });
    both(c, "bruteforce_g1_dim", "n4_p3_d12", || {
        bruteforce_g1_dim(3, 4, 12, DEFAULT_BUDGET).unwrap();
    });
    both(c, "hom_hilbert_matrix", "n8_d80", || {
        hom_hilbert_matrix(8, 80).unwrap();
    });
}

criterion_group!(benches, engines);
criterion_main!(benches);
