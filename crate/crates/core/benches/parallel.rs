//! Single-thread pool against the default pool on the cube boundary. Built
//! without the `parallel` feature, only the sequential path is measured.

use std::hint::black_box;

use cellmac_core::cm::is_cm_cell;
use cellmac_core::hexagon::build_hexagon;
use cellmac_core::homology::enriched_homology_table;
use cellmac_core::{builtins, CellComplex, Field};
use criterion::{criterion_group, criterion_main, Criterion};

type Work = fn(&CellComplex);

fn workloads() -> [(&'static str, Work); 3] {
    [
        ("enriched_homology", |c| {
            black_box(enriched_homology_table(c, Field::Rational));
        }),
        ("hexagon", |c| {
            black_box(build_hexagon(c, Field::Rational));
        }),
        ("is_cm", |c| {
            black_box(is_cm_cell(c, Field::Rational));
        }),
    ]
}

#[cfg(feature = "parallel")]
fn compare(c: &mut Criterion) {
    let cube = builtins::cube_boundary();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    for (name, work) in workloads() {
        let mut g = c.benchmark_group(name);
        g.sample_size(20);
        g.bench_function("single", |b| b.iter(|| one.install(|| work(&cube))));
        g.bench_function(criterion::BenchmarkId::new("pool", all.current_num_threads()), |b| {
            b.iter(|| all.install(|| work(&cube)))
        });
        g.finish();
    }
}

#[cfg(not(feature = "parallel"))]
fn compare(c: &mut Criterion) {
    let cube = builtins::cube_boundary();
    for (name, work) in workloads() {
        let mut g = c.benchmark_group(name);
        g.sample_size(20);
        g.bench_function("sequential", |b| b.iter(|| work(&cube)));
        g.finish();
    }
}

criterion_group!(benches, compare);
criterion_main!(benches);
