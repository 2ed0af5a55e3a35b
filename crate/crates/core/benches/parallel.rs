//! Parallel vs sequential timings for the data-parallel inner loops: edge
//! subset enumeration, the quadrature grid, and the amoeba scan. Both paths
//! compute identical exact results; only the schedule differs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ohmlab_core::combin::{crsf_sums, grove_sums};
use ohmlab_core::network::families::{gamma, torus_grid};
use ohmlab_core::par;
use ohmlab_core::rat;
use ohmlab_core::surfaces::{amoeba_sample, char_poly, free_energy_grid};

fn bench_modes(c: &mut Criterion, group: &str, mut run: impl FnMut()) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for (label, seq) in [("parallel", false), ("sequential", true)] {
        g.bench_with_input(BenchmarkId::from_parameter(label), &seq, |b, &seq| {
            par::force_sequential(seq);
            b.iter(&mut run);
            par::force_sequential(false);
        });
    }
    g.finish();
}

fn bench_crsf(c: &mut Criterion) {
    let (net, emb) = torus_grid(2, 4).unwrap();
    bench_modes(c, "crsf_sums_torus_2x4", || {
        let s = crsf_sums(&net, &emb).unwrap();
        assert!(s.total.num_terms() > 0);
    });
}

fn bench_groves(c: &mut Criterion) {
    let (net, _) = gamma(6, &[]).unwrap();
    bench_modes(c, "grove_sums_gamma6", || {
        let s = grove_sums(&net).unwrap();
        assert!(!s.total.to_string().is_empty());
    });
}

fn bench_quadrature(c: &mut Criterion) {
    let (mut net, emb) = torus_grid(2, 2).unwrap();
    net.edges[0].c = rat(3, 1);
    let cp = char_poly(&net, &emb, "bench");
    bench_modes(c, "free_energy_grid_128", || {
        let f = free_energy_grid(&cp.poly, 128);
        assert!(f.is_finite());
    });
}

fn bench_amoeba(c: &mut Criterion) {
    let (mut net, emb) = torus_grid(2, 2).unwrap();
    net.edges[0].c = rat(3, 1);
    let cp = char_poly(&net, &emb, "bench");
    bench_modes(c, "amoeba_scan_12x12", || {
        let scan = amoeba_sample(&cp.poly, 12, 2.0, 1e-8);
        assert!(scan.harnack);
    });
}

criterion_group!(benches, bench_crsf, bench_groves, bench_quadrature, bench_amoeba);
criterion_main!(benches);
