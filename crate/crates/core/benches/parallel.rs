//! Sequential against rayon execution on the independent-block workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use colorlie::catalog;
use colorlie::cohomology::{cohomology_dims, DegreeFilter};
use colorlie::colorlie::{validate_algebra_with, Cocycle2};
use colorlie::enveloping::EnvelopingAlgebra;
use colorlie::hopf::verify_hopf;
use colorlie::repmodule::{adjoint_truncated, GradedModule};
use colorlie::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn bench(c: &mut Criterion) {
    let sl2 = EnvelopingAlgebra::new(catalog::sl2(), Cocycle2::zero()).unwrap();
    let adjoint = adjoint_truncated(&sl2, 2).unwrap();
    let h3 = catalog::heisenberg();
    let trivial = GradedModule::trivial(&h3);
    let (weyl_lie, weyl_omega) = catalog::weyl_parts();
    let weyl = EnvelopingAlgebra::new(weyl_lie, weyl_omega).unwrap();

    let mut g = c.benchmark_group("exec");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(
            BenchmarkId::new("validate_algebra/sl2", name),
            &exec,
            |b, &e| b.iter(|| validate_algebra_with(sl2.lie(), e)),
        );
        g.bench_with_input(BenchmarkId::new("overlaps/weyl", name), &exec, |b, &e| {
            b.iter(|| weyl.check_overlaps_with(e))
        });
        g.bench_with_input(BenchmarkId::new("cohomology/h3", name), &exec, |b, &e| {
            b.iter(|| cohomology_dims(&h3, &trivial, 3, DegreeFilter::All, e).unwrap())
        });
        g.bench_with_input(
            BenchmarkId::new("cohomology/sl2_adjoint", name),
            &exec,
            |b, &e| {
                b.iter(|| {
                    cohomology_dims(sl2.lie(), &adjoint, 3, DegreeFilter::Identity, e).unwrap()
                })
            },
        );
        g.bench_with_input(BenchmarkId::new("hopf/sl2", name), &exec, |b, &e| {
            b.iter(|| verify_hopf(&sl2, 3, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
