use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use orbitcat_core::mesh::ZQVertex;
use orbitcat_core::{DerivedCategory, FunctorWord, MeshCategory, Oracle, OrbitCategory, Quiver};

fn mesh_functor(c: &mut Criterion) {
    for (name, q) in [
        ("A5", Quiver::linear_a(5)),
        ("D6", Quiver::dynkin_d(6)),
        ("E8", Quiver::dynkin_e(8)),
    ] {
        c.bench_function(&format!("mesh hom functor {name}"), |b| {
            b.iter(|| {
                let mesh = MeshCategory::new(q.clone()).unwrap();
                black_box(mesh.hom_dim(ZQVertex::new(0, 1), ZQVertex::new(4, 2)).unwrap())
            })
        });
    }
}

fn oracle_window(c: &mut Criterion) {
    let dc = DerivedCategory::new(Quiver::dynkin_d(4)).unwrap();
    let objects = dc.window(-2..=2);
    c.bench_function("rep oracle window D4", |b| {
        b.iter(|| {
            let mut total = 0;
            for x in &objects {
                for y in &objects {
                    total += dc.hom_dim(Oracle::Rep, x, y).unwrap();
                }
            }
            black_box(total)
        })
    });
}

fn orbit(c: &mut Criterion) {
    let word = FunctorWord::parse("t^-1*S").unwrap();
    c.bench_function("cluster A4 end algebra", |b| {
        b.iter(|| {
            let oc = OrbitCategory::new(Quiver::linear_a(4), word.clone()).unwrap();
            let objects = oc.objects().unwrap().to_vec();
            black_box(oc.end_algebra(&objects.into()).unwrap().dim())
        })
    });
    c.bench_function("cluster A4 cy probe", |b| {
        b.iter(|| {
            let oc = OrbitCategory::new(Quiver::linear_a(4), word.clone()).unwrap();
            black_box(oc.cy_probe(6).unwrap().dimension)
        })
    });
}

criterion_group!(benches, mesh_functor, oracle_window, orbit);
criterion_main!(benches);
