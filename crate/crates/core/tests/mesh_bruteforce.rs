//! Mesh Hom spaces checked against the definition: all paths `x -> y` in ℤQ
//! modulo the span of `u · m_z · w`, with `m_z` the mesh relator at `z`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use orbitcat_core::mesh::{zq_arrows, MeshCategory, MeshPath, ZQVertex};
use orbitcat_core::{Matrix, Quiver, Rational};

struct PathSpace {
    index: BTreeMap<Vec<ZQVertex>, usize>,
    relations: Vec<Vec<Rational>>,
}

fn paths(q: &Quiver, x: ZQVertex, y: ZQVertex) -> Vec<Vec<ZQVertex>> {
    fn go(q: &Quiver, cur: Vec<ZQVertex>, y: ZQVertex, out: &mut Vec<Vec<ZQVertex>>) {
        let last = *cur.last().unwrap();
        if last == y {
            out.push(cur.clone());
        }
        if last.p > y.p {
            return;
        }
        for w in zq_arrows(q, last).outgoing {
            let mut next = cur.clone();
            next.push(w);
            go(q, next, y, out);
        }
    }
    let mut out = Vec::new();
    go(q, vec![x], y, &mut out);
    out
}

fn path_space(q: &Quiver, x: ZQVertex, y: ZQVertex) -> PathSpace {
    let all = paths(q, x, y);
    let index: BTreeMap<_, _> = all.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    let mut relations = Vec::new();
    // a relator u·m_z·w passes through τz and z with a middle vertex between
    for p in &all {
        for k in 0..p.len().saturating_sub(2) {
            let (a, c) = (p[k], p[k + 2]);
            if a != ZQVertex::new(c.p - 1, c.i) {
                continue;
            }
            let mut v = vec![Rational::zero(); all.len()];
            for m in zq_arrows(q, c).incoming {
                if !zq_arrows(q, a).outgoing.contains(&m) {
                    continue;
                }
                let mut alt = p.clone();
                alt[k + 1] = m;
                v[index[&alt]] += Rational::one();
            }
            relations.push(v);
        }
    }
    PathSpace { index, relations }
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    Matrix::from_rows(rows.to_vec()).rank()
}

fn brute_dim(q: &Quiver, x: ZQVertex, y: ZQVertex) -> usize {
    let s = path_space(q, x, y);
    s.index.len() - rank(&s.relations)
}

fn quivers() -> Vec<Quiver> {
    vec![
        Quiver::linear_a(2),
        Quiver::linear_a(3),
        Quiver::from_edges(3, &[(2, 1), (2, 3)]).unwrap(),
        Quiver::from_edges(3, &[(1, 2), (3, 2)]).unwrap(),
        Quiver::dynkin_d(4),
        Quiver::from_edges(4, &[(2, 1), (3, 2), (2, 4)]).unwrap(),
        Quiver::linear_a(4),
    ]
}

#[test]
fn hom_dimensions_match_path_quotient() {
    for q in quivers() {
        let mesh = MeshCategory::new(q.clone()).unwrap();
        for i in 1..=q.n() {
            let x = ZQVertex::new(0, i);
            for p in -1..=4 {
                for j in 1..=q.n() {
                    let y = ZQVertex::new(p, j);
                    assert_eq!(mesh.hom_dim(x, y).unwrap(), brute_dim(&q, x, y), "{q:?}: Hom({x}, {y})");
                }
            }
        }
    }
}

#[test]
fn path_counts_match_enumeration() {
    let q = Quiver::dynkin_d(4);
    let mesh = MeshCategory::new(q.clone()).unwrap();
    for j in 1..=4 {
        let (x, y) = (ZQVertex::new(0, 1), ZQVertex::new(3, j));
        assert_eq!(mesh.count_paths(x, y) as usize, paths(&q, x, y).len());
    }
}

/// `g ∘ f` from the engine, minus the concatenated path, lies in the span
/// of mesh relators.
#[test]
fn composition_matches_concatenation() {
    for q in quivers() {
        let mesh = MeshCategory::new(q.clone()).unwrap();
        for i in 1..=q.n() {
            let x = ZQVertex::new(0, i);
            for y in window(&q, 0, 2) {
                let fx = mesh.hom_basis(x, y).unwrap();
                for z in window(&q, y.p, y.p + 2) {
                    let gz = mesh.hom_basis(y, z).unwrap();
                    let target = mesh.hom_basis(x, z).unwrap();
                    let space = path_space(&q, x, z);
                    for (a, pf) in fx.basis.iter().enumerate() {
                        for (b, pg) in gz.basis.iter().enumerate() {
                            let f = mesh.basis_element(x, y, a).unwrap();
                            let g = mesh.basis_element(y, z, b).unwrap();
                            let gf = mesh.compose(&f, &g).unwrap();
                            let mut v = vec![Rational::zero(); space.index.len()];
                            let mut concat = pf.vertices.clone();
                            concat.extend_from_slice(&pg.vertices[1..]);
                            v[space.index[&concat]] += Rational::one();
                            for (c, path) in gf.coeffs.iter().zip(&target.basis) {
                                v[space.index[&path.vertices]] -= c;
                            }
                            let mut rows = space.relations.clone();
                            let before = rank(&rows);
                            rows.push(v);
                            assert_eq!(rank(&rows), before, "{pf} then {pg}");
                        }
                    }
                }
            }
        }
    }
}

fn window(q: &Quiver, a: i64, b: i64) -> Vec<ZQVertex> {
    orbitcat_core::mesh::window(q, a, b)
}

#[test]
fn basis_paths_are_paths() {
    let q = Quiver::linear_a(3);
    let mesh = MeshCategory::new(q.clone()).unwrap();
    for y in window(&q, 0, 3) {
        for path in mesh.hom_basis(ZQVertex::new(0, 1), y).unwrap().basis {
            let MeshPath { vertices } = &path;
            assert!(vertices
                .windows(2)
                .all(|w| zq_arrows(&q, w[0]).outgoing.contains(&w[1])));
        }
    }
}
