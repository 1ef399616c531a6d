//! Dimension of a preprojective algebra `kQ̄ / (r_v)` with `r_v = Σ α ᾱ`
//! over arrows `α` of the double quiver starting at `v`, computed degree by
//! degree: paths of length `d` modulo the span of all `u · r_v · w`.

use num_traits::One;
use orbitcat_core::{Matrix, Rational};

/// A double quiver: every arrow has a partner `bar`, possibly itself (the
/// loop `ε = ε̄` of `Lₙ`).
pub struct DoubleQuiver {
    pub n: usize,
    /// `(source, target)`, 1-based vertices.
    pub arrows: Vec<(usize, usize)>,
    pub bar: Vec<usize>,
}

impl DoubleQuiver {
    pub fn of_graph(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut arrows = Vec::new();
        let mut bar = Vec::new();
        for &(s, t) in edges {
            let k = arrows.len();
            arrows.push((s, t));
            arrows.push((t, s));
            bar.push(k + 1);
            bar.push(k);
        }
        DoubleQuiver { n, arrows, bar }
    }

    /// `Lₙ`: the double quiver of `1 - 2 - ... - n` with a loop at 1.
    pub fn ln(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        let mut q = Self::of_graph(n, &edges);
        q.bar.push(q.arrows.len());
        q.arrows.push((1, 1));
        q
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum OracleError {
    /// Degree cap reached with nonzero degree, or too many paths.
    Inconclusive { degree: usize, paths: usize },
}

pub const PATH_CAP: usize = 100_000;

fn paths_of_length(q: &DoubleQuiver, d: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = Vec::new();
    for a in 0..q.arrows.len() {
        layer.push(vec![a]);
    }
    for _ in 1..d {
        let mut next = Vec::new();
        for p in &layer {
            let end = q.arrows[*p.last().unwrap()].1;
            for (a, &(s, _)) in q.arrows.iter().enumerate() {
                if s == end {
                    let mut np = p.clone();
                    np.push(a);
                    next.push(np);
                }
            }
        }
        layer = next;
        if layer.len() > PATH_CAP {
            break;
        }
    }
    layer
}

/// Graded dimensions `dim Λ_0, dim Λ_1, ...` up to the last nonzero degree.
pub fn graded_dims(q: &DoubleQuiver, degree_cap: usize) -> Result<Vec<usize>, OracleError> {
    let mut dims = Vec::new();
    for d in 0..=degree_cap {
        if d == 0 {
            dims.push(q.n);
            continue;
        }
        let paths = paths_of_length(q, d);
        if paths.len() > PATH_CAP {
            return Err(OracleError::Inconclusive {
                degree: d,
                paths: paths.len(),
            });
        }
        if d == 1 {
            dims.push(paths.len());
            continue;
        }
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut relations = Vec::new();
        for p in &paths {
            for k in 0..d - 1 {
                if p[k + 1] != q.bar[p[k]] {
                    continue;
                }
                let v = q.arrows[p[k]].0;
                let mut row = vec![Rational::from_integer(0.into()); paths.len()];
                for (a, &(s, _)) in q.arrows.iter().enumerate() {
                    if s != v {
                        continue;
                    }
                    let mut alt = p.clone();
                    alt[k] = a;
                    alt[k + 1] = q.bar[a];
                    row[index[&alt]] += Rational::one();
                }
                relations.push(row);
            }
        }
        relations.sort();
        relations.dedup();
        let rank = if relations.is_empty() {
            0
        } else {
            Matrix::from_rows(relations).rank()
        };
        let dim = paths.len() - rank;
        if dim == 0 {
            return Ok(dims);
        }
        dims.push(dim);
    }
    Err(OracleError::Inconclusive {
        degree: degree_cap,
        paths: 0,
    })
}

pub fn preprojective_dim(q: &DoubleQuiver, degree_cap: usize) -> Result<usize, OracleError> {
    Ok(graded_dims(q, degree_cap)?.iter().sum())
}
