//! Quivers, Dynkin classification and root-lattice data.
//!
//! Vertex ids are `1..=n`. A [`DimVector`] stores the entry for vertex `v` at
//! index `v - 1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub type Vertex = usize;

/// Most roots of any simply-laced Dynkin diagram is 120 (E8).
pub const ROOT_CAP: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, v: Vertex) -> Self {
        let mut d = DimVector::zero(n);
        d.0[v - 1] = 1;
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, v: Vertex) -> i64 {
        self.0[v - 1]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// The vertex of a simple root, if this is one.
    pub fn simple_vertex(&self) -> Option<Vertex> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(i + 1),
                _ => return None,
            }
        }
        found
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub source: Vertex,
    pub target: Vertex,
    pub label: String,
}

/// A finite acyclic quiver. Multiple arrows are allowed here (the Kronecker
/// quiver is a valid input); they are rejected later by classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    topo: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    vertices: Vec<i64>,
    arrows: Vec<ArrowFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowFile {
    from: i64,
    to: i64,
    /// Defaults to `a{k}` for the k-th arrow (1-based).
    #[serde(default)]
    label: Option<String>,
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::InvalidQuiver {
        location: location.into(),
        message: message.into(),
    }
}

impl Quiver {
    /// Validates and builds a quiver. `vertices` is the input order and must
    /// be a permutation of `1..=n`.
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(invalid("vertices", "quiver has no vertices"));
        }
        let n = vertices.len();
        let mut seen = vec![false; n + 1];
        for (k, &v) in vertices.iter().enumerate() {
            if v == 0 || v > n {
                return Err(invalid(
                    format!("vertices[{k}]"),
                    format!("vertex id {v} outside 1..={n} (ids must have no gaps)"),
                ));
            }
            if seen[v] {
                return Err(invalid(format!("vertices[{k}]"), format!("duplicate vertex id {v}")));
            }
            seen[v] = true;
        }
        let mut labels = BTreeSet::new();
        for (k, a) in arrows.iter().enumerate() {
            for (field, v) in [("from", a.source), ("to", a.target)] {
                if v == 0 || v > n {
                    return Err(invalid(
                        format!("arrows[{k}].{field}"),
                        format!("vertex {v} is not a vertex of the quiver"),
                    ));
                }
            }
            if !labels.insert(a.label.clone()) {
                return Err(invalid(
                    format!("arrows[{k}].label"),
                    format!("duplicate arrow label {:?}", a.label),
                ));
            }
        }
        let topo = topological_order(n, &arrows)
            .ok_or_else(|| invalid("arrows", "quiver has an oriented cycle (loops included)"))?;
        Ok(Quiver { vertices, arrows, topo })
    }

    /// Builds a quiver on `1..=n` from `(source, target)` pairs, labelling
    /// arrows `a1, a2, ...`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Arrow {
                source: s,
                target: t,
                label: format!("a{}", k + 1),
            })
            .collect();
        Quiver::new((1..=n).collect(), arrows)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: QuiverFile = serde_json::from_str(text)
            .map_err(|e| invalid(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        let mut vertices = Vec::with_capacity(file.vertices.len());
        for (k, &v) in file.vertices.iter().enumerate() {
            if v < 1 {
                return Err(invalid(
                    format!("vertices[{k}]"),
                    format!("vertex id {v} must be positive"),
                ));
            }
            vertices.push(v as usize);
        }
        let mut arrows = Vec::with_capacity(file.arrows.len());
        for (k, a) in file.arrows.into_iter().enumerate() {
            for (field, v) in [("from", a.from), ("to", a.to)] {
                if v < 1 {
                    return Err(invalid(
                        format!("arrows[{k}].{field}"),
                        format!("vertex id {v} must be positive"),
                    ));
                }
            }
            arrows.push(Arrow {
                source: a.from as usize,
                target: a.to as usize,
                label: a.label.unwrap_or_else(|| format!("a{}", k + 1)),
            });
        }
        Quiver::new(vertices, arrows)
    }

    pub fn to_json_string(&self) -> String {
        let file = QuiverFile {
            vertices: self.vertices.iter().map(|&v| v as i64).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    from: a.source as i64,
                    to: a.target as i64,
                    label: Some(a.label.clone()),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("quiver serializes")
    }

    /// Linear orientation `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Quiver::from_edges(n, &edges).expect("linear quiver is valid")
    }

    /// `D_n` as a chain `1 -> ... -> n-2` with `n-2 -> n-1` and `n-2 -> n`.
    pub fn dynkin_d(n: usize) -> Self {
        assert!(n >= 4);
        let mut edges: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 2, n - 1));
        edges.push((n - 2, n));
        Quiver::from_edges(n, &edges).expect("D quiver is valid")
    }

    /// `E_n` (n = 6, 7, 8) as a chain `1 -> ... -> n-1` with `3 -> n`.
    pub fn dynkin_e(n: usize) -> Self {
        assert!((6..=8).contains(&n));
        let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((3, n));
        Quiver::from_edges(n, &edges).expect("E quiver is valid")
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// An admissible ordering: every arrow goes from an earlier to a later
    /// vertex. Ties are broken by the smaller id.
    pub fn topological_order(&self) -> &[Vertex] {
        &self.topo
    }

    pub fn out_arrows(&self, v: Vertex) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v)
    }

    pub fn in_arrows(&self, v: Vertex) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v)
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out_arrows(v).next().is_none()
    }

    pub fn is_source(&self, v: Vertex) -> bool {
        self.in_arrows(v).next().is_none()
    }

    /// The quiver with every arrow incident to `v` reversed.
    pub fn reflect_at(&self, v: Vertex) -> Quiver {
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| {
                if a.source == v || a.target == v {
                    Arrow {
                        source: a.target,
                        target: a.source,
                        label: a.label.clone(),
                    }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("reflection at a sink or source keeps acyclicity")
    }

    /// `counts[i][j]` = number of paths from vertex `i+1` to vertex `j+1`.
    pub fn path_counts(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut counts = vec![vec![0i64; n]; n];
        for &s in &self.topo {
            counts[s - 1][s - 1] = 1;
        }
        // process targets in topological order so predecessors are final
        for &t in &self.topo {
            for (_, a) in self.in_arrows(t) {
                for row in counts.iter_mut() {
                    row[t - 1] += row[a.source - 1];
                }
            }
        }
        counts
    }

    /// Dimension vector of the indecomposable projective at `v` (paths
    /// starting at `v`).
    pub fn projective_dim(&self, v: Vertex) -> DimVector {
        DimVector(self.path_counts()[v - 1].clone())
    }

    /// Dimension vector of the indecomposable injective at `v` (paths
    /// ending at `v`).
    pub fn injective_dim(&self, v: Vertex) -> DimVector {
        let c = self.path_counts();
        DimVector((0..self.n()).map(|i| c[i][v - 1]).collect())
    }

    /// Stable content hash, used for DOT graph names and cache keys.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_json_string().as_bytes());
        hex::encode(&h.finalize()[..8])
    }

    /// Euler form matrix `E = Id - adjacency`.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut e = vec![vec![0i64; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        for a in &self.arrows {
            e[a.source - 1][a.target - 1] -= 1;
        }
        e
    }

    /// `<d, e> = d^T E e`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> i64 {
        let mut total: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
        for a in &self.arrows {
            total -= d.at(a.source) * e.at(a.target);
        }
        total
    }

    fn undirected_neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .arrows
            .iter()
            .filter_map(|a| {
                if a.source == v {
                    Some(a.target)
                } else if a.target == v {
                    Some(a.source)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Option<Vec<Vertex>> {
    let mut indeg = vec![0usize; n + 1];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: BTreeSet<Vertex> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.insert(a.target);
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DynkinClass {
    Dynkin {
        family: Family,
        rank: usize,
        coxeter_number: usize,
    },
    NotDynkin {
        witness: String,
    },
}

impl DynkinClass {
    pub fn coxeter_number(&self) -> Option<usize> {
        match self {
            DynkinClass::Dynkin { coxeter_number, .. } => Some(*coxeter_number),
            DynkinClass::NotDynkin { .. } => None,
        }
    }

    pub fn is_dynkin(&self) -> bool {
        matches!(self, DynkinClass::Dynkin { .. })
    }
}

impl fmt::Display for DynkinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinClass::Dynkin { family, rank, .. } => write!(f, "{family}{rank}"),
            DynkinClass::NotDynkin { witness } => write!(f, "not Dynkin ({witness})"),
        }
    }
}

fn coxeter_number(family: Family, n: usize) -> usize {
    match (family, n) {
        (Family::A, n) => n + 1,
        (Family::D, n) => 2 * (n - 1),
        (Family::E, 6) => 12,
        (Family::E, 7) => 18,
        (Family::E, 8) => 30,
        _ => unreachable!("no E{n}"),
    }
}

/// Classifies the underlying undirected graph.
pub fn classify_dynkin(q: &Quiver) -> DynkinClass {
    let n = q.n();
    let not = |w: String| DynkinClass::NotDynkin { witness: w };

    let mut pairs = BTreeSet::new();
    for a in q.arrows() {
        let key = (a.source.min(a.target), a.source.max(a.target));
        if !pairs.insert(key) {
            return not(format!("double edge between {} and {}", key.0, key.1));
        }
    }
    // connected + (n - 1) edges <=> tree
    let mut seen = vec![false; n + 1];
    let mut queue = VecDeque::from([1]);
    seen[1] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for w in q.undirected_neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    if reached < n {
        let missing = (1..=n).find(|&v| !seen[v]).unwrap();
        return not(format!("disconnected: vertex {missing} not reachable from vertex 1"));
    }
    if pairs.len() != n - 1 {
        return not("cycle in the underlying graph".to_string());
    }

    let degree = |v: Vertex| q.undirected_neighbours(v).len();
    if let Some(v) = (1..=n).find(|&v| degree(v) >= 4) {
        return not(format!("vertex {v} has degree {}", degree(v)));
    }
    let branches: Vec<Vertex> = (1..=n).filter(|&v| degree(v) == 3).collect();
    let dynkin = |family| DynkinClass::Dynkin {
        family,
        rank: n,
        coxeter_number: coxeter_number(family, n),
    };
    match branches.as_slice() {
        [] => dynkin(Family::A),
        [centre] => {
            let mut arms: Vec<usize> = q
                .undirected_neighbours(*centre)
                .into_iter()
                .map(|start| arm_length(q, *centre, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => dynkin(Family::D),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => dynkin(Family::E),
                other => not(format!("branch vertex {centre} with arm lengths {other:?}")),
            }
        }
        [b1, b2, ..] => not(format!("two branch vertices {b1} and {b2}")),
    }
}

fn arm_length(q: &Quiver, centre: Vertex, start: Vertex) -> usize {
    let (mut prev, mut cur, mut len) = (centre, start, 1);
    loop {
        let next: Vec<Vertex> = q
            .undirected_neighbours(cur)
            .into_iter()
            .filter(|&w| w != prev)
            .collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Bilinear-form data of a Dynkin quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub class: DynkinClass,
    pub euler_matrix: Vec<Vec<i64>>,
    pub symmetrized_cartan: Vec<Vec<i64>>,
    /// Dimension-vector action of the AR translate: `Φ = -E⁻¹ Eᵀ`.
    pub coxeter_matrix: Vec<Vec<i64>>,
    pub coxeter_inverse: Vec<Vec<i64>>,
    pub positive_roots: Vec<DimVector>,
}

impl CartanData {
    pub fn n(&self) -> usize {
        self.euler_matrix.len()
    }

    pub fn coxeter_number(&self) -> usize {
        self.class
            .coxeter_number()
            .expect("CartanData is only built for Dynkin quivers")
    }

    pub fn is_root(&self, d: &DimVector) -> bool {
        self.positive_roots.binary_search_by(|r| root_order(r, d)).is_ok()
    }

    /// `(d, d)` for the symmetrized form.
    pub fn tits_form(&self, d: &DimVector) -> i64 {
        quadratic(&self.symmetrized_cartan, d)
    }
}

/// Roots are kept sorted by height, then entries.
pub fn root_order(a: &DimVector, b: &DimVector) -> std::cmp::Ordering {
    a.height().cmp(&b.height()).then_with(|| a.cmp(b))
}

fn quadratic(m: &[Vec<i64>], d: &DimVector) -> i64 {
    let mut total = 0;
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            total += d.0[i] * x * d.0[j];
        }
    }
    total
}

/// Simple reflection at vertex `v` for the symmetrized Cartan matrix.
pub fn simple_reflection(cartan: &[Vec<i64>], d: &DimVector, v: Vertex) -> DimVector {
    let i = v - 1;
    let pairing: i64 = cartan[i].iter().zip(&d.0).map(|(a, b)| a * b).sum();
    let mut out = d.clone();
    out.0[i] -= pairing;
    out
}

pub fn cartan_data(q: &Quiver) -> Result<CartanData> {
    let class = classify_dynkin(q);
    if let DynkinClass::NotDynkin { witness } = &class {
        return Err(Error::NotDynkin {
            witness: witness.clone(),
        });
    }
    let n = q.n();
    let e = q.euler_matrix();
    let sym: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| e[i][j] + e[j][i]).collect()).collect();
    let em = Matrix::from_i64(&e);
    let e_inv = em
        .inverse()
        .ok_or_else(|| Error::Internal("Euler matrix is singular".into()))?;
    let phi = e_inv.mul(&em.transpose()).neg();
    let phi_inv = phi
        .inverse()
        .ok_or_else(|| Error::Internal("Coxeter matrix is singular".into()))?;
    let to_int = |m: &Matrix| {
        m.to_i64()
            .ok_or_else(|| Error::Internal(format!("non-integral matrix {m:?}")))
    };
    let coxeter_matrix = to_int(&phi)?;
    let coxeter_inverse = to_int(&phi_inv)?;
    let positive_roots = enumerate_roots(&sym)?;
    Ok(CartanData {
        class,
        euler_matrix: e,
        symmetrized_cartan: sym,
        coxeter_matrix,
        coxeter_inverse,
        positive_roots,
    })
}

/// Breadth-first closure of the simple roots under simple reflections,
/// keeping the positive ones.
pub fn enumerate_roots(cartan: &[Vec<i64>]) -> Result<Vec<DimVector>> {
    let n = cartan.len();
    let mut seen: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for v in 1..=n {
        let r = DimVector::unit(n, v);
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        for v in 1..=n {
            let s = simple_reflection(cartan, &r, v);
            if s.is_nonnegative() && !s.is_zero() && seen.insert(s.clone()) {
                if seen.len() > ROOT_CAP {
                    return Err(Error::RootCapExceeded { cap: ROOT_CAP });
                }
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<DimVector> = seen.into_iter().collect();
    roots.sort_by(root_order);
    Ok(roots)
}

fn mat_vec(m: &[Vec<i64>], d: &DimVector) -> DimVector {
    DimVector(
        m.iter()
            .map(|row| row.iter().zip(&d.0).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

/// `Φᵏ d`; negative `k` uses the integral inverse.
pub fn coxeter_apply(c: &CartanData, d: &DimVector, k: i64) -> DimVector {
    let m = if k >= 0 { &c.coxeter_matrix } else { &c.coxeter_inverse };
    let mut out = d.clone();
    for _ in 0..k.unsigned_abs() {
        out = mat_vec(m, &out);
    }
    out
}

/// `Φ - Id` as a rational matrix, for the no-fixed-vector check.
pub fn coxeter_minus_identity(c: &CartanData) -> Matrix {
    Matrix::from_i64(&c.coxeter_matrix).sub(&Matrix::identity(c.n()))
}

pub fn coxeter_power(c: &CartanData, k: usize) -> Matrix {
    let phi = Matrix::from_i64(&c.coxeter_matrix);
    let mut out = Matrix::identity(c.n());
    for _ in 0..k {
        out = out.mul(&phi);
    }
    out
}
