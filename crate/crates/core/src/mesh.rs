//! The repetition quiver ℤQ and its mesh category.
//!
//! Arrow convention: for every arrow `i -> j` of Q, ℤQ has arrows
//! `(p, j) -> (p, i)` and `(p, i) -> (p + 1, j)`, and `τ(p, i) = (p - 1, i)`.
//! With this orientation the slice `p = 0` is the projective slice
//! `P_j -> P_i` of `mod kQ` (covariant representations).
//!
//! Hom spaces are computed one source at a time. For a fixed source `x` the
//! functor `Hom(x, -)` is built vertex by vertex in a topological order of
//! ℤQ: `Hom(x, x) = k`, and for `z != x`
//!
//! ```text
//! Hom(x, z) = coker( Hom(x, τz) --(σα)--> ⊕_{α: m -> z} Hom(x, m) )
//! ```
//!
//! which is exactly the quotient of the path space by the mesh ideal (every
//! element of the ideal ending at `z` either ends with an arrow `m -> z` or is
//! a multiple of the mesh relator at `z`). Every basis element is a path, so
//! each Hom space comes with a path basis and the arrow maps of the functor
//! give composition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat_from_str, rat_to_string, Matrix, Rational};
use crate::quiver::{classify_dynkin, Quiver, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZQVertex {
    pub p: i64,
    pub i: Vertex,
}

impl ZQVertex {
    pub fn new(p: i64, i: Vertex) -> Self {
        ZQVertex { p, i }
    }
}

impl fmt::Display for ZQVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.i)
    }
}

/// `τᵏ v`.
pub fn translate(v: ZQVertex, k: i64) -> ZQVertex {
    ZQVertex::new(v.p - k, v.i)
}

/// In- and out-neighbours of a vertex of ℤQ. ℤQ of a simply-laced quiver
/// has no multiple arrows, so an arrow is identified by its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZQStar {
    pub incoming: Vec<ZQVertex>,
    pub outgoing: Vec<ZQVertex>,
}

pub fn zq_arrows(q: &Quiver, v: ZQVertex) -> ZQStar {
    let mut star = ZQStar::default();
    for a in q.arrows() {
        if a.target == v.i {
            star.outgoing.push(ZQVertex::new(v.p, a.source));
            star.incoming.push(ZQVertex::new(v.p - 1, a.source));
        }
        if a.source == v.i {
            star.outgoing.push(ZQVertex::new(v.p + 1, a.target));
            star.incoming.push(ZQVertex::new(v.p, a.target));
        }
    }
    star.incoming.sort();
    star.outgoing.sort();
    star
}

pub fn is_arrow(q: &Quiver, from: ZQVertex, to: ZQVertex) -> bool {
    q.arrows().iter().any(|a| {
        (from.i == a.target && to.i == a.source && to.p == from.p)
            || (from.i == a.source && to.i == a.target && to.p == from.p + 1)
    })
}

/// All vertices with `p` in `[pmin, pmax]`, sorted.
pub fn window(q: &Quiver, pmin: i64, pmax: i64) -> Vec<ZQVertex> {
    (pmin..=pmax)
        .flat_map(|p| (1..=q.n()).map(move |i| ZQVertex::new(p, i)))
        .collect()
}

/// A path in ℤQ given by its vertex sequence; length 0 is an identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeshPath {
    pub vertices: Vec<ZQVertex>,
}

impl MeshPath {
    pub fn source(&self) -> ZQVertex {
        self.vertices[0]
    }

    pub fn target(&self) -> ZQVertex {
        *self.vertices.last().expect("paths are non-empty")
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn translated(&self, k: i64) -> MeshPath {
        MeshPath {
            vertices: self.vertices.iter().map(|&v| translate(v, k)).collect(),
        }
    }
}

impl fmt::Display for MeshPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ZQVertex::to_string).collect();
        write!(f, "{}", parts.join("->"))
    }
}

/// A basis of `Hom(source, target)` in the mesh category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismSpace {
    pub source: ZQVertex,
    pub target: ZQVertex,
    pub basis: Vec<MeshPath>,
    /// Number of paths from source to target (saturating).
    pub path_count: u64,
    /// `path_count - dim`: rank of the mesh ideal in this degree.
    pub relations_rank: u64,
}

impl MorphismSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// An element of `Hom(source, target)` as coordinates in the path basis
/// returned by [`MeshCategory::hom_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: ZQVertex,
    pub target: ZQVertex,
    pub coeffs: Vec<Rational>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Morphism {
        Morphism {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::Composition(format!(
                "cannot add morphisms {}->{} and {}->{}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(Morphism {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Space {
    basis: Vec<MeshPath>,
    /// `(m, A)` with `A: Hom(x, m) -> Hom(x, z)` for each arrow `m -> z`
    /// whose source space is nonzero.
    incoming: Vec<(ZQVertex, Matrix)>,
}

impl Space {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn arrow_map(&self, m: ZQVertex) -> Option<&Matrix> {
        self.incoming.iter().find(|(v, _)| *v == m).map(|(_, a)| a)
    }
}

/// `Hom((0, source), -)` as a finitely supported representation of ℤQ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomFunctor {
    source: Vertex,
    spaces: BTreeMap<ZQVertex, Space>,
}

impl HomFunctor {
    /// Vertices with nonzero Hom from the source, with their dimensions.
    pub fn support(&self) -> impl Iterator<Item = (ZQVertex, usize)> + '_ {
        self.spaces.iter().map(|(v, s)| (*v, s.dim()))
    }
}

/// Mesh category of ℤQ for a Dynkin quiver, with a per-source cache.
pub struct MeshCategory {
    quiver: Quiver,
    /// Position of each vertex in the within-slice topological order.
    slice_rank: Vec<usize>,
    slice_order: Vec<Vertex>,
    max_span: i64,
    cache: RwLock<HashMap<Vertex, Arc<HomFunctor>>>,
}

impl fmt::Debug for MeshCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeshCategory")
            .field("quiver", &self.quiver.content_hash())
            .finish()
    }
}

impl MeshCategory {
    pub fn new(quiver: Quiver) -> Result<Self> {
        let class = classify_dynkin(&quiver);
        let h = match &class {
            crate::quiver::DynkinClass::Dynkin { coxeter_number, .. } => *coxeter_number as i64,
            crate::quiver::DynkinClass::NotDynkin { witness } => {
                return Err(Error::NotDynkin {
                    witness: witness.clone(),
                })
            }
        };
        // within a slice, arrows run (p, j) -> (p, i) for i -> j in Q
        let slice_order: Vec<Vertex> = quiver.topological_order().iter().rev().copied().collect();
        let mut slice_rank = vec![0; quiver.n() + 1];
        for (k, &v) in slice_order.iter().enumerate() {
            slice_rank[v] = k;
        }
        Ok(MeshCategory {
            quiver,
            slice_rank,
            slice_order,
            max_span: 4 * h + 8,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Topological key on ℤQ: every arrow goes to a strictly larger key.
    pub fn order_key(&self, v: ZQVertex) -> (i64, usize) {
        (v.p, self.slice_rank[v.i])
    }

    pub fn functor(&self, source: Vertex) -> Result<Arc<HomFunctor>> {
        if let Some(f) = self.cache.read().expect("mesh cache poisoned").get(&source) {
            return Ok(f.clone());
        }
        let f = Arc::new(self.build_functor(source)?);
        let mut w = self.cache.write().expect("mesh cache poisoned");
        Ok(w.entry(source).or_insert(f).clone())
    }

    fn build_functor(&self, source: Vertex) -> Result<HomFunctor> {
        let x = ZQVertex::new(0, source);
        let mut spaces: BTreeMap<ZQVertex, Space> = BTreeMap::new();
        spaces.insert(
            x,
            Space {
                basis: vec![MeshPath { vertices: vec![x] }],
                incoming: Vec::new(),
            },
        );
        let mut p = 0;
        loop {
            let mut slice_nonzero = p == 0;
            for &i in &self.slice_order {
                let z = ZQVertex::new(p, i);
                if self.order_key(z) <= self.order_key(x) {
                    continue;
                }
                if let Some(space) = self.quotient_at(&spaces, z) {
                    slice_nonzero = true;
                    spaces.insert(z, space);
                }
            }
            if !slice_nonzero {
                break;
            }
            p += 1;
            if p > self.max_span {
                return Err(Error::Internal(format!(
                    "Hom((0,{source}), -) did not vanish within {} slices",
                    self.max_span
                )));
            }
        }
        Ok(HomFunctor { source, spaces })
    }

    /// `Hom(x, z)` as the cokernel of the mesh map out of `Hom(x, τz)`.
    fn quotient_at(&self, spaces: &BTreeMap<ZQVertex, Space>, z: ZQVertex) -> Option<Space> {
        let star = zq_arrows(&self.quiver, z);
        let preds: Vec<(ZQVertex, &Space)> = star
            .incoming
            .iter()
            .filter_map(|m| spaces.get(m).map(|s| (*m, s)))
            .collect();
        if preds.is_empty() {
            return None;
        }
        let offsets: Vec<usize> = preds
            .iter()
            .scan(0, |acc, (_, s)| {
                let o = *acc;
                *acc += s.dim();
                Some(o)
            })
            .collect();
        let total: usize = preds.iter().map(|(_, s)| s.dim()).sum();

        // relation rows: images of the basis of Hom(x, τz) under the mesh map
        let tz = translate(z, 1);
        let mut rows = Vec::new();
        if let Some(t) = spaces.get(&tz) {
            for b in 0..t.dim() {
                let mut row = vec![Rational::zero(); total];
                for ((_, m), &off) in preds.iter().zip(&offsets) {
                    if let Some(a) = m.arrow_map(tz) {
                        for r in 0..a.rows() {
                            row[off + r] = a[(r, b)].clone();
                        }
                    }
                }
                rows.push(row);
            }
        }
        let (reduced, pivots) = if rows.is_empty() {
            (Matrix::zeros(0, total), Vec::new())
        } else {
            Matrix::from_rows(rows).rref()
        };
        let mut is_pivot = vec![false; total];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..total).filter(|&c| !is_pivot[c]).collect();
        if free.is_empty() {
            return None;
        }
        let mut free_index = vec![usize::MAX; total];
        for (k, &c) in free.iter().enumerate() {
            free_index[c] = k;
        }
        // quotient map V -> V / R in the basis of free columns
        let mut quot = Matrix::zeros(free.len(), total);
        for &c in &free {
            quot[(free_index[c], c)] = Rational::one();
        }
        for (row, &c) in pivots.iter().enumerate() {
            for &f in &free {
                let v = &reduced[(row, f)];
                if !v.is_zero() {
                    quot[(free_index[f], c)] = -v.clone();
                }
            }
        }
        let mut basis = Vec::with_capacity(free.len());
        for &c in &free {
            let k = offsets.partition_point(|&o| o <= c) - 1;
            let (_, m) = &preds[k];
            let mut path = m.basis[c - offsets[k]].clone();
            path.vertices.push(z);
            basis.push(path);
        }
        let incoming = preds
            .iter()
            .zip(&offsets)
            .map(|((v, s), &off)| {
                let mut a = Matrix::zeros(free.len(), s.dim());
                for r in 0..free.len() {
                    for c in 0..s.dim() {
                        a[(r, c)] = quot[(r, off + c)].clone();
                    }
                }
                (*v, a)
            })
            .collect();
        Some(Space { basis, incoming })
    }

    fn space(&self, x: ZQVertex, y: ZQVertex) -> Result<Option<(Arc<HomFunctor>, ZQVertex)>> {
        let f = self.functor(x.i)?;
        let rel = ZQVertex::new(y.p - x.p, y.i);
        Ok(f.spaces.contains_key(&rel).then_some((f, rel)))
    }

    pub fn hom_dim(&self, x: ZQVertex, y: ZQVertex) -> Result<usize> {
        Ok(match self.space(x, y)? {
            Some((f, rel)) => f.spaces[&rel].dim(),
            None => 0,
        })
    }

    pub fn hom_basis(&self, x: ZQVertex, y: ZQVertex) -> Result<MorphismSpace> {
        let basis = match self.space(x, y)? {
            Some((f, rel)) => f.spaces[&rel].basis.iter().map(|path| path.translated(-x.p)).collect(),
            None => Vec::new(),
        };
        let path_count = self.count_paths(x, y);
        Ok(MorphismSpace {
            source: x,
            target: y,
            relations_rank: path_count.saturating_sub(basis.len() as u64),
            path_count,
            basis,
        })
    }

    /// Number of paths `x -> y` in ℤQ, saturating at `u64::MAX`.
    pub fn count_paths(&self, x: ZQVertex, y: ZQVertex) -> u64 {
        if self.order_key(y) < self.order_key(x) {
            return 0;
        }
        let mut counts: HashMap<ZQVertex, u64> = HashMap::new();
        counts.insert(x, 1);
        for p in x.p..=y.p {
            for &i in &self.slice_order {
                let z = ZQVertex::new(p, i);
                if self.order_key(z) <= self.order_key(x) || self.order_key(z) > self.order_key(y) {
                    continue;
                }
                let c = zq_arrows(&self.quiver, z)
                    .incoming
                    .iter()
                    .filter_map(|m| counts.get(m))
                    .fold(0u64, |a, &b| a.saturating_add(b));
                if c > 0 {
                    counts.insert(z, c);
                }
            }
        }
        counts.get(&y).copied().unwrap_or(0)
    }

    pub fn identity(&self, x: ZQVertex) -> Morphism {
        Morphism {
            source: x,
            target: x,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn zero(&self, x: ZQVertex, y: ZQVertex) -> Result<Morphism> {
        Ok(Morphism {
            source: x,
            target: y,
            coeffs: vec![Rational::zero(); self.hom_dim(x, y)?],
        })
    }

    /// The `k`-th basis element of `Hom(x, y)`.
    pub fn basis_element(&self, x: ZQVertex, y: ZQVertex, k: usize) -> Result<Morphism> {
        let mut m = self.zero(x, y)?;
        if k >= m.coeffs.len() {
            return Err(Error::Composition(format!("Hom({x}, {y}) has no basis element {k}")));
        }
        m.coeffs[k] = Rational::one();
        Ok(m)
    }

    /// Post-composes `f` with the path given by `vertices`, which must start
    /// at `f.target`.
    pub fn push_along(&self, f: &Morphism, vertices: &[ZQVertex]) -> Result<Morphism> {
        if vertices.first() != Some(&f.target) {
            return Err(Error::Composition(format!("path does not start at {}", f.target)));
        }
        let functor = self.functor(f.source.i)?;
        let shift = f.source.p;
        let mut current = f.coeffs.clone();
        for w in vertices.windows(2) {
            let (from, to) = (w[0], w[1]);
            if !is_arrow(&self.quiver, from, to) {
                return Err(Error::Composition(format!("{from} -> {to} is not an arrow of ZQ")));
            }
            if current.is_empty() {
                continue;
            }
            let rel_from = ZQVertex::new(from.p - shift, from.i);
            let rel_to = ZQVertex::new(to.p - shift, to.i);
            current = match functor.spaces.get(&rel_to) {
                Some(space) => match space.arrow_map(rel_from) {
                    Some(a) => a.mul_vec(&current),
                    None => vec![Rational::zero(); space.dim()],
                },
                None => Vec::new(),
            };
        }
        Ok(Morphism {
            source: f.source,
            target: *vertices.last().expect("non-empty path"),
            coeffs: current,
        })
    }

    /// Expresses a path in the basis of its Hom space.
    pub fn path_morphism(&self, path: &MeshPath) -> Result<Morphism> {
        self.push_along(&self.identity(path.source()), &path.vertices)
    }

    /// `g ∘ f` for `f: x -> y`, `g: y -> z`.
    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.compose_mapped(f, g, Ok)
    }

    /// `σ(g) ∘ f` where `σ` is an automorphism of ℤQ given on vertices; `g`'s
    /// basis paths are mapped vertexwise and must start at `f.target`.
    pub fn compose_mapped(
        &self,
        f: &Morphism,
        g: &Morphism,
        sigma: impl Fn(ZQVertex) -> Result<ZQVertex>,
    ) -> Result<Morphism> {
        let gs = self.hom_basis(g.source, g.target)?;
        if sigma(g.source)? != f.target {
            return Err(Error::Composition(format!(
                "cannot compose {}->{} with a morphism out of {}",
                f.source, f.target, g.source
            )));
        }
        let target = sigma(g.target)?;
        let mut out = self.zero(f.source, target)?;
        for (c, path) in g.coeffs.iter().zip(&gs.basis) {
            if c.is_zero() {
                continue;
            }
            let mapped: Vec<ZQVertex> = path.vertices.iter().map(|&v| sigma(v)).collect::<Result<_>>()?;
            let term = self.push_along(f, &mapped)?;
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                *o += c * t;
            }
        }
        Ok(out)
    }

    /// `σ(f)` for an automorphism `σ` of ℤQ, in the basis of the image space.
    pub fn map_morphism(&self, f: &Morphism, sigma: impl Fn(ZQVertex) -> Result<ZQVertex>) -> Result<Morphism> {
        let start = self.identity(sigma(f.source)?);
        self.compose_mapped(&start, f, sigma)
    }

    /// Sources whose Hom functor is already built or imported.
    pub fn cached_sources(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self
            .cache
            .read()
            .expect("mesh cache poisoned")
            .keys()
            .copied()
            .collect();
        v.sort();
        v
    }

    pub fn export_functor(&self, source: Vertex) -> Result<String> {
        let f = self.functor(source)?;
        let file = FunctorFile {
            version: FUNCTOR_FILE_VERSION.to_string(),
            quiver: self.quiver.content_hash(),
            source,
            spaces: f
                .spaces
                .iter()
                .map(|(v, s)| SpaceFile {
                    vertex: *v,
                    basis: s.basis.clone(),
                    incoming: s
                        .incoming
                        .iter()
                        .map(|(m, a)| IncomingFile {
                            from: *m,
                            rows: a.rows(),
                            cols: a.cols(),
                            entries: (0..a.rows())
                                .flat_map(|r| a.row(r).iter().map(rat_to_string).collect::<Vec<_>>())
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        };
        Ok(serde_json::to_string(&file).expect("functor serializes"))
    }

    /// Loads a functor written by [`export_functor`](Self::export_functor).
    /// Returns `false` (and leaves the cache alone) if the text is for
    /// another quiver, another version, or does not parse.
    pub fn import_functor(&self, text: &str) -> bool {
        let Ok(file) = serde_json::from_str::<FunctorFile>(text) else {
            return false;
        };
        if file.version != FUNCTOR_FILE_VERSION || file.quiver != self.quiver.content_hash() {
            return false;
        }
        let mut spaces = BTreeMap::new();
        for s in file.spaces {
            let mut incoming = Vec::new();
            for inc in s.incoming {
                if inc.entries.len() != inc.rows * inc.cols {
                    return false;
                }
                let mut a = Matrix::zeros(inc.rows, inc.cols);
                for (k, e) in inc.entries.iter().enumerate() {
                    let Some(x) = rat_from_str(e) else {
                        return false;
                    };
                    a[(k / inc.cols.max(1), k % inc.cols.max(1))] = x;
                }
                incoming.push((inc.from, a));
            }
            spaces.insert(
                s.vertex,
                Space {
                    basis: s.basis,
                    incoming,
                },
            );
        }
        let functor = HomFunctor {
            source: file.source,
            spaces,
        };
        self.cache
            .write()
            .expect("mesh cache poisoned")
            .insert(functor.source, Arc::new(functor));
        true
    }
}

const FUNCTOR_FILE_VERSION: &str = "orbitcat-mesh/1";

#[derive(Serialize, Deserialize)]
struct FunctorFile {
    version: String,
    quiver: String,
    source: Vertex,
    spaces: Vec<SpaceFile>,
}

#[derive(Serialize, Deserialize)]
struct SpaceFile {
    vertex: ZQVertex,
    basis: Vec<MeshPath>,
    incoming: Vec<IncomingFile>,
}

#[derive(Serialize, Deserialize)]
struct IncomingFile {
    from: ZQVertex,
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

/// `τᵏ f`: translation acts on paths coordinatewise, and the path basis of
/// `Hom(τᵏx, τᵏy)` is the translate of the basis of `Hom(x, y)`, so the
/// coordinates are unchanged.
pub fn translate_morphism(f: &Morphism, k: i64) -> Morphism {
    Morphism {
        source: translate(f.source, k),
        target: translate(f.target, k),
        coeffs: f.coeffs.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn v(p: i64, i: Vertex) -> ZQVertex {
        ZQVertex::new(p, i)
    }

    #[test]
    fn arrows_of_a1_and_a2() {
        let a1 = Quiver::linear_a(1);
        assert_eq!(zq_arrows(&a1, v(5, 1)), ZQStar::default());
        let a2 = Quiver::linear_a(2);
        let s = zq_arrows(&a2, v(0, 1));
        assert_eq!(s.outgoing, vec![v(1, 2)]);
        assert_eq!(s.incoming, vec![v(0, 2)]);
        let s = zq_arrows(&a2, v(0, 2));
        assert_eq!(s.outgoing, vec![v(0, 1)]);
        assert_eq!(s.incoming, vec![v(-1, 1)]);
    }

    #[test]
    fn arrows_of_a3_middle() {
        let a3 = Quiver::linear_a(3);
        let s = zq_arrows(&a3, v(0, 2));
        assert_eq!(s.outgoing, vec![v(0, 1), v(1, 3)]);
        assert_eq!(s.incoming, vec![v(-1, 1), v(0, 3)]);
    }

    #[test]
    fn translate_examples() {
        assert_eq!(translate(v(3, 2), 0), v(3, 2));
        assert_eq!(translate(v(3, 2), 1), v(2, 2));
        assert_eq!(translate(v(0, 1), -1), v(1, 1));
    }

    #[test]
    fn endomorphisms_are_scalars() {
        let m = MeshCategory::new(Quiver::dynkin_d(4)).unwrap();
        for x in window(m.quiver(), -2, 2) {
            let s = m.hom_basis(x, x).unwrap();
            assert_eq!(s.dim(), 1);
            assert!(s.basis[0].is_empty());
        }
    }

    #[test]
    fn single_middle_mesh_kills_composite() {
        // A2: (0,2) -> (0,1) -> (1,2), mesh at (1,2) has the single middle (0,1)
        let m = MeshCategory::new(Quiver::linear_a(2)).unwrap();
        assert_eq!(m.hom_dim(v(0, 2), v(0, 1)).unwrap(), 1);
        assert_eq!(m.hom_dim(v(0, 1), v(1, 2)).unwrap(), 1);
        let s = m.hom_basis(v(0, 2), v(1, 2)).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.path_count, 1);
        assert_eq!(s.relations_rank, 1);
        let f = m.basis_element(v(0, 2), v(0, 1), 0).unwrap();
        let g = m.basis_element(v(0, 1), v(1, 2), 0).unwrap();
        assert!(m.compose(&f, &g).unwrap().coeffs.is_empty());
    }

    #[test]
    fn two_middle_mesh_identifies_paths() {
        // A3 linear: mesh from (0,2) to (1,2) through (0,1) and (1,3)
        let m = MeshCategory::new(Quiver::linear_a(3)).unwrap();
        let s = m.hom_basis(v(0, 2), v(1, 2)).unwrap();
        assert_eq!(s.path_count, 2);
        assert_eq!(s.dim(), 1);
        let p1 = MeshPath {
            vertices: vec![v(0, 2), v(0, 1), v(1, 2)],
        };
        let p2 = MeshPath {
            vertices: vec![v(0, 2), v(1, 3), v(1, 2)],
        };
        let a = m.path_morphism(&p1).unwrap();
        let b = m.path_morphism(&p2).unwrap();
        assert!(!a.is_zero());
        assert_eq!(a.add(&b).unwrap().coeffs, vec![rat(0)]);
    }

    #[test]
    fn identities_are_neutral() {
        let m = MeshCategory::new(Quiver::linear_a(3)).unwrap();
        let (x, y) = (v(0, 3), v(0, 1));
        let f = m.basis_element(x, y, 0).unwrap();
        assert_eq!(m.compose(&m.identity(x), &f).unwrap(), f);
        assert_eq!(m.compose(&f, &m.identity(y)).unwrap(), f);
    }

    #[test]
    fn composition_mismatch_is_an_error() {
        let m = MeshCategory::new(Quiver::linear_a(3)).unwrap();
        let f = m.identity(v(0, 1));
        let g = m.identity(v(0, 2));
        assert!(matches!(m.compose(&f, &g), Err(Error::Composition(_))));
    }

    #[test]
    fn functor_export_round_trips() {
        let m = MeshCategory::new(Quiver::dynkin_d(4)).unwrap();
        let text = m.export_functor(2).unwrap();
        let fresh = MeshCategory::new(Quiver::dynkin_d(4)).unwrap();
        assert!(fresh.import_functor(&text));
        assert_eq!(*fresh.functor(2).unwrap(), *m.functor(2).unwrap());
        let other = MeshCategory::new(Quiver::linear_a(4)).unwrap();
        assert!(!other.import_functor(&text));
    }

    #[test]
    fn not_dynkin_is_rejected() {
        let k = Quiver::from_edges(2, &[(1, 2), (1, 2)]).unwrap();
        assert!(matches!(MeshCategory::new(k), Err(Error::NotDynkin { .. })));
    }
}
