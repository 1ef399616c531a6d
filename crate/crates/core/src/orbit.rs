//! Orbit categories `D^b(kQ)/F` for `F = τ^a S^b`.
//!
//! Objects are F-orbits of indecomposables, represented by the orbit element
//! with the smallest `(shift, p, i)` among those of shift `>= 0`. Morphisms
//! are `⊕ₙ Hom(X, FⁿY)`; a morphism of degree `n` is a mesh morphism
//! `X -> FⁿY`, and `g ∘ f` for `f` of degree `n` is `Fⁿ(g) ∘ f`.
//!
//! Finiteness of the graded sums comes from drift: `τ^{-h} = S²` objectwise,
//! so `F` raises the shift by `r = b - 2a/h` per step on average, and along
//! any F-orbit the shift stays within 2 of that line. Scans stop once the
//! shift is 4 past the target interval, which certifies that nothing further
//! out can land in it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::derived::{DerivedCategory, DerivedIndec, DerivedObject, FunctorWord, Oracle};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::mesh::{translate, zq_arrows, Morphism, MorphismSpace, ZQVertex};
use crate::quiver::{DimVector, Quiver};

/// Margin (in shifts) past which a scan end is certified.
const SCAN_MARGIN: i64 = 4;

pub struct OrbitCategory {
    dc: Arc<DerivedCategory>,
    functor: FunctorWord,
    h: i64,
    /// `r * h = b h - 2a`.
    drift_h: i64,
    bound: i64,
    canonical: RwLock<HashMap<ZQVertex, DerivedIndec>>,
    objects: OnceLock<Vec<DerivedIndec>>,
}

impl std::fmt::Debug for OrbitCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrbitCategory")
            .field("quiver", &self.dc.quiver().content_hash())
            .field("functor", &self.functor.normalized())
            .finish()
    }
}

/// A morphism of the orbit category: `morphism: source -> F^degree(target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMorphism {
    pub source: ZQVertex,
    pub target: ZQVertex,
    pub degree: i64,
    pub morphism: Morphism,
}

/// `⊕ₙ Hom(X, FⁿY)` with its nonzero graded pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitHom {
    pub source: DerivedIndec,
    pub target: DerivedIndec,
    pub components: BTreeMap<i64, MorphismSpace>,
    pub total_dim: usize,
    /// Degrees scanned, before the stability extension.
    pub window: (i64, i64),
}

impl OrbitHom {
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        self.components.iter().map(|(&n, s)| (n, s.dim())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeartVisits {
    pub module: DerivedIndec,
    /// The `i` with `FⁱU` in the heart.
    pub indices: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition2 {
    pub passed: bool,
    pub message: String,
    pub visits: Vec<HeartVisits>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftWitness {
    pub orbit: DerivedIndec,
    /// Least `n >= 0` with `SⁿU` in the orbit for a module `U`.
    pub n: i64,
    pub module: DimVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition3 {
    pub passed: bool,
    pub message: String,
    #[serde(rename = "N")]
    pub bound: Option<i64>,
    pub witnesses: Vec<ShiftWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub functor: String,
    pub condition2: Condition2,
    pub condition3: Condition3,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.condition2.passed && self.condition3.passed
    }

    /// The report for `F = 1`, which fixes every module.
    pub fn degenerate(functor: &FunctorWord) -> Self {
        ConditionReport {
            functor: functor.normalized(),
            condition2: Condition2 {
                passed: false,
                message: "F is the identity, so FⁱU = U lies in the heart for every i".into(),
                visits: Vec::new(),
            },
            condition3: Condition3 {
                passed: false,
                message: "not checked: condition 2 fails".into(),
                bound: None,
                witnesses: Vec::new(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyProbe {
    /// All `d` in `[0, d_max]` passing the dimension test.
    pub compatible: Vec<usize>,
    /// Least positive compatible `d`.
    pub dimension: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauIdentityReport {
    pub tau_trivial: bool,
    /// `(X, canonical rep of τX)` where they differ.
    pub moved: Vec<(DerivedIndec, DerivedIndec)>,
    pub h: usize,
    /// `S² = τ^{-h}` objectwise on `D^b(kQ)` over `p ∈ [-h, h]`.
    pub s2_identity: bool,
}

impl TauIdentityReport {
    pub fn passed(&self) -> bool {
        self.tau_trivial && self.s2_identity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndBasisElement {
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub index: usize,
    pub path: String,
    /// Degree 0 and a path of length 0.
    pub identity: bool,
}

/// `End(X)` in the orbit category for `X = ⊕ X_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndAlgebra {
    pub summands: Vec<DerivedIndec>,
    pub basis: Vec<EndBasisElement>,
    pub graded_dims: BTreeMap<i64, usize>,
    /// `table[i][j]` is `e_j ∘ e_i` (first `e_i`, then `e_j`), sparse.
    pub table: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `y ∘ x` in coordinates.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in &self.table[i][j] {
                    out[*k] += a * b * c;
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Rational> {
        self.basis
            .iter()
            .map(|e| if e.identity { Rational::one() } else { Rational::zero() })
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                })
            })
        })
    }

    pub fn unit_is_neutral(&self) -> bool {
        let u = self.unit();
        (0..self.dim()).all(|i| {
            let e = self.basis_vector(i);
            self.mul(&u, &e) == e && self.mul(&e, &u) == e
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArQuiver {
    pub vertices: Vec<DerivedIndec>,
    /// Arrows with multiplicity, sorted.
    pub arrows: Vec<(usize, usize)>,
    /// `tau[v]` is the index of `τ` of vertex `v`.
    pub tau: Vec<usize>,
}

impl ArQuiver {
    /// Deterministic DOT text; `name` is used as the graph name.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        writeln!(s, "digraph \"{name}\" {{").unwrap();
        for (k, v) in self.vertices.iter().enumerate() {
            writeln!(s, "  n{k} [label=\"{} {}\"];", v.coord, v.label()).unwrap();
        }
        for (a, b) in &self.arrows {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
        for (k, t) in self.tau.iter().enumerate() {
            writeln!(s, "  n{k} -> n{t} [style=dashed, label=\"tau\"];").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// `Some(n)` when this is the quiver `Lₙ`: vertices `1..n`, arrows
    /// `i -> i+1` and `i+1 -> i`, one loop at vertex 1, and `τ = 1`.
    pub fn ln_rank(&self) -> Option<usize> {
        let n = self.vertices.len();
        if n == 0 || self.tau.iter().enumerate().any(|(k, &t)| k != t) {
            return None;
        }
        let loops: Vec<usize> = self.arrows.iter().filter(|(a, b)| a == b).map(|&(a, _)| a).collect();
        if loops.len() != 1 || self.arrows.len() != 1 + 2 * (n - 1) {
            return None;
        }
        let mut order = vec![loops[0]];
        let mut seen = vec![false; n];
        seen[loops[0]] = true;
        while order.len() < n {
            let last = *order.last().unwrap();
            let next: Vec<usize> = (0..n)
                .filter(|&w| !seen[w] && self.arrows.contains(&(last, w)) && self.arrows.contains(&(w, last)))
                .collect();
            if next.len() != 1 {
                return None;
            }
            seen[next[0]] = true;
            order.push(next[0]);
        }
        let expected: BTreeSet<(usize, usize)> = order
            .windows(2)
            .flat_map(|w| [(w[0], w[1]), (w[1], w[0])])
            .chain([(order[0], order[0])])
            .collect();
        let actual: BTreeSet<(usize, usize)> = self.arrows.iter().copied().collect();
        (expected == actual).then_some(n)
    }
}

struct Scan {
    lo: i64,
    hi: i64,
    hits: Vec<(i64, DerivedIndec)>,
}

impl OrbitCategory {
    pub fn new(quiver: Quiver, functor: FunctorWord) -> Result<Self> {
        Self::with_derived(Arc::new(DerivedCategory::new(quiver)?), functor)
    }

    pub fn with_derived(dc: Arc<DerivedCategory>, functor: FunctorWord) -> Result<Self> {
        if functor.is_identity() {
            return Err(Error::DegenerateFunctor);
        }
        let h = dc.coxeter_number() as i64;
        let bound = (h + 2) * (functor.tau.abs() + functor.shift.abs() + 2) + 8;
        Ok(OrbitCategory {
            drift_h: functor.shift * h - 2 * functor.tau,
            h,
            bound,
            dc,
            functor,
            canonical: RwLock::new(HashMap::new()),
            objects: OnceLock::new(),
        })
    }

    pub fn derived(&self) -> &DerivedCategory {
        &self.dc
    }

    pub fn functor(&self) -> &FunctorWord {
        &self.functor
    }

    /// Scan bound `(h+2)(|a|+|b|+2) + 8` on `|n - n₀|`.
    pub fn certified_bound(&self) -> i64 {
        self.bound
    }

    /// Average shift gained per application of `F`, as `(r·h, h)`.
    pub fn drift(&self) -> (i64, i64) {
        (self.drift_h, self.h)
    }

    /// `Fᵏ` on ℤQ.
    pub fn power_vertex(&self, v: ZQVertex, k: i64) -> ZQVertex {
        let moved = translate(v, k * self.functor.tau);
        self.dc.dictionary().shift_vertex(moved, k * self.functor.shift)
    }

    pub fn power(&self, x: &DerivedIndec, k: i64) -> DerivedIndec {
        self.dc.indec_at(self.power_vertex(x.coord, k))
    }

    /// Period of `F` on objects when the drift vanishes.
    fn period(&self, v: ZQVertex) -> Result<i64> {
        let mut z = self.power_vertex(v, 1);
        let mut k = 1;
        while z != v {
            z = self.power_vertex(z, 1);
            k += 1;
            if k > 2 * self.h + 2 {
                return Err(Error::Internal(format!("F-orbit of {v} did not close")));
            }
        }
        Ok(k)
    }

    /// All `k` with `shift(Fᵏy)` in `[lo, hi]`, with the scanned window.
    fn scan(&self, y: ZQVertex, lo: i64, hi: i64) -> Result<Scan> {
        debug_assert!(self.drift_h != 0);
        let shift = |z: ZQVertex| self.dc.dictionary().resolve(z).1;
        let center = (lo + hi) as f64 / 2.0;
        let k0 = ((center - shift(y) as f64) * self.h as f64 / self.drift_h as f64).round() as i64;
        let up = self.drift_h > 0;
        let mut hits = Vec::new();
        let mut ends = [k0, k0];
        for (e, step) in [(0usize, 1i64), (1, -1)] {
            let rising = up == (step > 0);
            let mut k = if step > 0 { k0 } else { k0 - 1 };
            let mut z = self.power_vertex(y, k);
            loop {
                if (k - k0).abs() > self.bound {
                    return Err(Error::CertifiedBoundExceeded {
                        bound: self.bound,
                        partial: hits.len(),
                    });
                }
                let s = shift(z);
                if (lo..=hi).contains(&s) {
                    hits.push((k, self.dc.indec_at(z)));
                }
                let done = if rising {
                    s >= hi + SCAN_MARGIN
                } else {
                    s <= lo - SCAN_MARGIN
                };
                if done {
                    ends[e] = k;
                    break;
                }
                k += step;
                z = self.power_vertex(z, step);
            }
        }
        hits.sort_by_key(|(k, _)| *k);
        Ok(Scan {
            lo: ends[1].min(ends[0]),
            hi: ends[0].max(ends[1]),
            hits,
        })
    }

    fn canonical_window_top(&self) -> i64 {
        (self.drift_h.abs() + self.h - 1) / self.h + SCAN_MARGIN
    }

    /// The orbit element with least `(shift, p, i)` among those with
    /// shift `>= 0`; for zero drift, the least element of the (finite) orbit.
    pub fn canonical_rep(&self, x: &DerivedIndec) -> Result<DerivedIndec> {
        if let Some(hit) = self.canonical.read().expect("orbit cache poisoned").get(&x.coord) {
            return Ok(hit.clone());
        }
        let rep = if self.drift_h == 0 {
            let period = self.period(x.coord)?;
            (0..period)
                .map(|k| self.power(x, k))
                .min_by_key(DerivedIndec::key)
                .expect("non-empty orbit")
        } else {
            let scan = self.scan(x.coord, 0, self.canonical_window_top())?;
            scan.hits
                .into_iter()
                .map(|(_, z)| z)
                .min_by_key(DerivedIndec::key)
                .ok_or_else(|| Error::Internal(format!("orbit of {x} misses the canonical window")))?
        };
        self.canonical
            .write()
            .expect("orbit cache poisoned")
            .insert(x.coord, rep.clone());
        Ok(rep)
    }

    pub fn canonical_vertex(&self, v: ZQVertex) -> Result<DerivedIndec> {
        self.canonical_rep(&self.dc.indec_at(v))
    }

    /// The canonical representatives, sorted by `(shift, p, i)`.
    pub fn objects(&self) -> Result<&[DerivedIndec]> {
        if let Some(objs) = self.objects.get() {
            return Ok(objs);
        }
        if self.drift_h == 0 {
            return Err(Error::HypothesesFail(format!(
                "F = {} has finite order on objects, so there are infinitely many orbits",
                self.functor
            )));
        }
        let mut set = BTreeMap::new();
        for s in 0..=self.canonical_window_top() {
            for (_, d) in self.dc.dictionary().modules() {
                let rep = self.canonical_rep(&self.dc.indec(&d, s)?)?;
                set.insert(rep.key(), rep);
            }
        }
        Ok(self.objects.get_or_init(|| set.into_values().collect()))
    }

    pub fn object_index(&self, x: &DerivedIndec) -> Result<usize> {
        let rep = self.canonical_rep(x)?;
        self.objects()?
            .iter()
            .position(|o| *o == rep)
            .ok_or_else(|| Error::Internal(format!("{rep} missing from the object list")))
    }

    pub fn check_conditions(&self) -> Result<ConditionReport> {
        let modules: Vec<DerivedIndec> = self
            .dc
            .dictionary()
            .modules()
            .into_iter()
            .map(|(v, _)| self.dc.indec_at(v))
            .collect();
        let functor = self.functor.normalized();
        if self.drift_h == 0 {
            let mut visits = Vec::new();
            for u in &modules {
                let period = self.period(u.coord)?;
                let indices = (0..period).filter(|&k| self.power(u, k).shift == 0).collect();
                visits.push(HeartVisits {
                    module: u.clone(),
                    indices,
                });
            }
            return Ok(ConditionReport {
                functor,
                condition2: Condition2 {
                    passed: false,
                    message: "F has finite order on objects: the listed i recur periodically, so infinitely many FⁱU lie in the heart".into(),
                    visits,
                },
                condition3: Condition3 {
                    passed: false,
                    message: "every F-orbit is finite, so the shifts S^n U of a fixed module lie in infinitely many orbits and no N bounds them".into(),
                    bound: None,
                    witnesses: Vec::new(),
                },
            });
        }
        let mut visits = Vec::new();
        let mut c2_failure = None;
        for u in &modules {
            match self.scan(u.coord, 0, 0) {
                Ok(scan) => {
                    let indices: Vec<i64> = scan.hits.iter().map(|(k, _)| *k).collect();
                    for &k in &indices {
                        let direct = self.dc.apply(&self.functor.pow(k), u);
                        if direct.shift != 0 {
                            return Err(Error::Internal(format!("F^{k} {u} left the heart on recheck")));
                        }
                    }
                    visits.push(HeartVisits {
                        module: u.clone(),
                        indices,
                    });
                }
                Err(e @ Error::CertifiedBoundExceeded { .. }) => {
                    c2_failure = Some(format!("{u}: {e}"));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let condition2 = Condition2 {
            passed: c2_failure.is_none(),
            message: c2_failure.unwrap_or_else(|| "each FⁱU meets the heart for finitely many i".into()),
            visits,
        };
        let mut witnesses = Vec::new();
        for x in self.objects()? {
            let back = self.dc.indec(&x.dimv, x.shift)?;
            if back.coord != x.coord {
                return Err(Error::Internal(format!(
                    "S^{} of {} is not {}",
                    x.shift, x.dimv, x.coord
                )));
            }
            witnesses.push(ShiftWitness {
                orbit: x.clone(),
                n: x.shift,
                module: x.dimv.clone(),
            });
        }
        let bound = witnesses.iter().map(|w| w.n).max();
        Ok(ConditionReport {
            functor,
            condition2,
            condition3: Condition3 {
                passed: true,
                message: format!("every orbit contains some S^n U with 0 <= n <= {}", bound.unwrap_or(0)),
                bound,
                witnesses,
            },
        })
    }

    /// `⊕ₙ Hom(X, FⁿY)` from the mesh category.
    pub fn orbit_hom(&self, x: &DerivedIndec, y: &DerivedIndec) -> Result<OrbitHom> {
        let mesh = self.dc.mesh();
        let mut components = BTreeMap::new();
        if self.drift_h == 0 {
            let period = self.period(y.coord)?;
            for k in 0..period {
                if mesh.hom_dim(x.coord, self.power_vertex(y.coord, k))? > 0 {
                    return Err(Error::HypothesesFail(format!(
                        "Hom({}, F^{k} {}) != 0 and F has finite order, so the graded Hom is infinite",
                        x.coord, y.coord
                    )));
                }
            }
            return Ok(OrbitHom {
                source: x.clone(),
                target: y.clone(),
                components,
                total_dim: 0,
                window: (0, period - 1),
            });
        }
        let scan = self.scan(y.coord, x.shift, x.shift + 1)?;
        let mut total = 0;
        for k in scan.lo - SCAN_MARGIN..=scan.hi + SCAN_MARGIN {
            let target = self.power_vertex(y.coord, k);
            let dim = mesh.hom_dim(x.coord, target)?;
            if dim == 0 {
                continue;
            }
            if k < scan.lo || k > scan.hi {
                return Err(Error::CertifiedBoundExceeded {
                    bound: self.bound,
                    partial: total,
                });
            }
            total += dim;
            components.insert(k, mesh.hom_basis(x.coord, target)?);
        }
        Ok(OrbitHom {
            source: x.clone(),
            target: y.clone(),
            components,
            total_dim: total,
            window: (scan.lo, scan.hi),
        })
    }

    /// Total of `⊕ₙ Hom(X, FⁿY)` with the chosen Hom oracle.
    pub fn orbit_hom_total(&self, x: &DerivedIndec, y: &DerivedIndec, oracle: Oracle) -> Result<usize> {
        match oracle {
            Oracle::Mesh => Ok(self.orbit_hom(x, y)?.total_dim),
            Oracle::Rep => {
                if self.drift_h == 0 {
                    return Ok(self.orbit_hom(x, y)?.total_dim);
                }
                let scan = self.scan(y.coord, x.shift, x.shift + 1)?;
                let mut total = 0;
                for k in scan.lo..=scan.hi {
                    total += self.dc.hom_dim(Oracle::Rep, x, &self.power(y, k))?;
                }
                Ok(total)
            }
        }
    }

    pub fn identity(&self, x: &DerivedIndec) -> OrbitMorphism {
        OrbitMorphism {
            source: x.coord,
            target: x.coord,
            degree: 0,
            morphism: self.dc.mesh().identity(x.coord),
        }
    }

    /// The `k`-th basis element of the degree-`degree` piece of `hom`.
    pub fn basis_element(&self, hom: &OrbitHom, degree: i64, k: usize) -> Result<OrbitMorphism> {
        let space = hom
            .components
            .get(&degree)
            .ok_or_else(|| Error::Composition(format!("no component of degree {degree}")))?;
        Ok(OrbitMorphism {
            source: hom.source.coord,
            target: hom.target.coord,
            degree,
            morphism: self.dc.mesh().basis_element(space.source, space.target, k)?,
        })
    }

    /// `Fⁿ(g) ∘ f` for `f` of degree `n`.
    pub fn compose(&self, f: &OrbitMorphism, g: &OrbitMorphism) -> Result<OrbitMorphism> {
        if f.target != g.source {
            return Err(Error::Composition(format!(
                "f ends at the orbit of {} but g starts at {}",
                f.target, g.source
            )));
        }
        let n = f.degree;
        let morphism = self
            .dc
            .mesh()
            .compose_mapped(&f.morphism, &g.morphism, |v| Ok(self.power_vertex(v, n)))?;
        Ok(OrbitMorphism {
            source: f.source,
            target: g.target,
            degree: n + g.degree,
            morphism,
        })
    }

    /// Least positive `d <= d_max` with `dim Hom(X, Y) = dim Hom(Y, S^d X)`
    /// for all pairs of objects. A dimension-level necessary condition only.
    pub fn cy_probe(&self, d_max: usize) -> Result<CyProbe> {
        let objects = self.objects()?;
        let n = objects.len();
        let mut totals = vec![vec![0usize; n]; n];
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                totals[i][j] = self.orbit_hom(x, y)?.total_dim;
            }
        }
        let mut compatible = Vec::new();
        for d in 0..=d_max {
            let shift = FunctorWord::new(0, d as i64);
            let images: Vec<usize> = objects
                .iter()
                .map(|x| self.object_index(&self.dc.apply(&shift, x)))
                .collect::<Result<_>>()?;
            if (0..n).all(|i| (0..n).all(|j| totals[i][j] == totals[j][images[i]])) {
                compatible.push(d);
            }
        }
        Ok(CyProbe {
            dimension: compatible.iter().copied().find(|&d| d > 0),
            compatible,
        })
    }

    pub fn tau_identity_check(&self) -> Result<TauIdentityReport> {
        let tau = FunctorWord::new(1, 0);
        let mut moved = Vec::new();
        for x in self.objects()? {
            let t = self.canonical_rep(&self.dc.apply(&tau, x))?;
            if t != *x {
                moved.push((x.clone(), t));
            }
        }
        let h = self.dc.coxeter_number();
        let s2 = FunctorWord::new(0, 2);
        let th = FunctorWord::new(-(h as i64), 0);
        let s2_identity = self
            .dc
            .window(-(h as i64)..=h as i64)
            .iter()
            .all(|x| self.dc.apply(&s2, x) == self.dc.apply(&th, x));
        Ok(TauIdentityReport {
            tau_trivial: moved.is_empty(),
            moved,
            h,
            s2_identity,
        })
    }

    pub fn end_algebra(&self, object: &DerivedObject) -> Result<EndAlgebra> {
        let summands: Vec<DerivedIndec> = object
            .summands
            .iter()
            .map(|x| self.canonical_rep(x))
            .collect::<Result<_>>()?;
        let mut homs = BTreeMap::new();
        let mut basis = Vec::new();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut graded_dims = BTreeMap::new();
        for (s, x) in summands.iter().enumerate() {
            for (t, y) in summands.iter().enumerate() {
                let hom = self.orbit_hom(x, y)?;
                for (&degree, space) in &hom.components {
                    *graded_dims.entry(degree).or_insert(0) += space.dim();
                    for (k, path) in space.basis.iter().enumerate() {
                        index.insert((s, t, degree, k), basis.len());
                        basis.push(EndBasisElement {
                            source: s,
                            target: t,
                            degree,
                            index: k,
                            path: path.to_string(),
                            identity: degree == 0 && path.is_empty(),
                        });
                        morphisms.push(self.basis_element(&hom, degree, k)?);
                    }
                }
                homs.insert((s, t), hom);
            }
        }
        let mut table = vec![vec![Vec::new(); basis.len()]; basis.len()];
        for (i, ei) in basis.iter().enumerate() {
            for (j, ej) in basis.iter().enumerate() {
                if ei.target != ej.source {
                    continue;
                }
                let product = self.compose(&morphisms[i], &morphisms[j])?;
                for (k, c) in product.morphism.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let at = index
                        .get(&(ei.source, ej.target, product.degree, k))
                        .ok_or_else(|| Error::Internal(format!("product e{j}∘e{i} lands outside the basis")))?;
                    table[i][j].push((*at, c.clone()));
                }
            }
        }
        Ok(EndAlgebra {
            summands,
            basis,
            graded_dims,
            table,
        })
    }

    /// Vertices are the objects; arrows descend from ℤQ.
    pub fn ar_quiver(&self) -> Result<ArQuiver> {
        let vertices = self.objects()?.to_vec();
        let mut arrows = Vec::new();
        let mut tau = Vec::new();
        for (k, x) in vertices.iter().enumerate() {
            for w in zq_arrows(self.dc.quiver(), x.coord).outgoing {
                arrows.push((k, self.object_index(&self.dc.indec_at(w))?));
            }
            tau.push(self.object_index(&self.dc.indec_at(translate(x.coord, 1)))?);
        }
        arrows.sort();
        Ok(ArQuiver { vertices, arrows, tau })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oc(q: Quiver, w: &str) -> OrbitCategory {
        OrbitCategory::new(q, FunctorWord::parse(w).unwrap()).unwrap()
    }

    #[test]
    fn identity_functor_is_rejected() {
        let e = OrbitCategory::new(Quiver::linear_a(2), FunctorWord::parse("t*t^-1").unwrap());
        assert_eq!(e.unwrap_err(), Error::DegenerateFunctor);
    }

    #[test]
    fn s2_representatives_reduce_shift_mod_two() {
        let c = oc(Quiver::linear_a(2), "S^2");
        let x = c.derived().indec(&DimVector(vec![1, 0]), 3).unwrap();
        let r = c.canonical_rep(&x).unwrap();
        assert_eq!(r.shift, 1);
        assert_eq!(r.dimv, x.dimv);
        assert_eq!(c.canonical_rep(&r).unwrap(), r);
    }

    #[test]
    fn cluster_category_counts() {
        let a2 = oc(Quiver::linear_a(2), "t^-1*S");
        assert_eq!(a2.objects().unwrap().len(), 5);
        let x = a2.derived().indec(&DimVector(vec![1, 1]), 1).unwrap();
        assert!(a2.canonical_rep(&x).unwrap().shift <= 1);
        let a3 = oc(Quiver::linear_a(3), "t^-1*S");
        assert_eq!(a3.objects().unwrap().len(), 9);
        let r = a3.check_conditions().unwrap();
        assert!(r.passed());
        assert_eq!(r.condition3.bound, Some(1));
    }

    #[test]
    fn dual_numbers() {
        let c = oc(Quiver::linear_a(2), "v");
        let objs = c.objects().unwrap().to_vec();
        assert_eq!(objs.len(), 1);
        let hom = c.orbit_hom(&objs[0], &objs[0]).unwrap();
        assert_eq!(hom.graded_dims(), BTreeMap::from([(0, 1), (1, 1)]));
        let end = c.end_algebra(&objs.clone().into()).unwrap();
        assert_eq!(end.dim(), 2);
        let eps = end.basis.iter().position(|e| e.degree == 1).unwrap();
        assert!(end.table[eps][eps].is_empty());
        assert!(end.is_associative());
        assert!(end.unit_is_neutral());
    }

    #[test]
    fn preprojective_dimensions() {
        for (n, dim) in [(1, 1), (2, 4), (3, 10)] {
            let c = oc(Quiver::linear_a(n), "t");
            let p: Vec<DerivedIndec> = (1..=n).map(|i| c.derived().projective(i)).collect();
            let end = c.end_algebra(&p.into()).unwrap();
            assert_eq!(end.dim(), dim, "A{n}");
            assert!(end.is_associative());
            assert!(end.unit_is_neutral());
        }
    }

    #[test]
    fn cy_dimensions() {
        assert_eq!(
            oc(Quiver::linear_a(3), "t^-1*S").cy_probe(4).unwrap().dimension,
            Some(2)
        );
        assert_eq!(oc(Quiver::linear_a(3), "t").cy_probe(4).unwrap().dimension, Some(1));
        assert_eq!(oc(Quiver::linear_a(4), "t^2*S").cy_probe(4).unwrap().dimension, Some(1));
    }

    #[test]
    fn ln_structure() {
        for n in 1..=2usize {
            let c = oc(Quiver::linear_a(2 * n), &format!("t^{n}*S"));
            assert!(c.check_conditions().unwrap().passed());
            assert!(c.tau_identity_check().unwrap().passed());
            assert_eq!(c.ar_quiver().unwrap().ln_rank(), Some(n));
        }
        let cluster = oc(Quiver::linear_a(3), "t^-1*S");
        assert!(!cluster.tau_identity_check().unwrap().tau_trivial);
    }

    #[test]
    fn cluster_a2_ar_quiver_is_one_tau_cycle() {
        let ar = oc(Quiver::linear_a(2), "t^-1*S").ar_quiver().unwrap();
        assert_eq!(ar.vertices.len(), 5);
        let mut v = 0;
        for step in 1..=5 {
            v = ar.tau[v];
            assert_eq!(v == 0, step == 5);
        }
    }

    #[test]
    fn finite_order_functor() {
        let c = oc(Quiver::linear_a(1), "v");
        assert!(!c.check_conditions().unwrap().condition2.passed);
        assert!(c.objects().is_err());
    }

    #[test]
    fn a1_mod_tau_has_one_object() {
        let c = oc(Quiver::linear_a(1), "t");
        assert!(c.check_conditions().unwrap().passed());
        let objects = c.objects().unwrap().to_vec();
        assert_eq!(objects.len(), 1);
        assert_eq!(c.end_algebra(&objects.into()).unwrap().dim(), 1);
        assert_eq!(c.cy_probe(6).unwrap().dimension, Some(1));
    }

    #[test]
    fn s2_orbit_category() {
        let c = oc(Quiver::linear_a(3), "S^2");
        assert!(c.check_conditions().unwrap().passed());
        let s = c.derived().indec(&DimVector(vec![0, 0, 1]), 0).unwrap();
        assert_eq!(c.orbit_hom(&s, &s).unwrap().total_dim, 1);
    }
}
