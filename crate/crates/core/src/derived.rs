//! Indecomposables of `D^b(kQ)` in two coordinate systems and the standard
//! autoequivalences generated by `τ` and `S`.
//!
//! An indecomposable is `U[n]` for an indecomposable module `U`, so it is
//! determined by `(dim U, n)`. It is also a vertex `(p, i)` of ℤQ, with
//! `(p, i) = τ^{-p} P_i`. The [`Dictionary`] translates between the two by
//! knitting along τ-orbits from the projective slice.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::{translate, window, MeshCategory, ZQVertex};
use crate::quiver::{cartan_data, coxeter_apply, CartanData, DimVector, Quiver, Vertex};
use crate::rep::RepOracle;

/// `τ^tau S^shift`. Powers of `τ`, `S` and `ν = Sτ` commute, so any word in
/// them normalizes to one such pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctorWord {
    pub tau: i64,
    pub shift: i64,
    /// The text the word was parsed from, kept for reports.
    pub text: String,
}

impl FunctorWord {
    pub fn new(tau: i64, shift: i64) -> Self {
        let mut w = FunctorWord {
            tau,
            shift,
            text: String::new(),
        };
        w.text = w.normalized();
        w
    }

    pub fn identity() -> Self {
        FunctorWord::new(0, 0)
    }

    /// The Nakayama (Serre) functor `ν = Sτ`.
    pub fn nakayama() -> Self {
        FunctorWord::new(1, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.tau == 0 && self.shift == 0
    }

    pub fn pow(&self, n: i64) -> FunctorWord {
        FunctorWord::new(self.tau * n, self.shift * n)
    }

    pub fn then(&self, other: &FunctorWord) -> FunctorWord {
        FunctorWord::new(self.tau + other.tau, self.shift + other.shift)
    }

    /// Canonical text, e.g. `t^-1*S`.
    pub fn normalized(&self) -> String {
        let part = |name: &str, e: i64| match e {
            0 => None,
            1 => Some(name.to_string()),
            e => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [part("t", self.tau), part("S", self.shift)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses `t`, `S`, `v` factors with optional `^<int>`, joined by `*`.
    /// Whitespace is ignored; positions in errors are character offsets.
    pub fn parse(text: &str) -> Result<FunctorWord> {
        let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        let err = |position: usize, message: &str| Error::FunctorGrammar {
            position,
            message: message.to_string(),
        };
        if chars.is_empty() {
            return Err(err(0, "empty functor word"));
        }
        let (mut tau, mut shift) = (0i64, 0i64);
        let mut k = 0;
        loop {
            let Some(&(pos, c)) = chars.get(k) else {
                let end = chars.last().map_or(0, |&(p, _)| p + 1);
                return Err(err(end, "expected a factor t, S or v"));
            };
            let (dt, ds) = match c {
                't' => (1, 0),
                'S' => (0, 1),
                'v' => (1, 1),
                _ => return Err(err(pos, &format!("unexpected {c:?}, expected t, S or v"))),
            };
            k += 1;
            let mut exponent = 1i64;
            if let Some(&(caret, '^')) = chars.get(k) {
                k += 1;
                let start = k;
                if matches!(chars.get(k), Some((_, '-' | '+'))) {
                    k += 1;
                }
                while matches!(chars.get(k), Some((_, d)) if d.is_ascii_digit()) {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                exponent = digits.parse().map_err(|_| {
                    err(
                        chars.get(start).map_or(caret + 1, |&(p, _)| p),
                        "expected an integer exponent",
                    )
                })?;
            }
            tau += dt * exponent;
            shift += ds * exponent;
            match chars.get(k) {
                None => break,
                Some(&(_, '*')) => k += 1,
                Some(&(p, c)) => return Err(err(p, &format!("unexpected {c:?}, expected '*' or end"))),
            }
        }
        Ok(FunctorWord {
            tau,
            shift,
            text: text.to_string(),
        })
    }
}

impl fmt::Display for FunctorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.normalized())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DerivedIndec {
    pub coord: ZQVertex,
    pub dimv: DimVector,
    pub shift: i64,
}

impl DerivedIndec {
    /// Ordering used for canonical orbit representatives.
    pub fn key(&self) -> (i64, i64, usize) {
        (self.shift, self.coord.p, self.coord.i)
    }

    pub fn label(&self) -> String {
        format!("{}@{}", self.dimv, self.shift)
    }
}

impl fmt::Display for DerivedIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}@{}", self.coord, self.dimv, self.shift)
    }
}

/// A finite direct sum of indecomposables; empty is the zero object.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DerivedObject {
    pub summands: Vec<DerivedIndec>,
}

impl From<Vec<DerivedIndec>> for DerivedObject {
    fn from(summands: Vec<DerivedIndec>) -> Self {
        DerivedObject { summands }
    }
}

/// ℤQ coordinates ↔ (dimension vector, shift).
pub struct Dictionary {
    quiver: Quiver,
    cartan: CartanData,
    proj: Vec<DimVector>,
    inj: Vec<DimVector>,
    /// `inj_coord[i - 1]` is the ℤQ vertex of `I_i`.
    inj_coord: Vec<ZQVertex>,
    /// `shift_preimage[j - 1] = i` when `I_i` sits on the τ-orbit of `P_j`.
    shift_preimage: Vec<Vertex>,
    modules: HashMap<DimVector, ZQVertex>,
    cache: RwLock<HashMap<ZQVertex, (DimVector, i64)>>,
}

impl fmt::Debug for Dictionary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dictionary")
            .field("quiver", &self.quiver.content_hash())
            .finish()
    }
}

impl Dictionary {
    pub fn new(quiver: Quiver) -> Result<Self> {
        let cartan = cartan_data(&quiver)?;
        let n = quiver.n();
        let proj: Vec<DimVector> = (1..=n).map(|v| quiver.projective_dim(v)).collect();
        let inj: Vec<DimVector> = (1..=n).map(|v| quiver.injective_dim(v)).collect();
        let h = cartan.coxeter_number() as i64;
        let mut modules = HashMap::new();
        let mut inj_coord = vec![ZQVertex::new(0, 0); n];
        let mut shift_preimage = vec![0; n];
        for j in 1..=n {
            let mut d = proj[j - 1].clone();
            let mut p = 0;
            loop {
                if modules.insert(d.clone(), ZQVertex::new(p, j)).is_some() {
                    return Err(Error::Internal(format!("module {d:?} reached twice while knitting")));
                }
                if let Some(i) = inj.iter().position(|x| *x == d) {
                    inj_coord[i] = ZQVertex::new(p, j);
                    shift_preimage[j - 1] = i + 1;
                    break;
                }
                d = coxeter_apply(&cartan, &d, -1);
                p += 1;
                if p > h || !d.is_nonnegative() {
                    return Err(Error::Internal(format!(
                        "τ-orbit of P_{j} left the module category without meeting an injective"
                    )));
                }
            }
        }
        if modules.len() != cartan.positive_roots.len() {
            return Err(Error::Internal(format!(
                "knitting found {} modules, expected {}",
                modules.len(),
                cartan.positive_roots.len()
            )));
        }
        Ok(Dictionary {
            quiver,
            cartan,
            proj,
            inj,
            inj_coord,
            shift_preimage,
            modules,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn projective(&self, v: Vertex) -> &DimVector {
        &self.proj[v - 1]
    }

    pub fn injective(&self, v: Vertex) -> &DimVector {
        &self.inj[v - 1]
    }

    /// One knitting step τ⁻¹.
    pub fn step_forward(&self, (d, n): (DimVector, i64)) -> (DimVector, i64) {
        match self.inj.iter().position(|x| *x == d) {
            Some(j) => (self.proj[j].clone(), n + 1),
            None => (coxeter_apply(&self.cartan, &d, -1), n),
        }
    }

    /// One knitting step τ.
    pub fn step_backward(&self, (d, n): (DimVector, i64)) -> (DimVector, i64) {
        match self.proj.iter().position(|x| *x == d) {
            Some(j) => (self.inj[j].clone(), n - 1),
            None => (coxeter_apply(&self.cartan, &d, 1), n),
        }
    }

    /// `(p, i) ↦ (dim U, n)` with `τ^{-p} P_i ≅ U[n]`.
    pub fn resolve(&self, v: ZQVertex) -> (DimVector, i64) {
        if let Some(hit) = self.cache.read().expect("dictionary cache poisoned").get(&v) {
            return hit.clone();
        }
        let mut cur = (self.proj[v.i - 1].clone(), 0);
        for _ in 0..v.p.unsigned_abs() {
            cur = if v.p > 0 {
                self.step_forward(cur)
            } else {
                self.step_backward(cur)
            };
        }
        self.cache
            .write()
            .expect("dictionary cache poisoned")
            .insert(v, cur.clone());
        cur
    }

    /// `S` on ℤQ coordinates: `S(p, i) = (p + p_i + 1, j)` where
    /// `I_i = (p_i, j)`.
    pub fn shift_vertex(&self, v: ZQVertex, k: i64) -> ZQVertex {
        let mut cur = v;
        for _ in 0..k.unsigned_abs() {
            cur = if k > 0 {
                let c = self.inj_coord[cur.i - 1];
                ZQVertex::new(cur.p + c.p + 1, c.i)
            } else {
                let i = self.shift_preimage[cur.i - 1];
                let c = self.inj_coord[i - 1];
                ZQVertex::new(cur.p - c.p - 1, i)
            };
        }
        cur
    }

    /// `(dim U, n) ↦ (p, i)`.
    pub fn locate(&self, d: &DimVector, n: i64) -> Result<ZQVertex> {
        let base = *self.modules.get(d).ok_or_else(|| Error::NotARoot(d.clone()))?;
        Ok(self.shift_vertex(base, n))
    }

    /// Module indecomposables with their ℤQ coordinates, sorted by coordinate.
    pub fn modules(&self) -> Vec<(ZQVertex, DimVector)> {
        let mut out: Vec<_> = self.modules.iter().map(|(d, v)| (*v, d.clone())).collect();
        out.sort();
        out
    }
}

/// Which Hom oracle to use for indecomposables of `D^b(kQ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Mesh,
    Rep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityFailure {
    pub x: ZQVertex,
    pub y: ZQVertex,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub oracle: Oracle,
    pub pairs_checked: usize,
    pub failures: Vec<DualityFailure>,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionalCyReport {
    pub h: usize,
    pub objects_checked: usize,
    /// `(X, ν^h X, S^{h-2} X)` where the two sides differ.
    pub failures: Vec<(ZQVertex, ZQVertex, ZQVertex)>,
}

impl FractionalCyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `D^b(kQ)` for a Dynkin quiver: dictionary plus both Hom oracles.
#[derive(Debug)]
pub struct DerivedCategory {
    quiver: Quiver,
    dict: Dictionary,
    mesh: MeshCategory,
    rep: RepOracle,
}

impl DerivedCategory {
    pub fn new(quiver: Quiver) -> Result<Self> {
        Ok(DerivedCategory {
            dict: Dictionary::new(quiver.clone())?,
            mesh: MeshCategory::new(quiver.clone())?,
            rep: RepOracle::new(quiver.clone())?,
            quiver,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cartan(&self) -> &CartanData {
        self.dict.cartan()
    }

    pub fn coxeter_number(&self) -> usize {
        self.cartan().coxeter_number()
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn mesh(&self) -> &MeshCategory {
        &self.mesh
    }

    pub fn rep(&self) -> &RepOracle {
        &self.rep
    }

    pub fn indec_at(&self, coord: ZQVertex) -> DerivedIndec {
        let (dimv, shift) = self.dict.resolve(coord);
        DerivedIndec { coord, dimv, shift }
    }

    pub fn indec(&self, dimv: &DimVector, shift: i64) -> Result<DerivedIndec> {
        let coord = self.dict.locate(dimv, shift)?;
        Ok(DerivedIndec {
            coord,
            dimv: dimv.clone(),
            shift,
        })
    }

    pub fn projective(&self, v: Vertex) -> DerivedIndec {
        self.indec_at(ZQVertex::new(0, v))
    }

    pub fn window(&self, p: RangeInclusive<i64>) -> Vec<DerivedIndec> {
        window(&self.quiver, *p.start(), *p.end())
            .into_iter()
            .map(|v| self.indec_at(v))
            .collect()
    }

    /// `τ^a` by translation, then `S^b` through the dictionary.
    pub fn apply(&self, w: &FunctorWord, x: &DerivedIndec) -> DerivedIndec {
        let moved = self.indec_at(translate(x.coord, w.tau));
        if w.shift == 0 {
            return moved;
        }
        let shift = moved.shift + w.shift;
        let coord = self
            .dict
            .locate(&moved.dimv, shift)
            .expect("dimension vectors produced by the dictionary are roots");
        DerivedIndec {
            coord,
            dimv: moved.dimv,
            shift,
        }
    }

    pub fn apply_vertex(&self, w: &FunctorWord, v: ZQVertex) -> ZQVertex {
        self.apply(w, &self.indec_at(v)).coord
    }

    /// `dim Hom(x, y)` between indecomposables.
    pub fn hom_dim(&self, oracle: Oracle, x: &DerivedIndec, y: &DerivedIndec) -> Result<usize> {
        match oracle {
            Oracle::Mesh => self.mesh.hom_dim(x.coord, y.coord),
            Oracle::Rep => match y.shift - x.shift {
                0 => self.rep.hom(&x.dimv, &y.dimv),
                1 => self.rep.ext1(&x.dimv, &y.dimv),
                _ => Ok(0),
            },
        }
    }

    /// Bilinear extension of the hereditary formula
    /// `Hom(M[m], N[n]) = Ext^{n-m}(M, N)` over summands.
    pub fn derived_hom_dim(&self, x: &DerivedObject, y: &DerivedObject) -> Result<usize> {
        let mut total = 0;
        for a in &x.summands {
            for b in &y.summands {
                total += self.hom_dim(Oracle::Rep, a, b)?;
            }
        }
        Ok(total)
    }

    /// `dim Hom(X, Y) = dim Hom(Y, νX)` for all pairs in the window.
    pub fn serre_check(&self, p: RangeInclusive<i64>, oracle: Oracle) -> Result<SerreReport> {
        let objects = self.window(p);
        let nu = FunctorWord::nakayama();
        let mut failures = Vec::new();
        let mut checked = 0;
        for x in &objects {
            let nx = self.apply(&nu, x);
            for y in &objects {
                let lhs = self.hom_dim(oracle, x, y)?;
                let rhs = self.hom_dim(oracle, y, &nx)?;
                checked += 1;
                if lhs != rhs {
                    failures.push(DualityFailure {
                        x: x.coord,
                        y: y.coord,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(SerreReport {
            oracle,
            pairs_checked: checked,
            failures,
        })
    }

    /// `ν^h X = S^{h-2} X` objectwise, with `ν` applied `h` times. `h`
    /// defaults to the Coxeter number.
    pub fn fractional_cy_check(&self, p: RangeInclusive<i64>, h: Option<usize>) -> FractionalCyReport {
        let h = h.unwrap_or_else(|| self.coxeter_number());
        let nu = FunctorWord::nakayama();
        let target_shift = FunctorWord::new(0, h as i64 - 2);
        let objects = self.window(p);
        let mut failures = Vec::new();
        for x in &objects {
            let mut lhs = x.clone();
            for _ in 0..h {
                lhs = self.apply(&nu, &lhs);
            }
            let rhs = self.apply(&target_shift, x);
            if lhs != rhs {
                failures.push((x.coord, lhs.coord, rhs.coord));
            }
        }
        FractionalCyReport {
            h,
            objects_checked: objects.len(),
            failures,
        }
    }
}
