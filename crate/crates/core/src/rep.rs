//! Explicit quiver representations over the rationals.
//!
//! This is the second, independent route to Hom dimensions: indecomposables
//! are built from positive roots with BGP reflection functors and Hom spaces
//! are null spaces of the intertwining equations.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{cartan_data, simple_reflection, CartanData, DimVector, Quiver, Vertex};

/// A representation of a quiver: a space of dimension `dim[v]` at each
/// vertex and, for each arrow `a: i -> j` (indexed as in `quiver.arrows()`),
/// a `dim(j) x dim(i)` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub quiver: Quiver,
    pub dim: DimVector,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn zero(q: &Quiver) -> Self {
        Representation {
            quiver: q.clone(),
            dim: DimVector::zero(q.n()),
            maps: q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    /// Checks that every matrix has the shape its arrow demands.
    pub fn is_well_formed(&self) -> bool {
        self.maps.len() == self.quiver.arrows().len()
            && self
                .quiver
                .arrows()
                .iter()
                .zip(&self.maps)
                .all(|(a, m)| m.rows() == self.dim.at(a.target) as usize && m.cols() == self.dim.at(a.source) as usize)
    }
}

pub fn simple(q: &Quiver, i: Vertex) -> Representation {
    let dim = DimVector::unit(q.n(), i);
    let maps = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dim.at(a.target) as usize, dim.at(a.source) as usize))
        .collect();
    Representation {
        quiver: q.clone(),
        dim,
        maps,
    }
}

/// Which sink to reflect at while descending a root to a simple root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SinkChoice {
    #[default]
    Smallest,
    Largest,
}

pub fn indec_from_root(q: &Quiver, d: &DimVector) -> Result<Representation> {
    indec_from_root_with(q, d, SinkChoice::Smallest)
}

/// Builds the indecomposable with dimension vector `d`: reflect `d` at sinks
/// until it becomes a simple root, then climb back with the source
/// reflection functors.
pub fn indec_from_root_with(q: &Quiver, d: &DimVector, choice: SinkChoice) -> Result<Representation> {
    let cartan = cartan_data(q)?;
    if !cartan.is_root(d) {
        return Err(Error::NotARoot(d.clone()));
    }
    let guard = 4 * q.n() * cartan.coxeter_number() + 16;
    let mut steps: Vec<(Quiver, Vertex)> = Vec::new();
    let mut current_q = q.clone();
    let mut current_d = d.clone();
    let simple_at = loop {
        let sinks = (1..=current_q.n()).filter(|&v| current_q.is_sink(v));
        let k = match choice {
            SinkChoice::Smallest => sinks.min(),
            SinkChoice::Largest => sinks.max(),
        }
        .expect("an acyclic quiver has a sink");
        if current_d.simple_vertex() == Some(k) {
            break k;
        }
        let next_d = simple_reflection(&cartan.symmetrized_cartan, &current_d, k);
        if !next_d.is_nonnegative() {
            return Err(Error::Internal(format!(
                "reflection of root {current_d:?} at sink {k} is not positive"
            )));
        }
        let next_q = current_q.reflect_at(k);
        steps.push((current_q, k));
        current_q = next_q;
        current_d = next_d;
        if steps.len() > guard {
            return Err(Error::Internal(format!(
                "root {d:?} did not reach a simple root within {guard} reflections"
            )));
        }
    };
    let mut rep = simple(&current_q, simple_at);
    while let Some((target_q, k)) = steps.pop() {
        rep = reflect_source(&rep, k, &target_q)?;
    }
    Ok(rep)
}

/// Source reflection functor `C⁻ₖ`: `k` is a source of `m.quiver`; the result
/// lives on `target_q`, where `k` is a sink.
pub fn reflect_source(m: &Representation, k: Vertex, target_q: &Quiver) -> Result<Representation> {
    let q = &m.quiver;
    if !q.is_source(k) {
        return Err(Error::Internal(format!("vertex {k} is not a source")));
    }
    let out: Vec<(usize, Vertex)> = q.out_arrows(k).map(|(idx, a)| (idx, a.target)).collect();
    let dk = m.dim.at(k) as usize;
    let block_sizes: Vec<usize> = out.iter().map(|&(_, t)| m.dim.at(t) as usize).collect();
    let total: usize = block_sizes.iter().sum();
    // ψ : M_k -> ⊕ M_t
    let mut psi = Matrix::zeros(total, dk);
    let mut off = 0;
    for (&(idx, _), &sz) in out.iter().zip(&block_sizes) {
        for r in 0..sz {
            for c in 0..dk {
                psi[(off + r, c)] = m.maps[idx][(r, c)].clone();
            }
        }
        off += sz;
    }
    let coker = psi.cokernel_map();
    let new_dim_k = coker.rows();
    let mut dim = m.dim.clone();
    dim.0[k - 1] = new_dim_k as i64;

    let mut maps = Vec::with_capacity(target_q.arrows().len());
    for (idx, a) in target_q.arrows().iter().enumerate() {
        if a.target == k {
            // reversed arrow t -> k: inclusion of M_t followed by the cokernel map
            let pos = out
                .iter()
                .position(|&(o, _)| o == idx)
                .ok_or_else(|| Error::Internal("reflected quiver does not match arrow order".into()))?;
            let start: usize = block_sizes[..pos].iter().sum();
            let sz = block_sizes[pos];
            let mut mat = Matrix::zeros(new_dim_k, sz);
            for r in 0..new_dim_k {
                for c in 0..sz {
                    mat[(r, c)] = coker[(r, start + c)].clone();
                }
            }
            maps.push(mat);
        } else {
            maps.push(m.maps[idx].clone());
        }
    }
    Ok(Representation {
        quiver: target_q.clone(),
        dim,
        maps,
    })
}

/// Sink reflection functor `C⁺ₖ`: `k` is a sink of `m.quiver`.
pub fn reflect_sink(m: &Representation, k: Vertex) -> Result<Representation> {
    let q = &m.quiver;
    if !q.is_sink(k) {
        return Err(Error::Internal(format!("vertex {k} is not a sink")));
    }
    let target_q = q.reflect_at(k);
    let inc: Vec<(usize, Vertex)> = q.in_arrows(k).map(|(idx, a)| (idx, a.source)).collect();
    let dk = m.dim.at(k) as usize;
    let block_sizes: Vec<usize> = inc.iter().map(|&(_, s)| m.dim.at(s) as usize).collect();
    let total: usize = block_sizes.iter().sum();
    let mut phi = Matrix::zeros(dk, total);
    let mut off = 0;
    for (&(idx, _), &sz) in inc.iter().zip(&block_sizes) {
        for r in 0..dk {
            for c in 0..sz {
                phi[(r, off + c)] = m.maps[idx][(r, c)].clone();
            }
        }
        off += sz;
    }
    let kernel = phi.nullspace();
    let new_dim_k = kernel.len();
    let mut dim = m.dim.clone();
    dim.0[k - 1] = new_dim_k as i64;
    let mut maps = Vec::with_capacity(target_q.arrows().len());
    for (idx, a) in target_q.arrows().iter().enumerate() {
        if a.source == k {
            let pos = inc
                .iter()
                .position(|&(o, _)| o == idx)
                .ok_or_else(|| Error::Internal("reflected quiver does not match arrow order".into()))?;
            let start: usize = block_sizes[..pos].iter().sum();
            let sz = block_sizes[pos];
            let mut mat = Matrix::zeros(sz, new_dim_k);
            for (c, v) in kernel.iter().enumerate() {
                for r in 0..sz {
                    mat[(r, c)] = v[start + r].clone();
                }
            }
            maps.push(mat);
        } else {
            maps.push(m.maps[idx].clone());
        }
    }
    Ok(Representation {
        quiver: target_q,
        dim,
        maps,
    })
}

/// A basis of `Hom(source, target)`: each element is one matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSolution {
    pub basis: Vec<Vec<Matrix>>,
}

impl HomSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves `φ_j · M_a = N_a · φ_i` for every arrow `a: i -> j`.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<HomSolution> {
    if m.quiver != n.quiver {
        return Err(Error::Internal(
            "Hom between representations of different quivers".into(),
        ));
    }
    let q = &m.quiver;
    let nv = q.n();
    let dm = |v: Vertex| m.dim.at(v) as usize;
    let dn = |v: Vertex| n.dim.at(v) as usize;
    let mut offsets = vec![0usize; nv + 2];
    for v in 1..=nv {
        offsets[v + 1] = offsets[v] + dn(v) * dm(v);
    }
    let unknowns = offsets[nv + 1];
    // φ_v[r][c] lives at offsets[v] + r * dm(v) + c
    let var = |v: Vertex, r: usize, c: usize| offsets[v] + r * dm(v) + c;

    let eq_count: usize = q.arrows().iter().map(|a| dn(a.target) * dm(a.source)).sum();
    let mut system = Matrix::zeros(eq_count, unknowns);
    let mut row = 0;
    for (idx, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (ma, na) = (&m.maps[idx], &n.maps[idx]);
        for r in 0..dn(j) {
            for c in 0..dm(i) {
                for k in 0..dm(j) {
                    let x = &ma[(k, c)];
                    if !num_traits::Zero::is_zero(x) {
                        system[(row, var(j, r, k))] += x;
                    }
                }
                for k in 0..dn(i) {
                    let x = &na[(r, k)];
                    if !num_traits::Zero::is_zero(x) {
                        system[(row, var(i, k, c))] -= x;
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = system.nullspace();
    let basis = kernel
        .into_iter()
        .map(|vec| {
            (1..=nv)
                .map(|v| {
                    let mut phi = Matrix::zeros(dn(v), dm(v));
                    for r in 0..dn(v) {
                        for c in 0..dm(v) {
                            phi[(r, c)] = vec[var(v, r, c)].clone();
                        }
                    }
                    phi
                })
                .collect()
        })
        .collect();
    Ok(HomSolution { basis })
}

/// `dim Ext¹(M, N) = dim Hom(M, N) - <dim M, dim N>` (hereditary).
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let hom = hom_dim(m, n)?.dim() as i64;
    let ext = hom - m.quiver.euler_form(&m.dim, &n.dim);
    if ext < 0 {
        return Err(Error::Internal(format!(
            "negative Ext dimension {ext} for {:?}, {:?}",
            m.dim, n.dim
        )));
    }
    Ok(ext as usize)
}

/// Cached Hom/Ext dimensions between indecomposables, keyed by root.
pub struct RepOracle {
    quiver: Quiver,
    cartan: CartanData,
    reps: RwLock<HashMap<DimVector, Arc<Representation>>>,
    homs: RwLock<HashMap<(DimVector, DimVector), usize>>,
}

impl std::fmt::Debug for RepOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RepOracle")
            .field("quiver", &self.quiver.content_hash())
            .finish()
    }
}

impl RepOracle {
    pub fn new(quiver: Quiver) -> Result<Self> {
        let cartan = cartan_data(&quiver)?;
        Ok(RepOracle {
            quiver,
            cartan,
            reps: RwLock::new(HashMap::new()),
            homs: RwLock::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn indecomposable(&self, d: &DimVector) -> Result<Arc<Representation>> {
        if let Some(r) = self.reps.read().expect("rep cache poisoned").get(d) {
            return Ok(r.clone());
        }
        let rep = Arc::new(indec_from_root(&self.quiver, d)?);
        Ok(self
            .reps
            .write()
            .expect("rep cache poisoned")
            .entry(d.clone())
            .or_insert(rep)
            .clone())
    }

    pub fn hom(&self, d: &DimVector, e: &DimVector) -> Result<usize> {
        let key = (d.clone(), e.clone());
        if let Some(&x) = self.homs.read().expect("rep cache poisoned").get(&key) {
            return Ok(x);
        }
        let x = hom_dim(&*self.indecomposable(d)?, &*self.indecomposable(e)?)?.dim();
        self.homs.write().expect("rep cache poisoned").insert(key, x);
        Ok(x)
    }

    pub fn ext1(&self, d: &DimVector, e: &DimVector) -> Result<usize> {
        let ext = self.hom(d, e)? as i64 - self.quiver.euler_form(d, e);
        if ext < 0 {
            return Err(Error::Internal(format!(
                "negative Ext dimension {ext} for {d:?}, {e:?}"
            )));
        }
        Ok(ext as usize)
    }
}
