//! Krull–Schmidt decomposition in the homotopy category.
//!
//! Idempotents are lifted in the algebra of chain endomorphisms; those that
//! are null-homotopic cut out contractible summands and are discarded.

use std::sync::Arc;

use super::{AMatrix, ChainMap, HomSpace, ProjComplex};
use crate::algebra::{self, Table};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::module::{left_inverse, ProjectiveSum};

/// `End_K(X)` as a structure-constant algebra over its canonical class basis.
#[derive(Clone, Debug)]
pub struct EndK {
    pub space: HomSpace,
    pub table: Table,
    pub basis: Vec<ChainMap>,
    rad: Subspace,
}

impl EndK {
    pub fn new(x: &ProjComplex) -> Result<EndK> {
        let space = HomSpace::new(x, x)?;
        let basis = space.reps();
        let n = basis.len();
        let f = x.algebra().field();
        let mut mult = Vec::with_capacity(n * n);
        for a in &basis {
            for b in &basis {
                let c = space.class(&b.then(a, x, x, x));
                mult.push(algebra::sparse(&c));
            }
        }
        let unit = if n == 0 { Vec::new() } else { space.class(&ChainMap::identity(x)) };
        let table = Table::new(f, n, mult, unit);
        let rad = if n == 0 { Subspace::zero(f, 0) } else { algebra::table_radical(&table)? };
        Ok(EndK { space, table, basis, rad })
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn radical(&self) -> &Subspace {
        &self.rad
    }

    pub fn is_local(&self) -> bool {
        self.dim() > 0 && self.rad.dim() + 1 == self.dim()
    }

    pub fn inverse(&self, c: &[Scalar]) -> Option<Vector> {
        self.table.left_mult_matrix(c).solve_vec(self.table.unit())
    }

    pub fn class(&self, m: &ChainMap) -> Vector {
        self.space.class(m)
    }

    pub fn chain_map(&self, c: &[Scalar]) -> ChainMap {
        self.space.from_class(c)
    }
}

#[derive(Clone, Debug)]
pub struct ComplexSummand {
    pub complex: ProjComplex,
    /// `Y → X`
    pub incl: ChainMap,
    /// `X → Y`, with `proj ∘ incl = id_Y`
    pub proj: ChainMap,
}

#[derive(Clone, Debug)]
pub struct ComplexDecomposition {
    pub summands: Vec<ComplexSummand>,
    /// Indices into `summands`, grouped by isomorphism in `K^b(proj A)`.
    pub classes: Vec<Vec<usize>>,
}

impl ComplexDecomposition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<&ProjComplex> {
        self.classes.iter().map(|c| &self.summands[c[0]].complex).collect()
    }
}

/// Splits an idempotent endomorphism of `⊕ P_v` by choosing top generators of its image.
fn split_projective(
    alg: &Arc<crate::algebra::Algebra>,
    src: &ProjectiveSum,
    e: &Matrix,
) -> Result<(Vec<usize>, AMatrix, AMatrix)> {
    let f = alg.field();
    let n = src.module.dim();
    let cols: Vec<Vector> = (0..n).map(|c| e.col(c)).collect();
    let img = Subspace::span(f, n, &cols);
    let (m, incl) = src.module.submodule(&img)?;
    let gens = m.top_generators()?;
    let verts: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let tgt = ProjectiveSum::new(alg, &verts);
    let images: Vec<Vector> = gens.iter().map(|g| incl.mul_vec(&g.1)).collect();
    let iota_mod = src.module.map_from_projectives(&tgt, &images);
    if iota_mod.rank() != tgt.module.dim() {
        return Err(Error::Internal("image of an idempotent is not projective".into()));
    }
    let rho_mod = left_inverse(&iota_mod)?.mul(e);
    let iota = AMatrix::from_module_matrix(alg, &tgt, src, &iota_mod);
    let rho = AMatrix::from_module_matrix(alg, src, &tgt, &rho_mod);
    Ok((verts, iota, rho))
}

/// Summand of `X` cut out by an idempotent chain endomorphism.
pub(crate) fn split_idempotent(x: &ProjComplex, eps: &ChainMap) -> Result<ComplexSummand> {
    let alg = x.algebra();
    let (lo, hi) = x.support().expect("nonzero complex");
    let mut terms = Vec::new();
    let mut iotas = Vec::new();
    let mut rhos = Vec::new();
    for i in lo..=hi {
        let src = x.projective_sum(i);
        let e = eps.comp(i, x, x).module_matrix(alg, &src, &src);
        let (v, iota, rho) = split_projective(alg, &src, &e)?;
        terms.push(v);
        iotas.push(iota);
        rhos.push(rho);
    }
    let diffs: Vec<AMatrix> = (lo..hi)
        .map(|i| {
            let k = (i - lo) as usize;
            rhos[k + 1].compose(&x.diff(i).compose(&iotas[k], alg), alg)
        })
        .collect();
    let y = ProjComplex::new_unchecked(alg.clone(), lo, terms, diffs);
    let ic: Vec<(i32, AMatrix)> = iotas.into_iter().enumerate().map(|(k, a)| (lo + k as i32, a)).collect();
    let rc: Vec<(i32, AMatrix)> = rhos.into_iter().enumerate().map(|(k, a)| (lo + k as i32, a)).collect();
    let incl = ChainMap::from_components(&y, x, &ic);
    let proj = ChainMap::from_components(x, &y, &rc);
    debug_assert!(incl.is_chain_map(&y, x) && proj.is_chain_map(x, &y));
    Ok(ComplexSummand { complex: y, incl, proj })
}

/// Converts a block-diagonal total matrix back into a chain map `X → X`.
fn chain_map_from_total(x: &ProjComplex, m: &Matrix) -> ChainMap {
    let alg = x.algebra();
    let mut out = ChainMap::zero(x, x);
    if let Some((lo, hi)) = x.support() {
        let mut off = 0;
        for i in lo..=hi {
            let p = x.projective_sum(i);
            let d = p.module.dim();
            let b = m.block(off, off, d, d);
            out.set(i, AMatrix::from_module_matrix(alg, &p, &p, &b));
            off += d;
        }
    }
    out
}

pub fn decompose_complex(x: &ProjComplex) -> Result<ComplexDecomposition> {
    if x.is_zero() {
        return Ok(ComplexDecomposition { summands: Vec::new(), classes: Vec::new() });
    }
    let f = x.algebra().field();
    let hom = HomSpace::new(x, x)?;
    let chain_basis: Vec<ChainMap> = hom.cycles().basis().iter().map(|v| hom.from_coords(v)).collect();
    let mats: Vec<Matrix> = chain_basis.iter().map(|c| c.total_matrix(x, x)).collect();
    let n = mats[0].rows();
    let (table, basis) = Table::from_matrices(f, n, &mats)?;
    let idems = algebra::primitive_idempotents(&table)?;
    let flat: Vec<Vector> = basis.iter().map(algebra::flatten).collect();
    let mut summands = Vec::new();
    for e in &idems.idempotents {
        let m = algebra::unflatten(f, n, &linalg::combine(f, n * n, e, &flat));
        let eps = chain_map_from_total(x, &m);
        if hom.is_null_homotopic(&eps) {
            continue;
        }
        summands.push(split_idempotent(x, &eps)?);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for i in 0..summands.len() {
        for c in classes.iter_mut() {
            if complex_isomorphism(&summands[c[0]].complex, &summands[i].complex)?.is_some() {
                c.push(i);
                continue 'outer;
            }
        }
        classes.push(vec![i]);
    }
    Ok(ComplexDecomposition { summands, classes })
}

fn term_profile(x: &ProjComplex) -> Vec<(i32, Vec<usize>)> {
    x.terms()
        .map(|(i, t)| {
            let mut t = t.to_vec();
            t.sort_unstable();
            (i, t)
        })
        .collect()
}

/// An isomorphism in `K^b(proj A)` between indecomposable homotopically
/// minimal complexes, with its inverse.
pub fn complex_isomorphism(a: &ProjComplex, b: &ProjComplex) -> Result<Option<(ChainMap, ChainMap)>> {
    if term_profile(a) != term_profile(b) {
        return Ok(None);
    }
    if a.is_zero() {
        return Ok(Some((ChainMap::zero(a, b), ChainMap::zero(b, a))));
    }
    let ab = HomSpace::new(a, b)?;
    let ba = HomSpace::new(b, a)?;
    if ab.dim() == 0 || ba.dim() == 0 {
        return Ok(None);
    }
    let end = EndK::new(a)?;
    let fs = ab.reps();
    let gs = ba.reps();
    for f in &fs {
        for g in &gs {
            let gf = end.class(&f.then(g, a, b, a));
            if end.radical().contains(&gf) {
                continue;
            }
            let inv = end.inverse(&gf).ok_or_else(|| Error::Internal("unit of a local ring not invertible".into()))?;
            let psi = g.then(&end.chain_map(&inv), b, a, a);
            return Ok(Some((f.clone(), psi)));
        }
    }
    Ok(None)
}

/// `true` if two complexes are isomorphic in `K^b(proj A)`.
pub fn complexes_isomorphic(a: &ProjComplex, b: &ProjComplex) -> Result<bool> {
    let da = decompose_complex(a)?;
    let db = decompose_complex(b)?;
    if da.summands.len() != db.summands.len() {
        return Ok(false);
    }
    let mut used = vec![false; db.summands.len()];
    for s in &da.summands {
        let mut hit = false;
        for (j, t) in db.summands.iter().enumerate() {
            if !used[j] && complex_isomorphism(&s.complex, &t.complex)?.is_some() {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}
