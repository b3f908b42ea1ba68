//! Krull–Schmidt decomposition and isomorphism tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{hom_basis, left_inverse, Module};
use crate::algebra::{is_local, Table};
use crate::error::Result;
use crate::linalg::{self, Matrix, Subspace, Vector};

const ISO_SEED: u64 = 0x150_150;
const ISO_TRIES: usize = 6;

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    /// `ι: X → M`
    pub inclusion: Matrix,
    /// `π: M → X` with `π ι = 1`
    pub projection: Matrix,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Indices into `summands`, grouped by isomorphism class.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// `(representative, multiplicity)` per class.
    pub fn multiplicities(&self) -> Vec<(&Module, usize)> {
        self.classes.iter().map(|c| (&self.summands[c[0]].module, c.len())).collect()
    }
}

/// `End_A(M)` as a structure-constant algebra with its matrix basis.
pub fn endomorphism_table(m: &Module) -> Result<(Table, Vec<Matrix>)> {
    let basis = hom_basis(m, m);
    Table::from_matrices(m.field(), m.dim(), &basis)
}

/// `true` if `End(M)` is local (and `M ≠ 0`).
pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let (t, _) = endomorphism_table(m)?;
    let rad = crate::algebra::table_radical(&t)?;
    Ok(is_local(&t, &rad, t.unit()))
}

pub fn decompose(m: &Module) -> Result<Decomposition> {
    if m.is_zero() {
        return Ok(Decomposition { summands: Vec::new(), classes: Vec::new() });
    }
    let (t, basis) = endomorphism_table(m)?;
    let classes = crate::algebra::primitive_idempotents(&t)?;
    let f = m.field();
    let n = m.dim();
    let mut summands = Vec::new();
    for e in &classes.idempotents {
        let em = linalg::combine(f, n * n, e, &basis.iter().map(crate::algebra::flatten).collect::<Vec<_>>());
        let em = crate::algebra::unflatten(f, n, &em);
        let cols: Vec<Vector> = (0..n).map(|c| em.col(c)).collect();
        let img = Subspace::span(f, n, &cols);
        let (x, incl) = m.submodule(&img)?;
        let proj = left_inverse(&incl)?.mul(&em);
        summands.push(Summand { module: x, inclusion: incl, projection: proj });
    }
    Ok(Decomposition { summands, classes: classes.classes })
}

/// An explicit isomorphism `X → Y` between indecomposables with split
/// endomorphism rings, found through the pairing `Hom(X,Y) × Hom(Y,X) → End(X)/rad`.
fn indecomposable_iso(x: &Module, y: &Module) -> Option<Matrix> {
    if x.dims() != y.dims() {
        return None;
    }
    let xy = hom_basis(x, y);
    let yx = hom_basis(y, x);
    for f in &xy {
        for g in &yx {
            if g.mul(f).is_invertible() {
                return Some(f.clone());
            }
        }
    }
    None
}

/// An explicit isomorphism `M → N`, or `None` if the modules are not isomorphic.
pub fn isomorphism(m: &Module, n: &Module) -> Result<Option<Matrix>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Matrix::zeros(m.field(), 0, 0)));
    }
    let h = hom_basis(m, n);
    if h.is_empty() {
        return Ok(None);
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..ISO_TRIES {
        let mut g = Matrix::zeros(f, n.dim(), m.dim());
        for b in &h {
            g = g.add(&b.scale(&f.random(&mut rng)));
        }
        if g.is_invertible() {
            return Ok(Some(g));
        }
    }
    // Exact fallback: match indecomposable summands one by one.
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.summands.len()];
    let mut iso = Matrix::zeros(f, n.dim(), m.dim());
    for sm in &dm.summands {
        let mut found = false;
        for (j, sn) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(phi) = indecomposable_iso(&sm.module, &sn.module) {
                used[j] = true;
                iso = iso.add(&sn.inclusion.mul(&phi).mul(&sm.projection));
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    debug_assert!(iso.is_invertible());
    Ok(Some(iso))
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    Ok(isomorphism(m, n)?.is_some())
}
