//! Projective resolutions, `Ext`, extensions, `τ`, `τ⁻¹` and almost split sequences.

use std::sync::Arc;

use super::{hom_basis, is_indecomposable, left_inverse, Module, ProjectiveSum};
use crate::algebra::{self, Table};
use crate::complex::{nakayama_matrix, AMatrix, InjectiveSum, ProjComplex, StalkHom};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace, Vector};

/// `0 → X —f→ Y —g→ Z → 0`
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub x: Module,
    pub y: Module,
    pub z: Module,
    pub f: Matrix,
    pub g: Matrix,
}

impl ShortExactSequence {
    /// Checks module maps, injectivity, surjectivity and exactness by ranks.
    pub fn verify(&self) -> Result<()> {
        use super::is_module_map;
        if !is_module_map(&self.x, &self.y, &self.f) || !is_module_map(&self.y, &self.z, &self.g) {
            return Err(Error::Internal("sequence maps are not module maps".into()));
        }
        if self.f.rank() != self.x.dim() {
            return Err(Error::Internal("first map is not injective".into()));
        }
        if self.g.rank() != self.z.dim() {
            return Err(Error::Internal("second map is not surjective".into()));
        }
        if !self.g.mul(&self.f).is_zero() || self.x.dim() + self.z.dim() != self.y.dim() {
            return Err(Error::Internal("sequence is not exact in the middle".into()));
        }
        Ok(())
    }

    /// `true` if `g` has a module-map section.
    pub fn is_split(&self) -> bool {
        if self.z.is_zero() {
            return true;
        }
        let hs = hom_basis(&self.z, &self.y);
        if hs.is_empty() {
            return false;
        }
        let f = self.z.field();
        let n = self.z.dim();
        let cols: Vec<Vector> = hs.iter().map(|s| algebra::flatten(&self.g.mul(s))).collect();
        let a = Matrix::from_columns(f, n * n, &cols);
        a.solve_vec(&algebra::flatten(&Matrix::identity(f, n))).is_some()
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.x.dim(), self.y.dim(), self.z.dim())
    }
}

/// A minimal projective resolution `... → P^{-1} → P^0 → M` truncated at
/// degree `-len`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub complex: ProjComplex,
    /// `P^0 → M` on module coordinates.
    pub augmentation: Matrix,
}

/// Projective cover of a submodule `K ⊆ ambient`: vertices and the module map
/// `⊕ P_v → ambient`.
fn cover_into(ambient: &Module, k: &Subspace) -> Result<(ProjectiveSum, Matrix)> {
    let alg = ambient.algebra();
    let (km, incl) = ambient.submodule(k)?;
    let gens = km.top_generators()?;
    let verts: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let p = ProjectiveSum::new(alg, &verts);
    let images: Vec<Vector> = gens.iter().map(|g| incl.mul_vec(&g.1)).collect();
    let map = ambient.map_from_projectives(&p, &images);
    Ok((p, map))
}

pub fn projective_resolution(m: &Module, len: usize) -> Result<Resolution> {
    let alg = m.algebra().clone();
    let (p0, aug) = cover_into(m, &Subspace::full(m.field(), m.dim()))?;
    let mut terms = vec![p0.verts.clone()];
    let mut diffs: Vec<AMatrix> = Vec::new();
    let mut prev = p0;
    let mut prev_map = aug.clone();
    for _ in 0..len {
        let k = prev.module.kernel_of(&prev_map);
        if k.is_zero() {
            break;
        }
        let (next, map) = cover_into(&prev.module, &k)?;
        diffs.push(AMatrix::from_module_matrix(&alg, &next, &prev, &map));
        terms.push(next.verts.clone());
        prev = next;
        prev_map = map;
    }
    terms.reverse();
    diffs.reverse();
    let lo = -(terms.len() as i32 - 1);
    let complex = ProjComplex::new_unchecked(alg, lo, terms, diffs);
    Ok(Resolution { module: m.clone(), complex, augmentation: aug })
}

/// `P^1 —d→ P^0 → M → 0` with `P^0 → M` a projective cover and `P^1` covering the kernel.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub d: AMatrix,
    pub cover: Matrix,
}

pub fn min_proj_presentation(m: &Module) -> Result<Presentation> {
    let r = projective_resolution(m, 1)?;
    let p1 = r.complex.term(-1).to_vec();
    let p0 = r.complex.term(0).to_vec();
    Ok(Presentation { d: r.complex.diff(-1), p1, p0, cover: r.augmentation })
}

impl Presentation {
    /// Kernel of the cover lies in the radical, and `P^1` maps onto it minimally.
    pub fn is_minimal(&self, m: &Module) -> Result<bool> {
        let alg = m.algebra();
        let p0 = ProjectiveSum::new(alg, &self.p0);
        let p1 = ProjectiveSum::new(alg, &self.p1);
        let ker = p0.module.kernel_of(&self.cover);
        if !p0.module.radical_submodule().contains_space(&ker) {
            return Ok(false);
        }
        let d = self.d.module_matrix(alg, &p1, &p0);
        let ker_d = p1.module.kernel_of(&d);
        Ok(p1.module.radical_submodule().contains_space(&ker_d) && Module::image_of(&d, &p0.module).same_as(&ker))
    }
}

/// `Ext^n(M, N)` with the resolution used to represent classes.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub resolution: Resolution,
    pub hom: StalkHom,
}

impl ExtSpace {
    pub fn new(m: &Module, n: &Module, degree: usize) -> Result<ExtSpace> {
        let resolution = projective_resolution(m, degree + 1)?;
        let hom = StalkHom::new(&resolution.complex, n, degree as i32)?;
        Ok(ExtSpace { resolution, hom })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }
}

pub fn ext_dim(m: &Module, n: &Module, degree: usize) -> Result<usize> {
    if degree == 0 {
        return Ok(hom_basis(m, n).len());
    }
    Ok(ExtSpace::new(m, n, degree)?.dim())
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub class: Vector,
    pub seq: ShortExactSequence,
}

impl ExtSpace {
    /// The pushout extension `0 → N → E → M → 0` of a degree-1 class.
    pub fn extension(&self, class: &[crate::field::Scalar]) -> Result<Extension> {
        let res = &self.resolution;
        let x = &res.complex;
        let alg = x.algebra();
        let n = self.hom.module();
        let m = &res.module;
        let g = self.hom.quotient().lift(class);
        let p0 = x.projective_sum(0);
        let p1 = x.projective_sum(-1);
        let d = x.diff(-1).module_matrix(alg, &p1, &p0);
        // g as a module map P^1 → N
        let images: Vec<Vector> = (0..x.term(-1).len()).map(|s| self.hom.component(&g, s)).collect();
        let gm = n.map_from_projectives(&p1, &images);
        let (sum, inj, proj) = Module::direct_sum(alg, &[n.clone(), p0.module.clone()]);
        // S = {(g(p), -d(p))}
        let sgen = inj[0].mul(&gm).sub(&inj[1].mul(&d));
        let s = Module::image_of(&sgen, &sum);
        let (e, q) = sum.quotient(&s)?;
        let f = q.mul(&inj[0]);
        // E → M: [(n, p)] ↦ cover(p)
        let through = res.augmentation.mul(&proj[1]);
        let sect = super::right_inverse(&q)?;
        let gmap = through.mul(&sect);
        let seq = ShortExactSequence { x: n.clone(), y: e, z: m.clone(), f, g: gmap };
        seq.verify()?;
        Ok(Extension { class: class.to_vec(), seq })
    }

    /// The class of an extension `0 → N → E → M → 0`.
    pub fn class_of(&self, seq: &ShortExactSequence) -> Result<Vector> {
        let res = &self.resolution;
        let x = &res.complex;
        let alg = x.algebra();
        let p0 = x.projective_sum(0);
        let p1 = x.projective_sum(-1);
        // lift each generator of P^0 through E → M
        let lifts: Vec<Vector> = (0..p0.verts.len())
            .map(|s| {
                let target = res.augmentation.mul_vec(&p0.generator(s, alg));
                lift_at_vertex(&seq.y, &seq.g, &target, p0.verts[s])
            })
            .collect::<Result<_>>()?;
        let phi = seq.y.map_from_projectives(&p0, &lifts);
        let d = x.diff(-1).module_matrix(alg, &p1, &p0);
        let into_y = phi.mul(&d);
        let finv = left_inverse(&seq.f)?;
        let n = self.hom.module();
        let mut g = Vec::new();
        for (s, &u) in x.term(-1).iter().enumerate() {
            let v = finv.mul_vec(&into_y.mul_vec(&p1.generator(s, alg)));
            for p in n.vertex_range(u) {
                g.push(v[p].clone());
            }
        }
        Ok(self.hom.class(&g))
    }

    /// Matrix of the right action of `φ ∈ End(M)` on class coordinates
    /// (pullback of extensions along `φ`).
    pub fn end_action(&self, phi: &Matrix) -> Result<Matrix> {
        let lift = lift_map(&self.resolution, &self.resolution, phi, 1)?;
        let comp = crate::complex::ChainMap::from_components(
            &self.resolution.complex,
            &self.resolution.complex,
            &lift,
        );
        Ok(self.hom.precompose_matrix(&comp, &self.hom))
    }
}

/// Some `y ∈ Y e_v` with `g(y) = z`.
fn lift_at_vertex(y: &Module, g: &Matrix, z: &[crate::field::Scalar], v: usize) -> Result<Vector> {
    let f = y.field();
    let range = y.vertex_range(v);
    let cols: Vec<Vector> = range.clone().map(|i| g.col(i)).collect();
    let a = Matrix::from_columns(f, g.rows(), &cols);
    let c = if cols.is_empty() {
        if linalg::is_zero_vector(z) {
            Vec::new()
        } else {
            return Err(Error::Internal("element does not lift".into()));
        }
    } else {
        a.solve_vec(z).ok_or_else(|| Error::Internal("element does not lift".into()))?
    };
    let mut out = linalg::zero_vector(f, y.dim());
    for (k, i) in range.enumerate() {
        out[i] = c[k].clone();
    }
    Ok(out)
}

/// Comparison map of resolutions over `φ: M → N`, in degrees `0, -1, ..., -depth`.
pub fn lift_map(rm: &Resolution, rn: &Resolution, phi: &Matrix, depth: usize) -> Result<Vec<(i32, AMatrix)>> {
    let alg = rm.complex.algebra();
    let mut out = Vec::new();
    // degree 0: cover_N ∘ φ0 = φ ∘ cover_M
    let pm = rm.complex.projective_sum(0);
    let pn = rn.complex.projective_sum(0);
    let lifts: Vec<Vector> = (0..pm.verts.len())
        .map(|s| {
            let z = phi.mul_vec(&rm.augmentation.mul_vec(&pm.generator(s, alg)));
            lift_at_vertex(&pn.module, &rn.augmentation, &z, pm.verts[s])
        })
        .collect::<Result<_>>()?;
    let mut prev = pn.module.map_from_projectives(&pm, &lifts);
    out.push((0, AMatrix::from_module_matrix(alg, &pm, &pn, &prev)));
    for k in 1..=depth as i32 {
        let pm_k = rm.complex.projective_sum(-k);
        let pn_k = rn.complex.projective_sum(-k);
        if pm_k.verts.is_empty() {
            break;
        }
        let pm_up = rm.complex.projective_sum(-k + 1);
        let pn_up = rn.complex.projective_sum(-k + 1);
        let dm = rm.complex.diff(-k).module_matrix(alg, &pm_k, &pm_up);
        let dn = rn.complex.diff(-k).module_matrix(alg, &pn_k, &pn_up);
        let lifts: Vec<Vector> = (0..pm_k.verts.len())
            .map(|s| {
                let z = prev.mul_vec(&dm.mul_vec(&pm_k.generator(s, alg)));
                lift_at_vertex(&pn_k.module, &dn, &z, pm_k.verts[s])
            })
            .collect::<Result<_>>()?;
        prev = pn_k.module.map_from_projectives(&pm_k, &lifts);
        out.push((-k, AMatrix::from_module_matrix(alg, &pm_k, &pn_k, &prev)));
    }
    Ok(out)
}

/// `τM = ker(ν P^1 → ν P^0)` for a minimal presentation.
pub fn tau(m: &Module) -> Result<Module> {
    let alg = m.algebra();
    if m.is_zero() {
        return Ok(Module::zero(alg.clone()));
    }
    let pres = min_proj_presentation(m)?;
    let i1 = InjectiveSum::new(alg, &pres.p1);
    let i0 = InjectiveSum::new(alg, &pres.p0);
    let nd = nakayama_matrix(alg, &pres.d, &i1, &i0);
    let k = i1.module.kernel_of(&nd);
    Ok(i1.module.submodule(&k)?.0)
}

/// `τ⁻¹M = D τ_{A^op} D M`.
pub fn tau_inverse(m: &Module) -> Result<Module> {
    let alg = m.algebra();
    let op = Arc::new(alg.opposite());
    let t = tau(&m.dual(&op))?;
    Ok(t.dual(alg))
}

/// `Tr M`, a module over the opposite algebra: the cokernel of `Hom(P^0, A) → Hom(P^1, A)`.
pub fn transpose(m: &Module) -> Result<Module> {
    let alg = m.algebra();
    let op = Arc::new(alg.opposite());
    Ok(tau(m)?.dual(&op))
}

/// Largest submodule of `x` generated by the given modules.
pub fn trace(gens: &[Module], x: &Module) -> Subspace {
    let mut v = Vec::new();
    for g in gens {
        for h in hom_basis(g, x) {
            for c in 0..h.cols() {
                v.push(h.col(c));
            }
        }
    }
    Subspace::span(x.field(), x.dim(), &v)
}

/// Smallest submodule of `x` whose quotient is cogenerated by the given modules.
pub fn reject(gens: &[Module], x: &Module) -> Subspace {
    let f = x.field();
    let mut stacked = Matrix::zeros(f, 0, x.dim());
    for g in gens {
        for h in hom_basis(x, g) {
            stacked = stacked.vstack(&h);
        }
    }
    if stacked.rows() == 0 {
        return Subspace::full(f, x.dim());
    }
    Subspace::span(f, x.dim(), &stacked.kernel())
}

/// The almost split sequence `0 → τX → E → X → 0` ending at an
/// indecomposable non-projective `X`, from a nonzero element of the socle of
/// `Ext¹(X, τX)` as an `End(X)`-module.
pub fn ar_sequence(x: &Module) -> Result<ShortExactSequence> {
    if !is_indecomposable(x)? {
        return Err(Error::Precondition("almost split sequences need an indecomposable end term".into()));
    }
    let tx = tau(x)?;
    if tx.is_zero() {
        return Err(Error::Precondition("no almost split sequence ends at a projective".into()));
    }
    let ext = ExtSpace::new(x, &tx, 1)?;
    let f = x.field();
    let ends = hom_basis(x, x);
    let (table, basis) = Table::from_matrices(f, x.dim(), &ends)?;
    let rad = algebra::table_radical(&table)?;
    let flat: Vec<Vector> = basis.iter().map(algebra::flatten).collect();
    let n = x.dim();
    let mut stacked = Matrix::zeros(f, 0, ext.dim());
    for r in rad.basis() {
        let m = algebra::unflatten(f, n, &linalg::combine(f, n * n, r, &flat));
        stacked = stacked.vstack(&ext.end_action(&m)?);
    }
    let soc: Vec<Vector> = if stacked.rows() == 0 {
        (0..ext.dim()).map(|i| linalg::unit_vector(f, ext.dim(), i)).collect()
    } else {
        stacked.kernel()
    };
    let class = soc.first().ok_or_else(|| Error::Internal("Ext¹(X, τX) has zero socle".into()))?;
    let e = ext.extension(class)?;
    if e.seq.is_split() {
        return Err(Error::Internal("socle extension splits".into()));
    }
    Ok(e.seq)
}

/// `true` if `Ext²` vanishes between all simple modules.
pub fn is_hereditary(alg: &Arc<crate::algebra::Algebra>) -> Result<bool> {
    let simples: Vec<Module> = (0..alg.n_vertices()).map(|v| Module::simple(alg, v)).collect();
    for s in &simples {
        for t in &simples {
            if ext_dim(s, t, 2)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
