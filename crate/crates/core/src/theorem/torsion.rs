//! The torsion pair `(T(P), F(P))` of a 2-term silting complex, over any
//! algebra: `T = {X | Hom(P, X[1]) = 0} = Fac H⁰(P)` and
//! `F = {X | Hom(P, X) = 0} = Sub H⁻¹(νP)`. Both descriptions are evaluated
//! and must agree.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complex::{ProjComplex, StalkHom};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::{
    decompose, hom_basis, is_isomorphic, projective_resolution, reject, trace, Module, ShortExactSequence,
};

#[derive(Clone, Debug)]
pub struct TorsionPair {
    pub complex: ProjComplex,
    /// `H⁰(P)`, the Ext-projective generator of `T`.
    pub h0: Module,
    /// `H⁻¹(νP)`, the Ext-injective cogenerator of `F`.
    pub h1_nu: Module,
    /// Indecomposable summands of `H⁰(P)`, `H⁻¹(νP)`, `tνA` and `A/tA`.
    pub h0_parts: Vec<Module>,
    pub h1_nu_parts: Vec<Module>,
    pub t_nu_a_parts: Vec<Module>,
    pub a_mod_ta_parts: Vec<Module>,
}

/// The constructive sequences attached to the Ext-projectives and
/// Ext-injectives of the two classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SequenceKind {
    /// `0 → L → T₀ → X → 0`, `T₀ ∈ add H⁰(P)`
    TorsionCover,
    /// `0 → X → T₀ → L → 0`, `T₀ ∈ add tνA`
    TorsionHull,
    /// `0 → X → F₀ → L → 0`, `F₀ ∈ add H⁻¹(νP)`
    FreeHull,
    /// `0 → L → F₀ → X → 0`, `F₀ ∈ add A/tA`
    FreeCover,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] =
        [SequenceKind::TorsionCover, SequenceKind::TorsionHull, SequenceKind::FreeHull, SequenceKind::FreeCover];

    pub fn number(self) -> u8 {
        match self {
            SequenceKind::TorsionCover => 2,
            SequenceKind::TorsionHull => 4,
            SequenceKind::FreeHull => 6,
            SequenceKind::FreeCover => 8,
        }
    }

    pub fn from_number(n: u8) -> Option<SequenceKind> {
        SequenceKind::ALL.into_iter().find(|v| v.number() == n)
    }

    /// `true` for the variants that need `X ∈ T`.
    pub fn on_torsion(self) -> bool {
        matches!(self, SequenceKind::TorsionCover | SequenceKind::TorsionHull)
    }
}

/// One representative per isomorphism class of indecomposable summands.
pub fn indecomposable_parts(m: &Module) -> Result<Vec<Module>> {
    Ok(decompose(m)?.multiplicities().into_iter().map(|(x, _)| x.clone()).collect())
}

/// `true` if every indecomposable summand of `m` is isomorphic to one of `parts`.
pub fn is_in_add(m: &Module, parts: &[Module]) -> Result<bool> {
    for s in indecomposable_parts(m)? {
        let mut hit = false;
        for p in parts {
            if is_isomorphic(&s, p)? {
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

/// `0 → X → Y → Y/X → 0` from an injective module map.
pub fn sequence_from_mono(x: &Module, y: &Module, f: &Matrix) -> Result<ShortExactSequence> {
    let img = Module::image_of(f, y);
    let (z, g) = y.quotient(&img)?;
    let seq = ShortExactSequence { x: x.clone(), y: y.clone(), z, f: f.clone(), g };
    seq.verify()?;
    Ok(seq)
}

/// `0 → ker g → Y → Z → 0` from a surjective module map.
pub fn sequence_from_epi(y: &Module, z: &Module, g: &Matrix) -> Result<ShortExactSequence> {
    let k = y.kernel_of(g);
    let (x, f) = y.submodule(&k)?;
    let seq = ShortExactSequence { x, y: y.clone(), z: z.clone(), f, g: g.clone() };
    seq.verify()?;
    Ok(seq)
}

/// `⊕_j G_j^{hom(G_j, X)} → X`, the sum of all maps from the generators.
fn generator_map(gens: &[Module], x: &Module) -> (Module, Matrix) {
    let alg = x.algebra();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for g in gens {
        for h in hom_basis(g, x) {
            parts.push(g.clone());
            maps.push(h);
        }
    }
    let (sum, _, proj) = Module::direct_sum(alg, &parts);
    let mut total = Matrix::zeros(x.field(), x.dim(), sum.dim());
    for (h, p) in maps.iter().zip(&proj) {
        total = total.add(&h.mul(p));
    }
    (sum, total)
}

/// `X → ⊕_j G_j^{hom(X, G_j)}`, the product of all maps to the cogenerators.
fn cogenerator_map(gens: &[Module], x: &Module) -> (Module, Matrix) {
    let alg = x.algebra();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for g in gens {
        for h in hom_basis(x, g) {
            parts.push(g.clone());
            maps.push(h);
        }
    }
    let (sum, inj, _) = Module::direct_sum(alg, &parts);
    let mut total = Matrix::zeros(x.field(), sum.dim(), x.dim());
    for (h, i) in maps.iter().zip(&inj) {
        total = total.add(&i.mul(h));
    }
    (sum, total)
}

/// Injective envelope `X → I(X)`, dual to the projective cover of `DX`.
pub fn injective_envelope(x: &Module) -> Result<(Module, Matrix)> {
    let alg = x.algebra();
    let op = Arc::new(alg.opposite());
    let dx = x.dual(&op);
    let r = projective_resolution(&dx, 0)?;
    let p0 = r.complex.projective_sum(0).module;
    Ok((p0.dual(alg), r.augmentation.transpose()))
}

/// Projective cover `P(X) → X`.
pub fn projective_cover(x: &Module) -> Result<(Module, Matrix)> {
    let r = projective_resolution(x, 0)?;
    Ok((r.complex.projective_sum(0).module, r.augmentation))
}

fn regular_injective(alg: &Arc<Algebra>) -> Module {
    let parts: Vec<Module> = (0..alg.n_vertices()).map(|v| Module::injective(alg, v)).collect();
    Module::direct_sum(alg, &parts).0
}

impl TorsionPair {
    pub fn new(p: &ProjComplex) -> Result<TorsionPair> {
        let alg = p.algebra();
        let h0 = p.cohomology(0)?;
        let h1_nu = p.nakayama_cohomology(-1)?;
        let h0_parts = indecomposable_parts(&h0)?;
        let h1_nu_parts = indecomposable_parts(&h1_nu)?;
        let di = regular_injective(alg);
        let t = trace(std::slice::from_ref(&h0), &di);
        let t_nu_a_parts = indecomposable_parts(&di.submodule(&t)?.0)?;
        let a = Module::regular(alg);
        let ta = trace(std::slice::from_ref(&h0), &a);
        let a_mod_ta_parts = indecomposable_parts(&a.quotient(&ta)?.0)?;
        Ok(TorsionPair { complex: p.clone(), h0, h1_nu, h0_parts, h1_nu_parts, t_nu_a_parts, a_mod_ta_parts })
    }

    /// `Hom(P, X[1]) = 0`, checked against `X = trace of H⁰(P)`.
    pub fn in_torsion(&self, x: &Module) -> Result<bool> {
        let by_hom = StalkHom::new(&self.complex, x, 1)?.dim() == 0;
        let by_fac = self.torsion_part(x).dim() == x.dim();
        if by_hom != by_fac {
            return Err(Error::Internal(format!(
                "torsion class criteria disagree on a module of dimension {}: Hom(P, X[1]) = 0 is {by_hom}, X ∈ Fac H0(P) is {by_fac}",
                x.dim()
            )));
        }
        Ok(by_hom)
    }

    /// `Hom(P, X) = 0`, checked against `reject of H⁻¹(νP) = 0`.
    pub fn in_free(&self, x: &Module) -> Result<bool> {
        let by_hom = StalkHom::new(&self.complex, x, 0)?.dim() == 0;
        let by_sub = reject(std::slice::from_ref(&self.h1_nu), x).is_zero();
        if by_hom != by_sub {
            return Err(Error::Internal(format!(
                "torsion-free class criteria disagree on a module of dimension {}: Hom(P, X) = 0 is {by_hom}, X ∈ Sub H-1(νP) is {by_sub}",
                x.dim()
            )));
        }
        Ok(by_hom)
    }

    /// `tX`, the trace of `H⁰(P)` in `X`.
    pub fn torsion_part(&self, x: &Module) -> Subspace {
        trace(std::slice::from_ref(&self.h0), x)
    }

    /// `0 → tX → X → X/tX → 0`
    pub fn canonical_sequence(&self, x: &Module) -> Result<ShortExactSequence> {
        let (tx, incl) = x.submodule(&self.torsion_part(x))?;
        sequence_from_mono(&tx, x, &incl)
    }

    /// Builds the sequence of the given variant for `X` and checks the class
    /// memberships of its terms.
    pub fn ext_sequence(&self, x: &Module, variant: SequenceKind) -> Result<ShortExactSequence> {
        let ok = if variant.on_torsion() { self.in_torsion(x)? } else { self.in_free(x)? };
        if !ok {
            return Err(Error::Precondition(format!(
                "module is not in {} for sequence ({})",
                if variant.on_torsion() { "T" } else { "F" },
                variant.number()
            )));
        }
        let seq = match variant {
            SequenceKind::TorsionCover => {
                let (t0, g) = generator_map(&self.h0_parts, x);
                sequence_from_epi(&t0, x, &g)?
            }
            SequenceKind::TorsionHull => {
                let (i, f) = injective_envelope(x)?;
                let (t0, incl) = i.submodule(&self.torsion_part(&i))?;
                let f0 = incl.solve(&f).map(|s| s.particular).ok_or_else(|| {
                    Error::Internal("torsion module does not embed in the torsion part of its envelope".into())
                })?;
                sequence_from_mono(x, &t0, &f0)?
            }
            SequenceKind::FreeHull => {
                let (f0, f) = cogenerator_map(&self.h1_nu_parts, x);
                sequence_from_mono(x, &f0, &f)?
            }
            SequenceKind::FreeCover => {
                let (p, g) = projective_cover(x)?;
                let (f0, q) = p.quotient(&self.torsion_part(&p))?;
                let g0 = q.transpose().solve(&g.transpose()).map(|s| s.particular.transpose()).ok_or_else(|| {
                    Error::Internal("projective cover of a torsion-free module does not kill the torsion part".into())
                })?;
                sequence_from_epi(&f0, x, &g0)?
            }
        };
        let (middle_ok, end) = match variant {
            SequenceKind::TorsionCover => (is_in_add(&seq.y, &self.h0_parts)?, self.in_torsion(&seq.x)?),
            SequenceKind::TorsionHull => (is_in_add(&seq.y, &self.t_nu_a_parts)?, self.in_torsion(&seq.z)?),
            SequenceKind::FreeHull => (is_in_add(&seq.y, &self.h1_nu_parts)?, self.in_free(&seq.z)?),
            SequenceKind::FreeCover => (is_in_add(&seq.y, &self.a_mod_ta_parts)?, self.in_free(&seq.x)?),
        };
        if !middle_ok || !end {
            return Err(Error::Internal(format!(
                "sequence ({}) has middle term in the wrong add-class or end term outside its class",
                variant.number()
            )));
        }
        Ok(seq)
    }
}
