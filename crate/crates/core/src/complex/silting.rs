//! Presilting, silting and tilting tests, and Bongartz completion.

use super::{cone, decompose_complex, ChainMap, Endo, HomSpace, ProjComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SiltingVerdict {
    pub two_term: bool,
    pub presilting: bool,
    pub silting: bool,
    pub tilting: bool,
    /// Isomorphism classes of indecomposable summands.
    pub classes: usize,
    /// Isomorphism classes of simple modules of the algebra.
    pub simples: usize,
    pub hom_shift_plus: usize,
    pub hom_shift_minus: usize,
    /// Nonzero class in `Hom(P, P[1])` when presilting fails.
    pub presilting_witness: Option<ChainMap>,
    /// Nonzero class in `Hom(P, P[-1])` when tilting fails.
    pub tilting_witness: Option<ChainMap>,
}

/// Presilting is `Hom(P, P[1]) = 0`; silting adds `|P| = |A|`; tilting adds
/// `Hom(P, P[-1]) = 0`.
pub fn is_presilting(p: &ProjComplex) -> Result<SiltingVerdict> {
    let alg = p.algebra();
    let plus = HomSpace::new(p, &p.shift(1))?;
    let minus = HomSpace::new(p, &p.shift(-1))?;
    let classes = decompose_complex(p)?.class_count();
    let simples = alg.decompose_identity()?.classes.len();
    let two_term = p.is_two_term();
    let presilting = plus.dim() == 0;
    let silting = presilting && classes == simples;
    let tilting = silting && minus.dim() == 0;
    Ok(SiltingVerdict {
        two_term,
        presilting,
        silting,
        tilting,
        classes,
        simples,
        hom_shift_plus: plus.dim(),
        hom_shift_minus: minus.dim(),
        presilting_witness: (plus.dim() > 0).then(|| plus.rep(0)),
        tilting_witness: (minus.dim() > 0).then(|| minus.rep(0)),
    })
}

#[derive(Clone, Debug)]
pub struct Bongartz {
    /// Basic summands of the input followed by the new classes from `E`.
    pub summands: Vec<ProjComplex>,
    pub input_classes: usize,
    /// `E` in the triangle `A → E → P_0 → A[1]`.
    pub complement: ProjComplex,
    pub completed: ProjComplex,
}

/// Completes a 2-term presilting complex `P` to `P ⊕ E`, where
/// `A → E → P_0 → A[1]` is built on a minimal right `add P`-approximation
/// `P_0 → A[1]`.
pub fn bongartz_complete(p: &ProjComplex) -> Result<Bongartz> {
    let alg = p.algebra();
    if !p.is_two_term() {
        return Err(Error::Precondition("complex is not 2-term".into()));
    }
    if HomSpace::new(p, &p.shift(1))?.dim() != 0 {
        return Err(Error::Precondition("complex is not presilting".into()));
    }
    let a = ProjComplex::regular(alg);
    if p.is_zero() {
        let summands = super::basic_summands(&a)?;
        return Ok(Bongartz { completed: a.clone(), complement: a, summands, input_classes: 0 });
    }
    let endo = Endo::from_complex(p)?;
    let approx = endo.right_approximation(&a.shift(1))?;
    let g = approx.map.shift(-1);
    let p0 = approx.sum.shift(-1);
    let tri = cone(&g, &p0, &a);
    let e = tri.cone;
    let mut summands = endo.summands.clone();
    let input_classes = summands.len();
    let dec = decompose_complex(&e)?;
    for c in &dec.classes {
        let s = &dec.summands[c[0]].complex;
        let mut seen = false;
        for t in &summands {
            if super::complex_isomorphism(s, t)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            summands.push(s.clone());
        }
    }
    let completed = ProjComplex::direct_sum(alg, &summands);
    Ok(Bongartz { summands, input_classes, complement: e, completed })
}

/// `true` if `y ∈ add P`.
pub fn add_membership(endo: &Endo, y: &ProjComplex) -> Result<bool> {
    Ok(endo.add_iso(y)?.is_some())
}
