//! Almost split sequences over `B = End(P)`: connecting sequences, the
//! splitting and separating properties, and the shape of the AR theory of
//! `mod B` when `P` is splitting.

use crate::complex::ProjComplex;
use crate::error::{Error, Result};
use crate::module::{
    ar_sequence, ext_dim, is_hereditary, is_indecomposable, is_isomorphic, tau, Module, ShortExactSequence,
};
use crate::report::{Check, Status};
use crate::theorem::{classify, labels, Battery, Class, SiltingContext, TorsionPair};

fn in_add_p(ctx: &SiltingContext, x: &ProjComplex) -> Result<bool> {
    Ok(ctx.endo.add_iso(x)?.is_some())
}

/// `(P_i ∈ add P, P_i[1] ∈ add P)`
pub fn projective_position(ctx: &SiltingContext, i: usize) -> Result<(bool, bool)> {
    let alg = &ctx.alg;
    Ok((
        in_add_p(ctx, &ProjComplex::stalk(alg, &[i], 0))?,
        in_add_p(ctx, &ProjComplex::stalk(alg, &[i], -1))?,
    ))
}

/// `Hom(P, νP_i)` over `B`.
pub fn nu_term(ctx: &SiltingContext, i: usize) -> Result<Module> {
    Ok(ctx.hom_p_module(&Module::injective(&ctx.alg, i), 0)?.module)
}

/// `Hom(P, P_i[1])` over `B`.
pub fn shift_term(ctx: &SiltingContext, i: usize) -> Result<Module> {
    Ok(ctx.hom_p_module(&Module::projective(&ctx.alg, i), 1)?.module)
}

/// `τ⁻¹ Hom(P, νP_i) ≅ Hom(P, P_i[1])`, and `Hom(P, νP_i)` is injective
/// exactly when `P_i ∈ add P`. Skipped when `P_i[1] ∈ add P`.
pub fn connecting_term_check(ctx: &SiltingContext, i: usize) -> Result<Check> {
    let name = format!("connecting.term.P{}", i + 1);
    let (in_p, shift_in_p) = projective_position(ctx, i)?;
    let y = nu_term(ctx, i)?;
    if shift_in_p {
        return Ok(Check::new(name, Status::Skipped)
            .dim("hom_p_nu", y.dim())
            .witness(format!("P{}[1] is a summand of P", i + 1)));
    }
    let z = shift_term(ctx, i)?;
    let ty = crate::module::tau_inverse(&y)?;
    let iso = is_isomorphic(&ty, &z)?;
    let injective = ty.is_zero();
    let indec = is_indecomposable(&y)?;
    Ok(Check::pass_if(&name, iso && injective == in_p && indec)
        .dim("hom_p_nu", y.dim())
        .dim("tau_inv", ty.dim())
        .dim("hom_p_shift", z.dim())
        .dim("injective", injective as usize)
        .witness_on_fail(|| {
            if !indec {
                "Hom(P, νP_i) is not indecomposable".into()
            } else if !iso {
                "τ⁻¹ Hom(P, νP_i) is not isomorphic to Hom(P, P_i[1])".into()
            } else {
                "injectivity of Hom(P, νP_i) does not match P_i ∈ add P".into()
            }
        }))
}

/// The almost split sequence `0 → Hom(P, νP_i) → E → Hom(P, P_i[1]) → 0`
/// and the canonical sequence of `E` in `(X(P), Y(P))`.
#[derive(Clone, Debug)]
pub struct ConnectingSequence {
    pub index: usize,
    pub ar: ShortExactSequence,
    pub canonical: ShortExactSequence,
    /// `Hom(P, rad P_i[1])`
    pub rad_term: Module,
    /// `Hom(P, νP_i/S_i)`
    pub top_term: Module,
    /// Left term `≅ Hom(P, νP_i)`.
    pub left_matches: bool,
    /// Canonical ends `≅ (rad_term, top_term)`.
    pub ends_match: bool,
}

pub fn connecting_sequence(ctx: &SiltingContext, qtp: &TorsionPair, i: usize) -> Result<ConnectingSequence> {
    let (in_p, shift_in_p) = projective_position(ctx, i)?;
    if in_p || shift_in_p {
        return Err(Error::Precondition(format!(
            "connecting sequence needs P{0} and P{0}[1] outside add P",
            i + 1
        )));
    }
    let alg = &ctx.alg;
    let z = shift_term(ctx, i)?;
    let ar = ar_sequence(&z)?;
    let left_matches = is_isomorphic(&ar.x, &nu_term(ctx, i)?)?;
    let canonical = qtp.canonical_sequence(&ar.y)?;
    let p = Module::projective(alg, i);
    let rad = p.submodule(&p.radical_submodule())?.0;
    let rad_term = ctx.hom_p_module(&rad, 1)?.module;
    let inj = Module::injective(alg, i);
    let top = inj.quotient(&inj.socle())?.0;
    let top_term = ctx.hom_p_module(&top, 0)?.module;
    let ends_match = is_isomorphic(&canonical.x, &rad_term)? && is_isomorphic(&canonical.z, &top_term)?;
    Ok(ConnectingSequence { index: i, ar, canonical, rad_term, top_term, left_matches, ends_match })
}

pub fn connecting_sequence_check(ctx: &SiltingContext, qtp: &TorsionPair, i: usize) -> Result<Check> {
    let name = format!("connecting.sequence.P{}", i + 1);
    let (in_p, shift_in_p) = projective_position(ctx, i)?;
    if in_p || shift_in_p {
        let why = if in_p { "P_i is a summand of P" } else { "P_i[1] is a summand of P" };
        return Ok(Check::new(name, Status::Skipped).witness(why));
    }
    let s = connecting_sequence(ctx, qtp, i)?;
    let (l, m, r) = s.ar.dims();
    let dims_ok = m == s.rad_term.dim() + s.top_term.dim() && m == l + r;
    Ok(Check::pass_if(&name, s.left_matches && s.ends_match && dims_ok)
        .dim("left", l)
        .dim("middle", m)
        .dim("right", r)
        .dim("torsion_part", s.canonical.x.dim())
        .dim("free_part", s.canonical.z.dim())
        .witness_on_fail(|| {
            if !s.left_matches {
                "left term is not Hom(P, νP_i)".into()
            } else {
                "canonical sequence of the middle term does not match Hom(P, rad P_i[1]) → E → Hom(P, νP_i/S_i)"
                    .into()
            }
        }))
}

/// Splitting verdict. `dims.splitting` is the verdict; the status says how it
/// was decided: certified by heredity, by a counterexample, or by a complete
/// battery, and evidence otherwise.
pub fn splitting_check(ctx: &SiltingContext, tp: &TorsionPair, battery: &Battery) -> Result<Check> {
    if is_hereditary(&ctx.alg)? {
        return Ok(Check::new("splitting", Status::Certified)
            .dim("splitting", 1)
            .dim("hereditary", 1));
    }
    let class: Vec<Class> = battery.modules.iter().map(|m| classify(tp, m)).collect::<Result<_>>()?;
    let mut pairs = 0;
    for (i, m) in battery.modules.iter().enumerate() {
        if class[i] != Class::Torsion {
            continue;
        }
        for (j, n) in battery.modules.iter().enumerate() {
            if class[j] != Class::Free {
                continue;
            }
            pairs += 1;
            let e = ext_dim(m, n, 2)?;
            if e != 0 {
                return Ok(Check::new("splitting", Status::Certified)
                    .dim("splitting", 0)
                    .dim("hereditary", 0)
                    .dim("ext2", e)
                    .witness(format!("Ext²({}, {}) ≠ 0", battery.label(i), battery.label(j))));
            }
        }
    }
    let status = if battery.complete { Status::Certified } else { Status::Evidence };
    Ok(Check::new("splitting", status).dim("splitting", 1).dim("hereditary", 0).dim("pairs", pairs))
}

/// Separating verdict on the battery, and its consistency with tilting:
/// a separating complex is tilting.
pub fn separating_check(ctx: &SiltingContext, tp: &TorsionPair, battery: &Battery) -> Result<Vec<Check>> {
    let mut neither = Vec::new();
    for (i, m) in battery.modules.iter().enumerate() {
        if classify(tp, m)? == Class::Neither {
            neither.push(battery.label(i));
        }
    }
    let separating = neither.is_empty();
    let status = if !separating || battery.complete { Status::Certified } else { Status::Evidence };
    let mut verdict = Check::new("separating", status)
        .dim("separating", separating as usize)
        .dim("neither", neither.len())
        .dim("tested", battery.len());
    if !separating {
        verdict = verdict.witness(format!("in neither class: {}", labels(&neither)));
    }
    let consistency = if separating && !ctx.is_tilting() {
        if battery.complete {
            Check::new("separating.only-if-tilting", Status::Fail)
                .witness("complete battery splits the torsion pair but P is not tilting")
        } else {
            Check::new("separating.only-if-tilting", Status::Skipped)
                .witness("inconclusive: P is not tilting but the incomplete battery has no module in neither class")
        }
    } else {
        Check::new("separating.only-if-tilting", Status::Pass)
    };
    Ok(vec![verdict, consistency.dim("tilting", ctx.is_tilting() as usize)])
}

/// `Hom(P, -)` (or `Hom(P, -[1])`) of an AR sequence in `T` (or `F`) is the
/// AR sequence of `mod B` ending at the image of its right term.
fn maps_to_ar_sequence(ctx: &SiltingContext, seq: &ShortExactSequence, shift: i32) -> Result<bool> {
    let h = |m: &Module| ctx.hom_p_module(m, shift).map(|x| x.module);
    let (hx, hy, hz) = (h(&seq.x)?, h(&seq.y)?, h(&seq.z)?);
    if !is_indecomposable(&hz)? || tau(&hz)?.is_zero() {
        return Ok(false);
    }
    let b_seq = ar_sequence(&hz)?;
    Ok(is_isomorphic(&b_seq.x, &hx)? && is_isomorphic(&b_seq.y, &hy)?)
}

/// The AR theory of `mod B` for splitting `P`: sequences internal to `T` and
/// `F` are carried to `B`, and every AR sequence over `B` lies in `X(P)`,
/// in `Y(P)`, or is a connecting sequence with split middle term.
pub fn split_ar_report(ctx: &SiltingContext, a_battery: &Battery, b_battery: &Battery) -> Result<Vec<Check>> {
    let tp = TorsionPair::new(ctx.p())?;
    let split = splitting_check(ctx, &tp, a_battery)?;
    if !(split.status == Status::Certified && split.dims.get("splitting") == Some(&1)) {
        return Ok(vec![Check::new("split-ar", Status::Skipped).witness("splitting is not certified")]);
    }
    let qtp = TorsionPair::new(&ctx.q)?;
    let mut out = Vec::new();

    let mut bad = Vec::new();
    let (mut in_t, mut in_f) = (0, 0);
    for (k, z) in a_battery.modules.iter().enumerate() {
        if tau(z)?.is_zero() {
            continue;
        }
        let seq = ar_sequence(z)?;
        let shift = if tp.in_torsion(&seq.x)? && tp.in_torsion(&seq.y)? && tp.in_torsion(z)? {
            in_t += 1;
            0
        } else if tp.in_free(&seq.x)? && tp.in_free(&seq.y)? && tp.in_free(z)? {
            in_f += 1;
            1
        } else {
            continue;
        };
        if !maps_to_ar_sequence(ctx, &seq, shift)? {
            bad.push(a_battery.label(k));
        }
    }
    out.push(
        Check::pass_if("split-ar.images-are-almost-split", bad.is_empty())
            .dim("in_torsion", in_t)
            .dim("in_free", in_f)
            .witness_on_fail(|| labels(&bad)),
    );

    // the connecting data for each applicable P_i
    let mut connecting = Vec::new();
    for i in 0..ctx.alg.n_vertices() {
        let (in_p, shift_in_p) = projective_position(ctx, i)?;
        if !in_p && !shift_in_p {
            let s = connecting_sequence(ctx, &qtp, i)?;
            let (sum, _, _) = Module::direct_sum(ctx.b(), &[s.rad_term.clone(), s.top_term.clone()]);
            let split_middle = is_isomorphic(&s.ar.y, &sum)?;
            connecting.push((i, s, split_middle));
        }
    }
    let bad: Vec<String> =
        connecting.iter().filter(|c| !c.2).map(|c| format!("P{}", c.0 + 1)).collect();
    out.push(
        Check::pass_if("split-ar.connecting-middle-terms", bad.is_empty())
            .dim("connecting", connecting.len())
            .witness_on_fail(|| labels(&bad)),
    );

    let mut bad = Vec::new();
    let (mut nx, mut ny, mut nc) = (0, 0, 0);
    for (k, n) in b_battery.modules.iter().enumerate() {
        if tau(n)?.is_zero() {
            continue;
        }
        let seq = ar_sequence(n)?;
        let all = |f: &dyn Fn(&Module) -> Result<bool>| -> Result<bool> { Ok(f(&seq.x)? && f(&seq.y)? && f(n)?) };
        if all(&|m| qtp.in_torsion(m))? {
            nx += 1;
        } else if all(&|m| qtp.in_free(m))? {
            ny += 1;
        } else {
            let mut hit = false;
            for (_, s, _) in &connecting {
                if is_isomorphic(n, &s.ar.z)? && is_isomorphic(&seq.x, &s.ar.x)? {
                    hit = true;
                    break;
                }
            }
            if hit {
                nc += 1;
            } else {
                bad.push(format!("B:M{}", k + 1));
            }
        }
    }
    out.push(
        Check::pass_if("split-ar.trichotomy", bad.is_empty())
            .dim("in_x", nx)
            .dim("in_y", ny)
            .dim("connecting", nc)
            .witness_on_fail(|| labels(&bad)),
    );
    Ok(out)
}

/// Every AR-level check for `ctx`.
pub fn ar_checks(ctx: &SiltingContext, a_battery: &Battery, b_battery: &Battery) -> Result<Vec<Check>> {
    let tp = TorsionPair::new(ctx.p())?;
    let qtp = TorsionPair::new(&ctx.q)?;
    let mut out = Vec::new();
    for i in 0..ctx.alg.n_vertices() {
        out.push(connecting_term_check(ctx, i)?);
        out.push(connecting_sequence_check(ctx, &qtp, i)?);
    }
    out.push(splitting_check(ctx, &tp, a_battery)?);
    out.extend(separating_check(ctx, &tp, a_battery)?);
    out.extend(split_ar_report(ctx, a_battery, b_battery)?);
    Ok(out)
}

pub fn ar_report(ctx: &SiltingContext, fixture: &str, opts: &crate::theorem::BatteryOptions) -> Result<crate::report::Report> {
    let (a, b) = crate::theorem::batteries(ctx, opts)?;
    let mut r = crate::report::Report::new(fixture, ctx.alg.field().tag());
    r.extend(ar_checks(ctx, &a, &b)?);
    r.normalize();
    Ok(r)
}
