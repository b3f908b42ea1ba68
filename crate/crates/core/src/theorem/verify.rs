//! Battery-level verification of the silting theorem and its consequences.

use super::battery::{module_label, Battery};
use super::torsion::{SequenceKind, TorsionPair};
use super::{HomModule, SiltingContext};
use crate::complex::{is_presilting, ChainMap, EndK, HomSpace, ProjComplex, StalkHom};
use crate::error::Result;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::module::{ext_dim, hom_basis, is_isomorphic, min_proj_presentation, Module};
use crate::report::{Check, Status};

/// `H⁰(X) ∈ T`, `H⁻¹(X) ∈ F` and `H^i(X) = 0` otherwise.
pub fn in_heart(tp: &TorsionPair, x: &ProjComplex) -> Result<bool> {
    let Some((lo, hi)) = x.support() else { return Ok(true) };
    for i in lo..=hi {
        let h = x.cohomology(i)?;
        let ok = match i {
            0 => tp.in_torsion(&h)?,
            -1 => tp.in_free(&h)?,
            _ => h.is_zero(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of one module in a torsion pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Class {
    Torsion,
    Free,
    Neither,
}

pub(crate) fn classify(tp: &TorsionPair, m: &Module) -> Result<Class> {
    let t = tp.in_torsion(m)?;
    let f = tp.in_free(m)?;
    Ok(match (t, f) {
        (true, false) => Class::Torsion,
        (false, true) => Class::Free,
        (false, false) => Class::Neither,
        (true, true) => Class::Neither,
    })
}

pub(crate) fn labels(items: &[String]) -> String {
    const SHOW: usize = 4;
    let mut s = items.iter().take(SHOW).cloned().collect::<Vec<_>>().join(", ");
    if items.len() > SHOW {
        s.push_str(&format!(", … ({} total)", items.len()));
    }
    s
}

fn check_from_failures(name: &str, tested: usize, fails: Vec<String>) -> Check {
    Check::pass_if(name, fails.is_empty()).dim("tested", tested).dim("failed", fails.len()).witness_on_fail(|| labels(&fails))
}

/// Everything about one battery of `A`-modules needed by several checks.
struct ASide {
    modules: Vec<Module>,
    names: Vec<String>,
    class: Vec<Class>,
    hp0: Vec<HomModule>,
    hp1: Vec<HomModule>,
}

/// Same for `B`-modules with respect to `Q`.
struct BSide {
    modules: Vec<Module>,
    names: Vec<String>,
    class: Vec<Class>,
}

fn structure_checks(ctx: &SiltingContext, out: &mut Vec<Check>) -> Result<()> {
    let b = ctx.b();
    let f = ctx.alg.field();
    out.push(
        Check::pass_if("endomorphism-algebra.associative", b.table().is_associative() && b.table().is_unital())
            .dim("dim", b.dim()),
    );
    // minimality and approximation properties of the triangle
    let areg = ProjComplex::regular(&ctx.alg);
    let d = &ctx.delta;
    let p1 = d.p1();
    let end1 = EndK::new(p1)?;
    let a_p1 = HomSpace::new(&areg, p1)?;
    let mut killers = Vec::new();
    if a_p1.dim() > 0 && end1.dim() > 0 {
        let cols: Vec<Vector> =
            end1.basis.iter().map(|r| a_p1.class(&d.e().then(r, &areg, p1, p1))).collect();
        killers = Matrix::from_columns(f, a_p1.dim(), &cols).kernel();
    } else if end1.dim() > 0 {
        killers = (0..end1.dim()).map(|i| linalg::unit_vector(f, end1.dim(), i)).collect();
    }
    let minimal = killers.iter().all(|k| end1.radical().contains(k));
    out.push(
        Check::pass_if("triangle.e-left-minimal", minimal)
            .dim("p1_summands", d.left.parts.len())
            .dim("p2_summands", d.p2.parts.len()),
    );
    // g: P'' → A[1] is a right add P-approximation: Hom(P, P'') → Hom(P, A[1]) onto
    let p = ctx.p();
    let a1 = areg.shift(1);
    let p_a1 = HomSpace::new(p, &a1)?;
    let p_p2 = HomSpace::new(p, d.p2())?;
    let imgs: Vec<Vector> = p_p2.reps().iter().map(|u| p_a1.class(&u.then(d.g(), p, d.p2(), &a1))).collect();
    let rank = Subspace::span(f, p_a1.dim(), &imgs).dim();
    out.push(
        Check::pass_if("triangle.g-right-approximation", rank == p_a1.dim()).dim("hom_p_a1", p_a1.dim()).dim("image", rank),
    );
    // Q over B
    let qv = is_presilting(&ctx.q)?;
    let b_classes = b.decompose_identity()?.classes.len();
    let a_classes = ctx.alg.decompose_identity()?.classes.len();
    out.push(
        Check::pass_if("q.two-term-silting", qv.two_term && qv.silting)
            .dim("classes", qv.classes)
            .dim("hom_q_q1", qv.hom_shift_plus),
    );
    out.push(
        Check::pass_if(
            "class-counts",
            ctx.endo.len() == a_classes && a_classes == qv.classes && qv.classes == b_classes,
        )
        .dim("p", ctx.endo.len())
        .dim("a", a_classes)
        .dim("q", qv.classes)
        .dim("b", b_classes),
    );
    if ctx.is_tilting() {
        out.push(Check::pass_if("q.tilting-when-p-tilting", qv.tilting).dim("hom_q_qm1", qv.hom_shift_minus));
    }
    // Φ
    let alg = &ctx.alg;
    let id = ctx.q_end.class(&ChainMap::identity(&ctx.q));
    out.push(Check::pass_if("phi.unital", ctx.phi_class(&alg.one()) == id));
    let mut bad = Vec::new();
    for x in 0..alg.dim() {
        for y in 0..alg.dim() {
            let xy = alg.mul(&alg.basis_vector(x), &alg.basis_vector(y));
            // Φ(x y) = Φ(x) ∘ Φ(y)
            let comp = ctx.phi_basis[y].then(&ctx.phi_basis[x], &ctx.q, &ctx.q, &ctx.q);
            if ctx.q_end.class(&comp) != ctx.phi_class(&xy) {
                bad.push(format!("{}·{}", alg.label(x), alg.label(y)));
            }
        }
    }
    out.push(check_from_failures("phi.multiplicative", alg.dim() * alg.dim(), bad));
    let rank = ctx.phi_matrix.rank();
    out.push(
        Check::pass_if("phi.surjective", rank == ctx.q_end.dim())
            .dim("rank", rank)
            .dim("end_q", ctx.q_end.dim()),
    );
    out.push(
        Check::pass_if("phi.kernel-two-ways", ctx.kernel.same_as(&ctx.factor_kernel))
            .dim("linear", ctx.kernel.dim())
            .dim("factorization", ctx.factor_kernel.dim())
            .dim("quotient", ctx.quotient_dim()),
    );
    out.push(
        Check::pass_if("phi.kernel-zero-iff-tilting", ctx.kernel.is_zero() == ctx.is_tilting())
            .dim("kernel", ctx.kernel.dim())
            .dim("hom_p_pm1", ctx.verdict.hom_shift_minus),
    );
    Ok(())
}

fn torsion_checks(
    prefix: &str,
    tp: &TorsionPair,
    modules: &[Module],
    names: &[String],
    class: &[Class],
    out: &mut Vec<Check>,
) -> Result<()> {
    // canonical sequences
    let mut bad = Vec::new();
    for (i, m) in modules.iter().enumerate() {
        let seq = tp.canonical_sequence(m)?;
        let ok = tp.in_torsion(&seq.x)? && tp.in_free(&seq.z)?;
        let agrees = match class[i] {
            Class::Torsion => seq.z.is_zero(),
            Class::Free => seq.x.is_zero(),
            Class::Neither => !seq.x.is_zero() && !seq.z.is_zero(),
        };
        if !ok || !agrees {
            bad.push(names[i].clone());
        }
    }
    out.push(check_from_failures(&format!("{prefix}.canonical-sequences"), modules.len(), bad));
    // Hom(T, F) = 0
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (i, m) in modules.iter().enumerate() {
        for (j, n) in modules.iter().enumerate() {
            if class[i] == Class::Torsion && class[j] == Class::Free {
                pairs += 1;
                if !hom_basis(m, n).is_empty() {
                    bad.push(format!("{} → {}", names[i], names[j]));
                }
            }
        }
    }
    out.push(check_from_failures(&format!("{prefix}.hom-orthogonal"), pairs, bad));
    let nt = class.iter().filter(|c| **c == Class::Torsion).count();
    let nf = class.iter().filter(|c| **c == Class::Free).count();
    let gens_ok = tp.in_torsion(&tp.h0)? && tp.in_free(&tp.h1_nu)?;
    out.push(
        Check::pass_if(format!("{prefix}.generators-in-classes"), gens_ok)
            .dim("torsion", nt)
            .dim("free", nf)
            .dim("neither", modules.len() - nt - nf),
    );
    Ok(())
}

fn a_side(ctx: &SiltingContext, tp: &TorsionPair, battery: &Battery) -> Result<ASide> {
    let modules = battery.modules.clone();
    let names: Vec<String> = (0..modules.len()).map(|i| battery.label(i)).collect();
    let mut class = Vec::new();
    let mut hp0 = Vec::new();
    let mut hp1 = Vec::new();
    for m in &modules {
        class.push(classify(tp, m)?);
        hp0.push(ctx.hom_p_module(m, 0)?);
        hp1.push(ctx.hom_p_module(m, 1)?);
    }
    Ok(ASide { modules, names, class, hp0, hp1 })
}

fn a_checks(ctx: &SiltingContext, tp: &TorsionPair, s: &ASide, out: &mut Vec<Check>) -> Result<()> {
    let alg = &ctx.alg;
    let p = ctx.p();
    // short exact sequence 0 → Hom(P, H^{i-1}[1]) → Hom(P, X[i]) → Hom(P, H^i) → 0
    // on the minimal presentation of each battery module, i = 0, 1
    let mut bad = Vec::new();
    for (k, m) in s.modules.iter().enumerate() {
        let pres = min_proj_presentation(m)?;
        let x = ProjComplex::two_term(alg, &pres.p1, &pres.p0, pres.d.clone())?;
        let hm1 = x.cohomology(-1)?;
        let h0 = x.cohomology(0)?;
        for i in 0..2 {
            let lhs = HomSpace::new(p, &x.shift(i))?.dim();
            let (a, b) = if i == 0 { (&hm1, &h0) } else { (&h0, &Module::zero(alg.clone())) };
            let rhs = StalkHom::new(p, a, 1)?.dim() + StalkHom::new(p, b, 0)?.dim();
            if lhs != rhs {
                bad.push(format!("{} (i = {i}: {lhs} vs {rhs})", s.names[k]));
            }
        }
    }
    out.push(check_from_failures("hom-cohomology-sequence", s.modules.len() * 2, bad));
    // Hom_D(P, X) = Hom_A(H⁰(P), X)
    let mut bad = Vec::new();
    for (k, m) in s.modules.iter().enumerate() {
        let lhs = s.hp0[k].hom.dim();
        let rhs = hom_basis(&tp.h0, m).len();
        if lhs != rhs {
            bad.push(format!("{} ({lhs} vs {rhs})", s.names[k]));
        }
    }
    out.push(check_from_failures("hom-p-equals-hom-h0", s.modules.len(), bad));
    // Hom(P, X) ≅ Hom(P, tX) and Hom(P, X[1]) ≅ Hom(P, (X/tX)[1]) as B-modules
    let mut bad = Vec::new();
    for (k, m) in s.modules.iter().enumerate() {
        let seq = tp.canonical_sequence(m)?;
        let t0 = ctx.hom_p_module(&seq.x, 0)?;
        let f1 = ctx.hom_p_module(&seq.z, 1)?;
        if !is_isomorphic(&s.hp0[k].module, &t0.module)? || !is_isomorphic(&s.hp1[k].module, &f1.module)? {
            bad.push(s.names[k].clone());
        }
    }
    out.push(check_from_failures("canonical-sequence-hom-isos", s.modules.len(), bad));
    // the four constructive sequences
    for kind in SequenceKind::ALL {
        let mut bad = Vec::new();
        let mut tested = 0;
        for (k, m) in s.modules.iter().enumerate() {
            let applies = if kind.on_torsion() { s.class[k] == Class::Torsion } else { s.class[k] == Class::Free };
            if !applies {
                continue;
            }
            tested += 1;
            if let Err(e) = tp.ext_sequence(m, kind) {
                bad.push(format!("{}: {e}", s.names[k]));
            }
        }
        out.push(check_from_failures(&format!("ext-sequence.{}", kind.number()), tested, bad));
    }
    // Hom_B(Hom(P,M), Hom(P,N[1])) = Ext¹(M, N) and Ext¹_B(…) = Ext²(M, N) for M ∈ T, N ∈ F
    let mut bad1 = Vec::new();
    let mut bad2 = Vec::new();
    let mut pairs = 0;
    for (i, m) in s.modules.iter().enumerate() {
        if s.class[i] != Class::Torsion {
            continue;
        }
        for (j, n) in s.modules.iter().enumerate() {
            if s.class[j] != Class::Free {
                continue;
            }
            pairs += 1;
            let (bm, bn) = (&s.hp0[i].module, &s.hp1[j].module);
            let h = hom_basis(bm, bn).len();
            let e1 = ext_dim(m, n, 1)?;
            if h != e1 {
                bad1.push(format!("{} , {} ({h} vs {e1})", s.names[i], s.names[j]));
            }
            let eb = ext_dim(bm, bn, 1)?;
            let e2 = ext_dim(m, n, 2)?;
            if eb != e2 {
                bad2.push(format!("{} , {} ({eb} vs {e2})", s.names[i], s.names[j]));
            }
        }
    }
    out.push(check_from_failures("hom-b-equals-ext1", pairs, bad1));
    out.push(check_from_failures("ext1-b-equals-ext2", pairs, bad2));
    // round trips through Q
    let mut bad_f = Vec::new();
    let mut bad_g = Vec::new();
    let mut bad_img = Vec::new();
    let qtp = TorsionPair::new(&ctx.q)?;
    let (mut nt, mut nf) = (0, 0);
    for (k, m) in s.modules.iter().enumerate() {
        match s.class[k] {
            Class::Torsion => {
                nt += 1;
                let y = &s.hp0[k].module;
                if !qtp.in_free(y)? {
                    bad_img.push(format!("Hom(P, {}) ∉ F(Q)", s.names[k]));
                }
                let back = ctx.q_hom_module(y, 1)?;
                if !is_isomorphic(&back.module, m)? {
                    bad_f.push(s.names[k].clone());
                }
            }
            Class::Free => {
                nf += 1;
                let x = &s.hp1[k].module;
                if !qtp.in_torsion(x)? {
                    bad_img.push(format!("Hom(P, {}[1]) ∉ T(Q)", s.names[k]));
                }
                let back = ctx.q_hom_module(x, 0)?;
                if !is_isomorphic(&back.module, m)? {
                    bad_g.push(s.names[k].clone());
                }
            }
            Class::Neither => {}
        }
    }
    out.push(check_from_failures("equivalence.torsion-round-trip", nt, bad_f));
    out.push(check_from_failures("equivalence.free-round-trip", nf, bad_g));
    out.push(check_from_failures("images-in-q-classes", nt + nf, bad_img));
    Ok(())
}

fn b_side(qtp: &TorsionPair, battery: &Battery) -> Result<BSide> {
    let modules = battery.modules.clone();
    let names: Vec<String> = modules.iter().enumerate().map(|(i, m)| format!("B:{}", module_label(i, m))).collect();
    let class = modules.iter().map(|m| classify(qtp, m)).collect::<Result<Vec<_>>>()?;
    Ok(BSide { modules, names, class })
}

fn b_checks(ctx: &SiltingContext, tp: &TorsionPair, s: &BSide, out: &mut Vec<Check>) -> Result<()> {
    // Φ_* Hom(Q, N) ∈ F(P) and Hom(P, Φ_* Hom(Q, N)[1]) ≅ N for N ∈ T(Q);
    // Φ_* Hom(Q, N[1]) ∈ T(P) and Hom(P, Φ_* Hom(Q, N[1])) ≅ N for N ∈ F(Q)
    let mut bad_mem = Vec::new();
    let mut bad_t = Vec::new();
    let mut bad_f = Vec::new();
    let mut bad_kill = Vec::new();
    let (mut nt, mut nf) = (0, 0);
    for (k, n) in s.modules.iter().enumerate() {
        match s.class[k] {
            Class::Torsion => {
                nt += 1;
                let x = ctx.q_hom_module(n, 0)?;
                if !tp.in_free(&x.module)? {
                    bad_mem.push(format!("Hom(Q, {}) ∉ F(P)", s.names[k]));
                }
                if !killed_by_kernel(ctx, &x.module) {
                    bad_kill.push(s.names[k].clone());
                }
                let back = ctx.hom_p_module(&x.module, 1)?;
                if !is_isomorphic(&back.module, n)? {
                    bad_t.push(s.names[k].clone());
                }
            }
            Class::Free => {
                nf += 1;
                let x = ctx.q_hom_module(n, 1)?;
                if !tp.in_torsion(&x.module)? {
                    bad_mem.push(format!("Hom(Q, {}[1]) ∉ T(P)", s.names[k]));
                }
                if !killed_by_kernel(ctx, &x.module) {
                    bad_kill.push(s.names[k].clone());
                }
                let back = ctx.hom_p_module(&x.module, 0)?;
                if !is_isomorphic(&back.module, n)? {
                    bad_f.push(s.names[k].clone());
                }
            }
            Class::Neither => {}
        }
    }
    out.push(check_from_failures("q-images-in-p-classes", nt + nf, bad_mem));
    out.push(check_from_failures("q-images-killed-by-kernel", nt + nf, bad_kill));
    out.push(check_from_failures("equivalence.q-torsion-round-trip", nt, bad_t));
    out.push(check_from_failures("equivalence.q-free-round-trip", nf, bad_f));
    Ok(())
}

fn killed_by_kernel(ctx: &SiltingContext, m: &Module) -> bool {
    ctx.kernel.basis().iter().all(|a| m.act_element(a).is_zero())
}

/// Runs every battery-level check. Both batteries should consist of
/// indecomposable modules; the `B`-battery is over `ctx.b()`.
pub fn verify_theorem(ctx: &SiltingContext, a_battery: &Battery, b_battery: &Battery) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    structure_checks(ctx, &mut out)?;
    let tp = TorsionPair::new(ctx.p())?;
    let qtp = TorsionPair::new(&ctx.q)?;
    let a = a_side(ctx, &tp, a_battery)?;
    torsion_checks("torsion-a", &tp, &a.modules, &a.names, &a.class, &mut out)?;
    a_checks(ctx, &tp, &a, &mut out)?;
    let b = b_side(&qtp, b_battery)?;
    torsion_checks("torsion-b", &qtp, &b.modules, &b.names, &b.class, &mut out)?;
    b_checks(ctx, &tp, &b, &mut out)?;
    out.push(
        Check::new("battery", if a_battery.complete { Status::Certified } else { Status::Evidence })
            .dim("a_modules", a_battery.len())
            .dim("b_modules", b_battery.len()),
    );
    Ok(out)
}
