//! The 2-term silting theorem machinery for a basic silting complex `P`:
//! `B = End(P)`, the triangle `A —e→ P' —f→ P'' —g→ A[1]`, the 2-term
//! complex `Q` over `B`, and the algebra map `Φ: A → End_K(Q)`.
//!
//! `P'` and `P''` are sums of summands of `P`, which identifies them with
//! projective `B`-modules. `Q` is `Hom(P, f)` written over `B`, and `Φ(a)` is
//! the pair `(b, c)` with `b e = e a` and
//! `c = [[b, -t], [0, a]]` on the cone, where `b e - e a = p' t`.

mod battery;
mod torsion;
mod verify;

pub use battery::{module_battery, Battery, BatteryOptions};
pub use torsion::{is_in_add, SequenceKind, TorsionPair};
pub use verify::{in_heart, verify_theorem};
pub(crate) use verify::{classify, labels, Class};

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complex::{
    complex_isomorphism, cone, AMatrix, AddIso, Approximation, ChainMap, EndK, Endo, HomSpace,
    ProjComplex, SiltingVerdict, StalkHom, Triangle,
};
use crate::complex::is_presilting;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::module::Module;

/// `A → P' → P'' → A[1]` with `P'' = cone(e)` identified with a sum of summands.
#[derive(Clone, Debug)]
pub struct Delta {
    /// `e: A → P'`, a minimal left `add P`-approximation.
    pub left: Approximation,
    /// The cone triangle; `incl` is `f` and `proj` is `g`.
    pub triangle: Triangle,
    /// `P'' ≅ ⊕ P_{parts}`.
    pub p2: AddIso,
}

impl Delta {
    pub fn p1(&self) -> &ProjComplex {
        &self.left.sum
    }

    pub fn p2(&self) -> &ProjComplex {
        &self.triangle.cone
    }

    pub fn e(&self) -> &ChainMap {
        &self.left.map
    }

    // `triangle.f` is `e`; the second map of Δ is the cone inclusion
    #[allow(clippy::misnamed_getters)]
    pub fn f(&self) -> &ChainMap {
        &self.triangle.incl
    }

    pub fn g(&self) -> &ChainMap {
        &self.triangle.proj
    }
}

/// The data `(b, t, c)` representing `Φ(a)` before passing to `B`.
#[derive(Clone, Debug)]
pub struct PhiLift {
    pub b: ChainMap,
    /// `t: A^0 → P'^{-1}` with `b e - e a = p' t`
    pub t: AMatrix,
    pub c: ChainMap,
}

/// A module `Hom(X, M[n])` with its induced action, in module coordinates.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub hom: StalkHom,
    pub module: Module,
    /// Columns: module basis vectors in class coordinates of `hom`.
    pub basis: Matrix,
}

#[derive(Clone, Debug)]
pub struct SiltingContext {
    pub alg: Arc<Algebra>,
    pub endo: Endo,
    pub verdict: SiltingVerdict,
    pub delta: Delta,
    /// The 2-term silting complex over `B`.
    pub q: ProjComplex,
    pub q_end: HomSpace,
    /// `Φ` of each basis element of `A`, as chain maps `Q → Q` over `B`.
    pub phi_basis: Vec<ChainMap>,
    /// Columns: classes of `phi_basis` in `End_K(Q)`.
    pub phi_matrix: Matrix,
    /// `ker Φ` as the null space of `phi_matrix`.
    pub kernel: Subspace,
    /// `ker Φ` as the span of composites `g[-1] u e` with `u: P' → P''[-1]`.
    pub factor_kernel: Subspace,
    b_endos: Vec<ChainMap>,
    p1_end: HomSpace,
    a_p1: HomSpace,
}

/// Indecomposable summands of the given complexes, one per isomorphism class,
/// keeping the input order.
pub fn ordered_basic(parts: &[ProjComplex]) -> Result<Vec<ProjComplex>> {
    let mut out: Vec<ProjComplex> = Vec::new();
    for p in parts {
        if p.is_zero() {
            continue;
        }
        let pieces = if EndK::new(p)?.is_local() {
            vec![p.clone()]
        } else {
            crate::complex::basic_summands(p)?
        };
        for s in pieces {
            let mut seen = false;
            for t in &out {
                if complex_isomorphism(&s, t)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Left multiplication by `a` on the regular complex `A = ⊕ e_v A`.
pub fn left_mult(alg: &Algebra, a: &[Scalar]) -> AMatrix {
    let verts: Vec<usize> = (0..alg.n_vertices()).collect();
    let mut m = AMatrix::zero(alg, &verts, &verts);
    for &u in &verts {
        for &v in &verts {
            m.set(u, v, alg.corner_part(a, u, v));
        }
    }
    m
}

/// The element `a` of a degree-0 endomorphism of the regular complex.
pub fn regular_element(alg: &Algebra, m: &AMatrix) -> Vector {
    let mut a = alg.zero();
    for t in 0..m.n_rows() {
        for s in 0..m.n_cols() {
            a = linalg::add_vectors(&a, m.get(t, s));
        }
    }
    a
}

impl SiltingContext {
    /// Builds the context from the summands of a 2-term silting complex.
    pub fn new(parts: &[ProjComplex]) -> Result<SiltingContext> {
        let first = parts.first().ok_or_else(|| Error::Precondition("empty complex".into()))?;
        let alg = first.algebra().clone();
        let summands = ordered_basic(parts)?;
        if summands.is_empty() {
            return Err(Error::Precondition("complex is zero in the homotopy category".into()));
        }
        let total = ProjComplex::direct_sum(&alg, &summands);
        let verdict = is_presilting(&total)?;
        if !verdict.two_term {
            return Err(Error::Precondition("complex is not 2-term".into()));
        }
        if !verdict.silting {
            return Err(Error::Precondition(if verdict.presilting {
                format!("complex is presilting but has {} of {} summand classes", verdict.classes, verdict.simples)
            } else {
                format!("complex is not presilting: dim Hom(P, P[1]) = {}", verdict.hom_shift_plus)
            }));
        }
        let endo = Endo::new(summands)?;
        let a = ProjComplex::regular(&alg);
        let left = endo.left_approximation(&a)?;
        let triangle = cone(&left.map, &a, &left.sum);
        let p2 = endo
            .add_iso(&triangle.cone)?
            .ok_or_else(|| Error::Internal("silting certificate violated: cone(e) is not in add P".into()))?;
        let delta = Delta { left, triangle, p2 };

        let b = endo.b.clone();
        let f_sum = delta.f().then(&delta.p2.to_sum, delta.p1(), delta.p2(), &delta.p2.sum);
        let d = endo.b_matrix(&delta.p2.parts, &delta.left.parts, &f_sum);
        let q = ProjComplex::two_term(&b, &delta.left.parts, &delta.p2.parts, d)?;
        let q_end = HomSpace::new(&q, &q)?;
        let b_endos = (0..b.dim()).map(|x| endo.basis_endomorphism(x)).collect();
        let p1_end = HomSpace::new(delta.p1(), delta.p1())?;
        let a_p1 = HomSpace::new(&a, delta.p1())?;

        let mut ctx = SiltingContext {
            alg: alg.clone(),
            endo,
            verdict,
            delta,
            q,
            q_end,
            phi_basis: Vec::new(),
            phi_matrix: Matrix::zeros(alg.field(), 0, 0),
            kernel: Subspace::zero(alg.field(), alg.dim()),
            factor_kernel: Subspace::zero(alg.field(), alg.dim()),
            b_endos,
            p1_end,
            a_p1,
        };
        let f = alg.field();
        let mut cols = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let phi = ctx.construct_phi(&alg.basis_vector(i))?;
            cols.push(ctx.q_end.class(&phi));
            ctx.phi_basis.push(phi);
        }
        ctx.phi_matrix = Matrix::from_columns(f, ctx.q_end.dim(), &cols);
        ctx.kernel = Subspace::span(f, alg.dim(), &ctx.phi_matrix.kernel());
        ctx.factor_kernel = ctx.factorization_kernel()?;
        Ok(ctx)
    }

    pub fn b(&self) -> &Arc<Algebra> {
        &self.endo.b
    }

    pub fn p(&self) -> &ProjComplex {
        &self.endo.total
    }

    pub fn is_tilting(&self) -> bool {
        self.verdict.tilting
    }

    /// Representative `P → P` of a basis element of `B`.
    pub fn b_endomorphism(&self, x: usize) -> &ChainMap {
        &self.b_endos[x]
    }

    /// Solves `b e = e a` up to homotopy, then builds `t` and the cone map `c`.
    pub fn phi_lift(&self, a: &[Scalar]) -> Result<PhiLift> {
        let alg = &self.alg;
        let f = alg.field();
        let areg = ProjComplex::regular(alg);
        let p1 = self.delta.p1();
        let e = self.delta.e();
        let la = ChainMap::from_components(&areg, &areg, &[(0, left_mult(alg, a))]);
        let ea = la.then(e, &areg, &areg, p1);
        let target = self.a_p1.class(&ea);
        let reps = self.p1_end.reps();
        let cols: Vec<Vector> = reps.iter().map(|r| self.a_p1.class(&e.then(r, &areg, p1, p1))).collect();
        let m = Matrix::from_columns(f, self.a_p1.dim(), &cols);
        let x = if self.a_p1.dim() == 0 {
            linalg::zero_vector(f, reps.len())
        } else {
            m.solve_vec(&target).ok_or_else(|| Error::Internal("e is not a left add P-approximation".into()))?
        };
        let b = if reps.is_empty() { ChainMap::zero(p1, p1) } else { self.p1_end.from_class(&x) };
        let diff = e.then(&b, &areg, p1, p1).add(&ea.neg());
        let h = self
            .a_p1
            .null_homotopy(&diff)
            .ok_or_else(|| Error::Internal("b e - e a is not null-homotopic".into()))?;
        let t = h
            .iter()
            .find(|(d, _)| *d == 0)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| AMatrix::zero(alg, p1.term(-1), areg.term(0)));
        let cn = self.delta.p2();
        let mut c = ChainMap::zero(cn, cn);
        if let Some((lo, hi)) = cn.support() {
            for i in lo..=hi {
                let tt = if i == -1 { t.neg() } else { AMatrix::zero(alg, p1.term(i), areg.term(i + 1)) };
                let ai = la.comp(i + 1, &areg, &areg);
                let bi = b.comp(i, p1, p1);
                let zero = AMatrix::zero(alg, areg.term(i + 1), p1.term(i));
                c.set(i, AMatrix::blocks(alg, &bi, &tt, &zero, &ai));
            }
        }
        if !c.is_chain_map(cn, cn) {
            return Err(Error::Internal("cone map of (a, b) is not a chain map".into()));
        }
        Ok(PhiLift { b, t, c })
    }

    /// Translates `(b, c)` into an endomorphism of `Q` over `B`.
    pub fn phi_of_lift(&self, lift: &PhiLift) -> Result<ChainMap> {
        let d = &self.delta;
        let c_sum = d.p2.from_sum.then(&lift.c, &d.p2.sum, d.p2(), d.p2()).then(
            &d.p2.to_sum,
            &d.p2.sum,
            d.p2(),
            &d.p2.sum,
        );
        let m1 = self.endo.b_matrix(&d.left.parts, &d.left.parts, &lift.b);
        let m0 = self.endo.b_matrix(&d.p2.parts, &d.p2.parts, &c_sum);
        let phi = ChainMap::from_components(&self.q, &self.q, &[(-1, m1), (0, m0)]);
        if !phi.is_chain_map(&self.q, &self.q) {
            return Err(Error::Internal("Φ(a) is not a chain map over B".into()));
        }
        Ok(phi)
    }

    fn construct_phi(&self, a: &[Scalar]) -> Result<ChainMap> {
        self.phi_of_lift(&self.phi_lift(a)?)
    }

    /// `Φ(a)` as a chain map `Q → Q`, linear in the basis values.
    pub fn phi(&self, a: &[Scalar]) -> ChainMap {
        let mut out = ChainMap::zero(&self.q, &self.q);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.phi_basis[i].scale(c));
            }
        }
        out
    }

    /// Class of `Φ(a)` in `End_K(Q)`.
    pub fn phi_class(&self, a: &[Scalar]) -> Vector {
        self.phi_matrix.mul_vec(a)
    }

    /// `dim Ā = dim A - dim ker Φ`.
    pub fn quotient_dim(&self) -> usize {
        self.alg.dim() - self.kernel.dim()
    }

    fn factorization_kernel(&self) -> Result<Subspace> {
        let alg = &self.alg;
        let areg = ProjComplex::regular(alg);
        let d = &self.delta;
        let c1 = d.p2().shift(-1);
        let g1 = d.g().shift(-1).reframe(&c1, &areg);
        let space = HomSpace::new(d.p1(), &c1)?;
        let mut elems = Vec::new();
        for u in space.reps() {
            let comp = d.e().then(&u, &areg, d.p1(), &c1).then(&g1, &areg, &c1, &areg);
            elems.push(regular_element(alg, &comp.comp(0, &areg, &areg)));
        }
        Ok(Subspace::span(alg.field(), alg.dim(), &elems))
    }

    /// `Hom(P, X[shift])` as a right `B`-module, `B` acting by precomposition.
    pub fn hom_p_module(&self, x: &Module, shift: i32) -> Result<HomModule> {
        let hom = StalkHom::new(self.p(), x, shift)?;
        let act: Vec<Matrix> = self.b_endos.iter().map(|u| hom.precompose_matrix(u, &hom)).collect();
        let (module, basis) = Module::from_right_action(self.b(), hom.dim(), &act)
            .map_err(|e| Error::Internal(format!("Hom(P, X[{shift}]) is not a B-module: {e}")))?;
        Ok(HomModule { hom, module, basis })
    }

    /// `Φ_* Hom(Q, N[shift])`: `A` acts by precomposition with `Φ(a)`.
    pub fn q_hom_module(&self, n: &Module, shift: i32) -> Result<HomModule> {
        let hom = StalkHom::new(&self.q, n, shift)?;
        let act: Vec<Matrix> = self.phi_basis.iter().map(|u| hom.precompose_matrix(u, &hom)).collect();
        let (module, basis) = Module::from_right_action(&self.alg, hom.dim(), &act)
            .map_err(|e| Error::Internal(format!("Hom(Q, N[{shift}]) is not an A-module via Φ: {e}")))?;
        Ok(HomModule { hom, module, basis })
    }

    /// `Hom(P, Y)` for a complex `Y` over `A`, as a right `B`-module.
    pub fn hom_p_complex(&self, y: &ProjComplex) -> Result<(HomSpace, Module)> {
        let hom = HomSpace::new(self.p(), y)?;
        let f = self.alg.field();
        let p = self.p();
        let act: Vec<Matrix> = self
            .b_endos
            .iter()
            .map(|u| {
                let cols: Vec<Vector> =
                    (0..hom.dim()).map(|k| hom.class(&u.then(&hom.rep(k), p, p, y))).collect();
                Matrix::from_columns(f, hom.dim(), &cols)
            })
            .collect();
        let (m, _) = Module::from_right_action(self.b(), hom.dim(), &act)
            .map_err(|e| Error::Internal(format!("Hom(P, Y) is not a B-module: {e}")))?;
        Ok((hom, m))
    }
}

/// Batteries over `A` and `B`, seeded with the generators of both torsion
/// pairs.
pub fn batteries(ctx: &SiltingContext, opts: &BatteryOptions) -> Result<(Battery, Battery)> {
    let tp = TorsionPair::new(ctx.p())?;
    let qtp = TorsionPair::new(&ctx.q)?;
    let a = module_battery(&ctx.alg, &[tp.h0, tp.h1_nu], opts)?;
    let b = module_battery(ctx.b(), &[qtp.h0, qtp.h1_nu], opts)?;
    Ok((a, b))
}

/// The full battery-level report for one silting complex.
pub fn theorem_report(ctx: &SiltingContext, fixture: &str, opts: &BatteryOptions) -> Result<crate::report::Report> {
    let (a, b) = batteries(ctx, opts)?;
    let mut r = crate::report::Report::new(fixture, ctx.alg.field().tag());
    r.extend(verify_theorem(ctx, &a, &b)?);
    r.normalize();
    Ok(r)
}
