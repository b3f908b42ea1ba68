//! Finite-dimensional right modules over a vertex-graded [`Algebra`].
//!
//! A module is a vector space ordered by vertex blocks together with one
//! action matrix per algebra basis element: `m · b = R_b m` for column vectors
//! `m`, so `R_{ab} = R_b R_a`.

mod decompose;
mod hom;
mod homological;

pub use decompose::{
    decompose, endomorphism_table, is_indecomposable, is_isomorphic, isomorphism, Decomposition,
    Summand,
};
pub use hom::{hom_basis, is_module_map};
pub use homological::{
    ar_sequence, ext_dim, is_hereditary, lift_map, min_proj_presentation, projective_resolution,
    reject, tau, tau_inverse, trace, transpose, ExtSpace, Extension, Presentation, Resolution,
    ShortExactSequence,
};

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Matrix, Quotient, Subspace, Vector};

#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    action: Vec<Matrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)
    }
}

impl PartialEq for Module {
    fn eq(&self, o: &Module) -> bool {
        self.dims == o.dims && self.action == o.action && self.alg.same_structure(&o.alg)
    }
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for d in dims {
        off.push(acc);
        acc += d;
    }
    off.push(acc);
    off
}

impl Module {
    /// Builds a module from per-vertex dimensions and all basis actions.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Module> {
        if dims.len() != alg.n_vertices() || action.len() != alg.dim() {
            return Err(Error::Shape("module data does not match the algebra".into()));
        }
        let n: usize = dims.iter().sum();
        if action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape("action matrix of wrong size".into()));
        }
        let offsets = offsets_of(&dims);
        Ok(Module { alg, dims, offsets, action })
    }

    /// Module whose basis vector `i` sits at vertex `vertex[i]`, with
    /// `basis_i · b = Σ act(b, i)`. The basis is reordered by vertex.
    pub fn from_basis_action<F>(alg: Arc<Algebra>, vertex: &[usize], act: F) -> (Module, Vec<usize>)
    where
        F: Fn(usize, usize) -> Vec<(usize, Scalar)>,
    {
        let nv = alg.n_vertices();
        let mut dims = vec![0; nv];
        for &v in vertex {
            dims[v] += 1;
        }
        let offsets = offsets_of(&dims);
        let mut fill = offsets.clone();
        let mut pos = vec![0; vertex.len()];
        for (i, &v) in vertex.iter().enumerate() {
            pos[i] = fill[v];
            fill[v] += 1;
        }
        let n = vertex.len();
        let field = alg.field();
        let action = (0..alg.dim())
            .map(|b| {
                let mut m = Matrix::zeros(field, n, n);
                for i in 0..n {
                    for (j, c) in act(b, i) {
                        m.add_at(pos[j], pos[i], &c);
                    }
                }
                m
            })
            .collect();
        (Module { alg, dims, offsets, action }, pos)
    }

    pub fn zero(alg: Arc<Algebra>) -> Module {
        let f = alg.field();
        let nv = alg.n_vertices();
        let action = (0..alg.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Module { dims: vec![0; nv], offsets: vec![0; nv + 1], alg, action }
    }

    /// `P_v = e_v A`.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Module {
        let basis: Vec<usize> = (0..alg.dim()).filter(|&b| alg.left(b) == v).collect();
        let vertex: Vec<usize> = basis.iter().map(|&b| alg.right(b)).collect();
        let index = |c: usize| basis.iter().position(|&x| x == c);
        let t = alg.table();
        Module::from_basis_action(alg.clone(), &vertex, |a, i| {
            t.basis_product(basis[i], a).iter().filter_map(|(c, s)| index(*c).map(|j| (j, s.clone()))).collect()
        })
        .0
    }

    /// `I_v = D(A e_v)`.
    pub fn injective(alg: &Arc<Algebra>, v: usize) -> Module {
        let basis: Vec<usize> = (0..alg.dim()).filter(|&b| alg.right(b) == v).collect();
        let vertex: Vec<usize> = basis.iter().map(|&b| alg.left(b)).collect();
        let t = alg.table();
        // (b^* · a)(c) = coefficient of b in a c
        Module::from_basis_action(alg.clone(), &vertex, |a, i| {
            let b = basis[i];
            let mut out = Vec::new();
            for (j, &c) in basis.iter().enumerate() {
                for (k, s) in t.basis_product(a, c) {
                    if *k == b {
                        out.push((j, s.clone()));
                    }
                }
            }
            out
        })
        .0
    }

    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Module {
        let one = alg.field().one();
        let e = alg.vertex_idempotent_index(v);
        Module::from_basis_action(alg.clone(), &[v], |a, _| if a == e { vec![(0, one.clone())] } else { vec![] }).0
    }

    /// The regular module `A_A = ⊕ P_v`.
    pub fn regular(alg: &Arc<Algebra>) -> Module {
        let parts: Vec<Module> = (0..alg.n_vertices()).map(|v| Module::projective(alg, v)).collect();
        Module::direct_sum(alg, &parts).0
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }
    pub fn vertex_range(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }
    pub fn vertex_of(&self, i: usize) -> usize {
        (0..self.dims.len()).find(|&v| i < self.offsets[v + 1]).unwrap()
    }

    pub fn act(&self, b: usize) -> &Matrix {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn act_element(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[b].scale(c));
            }
        }
        m
    }

    /// Checks the module axioms on all basis pairs.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.alg;
        let n = self.dim();
        let f = self.field();
        for v in 0..alg.n_vertices() {
            let mut p = Matrix::zeros(f, n, n);
            for i in self.vertex_range(v) {
                p.set(i, i, f.one());
            }
            if self.action[alg.vertex_idempotent_index(v)] != p {
                return Err(Error::Precondition(format!("e{} does not act as a projection", v + 1)));
            }
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let lhs = self.action[b].mul(&self.action[a]);
                let rhs = self.act_element(&alg.mul(&alg.basis_vector(a), &alg.basis_vector(b)));
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "action of `{}` · `{}` is not compatible",
                        alg.label(a),
                        alg.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Module]) -> (Module, Vec<Matrix>, Vec<Matrix>) {
        let f = alg.field();
        let nv = alg.n_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let offsets = offsets_of(&dims);
        let n = *offsets.last().unwrap();
        // position of (part k, local index i) in the sum
        let pos = |k: usize, i: usize| -> usize {
            let v = parts[k].vertex_of(i);
            let before: usize = parts[..k].iter().map(|p| p.dims[v]).sum();
            offsets[v] + before + (i - parts[k].offsets[v])
        };
        let mut action = vec![Matrix::zeros(f, n, n); alg.dim()];
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            let mut ik = Matrix::zeros(f, n, p.dim());
            let mut pk = Matrix::zeros(f, p.dim(), n);
            for i in 0..p.dim() {
                let pi = pos(k, i);
                ik.set(pi, i, f.one());
                pk.set(i, pi, f.one());
                for (b, act) in action.iter_mut().enumerate() {
                    for j in 0..p.dim() {
                        let c = p.action[b].get(j, i);
                        if !c.is_zero() {
                            act.set(pos(k, j), pi, c.clone());
                        }
                    }
                }
            }
            inj.push(ik);
            proj.push(pk);
        }
        (Module { alg: alg.clone(), dims, offsets, action }, inj, proj)
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_submodule(&self, vecs: &[Vector]) -> Subspace {
        let n = self.dim();
        let mut span = Subspace::span(self.field(), n, vecs);
        loop {
            let mut more: Vec<Vector> = span.basis().to_vec();
            for v in span.basis() {
                for b in 0..self.alg.dim() {
                    more.push(self.action[b].mul_vec(v));
                }
            }
            let next = Subspace::span(self.field(), n, &more);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// `true` if the subspace is closed under the action.
    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| (0..self.alg.dim()).all(|b| s.contains(&self.action[b].mul_vec(v))))
    }

    /// Restriction to a submodule. Returns the submodule and its inclusion.
    pub fn submodule(&self, s: &Subspace) -> Result<(Module, Matrix)> {
        if !self.is_submodule(s) {
            return Err(Error::Precondition("subspace is not a submodule".into()));
        }
        let f = self.field();
        let n = self.dim();
        let mut cols: Vec<Vector> = Vec::new();
        let mut vertex = Vec::new();
        for v in 0..self.dims.len() {
            let e = self.action[self.alg.vertex_idempotent_index(v)].clone();
            let part: Vec<Vector> = s.basis().iter().map(|x| e.mul_vec(x)).collect();
            for b in Subspace::span(f, n, &part).basis() {
                cols.push(b.clone());
                vertex.push(v);
            }
        }
        let incl = Matrix::from_columns(f, n, &cols);
        let k = cols.len();
        let left_inv = left_inverse(&incl)?;
        let action = self
            .action
            .iter()
            .map(|r| left_inv.mul(&r.mul(&incl)))
            .collect::<Vec<_>>();
        let mut dims = vec![0; self.dims.len()];
        for v in vertex {
            dims[v] += 1;
        }
        debug_assert_eq!(dims.iter().sum::<usize>(), k);
        let m = Module { alg: self.alg.clone(), offsets: offsets_of(&dims), dims, action };
        Ok((m, incl))
    }

    /// Quotient by a submodule. Returns the quotient and the projection.
    pub fn quotient(&self, s: &Subspace) -> Result<(Module, Matrix)> {
        if !self.is_submodule(s) {
            return Err(Error::Precondition("subspace is not a submodule".into()));
        }
        let f = self.field();
        let n = self.dim();
        let mut reps: Vec<Vector> = Vec::new();
        let mut dims = vec![0; self.dims.len()];
        for v in 0..self.dims.len() {
            let e = &self.action[self.alg.vertex_idempotent_index(v)];
            let whole: Vec<Vector> = self.vertex_range(v).map(|i| linalg::unit_vector(f, n, i)).collect();
            let sv: Vec<Vector> = s.basis().iter().map(|x| e.mul_vec(x)).collect();
            let q = Quotient::new(&Subspace::span(f, n, &whole), &Subspace::span(f, n, &sv))?;
            dims[v] = q.dim();
            reps.extend(q.reps().iter().cloned());
        }
        // coordinates of a vector modulo s in the basis `reps`
        let mut full = s.basis().to_vec();
        full.extend(reps.iter().cloned());
        let basis_mat = Matrix::from_columns(f, n, &full);
        let inv = basis_mat
            .inverse()
            .ok_or_else(|| Error::Internal("quotient complement is not a complement".into()))?;
        let k = reps.len();
        let proj = inv.block(s.dim(), 0, k, n);
        let lift = Matrix::from_columns(f, n, &reps);
        let action = self.action.iter().map(|r| proj.mul(&r.mul(&lift))).collect();
        let m = Module { alg: self.alg.clone(), offsets: offsets_of(&dims), dims, action };
        Ok((m, proj))
    }

    /// Image of a module map `g: M → N` as a submodule of `N`.
    pub fn image_of(map: &Matrix, target: &Module) -> Subspace {
        let cols: Vec<Vector> = (0..map.cols()).map(|c| map.col(c)).collect();
        Subspace::span(target.field(), target.dim(), &cols)
    }

    /// Kernel of a module map `g: self → N` as a submodule of `self`.
    pub fn kernel_of(&self, map: &Matrix) -> Subspace {
        Subspace::span(self.field(), self.dim(), &map.kernel())
    }

    /// `M · rad A`.
    pub fn radical_submodule(&self) -> Subspace {
        let mut v = Vec::new();
        for &b in self.alg.generators() {
            for c in 0..self.dim() {
                v.push(self.action[b].col(c));
            }
        }
        Subspace::span(self.field(), self.dim(), &v)
    }

    /// `{ m : m · rad A = 0 }`.
    pub fn socle(&self) -> Subspace {
        let gens = self.alg.generators();
        if gens.is_empty() {
            return Subspace::full(self.field(), self.dim());
        }
        let mut stacked = Matrix::zeros(self.field(), 0, self.dim());
        for &b in gens {
            stacked = stacked.vstack(&self.action[b]);
        }
        Subspace::span(self.field(), self.dim(), &stacked.kernel())
    }

    /// `M rad^k`.
    pub fn radical_power(&self, k: usize) -> Subspace {
        let mut cur = Subspace::full(self.field(), self.dim());
        for _ in 0..k {
            let mut v = Vec::new();
            for &b in self.alg.generators() {
                for x in cur.basis() {
                    v.push(self.action[b].mul_vec(x));
                }
            }
            cur = Subspace::span(self.field(), self.dim(), &v);
        }
        cur
    }

    /// `soc^k M`: the `k`-th socle layer from below.
    pub fn socle_power(&self, k: usize) -> Result<Subspace> {
        let mut cur = Subspace::zero(self.field(), self.dim());
        for _ in 0..k {
            let (q, proj) = self.quotient(&cur)?;
            let s = q.socle();
            // preimage of s under proj
            let lift: Vec<Vector> = s
                .basis()
                .iter()
                .map(|x| {
                    proj.solve_vec(x).ok_or_else(|| Error::Internal("projection not surjective".into()))
                })
                .collect::<Result<_>>()?;
            let mut all = cur.basis().to_vec();
            all.extend(lift);
            all.extend(proj.kernel());
            cur = Subspace::span(self.field(), self.dim(), &all);
        }
        Ok(cur)
    }

    /// Top generators: per vertex, vectors completing `rad M` to `M`.
    pub fn top_generators(&self) -> Result<Vec<(usize, Vector)>> {
        let f = self.field();
        let n = self.dim();
        let rad = self.radical_submodule();
        let mut out = Vec::new();
        for v in 0..self.dims.len() {
            let e = &self.action[self.alg.vertex_idempotent_index(v)];
            let whole: Vec<Vector> = self.vertex_range(v).map(|i| linalg::unit_vector(f, n, i)).collect();
            let rv: Vec<Vector> = rad.basis().iter().map(|x| e.mul_vec(x)).collect();
            let q = Quotient::new(&Subspace::span(f, n, &whole), &Subspace::span(f, n, &rv))?;
            for r in q.reps() {
                out.push((v, r.clone()));
            }
        }
        Ok(out)
    }

    /// `D M`, a module over the opposite algebra.
    pub fn dual(&self, op: &Arc<Algebra>) -> Module {
        Module {
            alg: op.clone(),
            dims: self.dims.clone(),
            offsets: self.offsets.clone(),
            action: self.action.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Module on `k^n` given by a right action `v · b = act[b] v` that need not
    /// respect any vertex ordering. The basis is changed so that vertex blocks
    /// are contiguous; the returned matrix maps new coordinates to old ones.
    pub fn from_right_action(alg: &Arc<Algebra>, n: usize, act: &[Matrix]) -> Result<(Module, Matrix)> {
        let f = alg.field();
        if act.len() != alg.dim() {
            return Err(Error::Shape("one action matrix per basis element expected".into()));
        }
        let mut cols = Vec::with_capacity(n);
        let mut dims = Vec::with_capacity(alg.n_vertices());
        for v in 0..alg.n_vertices() {
            let e = &act[alg.vertex_idempotent_index(v)];
            let img = Subspace::span(f, n, &(0..n).map(|c| e.col(c)).collect::<Vec<_>>());
            dims.push(img.dim());
            cols.extend(img.basis().iter().cloned());
        }
        let change = Matrix::from_columns(f, n, &cols);
        let inv = change
            .inverse()
            .ok_or_else(|| Error::Precondition("vertex idempotents do not decompose the space".into()))?;
        let action = act.iter().map(|m| inv.mul(&m.mul(&change))).collect();
        let m = Module::new(alg.clone(), dims, action)?;
        m.validate()?;
        Ok((m, change))
    }

    /// Re-attaches the module to a structurally identical algebra handle.
    pub fn rebase(&self, alg: &Arc<Algebra>) -> Module {
        Module { alg: alg.clone(), ..self.clone() }
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    /// Module map `⊕_s P_{verts[s]} → M` sending the generator `e_{verts[s]}`
    /// to `images[s]`.
    pub fn map_from_projectives(&self, proj: &ProjectiveSum, images: &[Vector]) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), proj.module.dim());
        for (s, b, pos) in proj.basis_positions() {
            let img = self.action[b].mul_vec(&images[s]);
            for (r, x) in img.iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, pos, x.clone());
                }
            }
        }
        m
    }
}

/// `P = ⊕_s P_{verts[s]}` with bookkeeping of where each `(s, b)` lives.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    pub verts: Vec<usize>,
    pub module: Module,
    /// `positions[s][k]` is the index of basis element `basis[s][k]` of `P_{verts[s]}`.
    pub basis: Vec<Vec<usize>>,
    pub positions: Vec<Vec<usize>>,
}

impl ProjectiveSum {
    pub fn new(alg: &Arc<Algebra>, verts: &[usize]) -> ProjectiveSum {
        let mut vertex = Vec::new();
        let mut owner = Vec::new();
        let mut basis = Vec::new();
        for (s, &v) in verts.iter().enumerate() {
            let bs: Vec<usize> = (0..alg.dim()).filter(|&b| alg.left(b) == v).collect();
            for &b in &bs {
                vertex.push(alg.right(b));
                owner.push((s, b));
            }
            basis.push(bs);
        }
        let t = alg.table();
        let index_of = |s: usize, c: usize| owner.iter().position(|&(s2, c2)| s2 == s && c2 == c);
        let (module, pos) = Module::from_basis_action(alg.clone(), &vertex, |a, i| {
            let (s, b) = owner[i];
            t.basis_product(b, a)
                .iter()
                .filter_map(|(c, x)| index_of(s, *c).map(|j| (j, x.clone())))
                .collect()
        });
        let mut positions: Vec<Vec<usize>> = basis.iter().map(|b| vec![0; b.len()]).collect();
        for (i, &(s, b)) in owner.iter().enumerate() {
            let k = basis[s].iter().position(|&x| x == b).unwrap();
            positions[s][k] = pos[i];
        }
        ProjectiveSum { verts: verts.to_vec(), module, basis, positions }
    }

    /// `(summand, algebra basis index, module position)` triples.
    pub fn basis_positions(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.verts.len() {
            for (k, &b) in self.basis[s].iter().enumerate() {
                out.push((s, b, self.positions[s][k]));
            }
        }
        out
    }

    /// The vector of the element `x ∈ e_{verts[s]} A` in summand `s`.
    pub fn element_vector(&self, s: usize, x: &[Scalar]) -> Vector {
        let f = self.module.field();
        let mut v = linalg::zero_vector(f, self.module.dim());
        for (k, &b) in self.basis[s].iter().enumerate() {
            v[self.positions[s][k]] = x[b].clone();
        }
        v
    }

    /// Inverse of [`element_vector`](Self::element_vector): the algebra element
    /// in summand `s` of a module vector.
    pub fn summand_element(&self, s: usize, v: &[Scalar], alg: &Algebra) -> Vector {
        let mut x = alg.zero();
        for (k, &b) in self.basis[s].iter().enumerate() {
            x[b] = v[self.positions[s][k]].clone();
        }
        x
    }

    pub fn generator(&self, s: usize, alg: &Algebra) -> Vector {
        self.element_vector(s, &alg.idempotent(self.verts[s]))
    }
}

/// Any left inverse of an injective matrix.
pub(crate) fn left_inverse(m: &Matrix) -> Result<Matrix> {
    let t = m.transpose();
    let sol = t
        .solve(&Matrix::identity(m.field(), m.cols()))
        .ok_or_else(|| Error::Internal("matrix is not injective".into()))?;
    Ok(sol.particular.transpose())
}

/// Any right inverse of a surjective matrix.
pub(crate) fn right_inverse(m: &Matrix) -> Result<Matrix> {
    let sol = m
        .solve(&Matrix::identity(m.field(), m.rows()))
        .ok_or_else(|| Error::Internal("matrix is not surjective".into()))?;
    Ok(sol.particular)
}
