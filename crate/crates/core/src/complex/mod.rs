//! Bounded complexes of projective modules and maps between them.
//!
//! A map `⊕_s P_{cols[s]} → ⊕_t P_{rows[t]}` is an [`AMatrix`] whose entry
//! `(t, s)` lies in `e_{rows[t]} A e_{cols[s]}` and acts by left
//! multiplication. Composition is the matrix product with entries multiplied
//! as `(outer)(inner)`.

mod cone;
mod decompose;
mod endo;
mod hom;
mod silting;

pub use cone::{cone, Triangle};
pub use decompose::{
    complex_isomorphism, complexes_isomorphic, decompose_complex, ComplexDecomposition,
    ComplexSummand, EndK,
};
pub use endo::{basic_summands, AddIso, Approximation, Endo};
pub use hom::{HomSpace, StalkHom};
pub use silting::{add_membership, bongartz_complete, is_presilting, Bongartz, SiltingVerdict};

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::module::{Module, ProjectiveSum};

#[derive(Clone, PartialEq, Eq)]
pub struct AMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    entries: Vec<Vector>,
}

impl fmt::Debug for AMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AMatrix {:?} <- {:?}", self.rows, self.cols)
    }
}

impl AMatrix {
    pub fn zero(alg: &Algebra, rows: &[usize], cols: &[usize]) -> AMatrix {
        AMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: vec![alg.zero(); rows.len() * cols.len()],
        }
    }

    pub fn identity(alg: &Algebra, verts: &[usize]) -> AMatrix {
        let mut m = AMatrix::zero(alg, verts, verts);
        for (i, &v) in verts.iter().enumerate() {
            m.set(i, i, alg.idempotent(v));
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }
    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, t: usize, s: usize) -> &Vector {
        &self.entries[t * self.cols.len() + s]
    }

    pub fn set(&mut self, t: usize, s: usize, x: Vector) {
        let c = self.cols.len();
        self.entries[t * c + s] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| linalg::is_zero_vector(e))
    }

    /// `true` if every entry lies in its corner.
    pub fn corners_ok(&self, alg: &Algebra) -> bool {
        (0..self.rows.len())
            .all(|t| (0..self.cols.len()).all(|s| alg.in_corner(self.get(t, s), self.rows[t], self.cols[s])))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AMatrix, alg: &Algebra) -> AMatrix {
        assert_eq!(self.cols, inner.rows, "composition shape");
        let mut out = AMatrix::zero(alg, &self.rows, &inner.cols);
        for t in 0..self.rows.len() {
            for s in 0..inner.cols.len() {
                let mut acc = alg.zero();
                for r in 0..self.cols.len() {
                    let a = self.get(t, r);
                    let b = inner.get(r, s);
                    if linalg::is_zero_vector(a) || linalg::is_zero_vector(b) {
                        continue;
                    }
                    acc = linalg::add_vectors(&acc, &alg.mul(a, b));
                }
                out.set(t, s, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &AMatrix) -> AMatrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "sum shape");
        AMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| linalg::add_vectors(a, b)).collect(),
        }
    }

    pub fn sub(&self, o: &AMatrix) -> AMatrix {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> AMatrix {
        AMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|a| linalg::scale_vector(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> AMatrix {
        AMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|a| a.iter().map(|x| -x).collect()).collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]` with row blocks `(a, b)` and `(c, d)`.
    pub fn blocks(alg: &Algebra, a: &AMatrix, b: &AMatrix, c: &AMatrix, d: &AMatrix) -> AMatrix {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let rows: Vec<usize> = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let mut m = AMatrix::zero(alg, &rows, &cols);
        let (r1, c1) = (a.rows.len(), a.cols.len());
        for t in 0..rows.len() {
            for s in 0..cols.len() {
                let x = match (t < r1, s < c1) {
                    (true, true) => a.get(t, s),
                    (true, false) => b.get(t, s - c1),
                    (false, true) => c.get(t - r1, s),
                    (false, false) => d.get(t - r1, s - c1),
                };
                m.set(t, s, x.clone());
            }
        }
        m
    }

    /// Sub-block with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> AMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &t in rows {
            for &s in cols {
                entries.push(self.get(t, s).clone());
            }
        }
        AMatrix {
            rows: rows.iter().map(|&t| self.rows[t]).collect(),
            cols: cols.iter().map(|&s| self.cols[s]).collect(),
            entries,
        }
    }

    /// Module-level matrix of the map between the projective sums.
    pub fn module_matrix(&self, alg: &Algebra, src: &ProjectiveSum, tgt: &ProjectiveSum) -> Matrix {
        let mut m = Matrix::zeros(alg.field(), tgt.module.dim(), src.module.dim());
        for (s, b, pos) in src.basis_positions() {
            let bv = alg.basis_vector(b);
            for t in 0..self.rows.len() {
                let x = self.get(t, s);
                if linalg::is_zero_vector(x) {
                    continue;
                }
                let y = alg.mul(x, &bv);
                let v = tgt.element_vector(t, &y);
                for (r, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        m.add_at(r, pos, c);
                    }
                }
            }
        }
        m
    }

    /// Inverse of [`module_matrix`](Self::module_matrix): reads off the images
    /// of the generators.
    pub fn from_module_matrix(alg: &Algebra, src: &ProjectiveSum, tgt: &ProjectiveSum, m: &Matrix) -> AMatrix {
        let mut out = AMatrix::zero(alg, &tgt.verts, &src.verts);
        for s in 0..src.verts.len() {
            let g = m.mul_vec(&src.generator(s, alg));
            for t in 0..tgt.verts.len() {
                out.set(t, s, tgt.summand_element(t, &g, alg));
            }
        }
        out
    }

    pub fn format(&self, alg: &Algebra) -> String {
        let rows: Vec<String> = (0..self.rows.len())
            .map(|t| {
                let r: Vec<String> = (0..self.cols.len()).map(|s| alg.format_element(self.get(t, s))).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Coordinates of all `AMatrix` values of a given shape: the corner basis
/// elements of every entry.
#[derive(Clone, Debug)]
pub struct Layout {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub coords: Vec<(usize, usize, usize)>,
}

impl Layout {
    pub fn new(alg: &Algebra, rows: &[usize], cols: &[usize]) -> Layout {
        let mut coords = Vec::new();
        for (t, &v) in rows.iter().enumerate() {
            for (s, &u) in cols.iter().enumerate() {
                for b in alg.corner(v, u) {
                    coords.push((t, s, b));
                }
            }
        }
        Layout { rows: rows.to_vec(), cols: cols.to_vec(), coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_coords(&self, m: &AMatrix) -> Vector {
        self.coords.iter().map(|&(t, s, b)| m.get(t, s)[b].clone()).collect()
    }

    pub fn from_coords(&self, alg: &Algebra, v: &[Scalar]) -> AMatrix {
        let mut m = AMatrix::zero(alg, &self.rows, &self.cols);
        for (&(t, s, b), c) in self.coords.iter().zip(v) {
            if !c.is_zero() {
                let idx = t * self.cols.len() + s;
                m.entries[idx][b] = c.clone();
            }
        }
        m
    }

    pub fn unit(&self, alg: &Algebra, i: usize) -> AMatrix {
        let (t, s, b) = self.coords[i];
        let mut m = AMatrix::zero(alg, &self.rows, &self.cols);
        m.set(t, s, alg.basis_vector(b));
        m
    }
}

/// Matrix of the linear map `x ↦ outer ∘ x ∘ inner` between coordinate spaces,
/// where either side may be the identity.
pub(crate) fn sandwich_operator(
    alg: &Algebra,
    outer: Option<&AMatrix>,
    src: &Layout,
    inner: Option<&AMatrix>,
    tgt: &Layout,
) -> Matrix {
    let cols: Vec<Vector> = (0..src.len())
        .map(|i| {
            let mut x = src.unit(alg, i);
            if let Some(o) = outer {
                x = o.compose(&x, alg);
            }
            if let Some(n) = inner {
                x = x.compose(n, alg);
            }
            tgt.to_coords(&x)
        })
        .collect();
    Matrix::from_columns(alg.field(), tgt.len(), &cols)
}

/// A bounded complex `X^lo → X^{lo+1} → ...` of finitely generated projectives.
#[derive(Clone)]
pub struct ProjComplex {
    alg: Arc<Algebra>,
    lo: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<AMatrix>,
}

impl fmt::Debug for ProjComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjComplex[")?;
        for (k, t) in self.terms.iter().enumerate() {
            let names: Vec<String> = t.iter().map(|v| format!("P{}", v + 1)).collect();
            write!(f, " {}:{}", self.lo + k as i32, names.join("+"))?;
        }
        write!(f, " ]")
    }
}

impl ProjComplex {
    /// `terms[k]` sits in degree `lo + k`; `diffs[k]: terms[k] → terms[k+1]`.
    pub fn new(alg: Arc<Algebra>, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AMatrix>) -> Result<ProjComplex> {
        if terms.is_empty() {
            return Ok(ProjComplex::zero(alg));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::Shape("need one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols != terms[k] || d.rows != terms[k + 1] {
                return Err(Error::Shape(format!("differential in degree {} has wrong shape", lo + k as i32)));
            }
            if !d.corners_ok(&alg) {
                return Err(Error::Precondition(format!(
                    "differential in degree {} has an entry outside its corner",
                    lo + k as i32
                )));
            }
        }
        let c = ProjComplex { alg, lo, terms, diffs }.trimmed();
        c.check_square_zero()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AMatrix>) -> ProjComplex {
        if terms.is_empty() {
            return ProjComplex::zero(alg);
        }
        debug_assert_eq!(diffs.len() + 1, terms.len());
        ProjComplex { alg, lo, terms, diffs }.trimmed()
    }

    pub fn zero(alg: Arc<Algebra>) -> ProjComplex {
        ProjComplex { alg, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `⊕ P_v` in a single degree.
    pub fn stalk(alg: &Arc<Algebra>, verts: &[usize], degree: i32) -> ProjComplex {
        ProjComplex::new_unchecked(alg.clone(), degree, vec![verts.to_vec()], Vec::new())
    }

    /// The regular module `A` as a stalk complex in degree 0.
    pub fn regular(alg: &Arc<Algebra>) -> ProjComplex {
        let verts: Vec<usize> = (0..alg.n_vertices()).collect();
        ProjComplex::stalk(alg, &verts, 0)
    }

    /// Two-term complex `X^{-1} → X^0`.
    pub fn two_term(alg: &Arc<Algebra>, minus1: &[usize], zero: &[usize], d: AMatrix) -> Result<ProjComplex> {
        ProjComplex::new(alg.clone(), -1, vec![minus1.to_vec(), zero.to_vec()], vec![d])
    }

    fn trimmed(mut self) -> ProjComplex {
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest nonzero degrees (`None` for the zero complex).
    pub fn support(&self) -> Option<(i32, i32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i32 - 1))
        }
    }

    pub fn term(&self, deg: i32) -> &[usize] {
        let k = deg - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// `d^deg: X^deg → X^{deg+1}`.
    pub fn diff(&self, deg: i32) -> AMatrix {
        let k = deg - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            AMatrix::zero(&self.alg, self.term(deg + 1), self.term(deg))
        }
    }

    /// `true` if the complex is concentrated in degrees -1 and 0.
    pub fn is_two_term(&self) -> bool {
        match self.support() {
            None => true,
            Some((lo, hi)) => lo >= -1 && hi <= 0,
        }
    }

    pub fn check_square_zero(&self) -> Result<()> {
        if let Some((lo, hi)) = self.support() {
            for i in lo..hi {
                if !self.diff(i + 1).compose(&self.diff(i), &self.alg).is_zero() {
                    return Err(Error::Precondition(format!("d² ≠ 0 in degree {i}")));
                }
            }
        }
        Ok(())
    }

    /// `X[n]`: `X[n]^i = X^{i+n}`, `d_{X[n]} = (-1)^n d_X`.
    pub fn shift(&self, n: i32) -> ProjComplex {
        let sign = if n.rem_euclid(2) == 0 { self.alg.field().one() } else { -self.alg.field().one() };
        ProjComplex {
            alg: self.alg.clone(),
            lo: if self.terms.is_empty() { 0 } else { self.lo - n },
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Direct sum; returns the complex with per-summand index lists in each degree.
    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[ProjComplex]) -> ProjComplex {
        let supports: Vec<(i32, i32)> = parts.iter().filter_map(|p| p.support()).collect();
        if supports.is_empty() {
            return ProjComplex::zero(alg.clone());
        }
        let lo = supports.iter().map(|s| s.0).min().unwrap();
        let hi = supports.iter().map(|s| s.1).max().unwrap();
        let terms: Vec<Vec<usize>> =
            (lo..=hi).map(|i| parts.iter().flat_map(|p| p.term(i).iter().copied()).collect()).collect();
        let diffs = (lo..hi)
            .map(|i| {
                let mut d = AMatrix::zero(alg, &terms[(i + 1 - lo) as usize], &terms[(i - lo) as usize]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let pd = p.diff(i);
                    for t in 0..pd.n_rows() {
                        for s in 0..pd.n_cols() {
                            d.set(r0 + t, c0 + s, pd.get(t, s).clone());
                        }
                    }
                    r0 += pd.n_rows();
                    c0 += pd.n_cols();
                }
                d
            })
            .collect();
        ProjComplex::new_unchecked(alg.clone(), lo, terms, diffs)
    }

    /// Index ranges of each summand's part of the degree-`deg` term of a direct sum.
    pub fn sum_ranges(parts: &[ProjComplex], deg: i32) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut at = 0;
        for p in parts {
            let n = p.term(deg).len();
            out.push(at..at + n);
            at += n;
        }
        out
    }

    /// Total number of indecomposable projective summands, with multiplicity.
    pub fn rank(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }

    pub fn projective_sum(&self, deg: i32) -> ProjectiveSum {
        ProjectiveSum::new(&self.alg, self.term(deg))
    }

    /// `H^i(X)` as a module.
    pub fn cohomology(&self, i: i32) -> Result<Module> {
        let here = self.projective_sum(i);
        if here.module.is_zero() {
            return Ok(Module::zero(self.alg.clone()));
        }
        let out = self.diff(i).module_matrix(&self.alg, &here, &self.projective_sum(i + 1));
        let inc = self.diff(i - 1).module_matrix(&self.alg, &self.projective_sum(i - 1), &here);
        let ker = here.module.kernel_of(&out);
        let (k, incl) = here.module.submodule(&ker)?;
        // image of d^{i-1} inside ker, in coordinates of k
        let li = crate::module::left_inverse(&incl)?;
        let img: Vec<Vector> = (0..inc.cols()).map(|c| li.mul_vec(&inc.col(c))).collect();
        let img = Subspace::span(self.alg.field(), k.dim(), &img);
        Ok(k.quotient(&img)?.0)
    }

    /// `H^i(ν X)` where `ν` replaces `e_v A` by `D(A e_v)`.
    pub fn nakayama_cohomology(&self, i: i32) -> Result<Module> {
        let here = InjectiveSum::new(&self.alg, self.term(i));
        if here.module.is_zero() {
            return Ok(Module::zero(self.alg.clone()));
        }
        let prev = InjectiveSum::new(&self.alg, self.term(i - 1));
        let next = InjectiveSum::new(&self.alg, self.term(i + 1));
        let out = nakayama_matrix(&self.alg, &self.diff(i), &here, &next);
        let inc = nakayama_matrix(&self.alg, &self.diff(i - 1), &prev, &here);
        let ker = here.module.kernel_of(&out);
        let (k, incl) = here.module.submodule(&ker)?;
        let li = crate::module::left_inverse(&incl)?;
        let img: Vec<Vector> = (0..inc.cols()).map(|c| li.mul_vec(&inc.col(c))).collect();
        let img = Subspace::span(self.alg.field(), k.dim(), &img);
        Ok(k.quotient(&img)?.0)
    }

    /// Rebinds to a structurally identical algebra handle.
    pub fn rebase(&self, alg: &Arc<Algebra>) -> ProjComplex {
        ProjComplex { alg: alg.clone(), ..self.clone() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &[usize])> {
        self.terms.iter().enumerate().map(move |(k, t)| (self.lo + k as i32, t.as_slice()))
    }
}

/// A chain map `X → Y`, stored per degree over the union of supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub lo: i32,
    pub comps: Vec<AMatrix>,
}

impl ChainMap {
    pub fn zero(x: &ProjComplex, y: &ProjComplex) -> ChainMap {
        let (lo, hi) = joint_range(x, y);
        let comps = (lo..=hi).map(|i| AMatrix::zero(&x.alg, y.term(i), x.term(i))).collect();
        ChainMap { lo, comps }
    }

    pub fn identity(x: &ProjComplex) -> ChainMap {
        let (lo, hi) = joint_range(x, x);
        let comps = (lo..=hi).map(|i| AMatrix::identity(&x.alg, x.term(i))).collect();
        ChainMap { lo, comps }
    }

    /// Chain map from per-degree components given as `(degree, matrix)`.
    pub fn from_components(x: &ProjComplex, y: &ProjComplex, comps: &[(i32, AMatrix)]) -> ChainMap {
        let mut m = ChainMap::zero(x, y);
        for (d, a) in comps {
            if m.at(*d).is_some() {
                m.set(*d, a.clone());
            } else {
                debug_assert!(a.is_zero(), "nonzero component outside the joint support");
            }
        }
        m
    }

    pub fn at(&self, deg: i32) -> Option<&AMatrix> {
        let k = deg - self.lo;
        if k < 0 {
            None
        } else {
            self.comps.get(k as usize)
        }
    }

    /// Component in degree `deg`, zero if outside the stored range.
    pub fn comp(&self, deg: i32, x: &ProjComplex, y: &ProjComplex) -> AMatrix {
        self.at(deg).cloned().unwrap_or_else(|| AMatrix::zero(&x.alg, y.term(deg), x.term(deg)))
    }

    pub fn set(&mut self, deg: i32, a: AMatrix) {
        let k = deg - self.lo;
        assert!(k >= 0 && (k as usize) < self.comps.len(), "degree {deg} outside chain map range");
        self.comps[k as usize] = a;
    }

    /// `g ∘ f` for `f: X → Y` (self) and `g: Y → Z`.
    pub fn then(&self, g: &ChainMap, x: &ProjComplex, y: &ProjComplex, z: &ProjComplex) -> ChainMap {
        let mut out = ChainMap::zero(x, z);
        let (lo, hi) = joint_range(x, z);
        for i in lo..=hi {
            out.set(i, g.comp(i, y, z).compose(&self.comp(i, x, y), &x.alg));
        }
        out
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        assert_eq!(self.lo, o.lo);
        ChainMap { lo: self.lo, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap { lo: self.lo, comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { lo: self.lo, comps: self.comps.iter().map(|a| a.neg()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|a| a.is_zero())
    }

    /// `true` if the squares commute.
    pub fn is_chain_map(&self, x: &ProjComplex, y: &ProjComplex) -> bool {
        let (lo, hi) = joint_range(x, y);
        (lo - 1..=hi).all(|i| {
            let a = y.diff(i).compose(&self.comp(i, x, y), &x.alg);
            let b = self.comp(i + 1, x, y).compose(&x.diff(i), &x.alg);
            a == b
        })
    }

    /// The same components viewed as a map `X[n] → Y[n]` (no sign).
    pub fn shift(&self, n: i32) -> ChainMap {
        ChainMap { lo: self.lo - n, comps: self.comps.clone() }
    }

    /// Re-indexes to the joint range of another pair of complexes with the
    /// same terms in the stored degrees.
    pub fn reframe(&self, x: &ProjComplex, y: &ProjComplex) -> ChainMap {
        let mut out = ChainMap::zero(x, y);
        let (lo, hi) = joint_range(x, y);
        for i in lo..=hi {
            if let Some(a) = self.at(i) {
                out.set(i, a.clone());
            }
        }
        out
    }

    /// Block-diagonal matrix on the total module `⊕_i X^i`.
    pub fn total_matrix(&self, x: &ProjComplex, y: &ProjComplex) -> Matrix {
        let alg = &x.alg;
        let (lo, hi) = joint_range(x, y);
        let xs: Vec<ProjectiveSum> = (lo..=hi).map(|i| x.projective_sum(i)).collect();
        let ys: Vec<ProjectiveSum> = (lo..=hi).map(|i| y.projective_sum(i)).collect();
        let nr: usize = ys.iter().map(|p| p.module.dim()).sum();
        let nc: usize = xs.iter().map(|p| p.module.dim()).sum();
        let mut m = Matrix::zeros(alg.field(), nr, nc);
        let (mut r0, mut c0) = (0, 0);
        for (k, i) in (lo..=hi).enumerate() {
            let b = self.comp(i, x, y).module_matrix(alg, &xs[k], &ys[k]);
            m.set_block(r0, c0, &b);
            r0 += ys[k].module.dim();
            c0 += xs[k].module.dim();
        }
        m
    }
}

impl ChainMap {
    /// Component `xs[s] → ys[t]` of a map between direct sums.
    pub fn sum_component(&self, xs: &[ProjComplex], ys: &[ProjComplex], s: usize, t: usize) -> ChainMap {
        let alg = xs[s].algebra();
        let xsum = ProjComplex::direct_sum(alg, xs);
        let ysum = ProjComplex::direct_sum(alg, ys);
        let mut out = ChainMap::zero(&xs[s], &ys[t]);
        let (lo, hi) = joint_range(&xs[s], &ys[t]);
        for i in lo..=hi {
            let rr = ProjComplex::sum_ranges(ys, i)[t].clone();
            let cr = ProjComplex::sum_ranges(xs, i)[s].clone();
            let rows: Vec<usize> = rr.collect();
            let cols: Vec<usize> = cr.collect();
            out.set(i, self.comp(i, &xsum, &ysum).select(&rows, &cols));
        }
        out
    }

    /// Map `⊕ xs → ⊕ ys` assembled from components `comp(t, s): xs[s] → ys[t]`.
    pub fn from_sum_components<F>(xs: &[ProjComplex], ys: &[ProjComplex], comp: F) -> ChainMap
    where
        F: Fn(usize, usize) -> Option<ChainMap>,
    {
        let alg = if let Some(x) = xs.first() { x.algebra().clone() } else { ys[0].algebra().clone() };
        let xsum = ProjComplex::direct_sum(&alg, xs);
        let ysum = ProjComplex::direct_sum(&alg, ys);
        let mut out = ChainMap::zero(&xsum, &ysum);
        let (lo, hi) = joint_range(&xsum, &ysum);
        for i in lo..=hi {
            let rr = ProjComplex::sum_ranges(ys, i);
            let cr = ProjComplex::sum_ranges(xs, i);
            let mut m = AMatrix::zero(&alg, ysum.term(i), xsum.term(i));
            for t in 0..ys.len() {
                for s in 0..xs.len() {
                    if rr[t].is_empty() || cr[s].is_empty() {
                        continue;
                    }
                    if let Some(c) = comp(t, s) {
                        let a = c.comp(i, &xs[s], &ys[t]);
                        for (r, row) in rr[t].clone().enumerate() {
                            for (q, col) in cr[s].clone().enumerate() {
                                m.set(row, col, a.get(r, q).clone());
                            }
                        }
                    }
                }
            }
            out.set(i, m);
        }
        out
    }
}

/// Degrees where a map `X → Y` can be nonzero (empty range if none).
pub(crate) fn joint_range(x: &ProjComplex, y: &ProjComplex) -> (i32, i32) {
    match (x.support(), y.support()) {
        (Some(a), Some(b)) if a.0.max(b.0) <= a.1.min(b.1) => (a.0.max(b.0), a.1.min(b.1)),
        _ => (0, -1),
    }
}

/// `⊕_s I_{verts[s]}` with the dual basis `b^*` of each `A e_v`.
#[derive(Clone, Debug)]
pub struct InjectiveSum {
    pub verts: Vec<usize>,
    pub module: Module,
    pub basis: Vec<Vec<usize>>,
    pub positions: Vec<Vec<usize>>,
}

impl InjectiveSum {
    pub fn new(alg: &Arc<Algebra>, verts: &[usize]) -> InjectiveSum {
        let mut vertex = Vec::new();
        let mut owner = Vec::new();
        let mut basis = Vec::new();
        for (s, &v) in verts.iter().enumerate() {
            let bs: Vec<usize> = (0..alg.dim()).filter(|&b| alg.right(b) == v).collect();
            for &b in &bs {
                vertex.push(alg.left(b));
                owner.push((s, b));
            }
            basis.push(bs);
        }
        let t = alg.table();
        let (module, pos) = Module::from_basis_action(alg.clone(), &vertex, |a, i| {
            let (s, b) = owner[i];
            let mut out = Vec::new();
            for (j, &(s2, c)) in owner.iter().enumerate() {
                if s2 != s {
                    continue;
                }
                for (k, x) in t.basis_product(a, c) {
                    if *k == b {
                        out.push((j, x.clone()));
                    }
                }
            }
            out
        });
        let mut positions: Vec<Vec<usize>> = basis.iter().map(|b| vec![0; b.len()]).collect();
        for (i, &(s, b)) in owner.iter().enumerate() {
            let k = basis[s].iter().position(|&x| x == b).unwrap();
            positions[s][k] = pos[i];
        }
        InjectiveSum { verts: verts.to_vec(), module, basis, positions }
    }
}

/// Module matrix of `ν(d)`: for `x ∈ e_v A e_u`, `ν(x): I_u → I_v` sends
/// `φ` to `y ↦ φ(y x)`.
pub(crate) fn nakayama_matrix(alg: &Algebra, d: &AMatrix, src: &InjectiveSum, tgt: &InjectiveSum) -> Matrix {
    let mut m = Matrix::zeros(alg.field(), tgt.module.dim(), src.module.dim());
    let t = alg.table();
    for s in 0..src.verts.len() {
        for (k, &c) in src.basis[s].iter().enumerate() {
            let col = src.positions[s][k];
            // image of c^* in summand t: Σ_{y} [y x]_c y^*
            for tt in 0..tgt.verts.len() {
                let x = d.get(tt, s);
                if linalg::is_zero_vector(x) {
                    continue;
                }
                for (k2, &y) in tgt.basis[tt].iter().enumerate() {
                    let yx = t.mul(&alg.basis_vector(y), x);
                    if !yx[c].is_zero() {
                        m.add_at(tgt.positions[tt][k2], col, &yx[c]);
                    }
                }
            }
        }
    }
    m
}
