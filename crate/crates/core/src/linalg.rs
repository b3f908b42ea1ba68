//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are plain `Vec<Scalar>`; matrices are row-major. Everything here is
//! exact, so "equal" always means bit-for-bit equal after reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every entry must carry `field`'s tag.
    pub fn from_rows(field: Field, rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field.tag(), x.field().tag()));
                }
                data.push(x);
            }
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    /// Rows given as vectors of known length `cols` (allows zero rows).
    pub fn from_vectors(field: Field, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "vector length");
            data.extend(row.iter().cloned());
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let vecs: Vec<Vector> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_vectors(field, cols, &vecs)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let i = r * self.cols + c;
        self.data[i] = &self.data[i] + v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field.tag(), o.field.tag()));
        }
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        assert_eq!(self.field, o.field, "matrix product field");
        if let Field::Prime(p) = self.field {
            return self.mul_fp(o, p);
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    fn mul_fp(&self, o: &Matrix, p: u32) -> Matrix {
        let a = to_u64(&self.data);
        let b = to_u64(&o.data);
        let p64 = p as u64;
        let mut acc = vec![0u64; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = a[i * self.cols + k];
                if x == 0 {
                    continue;
                }
                let row = &b[k * o.cols..(k + 1) * o.cols];
                let out = &mut acc[i * o.cols..(i + 1) * o.cols];
                for (dst, &y) in out.iter_mut().zip(row) {
                    if y != 0 {
                        *dst = (*dst + x * y) % p64;
                    }
                }
            }
        }
        Matrix { field: self.field, rows: self.rows, cols: o.cols, data: from_u64(&acc, p) }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut s = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s = &s + &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows, "hstack rows");
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..o.cols {
                m.set(r, self.cols + c, o.get(r, c).clone());
            }
        }
        m
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Copies the block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        if let Field::Prime(p) = self.field {
            let mut d = to_u64(&self.data);
            let piv = rref_fp(&mut d, self.rows, self.cols, p as u64);
            self.data = from_u64(&d, p);
            return piv;
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let pj = self.get(r, j);
                        if !pj.is_zero() {
                            let v = self.get(i, j) - &(&f * pj);
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, piv) = self.rref();
        kernel_from_rref(&r, &piv)
    }

    /// Solves `self * X = b` column by column. Returns `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Option<Solution> {
        assert_eq!(self.rows, b.rows, "solve shape");
        let aug = self.hstack(b);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut particular = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                particular.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        let a_part = r.block(0, 0, r.rows, self.cols);
        let kernel = kernel_from_rref(&a_part, &piv);
        Some(Solution { particular, kernel })
    }

    /// Solves `self * x = b` for a single right-hand side.
    pub fn solve_vec(&self, b: &[Scalar]) -> Option<Vector> {
        let bm = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve(&bm).map(|s| s.particular.col(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let sol = self.solve(&Matrix::identity(self.field, n))?;
        if sol.kernel.is_empty() {
            Some(sol.particular)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Affine solution set of a linear system.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Matrix,
    pub kernel: Vec<Vector>,
}

fn kernel_from_rref(r: &Matrix, piv: &[usize]) -> Vec<Vector> {
    let field = r.field();
    let mut is_piv = vec![false; r.cols()];
    for &p in piv {
        is_piv[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..r.cols()).filter(|&c| !is_piv[c]) {
        let mut v = vec![field.zero(); r.cols()];
        v[free] = field.one();
        for (i, &pc) in piv.iter().enumerate() {
            v[pc] = -r.get(i, free);
        }
        out.push(v);
    }
    out
}

fn to_u64(d: &[Scalar]) -> Vec<u64> {
    d.iter()
        .map(|x| match x {
            Scalar::Fp { value, .. } => *value as u64,
            Scalar::Q(_) => panic!("rational entry in a prime-field matrix"),
        })
        .collect()
}

fn from_u64(d: &[u64], p: u32) -> Vec<Scalar> {
    d.iter().map(|&v| Scalar::Fp { value: v as u32, p }).collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rref_fp(d: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| d[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                d.swap(r * cols + j, pr * cols + j);
            }
        }
        let inv = inv_mod(d[r * cols + c], p);
        for j in c..cols {
            d[r * cols + j] = d[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = d[i * cols + c];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in c..cols {
                let pj = d[r * cols + j];
                if pj != 0 {
                    d[i * cols + j] = (d[i * cols + j] + nf * pj) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(a: &[Scalar], s: &Scalar) -> Vector {
    a.iter().map(|x| x * s).collect()
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(s * x);
        }
    }
}

/// Linear combination `sum_i coeffs[i] * vecs[i]`.
pub fn combine(field: Field, n: usize, coeffs: &[Scalar], vecs: &[Vector]) -> Vector {
    let mut out = zero_vector(field, n);
    for (c, v) in coeffs.iter().zip(vecs) {
        axpy(&mut out, c, v);
    }
    out
}

/// Subspace of `field^ambient`, stored as the nonzero rows of an RREF basis.
/// Two equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vecs: &[Vector]) -> Self {
        if vecs.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_vectors(field, ambient, vecs);
        let (r, piv) = m.rref();
        let basis = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { field, ambient, basis, pivots: piv }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field.tag(), o.field.tag()));
        }
        if self.ambient != o.ambient {
            return Err(Error::Shape(format!("ambient {} vs {}", self.ambient, o.ambient)));
        }
        Ok(())
    }

    /// Subtracts basis multiples so that `v` vanishes at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            if !r[pc].is_zero() {
                let f = -&r[pc];
                axpy(&mut r, &f, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let mut vecs = self.basis.clone();
        vecs.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.field, self.ambient, &vecs))
    }

    pub fn intersection(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // Columns [U^T | W^T]; a kernel vector (a, b) gives a^T U = -b^T W.
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().cloned());
        let m = Matrix::from_columns(self.field, self.ambient, &cols);
        let ker = m.kernel();
        let vecs: Vec<Vector> = ker
            .iter()
            .map(|k| combine(self.field, self.ambient, &k[..self.dim()], &self.basis))
            .collect();
        Ok(Subspace::span(self.field, self.ambient, &vecs))
    }

    pub fn same_as(&self, o: &Subspace) -> bool {
        self == o
    }
}

/// The quotient `V / W` for `W ⊆ V`, with a canonical complement basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    reps: Vec<Vector>,
    rep_pivots: Vec<usize>,
}

impl Quotient {
    pub fn new(whole: &Subspace, sub: &Subspace) -> Result<Quotient> {
        whole.check(sub)?;
        if !whole.contains_space(sub) {
            return Err(Error::Shape("quotient of a space by a non-subspace".into()));
        }
        let reduced: Vec<Vector> = whole.basis.iter().map(|v| sub.reduce(v)).collect();
        let span = Subspace::span(whole.field, whole.ambient, &reduced);
        Ok(Quotient { sub: sub.clone(), reps: span.basis, rep_pivots: span.pivots })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Canonical representatives of the quotient basis.
    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    /// Coordinates of the class of `v` (which must lie in the whole space).
    pub fn coords(&self, v: &[Scalar]) -> Vector {
        let r = self.sub.reduce(v);
        self.rep_pivots.iter().map(|&pc| r[pc].clone()).collect()
    }

    /// `true` if the class of `v` is zero, i.e. `v ∈ W`.
    pub fn is_zero_class(&self, v: &[Scalar]) -> bool {
        self.sub.contains(v)
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        let n = self.sub.ambient;
        combine(self.sub.field, n, coords, &self.reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::Prime(5)
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = f5();
        let (r, p) = Matrix::identity(f, 2).rref();
        assert_eq!(r, Matrix::identity(f, 2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = Matrix::zeros(f, 2, 2).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_over_f5() {
        let f = f5();
        let m = Matrix::from_i64(f, &[&[2, 1], &[4, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(f, &[&[1, 3], &[0, 0]]));
        assert_eq!(p, vec![0]);
        // independent check: the first row of the RREF is (1/2) * row 0 of m
        let half = f.from_i64(2).inv().unwrap();
        let expect: Vec<Scalar> = m.row(0).iter().map(|x| x * &half).collect();
        assert_eq!(r.row(0), expect.as_slice());
    }

    #[test]
    fn solve_over_f5() {
        let f = f5();
        let a = Matrix::from_i64(f, &[&[2, 1]]);
        let b = Matrix::from_i64(f, &[&[1]]);
        let s = a.solve(&b).unwrap();
        assert_eq!(s.particular.col(0), vec![f.from_i64(3), f.from_i64(0)]);
        assert_eq!(s.kernel.len(), 1);
        let k = &s.kernel[0];
        assert!(is_zero_vector(&a.mul_vec(k)));
        // kernel is spanned by [1, 3]
        let k13 = vec![f.from_i64(1), f.from_i64(3)];
        assert!(Subspace::span(f, 2, std::slice::from_ref(k)).contains(&k13));
    }

    #[test]
    fn solve_trivial_cases() {
        let f = f5();
        let v = Matrix::from_i64(f, &[&[3], &[4]]);
        let s = Matrix::identity(f, 2).solve(&v).unwrap();
        assert_eq!(s.particular, v);
        assert!(s.kernel.is_empty());
        let s = Matrix::zeros(f, 2, 2).solve(&Matrix::zeros(f, 2, 1)).unwrap();
        assert_eq!(s.kernel.len(), 2);
        assert!(Matrix::zeros(f, 1, 1).solve(&Matrix::from_i64(f, &[&[1]])).is_none());
    }

    #[test]
    fn subspace_ops() {
        let f = f5();
        let e1 = unit_vector(f, 2, 0);
        let e2 = unit_vector(f, 2, 1);
        let a = Subspace::span(f, 2, &[e1]);
        let b = Subspace::span(f, 2, &[e2]);
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert!(a.intersection(&b).unwrap().is_zero());
        let v = Subspace::full(f, 3);
        let w = Subspace::span(f, 3, &[vec![f.one(), f.one(), f.zero()]]);
        assert_eq!(Quotient::new(&v, &w).unwrap().dim(), 2);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = f5();
        assert!(Subspace::zero(f, 2).sum(&Subspace::zero(f, 3)).is_err());
    }

    #[test]
    fn rational_rref() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[2, 1], &[4, 3]]);
        assert_eq!(m.rank(), 2);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q, 2));
    }
}
