//! Finite-dimensional algebras given by structure constants.
//!
//! [`Table`] is the bare multiplication table (used for endomorphism rings
//! during decompositions). [`Algebra`] adds the vertex grading: a complete set
//! of vertex idempotents that are themselves basis elements, and for every
//! basis element `b` a pair of vertices with `e_left b = b = b e_right`.

mod decompose;
mod quiver;

pub use decompose::{
    decompose_identity as primitive_idempotents, is_local, radical as table_radical,
    IdempotentClasses,
};
pub use quiver::{Arrow, Path, Quiver, Relation};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Matrix, Subspace, Vector};

/// Sparse product of two basis elements.
pub type Product = Vec<(usize, Scalar)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Table {
    field: Field,
    dim: usize,
    mult: Vec<Product>,
    unit: Vector,
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Table(dim {} over {})", self.dim, self.field)
    }
}

impl Table {
    /// `mult[i * dim + j]` is the product of basis elements `i` and `j`.
    pub fn new(field: Field, dim: usize, mult: Vec<Product>, unit: Vector) -> Self {
        assert_eq!(mult.len(), dim * dim);
        assert_eq!(unit.len(), dim);
        Table { field, dim, mult, unit }
    }

    /// The algebra spanned by a set of square matrices closed under products.
    /// The basis is the canonical (RREF) basis of the span; returns it too.
    pub fn from_matrices(field: Field, n: usize, mats: &[Matrix]) -> Result<(Table, Vec<Matrix>)> {
        let flat: Vec<Vector> = mats.iter().map(flatten).collect();
        let span = Subspace::span(field, n * n, &flat);
        let basis: Vec<Matrix> = span.basis().iter().map(|v| unflatten(field, n, v)).collect();
        let dim = basis.len();
        let mut mult = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let c = span
                    .coordinates(&flatten(&a.mul(b)))
                    .ok_or_else(|| Error::Internal("matrix span not closed under products".into()))?;
                mult.push(sparse(&c));
            }
        }
        let unit = span
            .coordinates(&flatten(&Matrix::identity(field, n)))
            .ok_or_else(|| Error::Internal("identity not in matrix algebra".into()))?;
        Ok((Table::new(field, dim, mult, unit), basis))
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Product {
        &self.mult[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        linalg::unit_vector(self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        linalg::zero_vector(self.field, self.dim)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` (columns indexed by the basis).
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn pow(&self, x: &[Scalar], k: usize) -> Vector {
        let mut r = self.unit.clone();
        for _ in 0..k {
            r = self.mul(&r, x);
        }
        r
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        for i in 0..self.dim {
            let bi = self.basis_vector(i);
            for j in 0..self.dim {
                let bij = self.mul(&bi, &self.basis_vector(j));
                for k in 0..self.dim {
                    let bk = self.basis_vector(k);
                    let lhs = self.mul(&bij, &bk);
                    let rhs = self.mul(&bi, &self.mul(&self.basis_vector(j), &bk));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis_vector(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    pub fn opposite(&self) -> Table {
        let d = self.dim;
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                mult[j * d + i] = self.mult[i * d + j].clone();
            }
        }
        Table::new(self.field, d, mult, self.unit.clone())
    }

    /// `{ x y : x ∈ X, y ∈ Y }` spanned.
    pub fn product_space(&self, x: &Subspace, y: &Subspace) -> Subspace {
        let mut v = Vec::new();
        for a in x.basis() {
            for b in y.basis() {
                v.push(self.mul(a, b));
            }
        }
        Subspace::span(self.field, self.dim, &v)
    }

    /// `f X g` for a subspace `X`.
    pub fn sandwich(&self, f: &[Scalar], x: &Subspace, g: &[Scalar]) -> Subspace {
        let v: Vec<Vector> = x.basis().iter().map(|b| self.mul(&self.mul(f, b), g)).collect();
        Subspace::span(self.field, self.dim, &v)
    }

    /// Solves `x * y = z` for `y` inside the subspace `within`.
    pub fn left_divide_within(&self, x: &[Scalar], z: &[Scalar], within: &Subspace) -> Option<Vector> {
        let cols: Vec<Vector> = within.basis().iter().map(|w| self.mul(x, w)).collect();
        if cols.is_empty() {
            return linalg::is_zero_vector(z).then(|| self.zero());
        }
        let m = Matrix::from_columns(self.field, self.dim, &cols);
        let c = m.solve_vec(z)?;
        Some(linalg::combine(self.field, self.dim, &c, within.basis()))
    }
}

pub(crate) fn sparse(v: &[Scalar]) -> Product {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub(crate) fn flatten(m: &Matrix) -> Vector {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        v.extend(m.row(r).iter().cloned());
    }
    v
}

pub(crate) fn unflatten(field: Field, n: usize, v: &[Scalar]) -> Matrix {
    if n == 0 {
        return Matrix::zeros(field, 0, 0);
    }
    let rows: Vec<Vector> = v.chunks(n).map(|c| c.to_vec()).collect();
    Matrix::from_vectors(field, n, &rows)
}

/// A vertex-graded basic-form algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    table: Table,
    labels: Vec<String>,
    left: Vec<usize>,
    right: Vec<usize>,
    vertex_idem: Vec<usize>,
    generators: Vec<usize>,
    quiver: Option<Quiver>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}, {} vertices, basis {:?})", self.dim(), self.n_vertices(), self.labels)
    }
}

impl Algebra {
    /// Algebra from structure constants. `vertex_idem[v]` must be the basis
    /// index of the idempotent of vertex `v`.
    pub fn from_table(
        table: Table,
        labels: Vec<String>,
        left: Vec<usize>,
        right: Vec<usize>,
        vertex_idem: Vec<usize>,
    ) -> Result<Algebra> {
        let d = table.dim();
        if labels.len() != d || left.len() != d || right.len() != d {
            return Err(Error::Shape("basis annotations do not match dimension".into()));
        }
        let mut alg =
            Algebra { table, labels, left, right, vertex_idem, generators: Vec::new(), quiver: None };
        alg.validate()?;
        alg.generators = alg.compute_generators();
        Ok(alg)
    }

    pub(crate) fn with_quiver(mut self, q: Quiver) -> Self {
        self.quiver = Some(q);
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.n_vertices();
        let t = &self.table;
        let mut sum = t.zero();
        for (v, &i) in self.vertex_idem.iter().enumerate() {
            if self.left[i] != v || self.right[i] != v {
                return Err(Error::Precondition(format!("idempotent of vertex {} misplaced", v + 1)));
            }
            sum[i] = t.field().one();
        }
        if &sum != t.unit() {
            return Err(Error::Precondition("vertex idempotents do not sum to 1".into()));
        }
        for b in 0..t.dim() {
            if self.left[b] >= n || self.right[b] >= n {
                return Err(Error::Precondition(format!("basis element {b} has no vertex")));
            }
            let bv = t.basis_vector(b);
            let el = t.basis_vector(self.vertex_idem[self.left[b]]);
            let er = t.basis_vector(self.vertex_idem[self.right[b]]);
            if t.mul(&el, &bv) != bv || t.mul(&bv, &er) != bv {
                return Err(Error::Precondition(format!(
                    "basis element `{}` is not in the corner e{} A e{}",
                    self.labels[b],
                    self.left[b] + 1,
                    self.right[b] + 1
                )));
            }
        }
        for (v, &i) in self.vertex_idem.iter().enumerate() {
            for (w, &j) in self.vertex_idem.iter().enumerate() {
                let p = t.mul(&t.basis_vector(i), &t.basis_vector(j));
                let expect = if v == w { t.basis_vector(i) } else { t.zero() };
                if p != expect {
                    return Err(Error::Precondition("vertex idempotents are not orthogonal".into()));
                }
            }
        }
        Ok(())
    }

    pub fn table(&self) -> &Table {
        &self.table
    }
    pub fn field(&self) -> Field {
        self.table.field()
    }
    pub fn dim(&self) -> usize {
        self.table.dim()
    }
    pub fn n_vertices(&self) -> usize {
        self.vertex_idem.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }
    pub fn left(&self, b: usize) -> usize {
        self.left[b]
    }
    pub fn right(&self, b: usize) -> usize {
        self.right[b]
    }
    pub fn quiver(&self) -> Option<&Quiver> {
        self.quiver.as_ref()
    }
    pub fn vertex_idempotent_index(&self, v: usize) -> usize {
        self.vertex_idem[v]
    }
    pub fn is_vertex_idempotent(&self, b: usize) -> bool {
        self.vertex_idem[self.left[b]] == b
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn idempotent(&self, v: usize) -> Vector {
        self.table.basis_vector(self.vertex_idem[v])
    }

    pub fn one(&self) -> Vector {
        self.table.unit().clone()
    }

    pub fn zero(&self) -> Vector {
        self.table.zero()
    }

    pub fn basis_vector(&self, b: usize) -> Vector {
        self.table.basis_vector(b)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.table.mul(x, y)
    }

    /// Basis indices spanning `e_v A e_u`.
    pub fn corner(&self, v: usize, u: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.left[b] == v && self.right[b] == u).collect()
    }

    pub fn corner_dim(&self, v: usize, u: usize) -> usize {
        self.corner(v, u).len()
    }

    /// `true` if `x` lies in `e_v A e_u`.
    pub fn in_corner(&self, x: &[Scalar], v: usize, u: usize) -> bool {
        x.iter().enumerate().all(|(b, c)| c.is_zero() || (self.left[b] == v && self.right[b] == u))
    }

    /// Restriction of an element to its `e_v A e_u` component.
    pub fn corner_part(&self, x: &[Scalar], v: usize, u: usize) -> Vector {
        x.iter()
            .enumerate()
            .map(|(b, c)| {
                if self.left[b] == v && self.right[b] == u {
                    c.clone()
                } else {
                    self.field().zero()
                }
            })
            .collect()
    }

    /// Basis elements that are not vertex idempotents. In basic graded form
    /// they span the radical.
    /// Non-idempotent basis elements outside `rad²`. Together with the vertex
    /// idempotents they generate the algebra (in basic graded form).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn compute_generators(&self) -> Vec<usize> {
        let rb = self.radical_basis();
        let rad = Subspace::span(
            self.field(),
            self.dim(),
            &rb.iter().map(|&b| self.basis_vector(b)).collect::<Vec<_>>(),
        );
        let rad2 = self.table.product_space(&rad, &rad);
        rb.into_iter().filter(|&b| !rad2.contains(&self.basis_vector(b))).collect()
    }

    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| !self.is_vertex_idempotent(b)).collect()
    }

    /// Checks the basic graded form that module and complex code relies on:
    /// the non-idempotent basis elements span the Jacobson radical.
    pub fn check_graded_basic(&self) -> Result<()> {
        let rad = self.radical()?;
        let naive = Subspace::span(
            self.field(),
            self.dim(),
            &self.radical_basis().iter().map(|&b| self.basis_vector(b)).collect::<Vec<_>>(),
        );
        if rad != naive {
            return Err(Error::NotBasic(
                "non-idempotent basis elements do not span the radical".into(),
            ));
        }
        Ok(())
    }

    pub fn radical(&self) -> Result<Subspace> {
        decompose::radical(&self.table)
    }

    pub fn decompose_identity(&self) -> Result<IdempotentClasses> {
        decompose::decompose_identity(&self.table)
    }

    pub fn opposite(&self) -> Algebra {
        let quiver = self.quiver.as_ref().map(|q| q.opposite());
        Algebra {
            table: self.table.opposite(),
            labels: self.labels.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
            vertex_idem: self.vertex_idem.clone(),
            generators: self.generators.clone(),
            quiver,
        }
    }

    /// Arrow counts `dim e_i (rad/rad²) e_j` of the Gabriel quiver.
    pub fn gabriel_quiver(&self) -> Result<GabrielQuiver> {
        let n = self.n_vertices();
        for v in 0..n {
            let c = self.corner(v, v);
            let ev = self.idempotent(v);
            let local = Subspace::span(
                self.field(),
                self.dim(),
                &c.iter().map(|&b| self.basis_vector(b)).collect::<Vec<_>>(),
            );
            let rad = self.radical()?;
            let r = self.table.sandwich(&ev, &rad, &ev);
            if local.dim() != r.dim() + 1 {
                return Err(Error::NotBasic(format!("vertex {} is not primitive", v + 1)));
            }
        }
        let classes = self.decompose_identity()?;
        if classes.classes.len() != classes.idempotents.len() {
            return Err(Error::NotBasic("isomorphic primitive idempotents".into()));
        }
        let rad = self.radical()?;
        let rad2 = self.table.product_space(&rad, &rad);
        let mut arrows = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let ei = self.idempotent(i);
                let ej = self.idempotent(j);
                let a = self.table.sandwich(&ei, &rad, &ej).dim();
                let b = self.table.sandwich(&ei, &rad2, &ej).dim();
                arrows[i][j] = a - b;
            }
        }
        Ok(GabrielQuiver { vertices: n, arrows })
    }

    /// Expresses an element as a readable sum like `2*alpha + e1`.
    pub fn format_element(&self, x: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (b, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let l = &self.labels[b];
            if c.is_one() {
                parts.push(l.clone());
            } else {
                parts.push(format!("{c}*{l}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Same structure constants, labels and vertex data.
    pub fn same_structure(&self, o: &Algebra) -> bool {
        self.table == o.table
            && self.left == o.left
            && self.right == o.right
            && self.vertex_idem == o.vertex_idem
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabrielQuiver {
    pub vertices: usize,
    /// `arrows[i][j]`: number of arrows from `i` to `j` (0-based).
    pub arrows: Vec<Vec<usize>>,
}

impl GabrielQuiver {
    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().flatten().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn matrix_units(field: Field) -> Vec<Matrix> {
        let mut v = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m = Matrix::zeros(field, 2, 2);
                m.set(i, j, field.one());
                v.push(m);
            }
        }
        v
    }

    #[test]
    fn matrix_algebra_from_units() {
        let f = Field::Prime(101);
        let (t, basis) = Table::from_matrices(f, 2, &matrix_units(f)).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(basis.len(), 4);
        assert!(t.is_associative());
        assert!(t.is_unital());
        assert!(decompose::radical(&t).unwrap().is_zero());
    }

    #[test]
    fn opposite_is_involutive() {
        let f = Field::Prime(101);
        let (t, _) = Table::from_matrices(f, 2, &matrix_units(f)).unwrap();
        assert_eq!(t.opposite().opposite(), t);
    }
}
