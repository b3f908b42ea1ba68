//! `Hom_{K^b(proj A)}(X, Y)` as cycles modulo null-homotopic maps, and
//! `Hom_{D^b(A)}(X, M[n])` for a module stalk `M[n]`.

use super::{joint_range, sandwich_operator, AMatrix, ChainMap, Layout, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{self, Matrix, Quotient, Subspace, Vector};
use crate::module::Module;

#[derive(Clone, Debug)]
pub struct HomSpace {
    x: ProjComplex,
    y: ProjComplex,
    lo: i32,
    layouts: Vec<Layout>,
    offsets: Vec<usize>,
    /// `h^i: X^i → Y^{i-1}` for `i` in `h_lo..`
    h_lo: i32,
    h_layouts: Vec<Layout>,
    h_offsets: Vec<usize>,
    boundary: Matrix,
    cycles: Subspace,
    quotient: Quotient,
}

fn offsets_of(layouts: &[Layout]) -> Vec<usize> {
    let mut off = vec![0];
    for l in layouts {
        off.push(off.last().unwrap() + l.len());
    }
    off
}

impl HomSpace {
    pub fn new(x: &ProjComplex, y: &ProjComplex) -> Result<HomSpace> {
        let alg = x.algebra().clone();
        let f = alg.field();
        let (lo, hi) = joint_range(x, y);
        let layouts: Vec<Layout> = (lo..=hi).map(|i| Layout::new(&alg, y.term(i), x.term(i))).collect();
        let offsets = offsets_of(&layouts);
        let n = *offsets.last().unwrap();

        // cycle condition d_Y f^i = f^{i+1} d_X in every degree
        let mut cyc = Matrix::zeros(f, 0, n);
        if n > 0 {
            for i in lo - 1..=hi {
                let tgt = Layout::new(&alg, y.term(i + 1), x.term(i));
                if tgt.is_empty() {
                    continue;
                }
                let mut block = Matrix::zeros(f, tgt.len(), n);
                if i >= lo {
                    let k = (i - lo) as usize;
                    let op = sandwich_operator(&alg, Some(&y.diff(i)), &layouts[k], None, &tgt);
                    block.set_block(0, offsets[k], &op);
                }
                if i < hi {
                    let k = (i + 1 - lo) as usize;
                    let op = sandwich_operator(&alg, None, &layouts[k], Some(&x.diff(i)), &tgt);
                    block.set_block(0, offsets[k], &op.scale(&-f.one()));
                }
                cyc = cyc.vstack(&block);
            }
        }
        let cycles = if cyc.rows() == 0 {
            Subspace::full(f, n)
        } else {
            Subspace::span(f, n, &cyc.kernel())
        };

        // homotopies h^i: X^i → Y^{i-1}
        let (h_lo, h_hi) = match (x.support(), y.support()) {
            (Some(a), Some(b)) => (a.0.max(b.0 + 1), a.1.min(b.1 + 1)),
            _ => (0, -1),
        };
        let h_layouts: Vec<Layout> =
            (h_lo..=h_hi).map(|i| Layout::new(&alg, y.term(i - 1), x.term(i))).collect();
        let h_offsets = offsets_of(&h_layouts);
        let nh = *h_offsets.last().unwrap();
        let mut boundary = Matrix::zeros(f, n, nh);
        for i in lo..=hi {
            let k = (i - lo) as usize;
            if layouts[k].is_empty() {
                continue;
            }
            // d_Y^{i-1} h^i
            if i >= h_lo && i <= h_hi {
                let j = (i - h_lo) as usize;
                let op = sandwich_operator(&alg, Some(&y.diff(i - 1)), &h_layouts[j], None, &layouts[k]);
                boundary.set_block(offsets[k], h_offsets[j], &op);
            }
            // h^{i+1} d_X^i
            if i + 1 >= h_lo && i < h_hi {
                let j = (i + 1 - h_lo) as usize;
                let op = sandwich_operator(&alg, None, &h_layouts[j], Some(&x.diff(i)), &layouts[k]);
                let cur = boundary.block(offsets[k], h_offsets[j], op.rows(), op.cols());
                boundary.set_block(offsets[k], h_offsets[j], &cur.add(&op));
            }
        }
        let bcols: Vec<Vector> = (0..nh).map(|c| boundary.col(c)).collect();
        let bspace = Subspace::span(f, n, &bcols);
        let quotient = Quotient::new(&cycles, &bspace)
            .map_err(|_| Error::Internal("null-homotopic maps are not cycles".into()))?;
        Ok(HomSpace {
            x: x.clone(),
            y: y.clone(),
            lo,
            layouts,
            offsets,
            h_lo,
            h_layouts,
            h_offsets,
            boundary,
            cycles,
            quotient,
        })
    }

    pub fn source(&self) -> &ProjComplex {
        &self.x
    }
    pub fn target(&self) -> &ProjComplex {
        &self.y
    }

    /// Dimension of the space of homotopy classes.
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn chain_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        self.quotient.sub()
    }

    pub fn to_coords(&self, m: &ChainMap) -> Vector {
        let mut v = Vec::with_capacity(self.chain_dim());
        for (k, l) in self.layouts.iter().enumerate() {
            let i = self.lo + k as i32;
            v.extend(l.to_coords(&m.comp(i, &self.x, &self.y)));
        }
        v
    }

    pub fn from_coords(&self, v: &[Scalar]) -> ChainMap {
        let alg = self.x.algebra();
        let mut m = ChainMap::zero(&self.x, &self.y);
        for (k, l) in self.layouts.iter().enumerate() {
            let i = self.lo + k as i32;
            m.set(i, l.from_coords(alg, &v[self.offsets[k]..self.offsets[k + 1]]));
        }
        m
    }

    pub fn is_chain_map(&self, m: &ChainMap) -> bool {
        self.cycles.contains(&self.to_coords(m))
    }

    /// Coordinates of the homotopy class of a chain map in the canonical class basis.
    pub fn class(&self, m: &ChainMap) -> Vector {
        self.quotient.coords(&self.to_coords(m))
    }

    pub fn is_null_homotopic(&self, m: &ChainMap) -> bool {
        self.quotient.is_zero_class(&self.to_coords(m))
    }

    /// The representative chain map of a class.
    pub fn from_class(&self, c: &[Scalar]) -> ChainMap {
        self.from_coords(&self.quotient.lift(c))
    }

    pub fn rep(&self, k: usize) -> ChainMap {
        self.from_coords(&self.quotient.reps()[k])
    }

    pub fn reps(&self) -> Vec<ChainMap> {
        (0..self.dim()).map(|k| self.rep(k)).collect()
    }

    /// A homotopy `h` with `m = d h + h d`, as `(degree i, h^i: X^i → Y^{i-1})`.
    pub fn null_homotopy(&self, m: &ChainMap) -> Option<Vec<(i32, AMatrix)>> {
        let v = self.to_coords(m);
        let alg = self.x.algebra();
        if self.boundary.cols() == 0 {
            return if linalg::is_zero_vector(&v) { Some(Vec::new()) } else { None };
        }
        let h = self.boundary.solve_vec(&v)?;
        Some(
            self.h_layouts
                .iter()
                .enumerate()
                .map(|(j, l)| (self.h_lo + j as i32, l.from_coords(alg, &h[self.h_offsets[j]..self.h_offsets[j + 1]])))
                .collect(),
        )
    }
}

/// `Hom_{K}(X, M[n])` for a complex of projectives `X` and a module `M`:
/// maps `X^{-n} → M` killed by `d^{-n-1}`, modulo those factoring through `d^{-n}`.
#[derive(Clone, Debug)]
pub struct StalkHom {
    x: ProjComplex,
    m: Module,
    shift: i32,
    /// `g_s ∈ M e_{u_s}` for each summand `s` of `X^{-n}`, stacked.
    offsets: Vec<usize>,
    cycles: Subspace,
    quotient: Quotient,
}

impl StalkHom {
    pub fn new(x: &ProjComplex, m: &Module, shift: i32) -> Result<StalkHom> {
        let alg = x.algebra();
        let f = alg.field();
        let deg = -shift;
        let here = x.term(deg);
        let mut offsets = vec![0];
        for &u in here {
            offsets.push(offsets.last().unwrap() + m.dims()[u]);
        }
        let n = *offsets.last().unwrap();
        // cycle condition: Σ_s g_s · d^{deg-1}(s, r) = 0 for every r
        let din = x.diff(deg - 1);
        let mut rows = Matrix::zeros(f, 0, n);
        for (r, &w) in din.cols.iter().enumerate() {
            let mut block = Matrix::zeros(f, m.dims()[w], n);
            for (s, &u) in here.iter().enumerate() {
                let a = din.get(s, r);
                if linalg::is_zero_vector(a) {
                    continue;
                }
                let act = m.act_element(a);
                let sub = act.block(m.offset(w), m.offset(u), m.dims()[w], m.dims()[u]);
                block.set_block(0, offsets[s], &sub);
            }
            rows = rows.vstack(&block);
        }
        let cycles = if rows.rows() == 0 { Subspace::full(f, n) } else { Subspace::span(f, n, &rows.kernel()) };
        // boundaries: g_s = Σ_t h_t · d^{deg}(t, s)
        let dout = x.diff(deg);
        let mut gens = Vec::new();
        for (t, &v) in dout.rows.iter().enumerate() {
            for i in m.vertex_range(v) {
                let mut g = linalg::zero_vector(f, n);
                let h = linalg::unit_vector(f, m.dim(), i);
                for (s, &u) in here.iter().enumerate() {
                    let a = dout.get(t, s);
                    if linalg::is_zero_vector(a) {
                        continue;
                    }
                    let img = m.act_element(a).mul_vec(&h);
                    for (k, p) in m.vertex_range(u).enumerate() {
                        g[offsets[s] + k] = &g[offsets[s] + k] + &img[p];
                    }
                }
                gens.push(g);
            }
        }
        let bnd = Subspace::span(f, n, &gens);
        let quotient =
            Quotient::new(&cycles, &bnd).map_err(|_| Error::Internal("stalk boundaries are not cycles".into()))?;
        Ok(StalkHom { x: x.clone(), m: m.clone(), shift, offsets, cycles, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn source(&self) -> &ProjComplex {
        &self.x
    }

    pub fn module(&self) -> &Module {
        &self.m
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn chain_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn class(&self, g: &[Scalar]) -> Vector {
        self.quotient.coords(g)
    }

    pub fn rep(&self, k: usize) -> Vector {
        self.quotient.reps()[k].clone()
    }

    /// The component `g_s ∈ M e_{u_s}` embedded in `M`.
    pub fn component(&self, g: &[Scalar], s: usize) -> Vector {
        let u = self.x.term(-self.shift)[s];
        let mut v = linalg::zero_vector(self.m.field(), self.m.dim());
        for (k, p) in self.m.vertex_range(u).enumerate() {
            v[p] = g[self.offsets[s] + k].clone();
        }
        v
    }

    fn assemble(&self, comps: &[Vector]) -> Vector {
        let here = self.x.term(-self.shift);
        let mut g = Vec::with_capacity(self.chain_dim());
        for (s, &u) in here.iter().enumerate() {
            for p in self.m.vertex_range(u) {
                g.push(comps[s][p].clone());
            }
        }
        g
    }

    /// `g ∘ φ` for a chain map `φ: X' → X`, as chain coordinates of `Hom(X', M[n])`.
    pub fn precompose(&self, g: &[Scalar], phi: &ChainMap, src: &StalkHom) -> Vector {
        let deg = -self.shift;
        let a = phi.comp(deg, src.source(), &self.x);
        let f = self.m.field();
        let comps: Vec<Vector> = (0..a.n_cols())
            .map(|s2| {
                let mut acc = linalg::zero_vector(f, self.m.dim());
                for s in 0..a.n_rows() {
                    let x = a.get(s, s2);
                    if linalg::is_zero_vector(x) {
                        continue;
                    }
                    let img = self.m.act_element(x).mul_vec(&self.component(g, s));
                    acc = linalg::add_vectors(&acc, &img);
                }
                acc
            })
            .collect();
        src.assemble(&comps)
    }

    /// `u ∘ g` for a module map `u: M → N`, as chain coordinates of `Hom(X, N[n])`.
    pub fn postcompose(&self, g: &[Scalar], u: &Matrix, tgt: &StalkHom) -> Vector {
        let comps: Vec<Vector> =
            (0..self.x.term(-self.shift).len()).map(|s| u.mul_vec(&self.component(g, s))).collect();
        tgt.assemble(&comps)
    }

    /// Matrix on class coordinates of precomposition with `φ: X' → X`.
    pub fn precompose_matrix(&self, phi: &ChainMap, src: &StalkHom) -> Matrix {
        let f = self.m.field();
        let cols: Vec<Vector> = (0..self.dim())
            .map(|k| src.class(&self.precompose(&self.rep(k), phi, src)))
            .collect();
        Matrix::from_columns(f, src.dim(), &cols)
    }

    /// Matrix on class coordinates of postcomposition with `u: M → N`.
    pub fn postcompose_matrix(&self, u: &Matrix, tgt: &StalkHom) -> Matrix {
        let f = self.m.field();
        let cols: Vec<Vector> =
            (0..self.dim()).map(|k| tgt.class(&self.postcompose(&self.rep(k), u, tgt))).collect();
        Matrix::from_columns(f, tgt.dim(), &cols)
    }
}
