//! The endomorphism algebra `B = End_K(P)` of a basic complex with
//! indecomposable summands `P_1, ..., P_m`, and the dictionary
//! `add P ≃ proj B` sending `P_k` to `e_k B`.
//!
//! The corner `e_k B e_l` is `Hom_K(P_l, P_k)`; products are compositions.
//! Diagonal corners use the basis `[id, radical basis]`.

use std::sync::Arc;

use super::{complex_isomorphism, decompose_complex, AMatrix, ChainMap, EndK, HomSpace, ProjComplex};
use crate::algebra::{self, Algebra, Table};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{self, Matrix, Quotient, Subspace, Vector};

#[derive(Clone, Debug)]
pub struct Endo {
    pub summands: Vec<ProjComplex>,
    pub total: ProjComplex,
    pub b: Arc<Algebra>,
    /// `spaces[k][l] = Hom_K(P_l, P_k)`
    spaces: Vec<Vec<HomSpace>>,
    /// B basis indices of each corner, in corner-coordinate order
    corner: Vec<Vec<Vec<usize>>>,
    to_corner: Vec<Vec<Matrix>>,
    from_corner: Vec<Vec<Matrix>>,
}

/// A complex identified with a sum of summands of `P`.
#[derive(Clone, Debug)]
pub struct AddIso {
    /// Summand index of each component.
    pub parts: Vec<usize>,
    pub sum: ProjComplex,
    /// `Y → ⊕ P_{parts}`
    pub to_sum: ChainMap,
    /// `⊕ P_{parts} → Y`
    pub from_sum: ChainMap,
}

/// An `add P`-approximation: components `parts` and the map.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub parts: Vec<usize>,
    pub sum: ProjComplex,
    pub map: ChainMap,
}

impl Endo {
    /// `summands` must be indecomposable and pairwise non-isomorphic.
    pub fn new(summands: Vec<ProjComplex>) -> Result<Endo> {
        let m = summands.len();
        if m == 0 {
            return Err(Error::Precondition("empty complex has no endomorphism algebra here".into()));
        }
        let alg = summands[0].algebra().clone();
        let f = alg.field();
        let mut spaces: Vec<Vec<HomSpace>> = Vec::with_capacity(m);
        let mut ends = Vec::with_capacity(m);
        for k in 0..m {
            let end = EndK::new(&summands[k])?;
            if !end.is_local() {
                return Err(Error::Precondition(format!("summand {} is not indecomposable", k + 1)));
            }
            let mut row = Vec::with_capacity(m);
            for l in 0..m {
                if l == k {
                    row.push(end.space.clone());
                } else {
                    row.push(HomSpace::new(&summands[l], &summands[k])?);
                }
            }
            spaces.push(row);
            ends.push(end);
        }
        // corner coordinate changes
        let mut to_corner = vec![Vec::new(); m];
        let mut from_corner = vec![Vec::new(); m];
        for k in 0..m {
            for l in 0..m {
                let d = spaces[k][l].dim();
                if k == l {
                    let end = &ends[k];
                    let mut cols = vec![end.table.unit().clone()];
                    cols.extend(end.radical().basis().iter().cloned());
                    let fc = Matrix::from_columns(f, d, &cols);
                    let tc = fc.inverse().ok_or_else(|| Error::Internal("radical basis does not complete".into()))?;
                    from_corner[k].push(fc);
                    to_corner[k].push(tc);
                } else {
                    from_corner[k].push(Matrix::identity(f, d));
                    to_corner[k].push(Matrix::identity(f, d));
                }
            }
        }
        // basis numbering: identities first, then corners in (k, l) order
        let mut corner: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); m]; m];
        let mut labels = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for k in 0..m {
            corner[k][k].push(k);
            labels.push(format!("e{}", k + 1));
            left.push(k);
            right.push(k);
        }
        for k in 0..m {
            for l in 0..m {
                let skip = usize::from(k == l);
                for j in skip..spaces[k][l].dim() {
                    corner[k][l].push(labels.len());
                    labels.push(format!("b{}_{}_{}", k + 1, l + 1, j + 1 - skip));
                    left.push(k);
                    right.push(l);
                }
            }
        }
        let n = labels.len();
        let rep = |b: usize| -> ChainMap {
            let (k, l) = (left[b], right[b]);
            let pos = corner[k][l].iter().position(|&x| x == b).unwrap();
            let cc = linalg::unit_vector(f, spaces[k][l].dim(), pos);
            spaces[k][l].from_class(&from_corner[k][l].mul_vec(&cc))
        };
        let reps: Vec<ChainMap> = (0..n).map(rep).collect();
        let element = |k: usize, l: usize, u: &ChainMap| -> Vector {
            let cc = to_corner[k][l].mul_vec(&spaces[k][l].class(u));
            let mut v = linalg::zero_vector(f, n);
            for (j, &b) in corner[k][l].iter().enumerate() {
                v[b] = cc[j].clone();
            }
            v
        };
        let mut mult = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                if right[x] != left[y] {
                    mult.push(Vec::new());
                    continue;
                }
                let (k, l, mm) = (left[x], right[x], right[y]);
                let c = reps[y].then(&reps[x], &summands[mm], &summands[l], &summands[k]);
                mult.push(algebra::sparse(&element(k, mm, &c)));
            }
        }
        let mut unit = linalg::zero_vector(f, n);
        for u in unit.iter_mut().take(m) {
            *u = f.one();
        }
        let table = Table::new(f, n, mult, unit);
        if !table.is_associative() {
            return Err(Error::Internal("composition of homotopy classes is not associative".into()));
        }
        let vertex_idem = (0..m).collect();
        let b = Arc::new(Algebra::from_table(table, labels, left, right, vertex_idem)?);
        Ok(Endo {
            total: ProjComplex::direct_sum(&alg, &summands),
            summands,
            b,
            spaces,
            corner,
            to_corner,
            from_corner,
        })
    }

    /// Builds `B` from an arbitrary complex by decomposing it and keeping one
    /// summand per isomorphism class, in order of appearance.
    pub fn from_complex(p: &ProjComplex) -> Result<Endo> {
        Endo::new(basic_summands(p)?)
    }

    fn field(&self) -> crate::field::Field {
        self.total.algebra().field()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn space(&self, k: usize, l: usize) -> &HomSpace {
        &self.spaces[k][l]
    }

    /// The element of `e_k B e_l` represented by `u: P_l → P_k`.
    pub fn element(&self, k: usize, l: usize, u: &ChainMap) -> Vector {
        let cc = self.to_corner[k][l].mul_vec(&self.spaces[k][l].class(u));
        let mut v = self.b.zero();
        for (j, &b) in self.corner[k][l].iter().enumerate() {
            v[b] = cc[j].clone();
        }
        v
    }

    /// A representative `P_l → P_k` of the `(k, l)` corner part of `x`.
    pub fn chain_map(&self, k: usize, l: usize, x: &[Scalar]) -> ChainMap {
        let cc: Vector = self.corner[k][l].iter().map(|&b| x[b].clone()).collect();
        self.spaces[k][l].from_class(&self.from_corner[k][l].mul_vec(&cc))
    }

    /// Representative of basis element `b` as an endomorphism of the total `P`.
    pub fn basis_endomorphism(&self, b: usize) -> ChainMap {
        let (k, l) = (self.b.left(b), self.b.right(b));
        let c = self.chain_map(k, l, &self.b.basis_vector(b));
        ChainMap::from_sum_components(&self.summands, &self.summands, |t, s| {
            (t == k && s == l).then(|| c.clone())
        })
    }

    /// `⊕_j P_{parts[j]}`.
    pub fn sum_of(&self, parts: &[usize]) -> ProjComplex {
        let alg = self.total.algebra();
        let xs: Vec<ProjComplex> = parts.iter().map(|&k| self.summands[k].clone()).collect();
        ProjComplex::direct_sum(alg, &xs)
    }

    fn parts_of(&self, parts: &[usize]) -> Vec<ProjComplex> {
        parts.iter().map(|&k| self.summands[k].clone()).collect()
    }

    /// The matrix over `B` of a map `⊕ P_{cols} → ⊕ P_{rows}`.
    pub fn b_matrix(&self, rows: &[usize], cols: &[usize], u: &ChainMap) -> AMatrix {
        let xs = self.parts_of(cols);
        let ys = self.parts_of(rows);
        let mut m = AMatrix::zero(&self.b, rows, cols);
        for t in 0..rows.len() {
            for s in 0..cols.len() {
                let c = u.sum_component(&xs, &ys, s, t);
                m.set(t, s, self.element(rows[t], cols[s], &c));
            }
        }
        m
    }

    /// Inverse of [`b_matrix`](Self::b_matrix) up to homotopy.
    pub fn chain_map_of(&self, a: &AMatrix) -> ChainMap {
        let xs = self.parts_of(&a.cols);
        let ys = self.parts_of(&a.rows);
        ChainMap::from_sum_components(&xs, &ys, |t, s| Some(self.chain_map(a.rows[t], a.cols[s], a.get(t, s))))
    }

    /// Identifies `y` with a sum of summands of `P`, or `None` if `y ∉ add P`.
    pub fn add_iso(&self, y: &ProjComplex) -> Result<Option<AddIso>> {
        let dec = decompose_complex(y)?;
        let mut matched = Vec::new();
        for s in &dec.summands {
            let mut hit = None;
            for (k, pk) in self.summands.iter().enumerate() {
                if let Some((phi, psi)) = complex_isomorphism(&s.complex, pk)? {
                    hit = Some((k, phi, psi));
                    break;
                }
            }
            match hit {
                Some((k, phi, psi)) => matched.push((k, s, phi, psi)),
                None => return Ok(None),
            }
        }
        matched.sort_by_key(|m| m.0);
        let parts: Vec<usize> = matched.iter().map(|m| m.0).collect();
        let sum = self.sum_of(&parts);
        if parts.is_empty() {
            return Ok(Some(AddIso {
                parts,
                to_sum: ChainMap::zero(y, &sum),
                from_sum: ChainMap::zero(&sum, y),
                sum,
            }));
        }
        let ys = vec![y.clone()];
        let comps = self.parts_of(&parts);
        let to_sum = ChainMap::from_sum_components(&ys, &comps, |t, _| {
            let (k, s, phi, _) = &matched[t];
            Some(s.proj.then(phi, y, &s.complex, &self.summands[*k]))
        });
        let from_sum = ChainMap::from_sum_components(&comps, &ys, |_, s| {
            let (k, sm, _, psi) = &matched[s];
            Some(psi.then(&sm.incl, &self.summands[*k], &sm.complex, y))
        });
        // the sums above are built on `⊕ ys = y` with identical terms
        let to_sum = to_sum.reframe(y, &sum);
        let from_sum = from_sum.reframe(&sum, y);
        Ok(Some(AddIso { parts, sum, to_sum, from_sum }))
    }

    /// Radical maps `P_l → P_k`: everything if `k ≠ l`, the radical of
    /// `End(P_k)` otherwise.
    fn radical_reps(&self, k: usize, l: usize) -> Vec<ChainMap> {
        let skip = usize::from(k == l);
        let d = self.spaces[k][l].dim();
        (skip..d)
            .map(|j| {
                let cc = linalg::unit_vector(self.field(), d, j);
                self.spaces[k][l].from_class(&self.from_corner[k][l].mul_vec(&cc))
            })
            .collect()
    }

    /// Minimal left `add P`-approximation `x → P'`.
    pub fn left_approximation(&self, x: &ProjComplex) -> Result<Approximation> {
        let f = self.field();
        let m = self.len();
        let homs: Vec<HomSpace> =
            self.summands.iter().map(|pk| HomSpace::new(x, pk)).collect::<Result<_>>()?;
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for k in 0..m {
            let mut rad = Vec::new();
            for l in 0..m {
                let rs = self.radical_reps(k, l);
                for g in homs[l].reps() {
                    for r in &rs {
                        rad.push(homs[k].class(&g.then(r, x, &self.summands[l], &self.summands[k])));
                    }
                }
            }
            let d = homs[k].dim();
            let q = Quotient::new(&Subspace::full(f, d), &Subspace::span(f, d, &rad))?;
            for rep in q.reps() {
                parts.push(k);
                maps.push(homs[k].from_class(rep));
            }
        }
        let sum = self.sum_of(&parts);
        let map = if parts.is_empty() {
            ChainMap::zero(x, &sum)
        } else {
            let comps = self.parts_of(&parts);
            ChainMap::from_sum_components(std::slice::from_ref(x), &comps, |t, _| Some(maps[t].clone()))
                .reframe(x, &sum)
        };
        Ok(Approximation { parts, sum, map })
    }

    /// Minimal right `add P`-approximation `P_0 → y`.
    pub fn right_approximation(&self, y: &ProjComplex) -> Result<Approximation> {
        let f = self.field();
        let m = self.len();
        let homs: Vec<HomSpace> =
            self.summands.iter().map(|pk| HomSpace::new(pk, y)).collect::<Result<_>>()?;
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for k in 0..m {
            let mut rad = Vec::new();
            for l in 0..m {
                let rs = self.radical_reps(l, k);
                for g in homs[l].reps() {
                    for r in &rs {
                        rad.push(homs[k].class(&r.then(&g, &self.summands[k], &self.summands[l], y)));
                    }
                }
            }
            let d = homs[k].dim();
            let q = Quotient::new(&Subspace::full(f, d), &Subspace::span(f, d, &rad))?;
            for rep in q.reps() {
                parts.push(k);
                maps.push(homs[k].from_class(rep));
            }
        }
        let sum = self.sum_of(&parts);
        let map = if parts.is_empty() {
            ChainMap::zero(&sum, y)
        } else {
            let comps = self.parts_of(&parts);
            ChainMap::from_sum_components(&comps, std::slice::from_ref(y), |_, s| Some(maps[s].clone()))
                .reframe(&sum, y)
        };
        Ok(Approximation { parts, sum, map })
    }
}

/// One summand per isomorphism class, in order of appearance.
pub fn basic_summands(p: &ProjComplex) -> Result<Vec<ProjComplex>> {
    let dec = decompose_complex(p)?;
    Ok(dec.classes.iter().map(|c| dec.summands[c[0]].complex.clone()).collect())
}
