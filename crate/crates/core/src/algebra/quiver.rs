//! Quiver presentations `kQ/I` and their normal-form basis.
//!
//! Paths are read left to right: `alpha.beta` is "alpha, then beta", so
//! `e_i A e_j` is spanned by paths from `i` to `j`.

use std::collections::{BTreeMap, HashMap};

use super::{Algebra, Product, Table};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{unit_vector, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

/// A path as a start vertex and a sequence of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A linear combination of parallel paths, each given by arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Quiver {
    /// Vertices are `0..vertices`.
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::Precondition(format!("arrow `{}` has an unknown endpoint", a.name)));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Precondition(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Endpoints of a nonempty arrow word, or `None` if it does not compose.
    pub fn word_endpoints(&self, word: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*word.first()?)?;
        let mut at = first.target;
        for &a in &word[1..] {
            let arr = self.arrows.get(a)?;
            if arr.source != at {
                return None;
            }
            at = arr.target;
        }
        Some((first.source, at))
    }

    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices, arrows }
    }

    fn end(&self, p: &Path) -> usize {
        p.arrows.last().map_or(p.start, |&a| self.arrows[a].target)
    }

    fn label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", p.start + 1)
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    /// All paths of length `<= max_len`.
    fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> =
            (0..self.vertices).map(|v| Path { start: v, arrows: Vec::new() }).collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                let end = self.end(p);
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == end {
                        let mut q = p.clone();
                        q.arrows.push(ai);
                        next.push(q);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn validate_relation(&self, r: &Relation) -> Result<(usize, usize)> {
        let mut ends = None;
        if r.terms.is_empty() {
            return Err(Error::Precondition("empty relation".into()));
        }
        for (_, w) in &r.terms {
            if w.len() < 2 {
                return Err(Error::Precondition(
                    "relation terms must be paths of length at least 2".into(),
                ));
            }
            let e = self
                .word_endpoints(w)
                .ok_or_else(|| Error::Precondition("relation path does not compose".into()))?;
            match ends {
                None => ends = Some(e),
                Some(x) if x != e => {
                    return Err(Error::Precondition("relation paths are not parallel".into()))
                }
                _ => {}
            }
        }
        Ok(ends.unwrap())
    }
}

impl Algebra {
    /// Builds `kQ/I` from a quiver, relations and a nilpotency bound: every
    /// path of length `bound` must vanish modulo the relations.
    pub fn from_quiver(
        field: Field,
        quiver: Quiver,
        relations: &[Relation],
        bound: usize,
    ) -> Result<Algebra> {
        if bound == 0 {
            return Err(Error::Precondition("nilpotency bound must be positive".into()));
        }
        let mut ends = Vec::new();
        for r in relations {
            ends.push(quiver.validate_relation(r)?);
        }
        let mut paths = quiver.paths_up_to(bound);
        // Longer paths first, then lexicographically larger: pivots of the
        // reduced ideal basis are then leading terms.
        paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
        let col: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = paths.len();

        let mut gens: Vec<Vector> = Vec::new();
        for (r, &(s, t)) in relations.iter().zip(&ends) {
            let min_len = r.terms.iter().map(|(_, w)| w.len()).min().unwrap();
            for p in paths.iter().filter(|p| quiver.end(p) == s && p.len() + min_len <= bound) {
                for q in paths
                    .iter()
                    .filter(|q| q.start == t && p.len() + min_len + q.len() <= bound)
                {
                    let mut v = vec![field.zero(); n];
                    for (c, w) in &r.terms {
                        let mut arrows = p.arrows.clone();
                        arrows.extend_from_slice(w);
                        arrows.extend_from_slice(&q.arrows);
                        if arrows.len() > bound {
                            continue;
                        }
                        let start = if p.is_empty() { s } else { p.start };
                        let i = col[&Path { start, arrows }];
                        v[i] = &v[i] + c;
                    }
                    gens.push(v);
                }
            }
        }
        let ideal = Subspace::span(field, n, &gens);

        for p in paths.iter().filter(|p| p.len() == bound) {
            if !ideal.contains(&unit_vector(field, n, col[p])) {
                return Err(Error::NotNilpotent(bound));
            }
        }

        let pivot: Vec<bool> = {
            let mut v = vec![false; n];
            for &c in ideal.pivots() {
                v[c] = true;
            }
            v
        };
        let mut basis: Vec<Path> =
            paths.iter().filter(|p| p.len() < bound && !pivot[col[p]]).cloned().collect();
        basis.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.arrows.cmp(&b.arrows)).then(a.start.cmp(&b.start)));
        let index: BTreeMap<usize, usize> =
            basis.iter().enumerate().map(|(i, p)| (col[p], i)).collect();
        let dim = basis.len();

        let normal_form = |p: &Path| -> Product {
            if p.len() >= bound {
                return Vec::new();
            }
            let r = ideal.reduce(&unit_vector(field, n, col[p]));
            let mut out = Vec::new();
            for (c, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    out.push((index[&c], x.clone()));
                }
            }
            out.sort_by_key(|(i, _)| *i);
            out
        };

        let mut mult = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                if quiver.end(a) != b.start {
                    mult.push(Vec::new());
                    continue;
                }
                let mut arrows = a.arrows.clone();
                arrows.extend_from_slice(&b.arrows);
                mult.push(normal_form(&Path { start: a.start, arrows }));
            }
        }
        let vertex_idem: Vec<usize> = (0..quiver.vertices())
            .map(|v| basis.iter().position(|p| p.is_empty() && p.start == v).unwrap())
            .collect();
        let mut unit = vec![field.zero(); dim];
        for &i in &vertex_idem {
            unit[i] = field.one();
        }
        let labels = basis.iter().map(|p| quiver.label(p)).collect();
        let left = basis.iter().map(|p| p.start).collect();
        let right = basis.iter().map(|p| quiver.end(p)).collect();
        let table = Table::new(field, dim, mult, unit);
        Ok(Algebra::from_table(table, labels, left, right, vertex_idem)?.with_quiver(quiver))
    }

    /// The element given by an arrow word (empty word not allowed).
    pub fn path_element(&self, word: &[usize]) -> Result<Vector> {
        let q = self.quiver().ok_or_else(|| Error::Precondition("algebra has no quiver".into()))?;
        q.word_endpoints(word)
            .ok_or_else(|| Error::Precondition("path does not compose".into()))?;
        let mut x: Option<Vector> = None;
        for &a in word {
            let b = self
                .label_index(&q.arrows()[a].name)
                .map(|i| self.basis_vector(i))
                .unwrap_or_else(|| self.zero());
            x = Some(match x {
                None => b,
                Some(y) => self.mul(&y, &b),
            });
        }
        Ok(x.unwrap())
    }
}
