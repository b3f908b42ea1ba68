//! Mapping cones.
//!
//! `cone(f: X → Y)^i = Y^i ⊕ X^{i+1}` with `d = [[-d_Y, f], [0, d_X]]`. For a
//! map `e: A → P'` between a stalk and a 2-term complex this gives the
//! presentation `(-p' e): P'^{-1} ⊕ A → P'^0`.

use super::{AMatrix, ChainMap, ProjComplex};

#[derive(Clone, Debug)]
pub struct Triangle {
    pub x: ProjComplex,
    pub y: ProjComplex,
    pub cone: ProjComplex,
    pub f: ChainMap,
    /// `Y → cone`
    pub incl: ChainMap,
    /// `cone → X[1]`
    pub proj: ChainMap,
}

fn sign(alg: &crate::algebra::Algebra, odd: bool) -> crate::field::Scalar {
    if odd {
        -alg.field().one()
    } else {
        alg.field().one()
    }
}

pub fn cone(f: &ChainMap, x: &ProjComplex, y: &ProjComplex) -> Triangle {
    let alg = x.algebra();
    let bounds: Vec<(i32, i32)> =
        [x.shift(1).support(), y.support()].into_iter().flatten().collect();
    let (lo, hi) = if bounds.is_empty() {
        (0, -1)
    } else {
        (bounds.iter().map(|b| b.0).min().unwrap(), bounds.iter().map(|b| b.1).max().unwrap())
    };
    let term = |i: i32| -> Vec<usize> { y.term(i).iter().chain(x.term(i + 1)).copied().collect() };
    let terms: Vec<Vec<usize>> = (lo..=hi).map(term).collect();
    let diffs: Vec<AMatrix> = (lo..hi)
        .map(|i| {
            AMatrix::blocks(
                alg,
                &y.diff(i).neg(),
                &f.comp(i + 1, x, y),
                &AMatrix::zero(alg, x.term(i + 2), y.term(i)),
                &x.diff(i + 1),
            )
        })
        .collect();
    let c = ProjComplex::new_unchecked(alg.clone(), lo, terms, diffs);

    let mut incl = ChainMap::zero(y, &c);
    if let Some((a, b)) = y.support() {
        for i in a..=b {
            if incl.at(i).is_none() {
                continue;
            }
            let ny = y.term(i).len();
            let mut m = AMatrix::zero(alg, c.term(i), y.term(i));
            let s = sign(alg, i.rem_euclid(2) == 1);
            for k in 0..ny {
                m.set(k, k, alg.idempotent(y.term(i)[k]).iter().map(|v| v * &s).collect());
            }
            incl.set(i, m);
        }
    }
    let x1 = x.shift(1);
    let mut proj = ChainMap::zero(&c, &x1);
    if let Some((a, b)) = x1.support() {
        for i in a..=b {
            if proj.at(i).is_none() {
                continue;
            }
            let ny = y.term(i).len();
            let mut m = AMatrix::zero(alg, x1.term(i), c.term(i));
            let s = sign(alg, (i + 1).rem_euclid(2) == 1);
            for (k, &v) in x1.term(i).iter().enumerate() {
                m.set(k, ny + k, alg.idempotent(v).iter().map(|e| e * &s).collect());
            }
            proj.set(i, m);
        }
    }
    Triangle { x: x.clone(), y: y.clone(), cone: c, f: f.clone(), incl, proj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Arrow, Quiver};
    use crate::field::Field;
    use std::sync::Arc;

    fn a2() -> Arc<Algebra> {
        let q = Quiver::new(2, vec![Arrow { name: "a".into(), source: 0, target: 1 }]).unwrap();
        Arc::new(Algebra::from_quiver(Field::default(), q, &[], 2).unwrap())
    }

    #[test]
    fn cone_maps_are_chain_maps() {
        let alg = a2();
        let a = alg.path_element(&[0]).unwrap();
        let x = ProjComplex::stalk(&alg, &[1], 0);
        let y = ProjComplex::stalk(&alg, &[0], 0);
        let mut m = AMatrix::zero(&alg, &[0], &[1]);
        m.set(0, 0, a);
        let f = ChainMap::from_components(&x, &y, &[(0, m)]);
        assert!(f.is_chain_map(&x, &y));
        let t = cone(&f, &x, &y);
        t.cone.check_square_zero().unwrap();
        assert_eq!(t.cone.support(), Some((-1, 0)));
        assert!(t.incl.is_chain_map(&y, &t.cone));
        assert!(t.proj.is_chain_map(&t.cone, &x.shift(1)));
        // consecutive maps compose to zero up to homotopy
        let h = crate::complex::HomSpace::new(&x, &t.cone).unwrap();
        assert!(h.is_null_homotopic(&f.then(&t.incl, &x, &y, &t.cone)));
        let h = crate::complex::HomSpace::new(&y, &x.shift(1)).unwrap();
        assert!(h.is_null_homotopic(&t.incl.then(&t.proj, &y, &t.cone, &x.shift(1))));
    }
}
