use std::sync::Arc;

use proptest::prelude::*;
use silt::complex::{complexes_isomorphic, is_presilting, HomSpace, Layout, ProjComplex};
use silt::format::{emit_complex, parse_complex};
use silt::linalg::Matrix;
use silt::{fixtures, Field};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Prime(101)), Just(Field::Rational)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rank_nullity(f in field_strategy(), rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-4i64..5, 36)) {
        let data: Vec<Vec<_>> = (0..rows).map(|r| (0..cols).map(|c| f.from_i64(seed[r * 6 + c])).collect()).collect();
        let m = Matrix::from_rows(f, data).unwrap();
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), Matrix::identity(f, rows));
        }
    }
}

fn two_term(name: &str, src: &[usize], tgt: &[usize], coeffs: &[i64]) -> ProjComplex {
    let (alg, _) = fixtures::load(name, None).unwrap();
    let layout = Layout::new(&alg, tgt, src);
    let f = alg.field();
    let v: Vec<_> = (0..layout.len()).map(|k| f.from_i64(coeffs[k % coeffs.len()])).collect();
    let d = layout.from_coords(&alg, &v);
    ProjComplex::new(Arc::clone(&alg), -1, vec![src.to_vec(), tgt.to_vec()], vec![d]).unwrap()
}

fn verts(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn emitted_complexes_parse_back(src in verts(3), tgt in verts(3), coeffs in prop::collection::vec(-3i64..4, 1..8)) {
        let x = two_term("a3_silt", &src, &tgt, &coeffs);
        prop_assume!(!x.is_zero());
        let text = emit_complex("X", std::slice::from_ref(&x));
        let back = parse_complex(&text, x.algebra()).unwrap();
        prop_assert!(complexes_isomorphic(&x, &back.total).unwrap());
        prop_assert_eq!(emit_complex("X", &back.summands), text);
    }

    #[test]
    fn shift_preserves_hom_and_verdicts(src in verts(2), tgt in verts(2), coeffs in prop::collection::vec(-3i64..4, 1..4), n in -2i32..3) {
        let x = two_term("nakayama2", &src, &tgt, &coeffs);
        let y = two_term("nakayama2", &tgt, &src, &coeffs);
        let h = HomSpace::new(&x, &y).unwrap().dim();
        prop_assert_eq!(HomSpace::new(&x.shift(n), &y.shift(n)).unwrap().dim(), h);
        let v = is_presilting(&x).unwrap();
        let w = is_presilting(&x.shift(n)).unwrap();
        prop_assert_eq!((v.presilting, v.silting, v.tilting, v.classes), (w.presilting, w.silting, w.tilting, w.classes));
    }
}
