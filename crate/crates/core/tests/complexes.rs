use silt::complex::{bongartz_complete, decompose_complex, is_presilting, Endo, HomSpace, ProjComplex};
use silt::fixtures;
use silt::format::parse_complex;

#[test]
fn fixture_algebra_dimensions() {
    let dims = [("nakayama2", 6), ("a2_tilt", 3), ("a3_silt", 6)];
    for (name, d) in dims {
        let (alg, _) = fixtures::load(name, None).unwrap();
        assert_eq!(alg.dim(), d, "{name}");
    }
}

#[test]
fn fixture_verdicts() {
    let expect = [("nakayama2", true, None), ("a2_tilt", true, Some(true)), ("a3_silt", true, Some(false))];
    for (name, silting, tilting) in expect {
        let (_, c) = fixtures::load(name, None).unwrap();
        let v = is_presilting(&c.total).unwrap();
        assert!(v.two_term);
        assert_eq!(v.silting, silting, "{name}");
        if let Some(t) = tilting {
            assert_eq!(v.tilting, t, "{name}");
            assert_eq!(v.tilting_witness.is_some(), !t, "{name}");
        }
        assert_eq!(v.classes, c.summands.len(), "{name}");
    }
}

#[test]
fn endomorphism_algebra_dimensions() {
    let dims = [("nakayama2", 6), ("a2_tilt", 3), ("a3_silt", 4)];
    for (name, d) in dims {
        let (_, c) = fixtures::load(name, None).unwrap();
        let e = Endo::new(c.summands.clone()).unwrap();
        assert_eq!(e.b.dim(), d, "{name}");
        assert!(e.b.table().is_associative());
    }
}

#[test]
fn regular_complex_decomposes_into_projectives() {
    for f in fixtures::FIXTURES {
        let alg = f.algebra(None).unwrap();
        let a = ProjComplex::regular(&alg);
        let dec = decompose_complex(&a).unwrap();
        assert_eq!(dec.class_count(), alg.n_vertices());
        let h = HomSpace::new(&a, &a).unwrap();
        assert_eq!(h.dim(), alg.dim());
    }
}

#[test]
fn bongartz_completes_a2_inputs() {
    let alg = fixtures::fixture("a2_tilt").unwrap().algebra(None).unwrap();
    for text in [include_str!("../fixtures/a2_p1.cpx"), include_str!("../fixtures/a2_p2_shift.cpx")] {
        let p = parse_complex(text, &alg).unwrap();
        let b = bongartz_complete(&p.total).unwrap();
        let v = is_presilting(&b.completed).unwrap();
        assert!(v.silting);
        assert_eq!(b.summands.len(), 2);
    }
}
