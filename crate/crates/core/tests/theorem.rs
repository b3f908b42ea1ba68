use std::sync::Arc;

use silt::complex::{is_presilting, AMatrix, ChainMap, ProjComplex};
use silt::fixtures;
use silt::format::parse_element;
use silt::module::{is_isomorphic, Module};
use silt::report::Status;
use silt::theorem::{module_battery, verify_theorem, BatteryOptions, SiltingContext, TorsionPair};

fn ctx(name: &str) -> SiltingContext {
    let (_, c) = fixtures::load(name, None).unwrap();
    SiltingContext::new(&c.summands).unwrap()
}

#[test]
fn nakayama_triangle_shape() {
    let c = ctx("nakayama2");
    let mut p1 = c.delta.left.parts.clone();
    p1.sort();
    assert_eq!(p1, vec![0, 0]);
    assert_eq!(c.delta.p2.parts, vec![1]);
    assert_eq!(c.b().dim(), 6);
    assert!(c.kernel.is_zero());
    assert!(c.factor_kernel.is_zero());
    assert!(c.is_tilting());
}

// a = 0, b = 0 and c = βα on P2 in degree -1 commute with the triangle, but
// (b, c) is not null-homotopic on Q, so it is not Φ(0).
#[test]
fn commuting_diagram_does_not_determine_phi() {
    let c = ctx("nakayama2");
    let alg = c.alg.clone();
    let ba = parse_element(&alg, "beta.alpha", 0).unwrap();
    assert!(!silt::linalg::is_zero_vector(&ba));
    let summand = &c.endo.summands[1];
    let p2 = summand.term(-1).to_vec();
    let mut m = AMatrix::zero(&alg, &p2, &p2);
    m.set(0, 0, ba);
    let cmap = ChainMap::from_components(summand, summand, &[(-1, m)]);
    assert!(cmap.is_chain_map(summand, summand));
    // c commutes with f and g up to homotopy because b = 0 and a = 0
    let sum = &c.delta.p2.sum;
    let c_sum = ChainMap::from_components(sum, sum, &[(-1, cmap.comp(-1, summand, summand))]);
    let m0 = c.endo.b_matrix(&c.delta.p2.parts, &c.delta.p2.parts, &c_sum);
    let phi = ChainMap::from_components(&c.q, &c.q, &[(0, m0)]);
    assert!(phi.is_chain_map(&c.q, &c.q));
    assert!(!c.q_end.is_null_homotopic(&phi));
    assert!(c.q_end.is_null_homotopic(&c.phi(&alg.zero())));
}

#[test]
fn tilting_phi_is_isomorphism() {
    let c = ctx("a2_tilt");
    assert!(c.kernel.is_zero());
    assert_eq!(c.phi_matrix.rank(), c.alg.dim());
    assert_eq!(c.q_end.dim(), c.alg.dim());
}

#[test]
fn silting_kernel_is_spanned_by_b_and_ab() {
    // b: P3 → P2 is the map P → P[-1]; composing with a: P2 → P1 gives ab
    let c = ctx("a3_silt");
    assert!(!c.is_tilting());
    assert_eq!(c.kernel.dim(), 2);
    for w in ["b", "a.b"] {
        assert!(c.kernel.contains(&parse_element(&c.alg, w, 0).unwrap()), "{w}");
    }
    assert!(!c.kernel.contains(&parse_element(&c.alg, "a", 0).unwrap()));
    assert!(c.kernel.same_as(&c.factor_kernel));
    assert_eq!(c.quotient_dim(), 4);
    assert_eq!(c.q_end.dim(), 4);
    let v = is_presilting(&c.q).unwrap();
    assert!(v.silting && v.two_term);
    assert_eq!(v.classes, 3);
}

#[test]
fn phi_is_multiplicative_on_basis() {
    for name in ["nakayama2", "a2_tilt", "a3_silt"] {
        let c = ctx(name);
        let alg = &c.alg;
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                let xy = alg.mul(&alg.basis_vector(x), &alg.basis_vector(y));
                let comp = c.phi_basis[y].then(&c.phi_basis[x], &c.q, &c.q, &c.q);
                assert_eq!(c.q_end.class(&comp), c.phi_class(&xy), "{name}");
            }
        }
        let id = c.q_end.class(&ChainMap::identity(&c.q));
        assert_eq!(c.phi_class(&alg.one()), id, "{name}");
    }
}

#[test]
fn a2_battery_is_complete() {
    let (alg, _) = fixtures::load("a2_tilt", None).unwrap();
    let b = module_battery(&alg, &[], &BatteryOptions::default()).unwrap();
    assert_eq!(b.len(), 3);
    assert!(b.complete);
}

#[test]
fn a3_battery_is_complete() {
    let (alg, _) = fixtures::load("a3_silt", None).unwrap();
    let b = module_battery(&alg, &[], &BatteryOptions::default()).unwrap();
    assert_eq!(b.len(), 6);
    assert!(b.complete);
}

#[test]
fn a2_torsion_memberships() {
    let c = ctx("a2_tilt");
    let tp = TorsionPair::new(c.p()).unwrap();
    let alg = &c.alg;
    let s1 = Module::simple(alg, 0);
    let s2 = Module::simple(alg, 1);
    let p1 = Module::projective(alg, 0);
    let t: Vec<bool> = [&s1, &s2, &p1].iter().map(|m| tp.in_torsion(m).unwrap()).collect();
    let f: Vec<bool> = [&s1, &s2, &p1].iter().map(|m| tp.in_free(m).unwrap()).collect();
    // each module lies in exactly one class for a tilting module over a hereditary algebra
    for i in 0..3 {
        assert!(t[i] ^ f[i], "module {i}: T={} F={}", t[i], f[i]);
    }
}

fn trivial_case(shift: i32) {
    let (alg, _) = fixtures::load("a3_silt", None).unwrap();
    let parts: Vec<ProjComplex> =
        (0..alg.n_vertices()).map(|v| ProjComplex::stalk(&alg, &[v], -shift)).collect();
    let c = SiltingContext::new(&parts).unwrap();
    assert!(c.b().table().is_associative());
    assert_eq!(c.b().dim(), alg.dim());
    assert!(c.kernel.is_zero());
    let tp = TorsionPair::new(c.p()).unwrap();
    let battery = module_battery(&alg, &[], &BatteryOptions::default()).unwrap();
    for m in &battery.modules {
        assert_eq!(tp.in_torsion(m).unwrap(), shift == 0);
        assert_eq!(tp.in_free(m).unwrap(), shift == 1);
    }
}

#[test]
fn regular_complex_gives_everything_torsion() {
    trivial_case(0);
}

#[test]
fn shifted_regular_complex_gives_everything_free() {
    trivial_case(1);
}

#[test]
fn round_trips_on_a3() {
    let c = ctx("a3_silt");
    let tp = TorsionPair::new(c.p()).unwrap();
    let battery = module_battery(&c.alg, &[], &BatteryOptions::default()).unwrap();
    for m in &battery.modules {
        if tp.in_torsion(m).unwrap() {
            let y = c.hom_p_module(m, 0).unwrap();
            let back = c.q_hom_module(&y.module, 1).unwrap();
            assert!(is_isomorphic(&back.module, m).unwrap());
        }
        if tp.in_free(m).unwrap() {
            let y = c.hom_p_module(m, 1).unwrap();
            let back = c.q_hom_module(&y.module, 0).unwrap();
            assert!(is_isomorphic(&back.module, m).unwrap());
        }
    }
}

fn full_verification(name: &str) {
    let c = ctx(name);
    let opts = BatteryOptions::default();
    let tp = TorsionPair::new(c.p()).unwrap();
    let a_bat = module_battery(&c.alg, &[tp.h0.clone(), tp.h1_nu.clone()], &opts).unwrap();
    let b: Arc<_> = c.b().clone();
    let b_bat = module_battery(&b, &[], &opts).unwrap();
    let checks = verify_theorem(&c, &a_bat, &b_bat).unwrap();
    let fails: Vec<_> = checks.iter().filter(|k| k.status == Status::Fail).collect();
    assert!(fails.is_empty(), "{name}: {fails:#?}");
    assert!(checks.len() > 20);
}

#[test]
fn verify_nakayama2() {
    full_verification("nakayama2");
}

#[test]
fn verify_a2_tilt() {
    full_verification("a2_tilt");
}

#[test]
fn verify_a3_silt() {
    full_verification("a3_silt");
}
