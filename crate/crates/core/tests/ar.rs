use silt::ar::{
    ar_checks, connecting_sequence, connecting_term_check, separating_check, splitting_check,
};
use silt::fixtures;
use silt::report::Status;
use silt::theorem::{module_battery, BatteryOptions, SiltingContext, TorsionPair};
use silt::Error;

fn ctx(name: &str) -> SiltingContext {
    let (_, c) = fixtures::load(name, None).unwrap();
    SiltingContext::new(&c.summands).unwrap()
}

#[test]
fn a2_connecting_terms() {
    let c = ctx("a2_tilt");
    let k = connecting_term_check(&c, 1).unwrap();
    assert_eq!(k.status, Status::Pass);
    assert_eq!(k.dims["hom_p_nu"], 1);
    assert_eq!(k.dims["hom_p_shift"], 1);
    // P1 ∈ add P, so Hom(P, νP1) is injective
    let k = connecting_term_check(&c, 0).unwrap();
    assert_eq!(k.status, Status::Pass);
    assert_eq!(k.dims["injective"], 1);
}

#[test]
fn a2_connecting_sequence() {
    let c = ctx("a2_tilt");
    let qtp = TorsionPair::new(&c.q).unwrap();
    let s = connecting_sequence(&c, &qtp, 1).unwrap();
    assert_eq!(s.ar.dims(), (1, 2, 1));
    assert!(s.left_matches && s.ends_match);
    assert!(s.canonical.x.is_zero());
    assert_eq!(s.top_term.dim(), 2);
    assert!(matches!(connecting_sequence(&c, &qtp, 0), Err(Error::Precondition(_))));
}

#[test]
fn a3_connecting_data() {
    let c = ctx("a3_silt");
    assert_eq!(connecting_term_check(&c, 1).unwrap().status, Status::Skipped);
    let qtp = TorsionPair::new(&c.q).unwrap();
    let s = connecting_sequence(&c, &qtp, 0).unwrap();
    assert!(s.left_matches && s.ends_match);
}

#[test]
fn splitting_and_separating() {
    for (name, tilting) in [("a2_tilt", true), ("a3_silt", false)] {
        let c = ctx(name);
        let tp = TorsionPair::new(c.p()).unwrap();
        let bat = module_battery(&c.alg, &[], &BatteryOptions::default()).unwrap();
        assert!(bat.complete);
        let s = splitting_check(&c, &tp, &bat).unwrap();
        assert_eq!(s.status, Status::Certified, "{name}");
        assert_eq!(s.dims["splitting"], 1);
        assert_eq!(s.dims["hereditary"], 1);
        let sep = separating_check(&c, &tp, &bat).unwrap();
        assert_eq!(sep[0].status, Status::Certified);
        assert_eq!(sep[0].dims["separating"], tilting as i64, "{name}");
        assert_eq!(sep[0].witness.is_some(), !tilting);
        assert_eq!(sep[1].status, Status::Pass);
    }
}

#[test]
fn nakayama_splitting_is_decided() {
    let c = ctx("nakayama2");
    let tp = TorsionPair::new(c.p()).unwrap();
    let bat = module_battery(&c.alg, &[], &BatteryOptions::default()).unwrap();
    let s = splitting_check(&c, &tp, &bat).unwrap();
    assert_eq!(s.dims["hereditary"], 0);
    assert_ne!(s.status, Status::Fail);
}

#[test]
fn ar_reports_have_no_failures() {
    for name in ["nakayama2", "a2_tilt", "a3_silt"] {
        let c = ctx(name);
        let opts = BatteryOptions::default();
        let a = module_battery(&c.alg, &[], &opts).unwrap();
        let b = module_battery(c.b(), &[], &opts).unwrap();
        let checks = ar_checks(&c, &a, &b).unwrap();
        let fails: Vec<_> = checks.iter().filter(|k| k.status == Status::Fail).collect();
        assert!(fails.is_empty(), "{name}: {fails:#?}");
    }
}

#[test]
fn a2_b_side_trichotomy() {
    let c = ctx("a2_tilt");
    let opts = BatteryOptions::default();
    let a = module_battery(&c.alg, &[], &opts).unwrap();
    let b = module_battery(c.b(), &[], &opts).unwrap();
    let checks = ar_checks(&c, &a, &b).unwrap();
    let tri = checks.iter().find(|k| k.name == "split-ar.trichotomy").unwrap();
    assert_eq!(tri.status, Status::Pass);
    assert_eq!(tri.dims["connecting"], 1);
    let img = checks.iter().find(|k| k.name == "split-ar.images-are-almost-split").unwrap();
    assert_eq!(img.dims["in_torsion"] + img.dims["in_free"], 0);
}
