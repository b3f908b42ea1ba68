use silt::fixtures;
use silt::module::{ar_sequence, decompose, ext_dim, is_hereditary, is_isomorphic, tau, tau_inverse, Module};

#[test]
fn a2_auslander_reiten() {
    let alg = fixtures::fixture("a2_tilt").unwrap().algebra(None).unwrap();
    let s1 = Module::simple(&alg, 0);
    let s2 = Module::simple(&alg, 1);
    let p1 = Module::projective(&alg, 0);
    assert!(is_isomorphic(&tau(&s1).unwrap(), &s2).unwrap());
    assert!(is_isomorphic(&tau_inverse(&s2).unwrap(), &s1).unwrap());
    assert!(tau(&p1).unwrap().is_zero());
    let seq = ar_sequence(&s1).unwrap();
    seq.verify().unwrap();
    assert_eq!(seq.dims(), (1, 2, 1));
    assert!(!seq.is_split());
    assert!(is_isomorphic(&seq.y, &p1).unwrap());
    assert_eq!(ext_dim(&s1, &s2, 1).unwrap(), 1);
    assert_eq!(ext_dim(&s2, &s1, 1).unwrap(), 0);
    assert!(is_hereditary(&alg).unwrap());
}

#[test]
fn nakayama2_is_not_hereditary() {
    let alg = fixtures::fixture("nakayama2").unwrap().algebra(None).unwrap();
    assert!(!is_hereditary(&alg).unwrap());
    for v in 0..2 {
        let p = Module::projective(&alg, v);
        assert_eq!(p.dim(), 3);
        assert_eq!(decompose(&p).unwrap().summands.len(), 1);
        // self-injective: projectives are injective
        let i = Module::injective(&alg, 1 - v);
        assert!(is_isomorphic(&p, &i).unwrap() || is_isomorphic(&p, &Module::injective(&alg, v)).unwrap());
    }
}

#[test]
fn a3_ar_sequences_have_indecomposable_ends() {
    let alg = fixtures::fixture("a3_silt").unwrap().algebra(None).unwrap();
    for v in 0..3 {
        let s = Module::simple(&alg, v);
        let t = tau(&s).unwrap();
        if t.is_zero() {
            continue;
        }
        let seq = ar_sequence(&s).unwrap();
        seq.verify().unwrap();
        assert!(!seq.is_split());
        assert!(is_isomorphic(&seq.x, &t).unwrap());
    }
}
