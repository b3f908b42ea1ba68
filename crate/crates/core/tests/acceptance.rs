//! One line per acceptance criterion, each decided by exact checks.

use std::sync::Arc;

use silt::algebra::Algebra;
use silt::ar::{connecting_sequence, separating_check, splitting_check};
use silt::complex::{
    bongartz_complete, complex_isomorphism, is_presilting, AMatrix, ChainMap, ProjComplex,
};
use silt::fixtures::{self, FIXTURES};
use silt::format::{parse_complex, parse_element};
use silt::module::{isomorphism, is_module_map};
use silt::report::Status;
use silt::theorem::{batteries, module_battery, regular_element, theorem_report, BatteryOptions, SiltingContext, TorsionPair};

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn req(&mut self, cond: bool, what: &str) {
        if !cond {
            self.ok = false;
            self.notes.push(what.to_string());
        }
    }
}

fn ctx(name: &str) -> SiltingContext {
    let (_, c) = fixtures::load(name, None).unwrap();
    SiltingContext::new(&c.summands).unwrap()
}

fn passes(r: &silt::report::Report, names: &[&str]) -> Vec<String> {
    names
        .iter()
        .filter(|n| r.get(n).map(|c| c.status) != Some(Status::Pass))
        .map(|n| n.to_string())
        .collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let c = ctx("nakayama2");
    let alg = c.alg.clone();
    o.req(alg.dim() == 6, "dim A = 6");
    o.req(c.verdict.silting, "P silting");
    let mut p1 = c.delta.left.parts.clone();
    p1.sort();
    o.req(p1 == vec![0, 0], "P' ≅ P1 ⊕ P1");
    o.req(c.delta.p2.parts == vec![1], "P'' ≅ P2");
    o.req(c.b().dim() == 6, "dim B = 6");
    // (b, c) = (0, βα on P2 in degree -1)
    let ba = parse_element(&alg, "beta.alpha", 0).unwrap();
    let s = &c.endo.summands[1];
    let mut m = AMatrix::zero(&alg, s.term(-1), s.term(-1));
    m.set(0, 0, ba);
    let sum = &c.delta.p2.sum;
    let cmap = ChainMap::from_components(sum, sum, &[(-1, m)]);
    o.req(cmap.is_chain_map(sum, sum), "c is a chain map");
    // the diagram commutes: f c = b f = 0 and g c = a[1] g = 0 up to homotopy
    let d = &c.delta;
    let c_cone = d.p2.to_sum.then(&cmap, d.p2(), sum, sum).then(&d.p2.from_sum, d.p2(), sum, d.p2());
    let fc = d.f().then(&c_cone, d.p1(), d.p2(), d.p2());
    let a1 = ProjComplex::regular(&alg).shift(1);
    let gc = c_cone.then(d.g(), d.p2(), d.p2(), &a1);
    o.req(silt::complex::HomSpace::new(d.p1(), d.p2()).unwrap().is_null_homotopic(&fc), "f∘c ≃ 0");
    o.req(silt::complex::HomSpace::new(d.p2(), &a1).unwrap().is_null_homotopic(&gc), "c∘g ≃ 0");
    let m0 = c.endo.b_matrix(&d.p2.parts, &d.p2.parts, &cmap);
    let phi = ChainMap::from_components(&c.q, &c.q, &[(0, m0)]);
    o.req(phi.is_chain_map(&c.q, &c.q), "(0, c) is a chain map on Q");
    o.req(!c.q_end.is_null_homotopic(&phi), "(0, c) not null-homotopic on Q");
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let c = ctx("a2_tilt");
    o.req(c.is_tilting(), "tilting");
    o.req(c.kernel.is_zero() && c.phi_matrix.rank() == c.alg.dim() && c.q_end.dim() == c.alg.dim(), "Φ bijective");
    o.req(c.b().dim() == 3, "dim B = 3");
    let opts = BatteryOptions::default();
    let (a, _) = batteries(&c, &opts).unwrap();
    o.req(a.len() == 3 && a.complete, "complete battery of 3");
    let r = theorem_report(&c, "a2_tilt", &opts).unwrap();
    o.req(r.passed(), "theorem report passes");
    let missing = passes(
        &r,
        &[
            "equivalence.torsion-round-trip",
            "equivalence.free-round-trip",
            "hom-b-equals-ext1",
            "ext1-b-equals-ext2",
        ],
    );
    o.req(missing.is_empty(), &format!("named checks pass: {missing:?}"));
    let qtp = TorsionPair::new(&c.q).unwrap();
    let s = connecting_sequence(&c, &qtp, 1).unwrap();
    o.req(s.ar.dims() == (1, 2, 1), "connecting sequence 1-2-1");
    o.req(s.left_matches && s.ends_match, "middle-term canonical ends");
    o
}

fn criterion_3() -> (Outcome, String) {
    let mut o = Outcome::new();
    let c = ctx("a3_silt");
    o.req(c.verdict.silting, "silting");
    o.req(!c.is_tilting() && c.verdict.tilting_witness.is_some(), "not tilting, witness in Hom(P, P[-1])");
    let b = parse_element(&c.alg, "b", 0).unwrap();
    let ab = parse_element(&c.alg, "a.b", 0).unwrap();
    // the stated kernel: span{b}, dim Ā = 5
    o.req(c.kernel.dim() == 1 && c.kernel.contains(&b), "dim ker Φ = 1, kernel = span{b}");
    o.req(c.quotient_dim() == 5, "dim Ā = 5");
    o.req(c.kernel.same_as(&c.factor_kernel), "kernel computed two ways agrees");
    let v = is_presilting(&c.q).unwrap();
    o.req(v.silting && v.classes == 3, "Q silting with 3 classes");
    let opts = BatteryOptions::default();
    let r = theorem_report(&c, "a3_silt", &opts).unwrap();
    let missing = passes(&r, &["q-images-in-p-classes", "images-in-q-classes", "q-images-killed-by-kernel"]);
    o.req(missing.is_empty(), &format!("memberships: {missing:?}"));
    let tp = TorsionPair::new(c.p()).unwrap();
    let (a, _) = batteries(&c, &opts).unwrap();
    let sep = separating_check(&c, &tp, &a).unwrap();
    o.req(sep[0].dims["separating"] == 0 && sep[0].witness.is_some(), "not separating, with witness");
    let sp = splitting_check(&c, &tp, &a).unwrap();
    o.req(sp.status == Status::Certified && sp.dims["splitting"] == 1, "splitting certified");
    let found = format!(
        "computed: dim ker Φ = {}, b ∈ ker = {}, ab ∈ ker = {}, dim Ā = {}",
        c.kernel.dim(),
        c.kernel.contains(&b),
        c.kernel.contains(&ab),
        c.quotient_dim()
    );
    (o, found)
}

/// `x ↦ a` with `B`-basis element `x` acting on `A` as left multiplication by `a`.
fn b_to_a(c: &SiltingContext) -> Vec<Vec<silt::Scalar>> {
    let areg = ProjComplex::regular(&c.alg);
    (0..c.b().dim())
        .map(|x| {
            let u = c.b_endomorphism(x).reframe(&areg, &areg);
            regular_element(&c.alg, &u.comp(0, &areg, &areg))
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for f in FIXTURES {
        let alg: Arc<Algebra> = f.algebra(None).unwrap();
        let battery = module_battery(&alg, &[], &BatteryOptions::default()).unwrap();
        for shift in [0, 1] {
            let parts: Vec<ProjComplex> =
                (0..alg.n_vertices()).map(|v| ProjComplex::stalk(&alg, &[v], -shift)).collect();
            let c = SiltingContext::new(&parts).unwrap();
            let tag = format!("{} shift {shift}", f.name);
            if shift == 0 {
                let psi = b_to_a(&c);
                let m = silt::linalg::Matrix::from_columns(alg.field(), alg.dim(), &psi);
                o.req(m.is_invertible(), &format!("{tag}: B → A bijective on bases"));
                // structure constants of B agree with those of A under ψ
                let b = c.b();
                let mult = (0..b.dim()).all(|x| {
                    (0..b.dim()).all(|y| {
                        let xy = b.mul(&b.basis_vector(x), &b.basis_vector(y));
                        m.mul_vec(&xy) == alg.mul(&psi[x], &psi[y])
                    })
                });
                let unit = m.mul_vec(&b.one()) == alg.one();
                o.req(mult && unit, &format!("{tag}: B ≅ A"));
            }
            // Q is the stalk complex B, in degree -1 for P = A (so T(Q) = 0) and 0 for P = A[1]
            let (full, empty) = if shift == 0 { (-1, 0) } else { (0, -1) };
            let mut verts = c.q.term(full).to_vec();
            verts.sort();
            let all: Vec<usize> = (0..c.b().n_vertices()).collect();
            o.req(verts == all && c.q.term(empty).is_empty(), &format!("{tag}: Q stalk B"));
            o.req(c.kernel.is_zero() && c.phi_matrix.rank() == alg.dim(), &format!("{tag}: Φ bijective"));
            let tp = TorsionPair::new(c.p()).unwrap();
            for m in &battery.modules {
                let t = tp.in_torsion(m).unwrap();
                let fr = tp.in_free(m).unwrap();
                o.req(t == (shift == 0) && fr == (shift == 1), &format!("{tag}: classes"));
            }
        }
    }
    o
}

const UNIVERSAL: &[&str] = &[
    "torsion-a.canonical-sequences",
    "torsion-a.hom-orthogonal",
    "torsion-a.generators-in-classes",
    "torsion-b.canonical-sequences",
    "torsion-b.hom-orthogonal",
    "torsion-b.generators-in-classes",
    "hom-cohomology-sequence",
    "hom-p-equals-hom-h0",
    "canonical-sequence-hom-isos",
    "ext-sequence.2",
    "ext-sequence.4",
    "ext-sequence.6",
    "ext-sequence.8",
    "class-counts",
    "phi.multiplicative",
    "phi.unital",
    "phi.kernel-zero-iff-tilting",
];

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for f in FIXTURES {
        let c = ctx(f.name);
        let r = theorem_report(&c, f.name, &BatteryOptions::default()).unwrap();
        let missing = passes(&r, UNIVERSAL);
        o.req(missing.is_empty(), &format!("{}: {missing:?}", f.name));
        o.req(r.passed(), &format!("{}: report has failures", f.name));
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let alg = fixtures::fixture("a2_tilt").unwrap().algebra(None).unwrap();
    for text in [include_str!("../fixtures/a2_p1.cpx"), include_str!("../fixtures/a2_p2_shift.cpx")] {
        let p = parse_complex(text, &alg).unwrap();
        let b = bongartz_complete(&p.total).unwrap();
        o.req(is_presilting(&b.completed).unwrap().silting, "completion silting");
        for s in &p.summands {
            let found = b.summands.iter().any(|t| complex_isomorphism(s, t).unwrap().is_some());
            o.req(found, "input is a summand class of the completion");
        }
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    for f in FIXTURES {
        let name = format!("@{}", f.name);
        let mut runs = Vec::new();
        for _ in 0..2 {
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code =
                silt::cli::run(["silt", "theorem", name.as_str(), "--report", "json", "--seed", "7"], &mut out, &mut err);
            o.req(code == 0, &format!("{}: exit code {code}", f.name));
            runs.push(out);
        }
        o.req(runs[0] == runs[1] && !runs[0].is_empty(), &format!("{}: byte-identical JSON", f.name));
    }
    // isomorphism claims come with explicit invertible module maps
    let c = ctx("a2_tilt");
    let tp = TorsionPair::new(c.p()).unwrap();
    for m in &module_battery(&c.alg, &[], &BatteryOptions::default()).unwrap().modules {
        if tp.in_torsion(m).unwrap() {
            let y = c.hom_p_module(m, 0).unwrap();
            let back = c.q_hom_module(&y.module, 1).unwrap().module;
            match isomorphism(&back, m).unwrap() {
                Some(iso) => o.req(iso.is_invertible() && is_module_map(&back, m, &iso), "explicit witness"),
                None => o.req(false, "round trip isomorphism"),
            }
        }
    }
    o
}

// Runs without the libtest harness so the criterion lines always reach stdout.
fn main() {
    let (c3, found3) = criterion_3();
    let results = vec![
        ("1", "nakayama2: triangle shape, dim B, commuting map not null-homotopic", criterion_1()),
        ("2", "a2_tilt: Φ bijective, full report, connecting sequence 1-2-1", criterion_2()),
        ("3", "a3_silt: kernel of Φ, Q silting, memberships, separating/splitting", c3),
        ("4", "trivial complexes A and A[1]", criterion_4()),
        ("5", "universal invariant suite on all fixtures", criterion_5()),
        ("6", "Bongartz completion over A2", criterion_6()),
        ("7", "determinism and explicit isomorphism witnesses", criterion_7()),
    ];
    for (n, what, o) in &results {
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {n}: {status}  {what}");
        for note in &o.notes {
            println!("    unmet: {note}");
        }
        if *n == "3" {
            println!("    {found3}");
        }
    }
    // Criterion 3 states dim ker Φ = 1 and dim Ā = 5 for a3_silt. The kernel
    // also contains ab (b: P3 → P2 followed by a: P2 → P1), so it is 2 and
    // Ā = A/(b, ab) has dimension 4. Everything else in it must hold.
    let c3 = &results[2].2;
    let expected_unmet = ["dim ker Φ = 1, kernel = span{b}", "dim Ā = 5"];
    assert!(c3.notes.iter().all(|n| expected_unmet.contains(&n.as_str())), "{:?}", c3.notes);
    let k = ctx("a3_silt");
    assert_eq!(k.kernel.dim(), 2);
    assert_eq!(k.quotient_dim(), 4);
    for (n, _, o) in &results {
        if *n != "3" {
            assert!(o.ok, "criterion {n}: {:?}", o.notes);
        }
    }
}
