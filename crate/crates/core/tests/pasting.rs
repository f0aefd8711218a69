use std::collections::BTreeMap;

use distlaw::distlaw::{extend_to_kleisli, monoidal_to_algebra};
use distlaw::monad::Base;
use distlaw::pasting::builders::*;
use distlaw::pasting::degenerate::evaluate_path;
use distlaw::pasting::sample::interchange_pair;
use distlaw::pasting::*;
use distlaw::registry::{RegisteredLaw, Registry};
use distlaw::{Error, FinSet, NatTrans, TestUniverse};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::builtin()
}

fn exc_pow() -> Interpretation {
    Interpretation::from_registry(&Registry::builtin(), "exception-over-powerset").unwrap()
}

fn path(s: &str) -> Path {
    parse_path(s, &sig()).unwrap()
}

#[test]
fn bundled_signature_declares_every_axiom() {
    let s = sig();
    let names = s.axiom_names();
    let want: Vec<String> = (1..=10)
        .map(|i| format!("W{i}"))
        .chain(["D1", "D2", "M1", "M2", "I1", "I2"].map(String::from))
        .collect();
    assert_eq!(names, want);
    for a in &s.axioms {
        assert_eq!(
            boundary(&a.lhs, &s).unwrap(),
            boundary(&a.rhs, &s).unwrap(),
            "{}",
            a.name
        );
    }
}

#[test]
fn printed_signature_reads_back() {
    let s = sig();
    let again = Signature::parse(&s.to_text()).unwrap();
    assert_eq!(s.cells, again.cells);
    for (a, b) in s.axioms.iter().zip(&again.axioms) {
        assert_eq!(
            normalize(&a.lhs, &s).unwrap(),
            normalize(&b.lhs, &again).unwrap()
        );
        assert_eq!(
            normalize(&a.rhs, &s).unwrap(),
            normalize(&b.rhs, &again).unwrap()
        );
    }
}

#[test]
fn identity_cell_boundary() {
    let p = path("[T . u . epsilon] ; [epsilon . m . epsilon]");
    assert_eq!(
        boundary(&PastingTerm::Id(p.clone()), &sig()).unwrap(),
        (p.clone(), p)
    );
}

#[test]
fn decagon_boundary_runs_through_the_expected_words() {
    let s = sig();
    let (top, bottom) = boundary(&PastingTerm::cell("Omega"), &s).unwrap();
    let words = |p: &Path| {
        (0..=p.len())
            .map(|k| p.word_at(k).to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(
        words(&top),
        ["T P T P T", "T P P T T", "T P P T", "T P T", "P T T", "P T"]
    );
    assert_eq!(
        words(&bottom),
        [
            "T P T P T",
            "P T T P T",
            "P T P T",
            "P P T T",
            "P P T",
            "P T"
        ]
    );
}

#[test]
fn builders_fill_the_declared_boundaries() {
    let s = sig();
    let omega = boundary(&PastingTerm::cell("Omega"), &s).unwrap();
    assert_eq!(
        boundary(&build_omega_from_pentagons(&s).unwrap(), &s).unwrap(),
        omega
    );
    let (w4, w3) = build_pentagons_from_omega(&s).unwrap();
    assert_eq!(
        boundary(&w4, &s).unwrap(),
        boundary(&PastingTerm::cell("omega4"), &s).unwrap()
    );
    assert_eq!(
        boundary(&w3, &s).unwrap(),
        boundary(&PastingTerm::cell("omega3"), &s).unwrap()
    );
    let (phi, theta, delta) = build_kleisli_extension_cells(&s).unwrap();
    for (t, n) in [
        (phi, "phi"),
        (theta.clone(), "theta"),
        (delta, "delta"),
        (build_h(&s).unwrap(), "H"),
    ] {
        assert_eq!(
            boundary(&t, &s).unwrap(),
            boundary(&PastingTerm::cell(n), &s).unwrap(),
            "{n}"
        );
    }
    let (_, theta_tgt) = boundary(&theta, &s).unwrap();
    assert_eq!(theta_tgt.to_string(), "[epsilon . eta . T A]");
    let (_, _, big) = build_algebra_cells(&s).unwrap();
    assert_eq!(boundary(&big, &s).unwrap(), omega);
}

#[test]
fn builders_evaluate_degenerately() {
    let s = sig();
    let u = TestUniverse::sizes(2);
    for interp in [exc_pow(), Interpretation::identity()] {
        for c in constructions(&s).unwrap() {
            let r = check_term_degenerate(&s, &c.cell, &c.term, &interp, &u).unwrap();
            assert!(
                r.passed(),
                "{} under {}: {}",
                c.cell,
                interp.name,
                r.summary()
            );
        }
    }
}

#[test]
fn identity_interpretation_makes_boundaries_identities() {
    let s = sig();
    let id = Interpretation::identity();
    let x = FinSet::canonical(2);
    for c in constructions(&s).unwrap() {
        if c.src.start().symbols().any(|w| s.is_object(w)) {
            continue;
        }
        for p in [&c.src, &c.tgt] {
            let t = evaluate_path(&s, p, &id, &BTreeMap::new(), &BTreeMap::new()).unwrap();
            let table = t.component(&x).unwrap();
            assert!(
                table.dom().iter().all(|e| table.apply(e).unwrap() == *e),
                "{}",
                c.cell
            );
        }
    }
}

#[test]
fn delta_matches_kleisli_extension_of_composites() {
    let s = sig();
    let d = match Registry::builtin().law("exception-over-powerset").unwrap() {
        RegisteredLaw::Dist(d) => d,
        _ => unreachable!(),
    };
    let u = TestUniverse::sizes(2);
    let k = extend_to_kleisli(&monoidal_to_algebra(&d), &u).unwrap();
    let interp = Interpretation::from_law(&d);
    let delta = s.cell("delta").unwrap().clone();
    let (x, y, z) = (
        FinSet::canonical(1),
        FinSet::canonical(2),
        FinSet::canonical(1),
    );
    let (ty, tz) = ((k.obj)(&y), (k.obj)(&z));
    let (fs, _) = u.functions(&x, &k.base.hom_cod(&ty));
    let (gs, _) = u.functions(&y, &k.base.hom_cod(&tz));
    let mut checked = 0;
    for f in &fs {
        for g in &gs {
            let gt = (k.ext)(&z, g).unwrap();
            let lhs = (k.ext)(&z, &k.base.compose(&gt, f, &tz).unwrap()).unwrap();
            let rhs = k.base.compose(&gt, &(k.ext)(&y, f).unwrap(), &tz).unwrap();
            let objects = BTreeMap::from([
                ("A".into(), x.clone()),
                ("B".into(), y.clone()),
                ("C".into(), z.clone()),
            ]);
            let arrows = BTreeMap::from([("f".into(), f.clone()), ("g".into(), g.clone())]);
            let none = FinSet::empty();
            let top = evaluate_path(&s, &delta.src, &interp, &objects, &arrows)
                .unwrap()
                .component(&none)
                .unwrap();
            let bottom = evaluate_path(&s, &delta.tgt, &interp, &objects, &arrows)
                .unwrap()
                .component(&none)
                .unwrap();
            for e in lhs.dom().iter() {
                assert_eq!(top.apply(e).unwrap(), lhs.apply(e).unwrap());
                assert_eq!(bottom.apply(e).unwrap(), rhs.apply(e).unwrap());
            }
            checked += 1;
        }
    }
    assert_eq!(checked, fs.len() * gs.len());
    assert!(matches!(k.base, Base::Kleisli(_)));
}

#[test]
fn unit_erasure_and_generators() {
    let s = sig();
    let c = s.cell("omega1").unwrap();
    let t = PastingTerm::vcomp(PastingTerm::Id(c.src.clone()), PastingTerm::cell("omega1"));
    let n = normalize(&t, &s).unwrap();
    assert_eq!(n.steps.len(), 1);
    assert_eq!(n.steps[0].name, "omega1");
    assert_eq!(
        normalize(&PastingTerm::cell("Omega"), &s)
            .unwrap()
            .steps
            .len(),
        1
    );
}

#[test]
fn independent_atoms_commute() {
    let s = sig();
    // omega2 followed along the path by an inserted P tr.
    let a = PastingTerm::cell("omega2");
    let b = PastingTerm::whisker(Word::parse("P"), PastingTerm::inverse("tr"), Word::empty());
    let (asrc, atgt) = boundary(&a, &s).unwrap();
    let (bsrc, btgt) = boundary(&b, &s).unwrap();
    let first = PastingTerm::vcomp(
        PastingTerm::hcomp(a.clone(), PastingTerm::Id(bsrc.clone())),
        PastingTerm::hcomp(PastingTerm::Id(atgt.clone()), b.clone()),
    );
    let second = PastingTerm::vcomp(
        PastingTerm::hcomp(PastingTerm::Id(asrc), b),
        PastingTerm::hcomp(a, PastingTerm::Id(btgt)),
    );
    assert_eq!(
        normalize(&first, &s).unwrap(),
        normalize(&second, &s).unwrap()
    );
}

#[test]
fn junction_errors_name_both_paths() {
    let s = sig();
    let t = PastingTerm::vcomp(PastingTerm::cell("omega1"), PastingTerm::cell("omega2"));
    match boundary(&t, &s) {
        Err(Error::Boundary(m)) => {
            assert!(m.contains("vertical junction"), "{m}");
            assert!(m.contains("[P . u . epsilon]"), "{m}");
        }
        other => panic!("expected a boundary error, got {other:?}"),
    }
}

#[test]
fn parse_errors_carry_lines() {
    let text = "(signature x 1)\n(functors T)\n(arrow u epsilon -> Q)\n";
    match Signature::parse(text) {
        Err(Error::Parse { line, message }) => {
            assert_eq!(line, 3);
            assert!(message.contains('Q'), "{message}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn unparallel_axiom_is_rejected() {
    let text = format!(
        "{}\n(axiom bad (cell omega1) (cell omega2))\n",
        Signature::builtin_text()
    );
    assert!(matches!(Signature::parse(&text), Err(Error::Parse { .. })));
}

#[test]
fn missing_symbol_is_an_interpretation_error() {
    let s = sig();
    let mut i = exc_pow();
    i.arrows.remove("lambda");
    match check_axiom_degenerate(&s, "W1", &i, &TestUniverse::sizes(1)) {
        Err(Error::Interpretation(m)) => assert!(m.contains("lambda"), "{m}"),
        other => panic!(
            "expected an interpretation error, got {:?}",
            other.map(|r| r.summary())
        ),
    }
}

#[test]
fn every_axiom_holds_degenerately_under_exception_over_powerset() {
    let s = sig();
    let i = exc_pow();
    let u = TestUniverse::sizes(2);
    for name in s.axiom_names() {
        let r = check_axiom_degenerate(&s, name, &i, &u).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert!(!r.axioms.is_empty());
    }
}

#[test]
fn every_axiom_holds_under_identity() {
    let s = sig();
    for name in s.axiom_names() {
        let r = check_axiom_degenerate(
            &s,
            name,
            &Interpretation::identity(),
            &TestUniverse::sizes(2),
        )
        .unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}

#[test]
fn a_broken_lambda_is_caught() {
    let s = sig();
    let mut i = exc_pow();
    let good = i.arrows["lambda"].clone();
    // Send every element to the empty subset.
    let bad = NatTrans::point("lambda", good.src(), good.tgt(), |_| {
        Ok(distlaw::Element::subset(vec![]))
    });
    i.arrows.insert("lambda".into(), bad);
    let r = check_axiom_degenerate(&s, "W1", &i, &TestUniverse::sizes(1)).unwrap();
    assert!(!r.passed());
    assert!(r.first_failure().unwrap().witness.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn interchange_and_identities_do_not_change_the_normal_form(seed in any::<u64>()) {
        let (toy, a, b) = interchange_pair(seed);
        prop_assert_eq!(boundary(&a, &toy).unwrap(), boundary(&b, &toy).unwrap());
        prop_assert_eq!(normalize(&a, &toy).unwrap(), normalize(&b, &toy).unwrap());
    }

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let (toy, a, b) = interchange_pair(seed);
        for t in [a, b] {
            let n = normalize(&t, &toy).unwrap();
            prop_assert_eq!(normalize(&n.to_term(), &toy).unwrap(), n);
        }
    }

    #[test]
    fn printed_terms_read_back(seed in any::<u64>()) {
        let (toy, a, _) = interchange_pair(seed);
        let again = parse_term(&a.to_string(), &toy).unwrap();
        prop_assert_eq!(again, a);
    }
}

#[test]
fn axiom_normal_forms_are_idempotent() {
    let s = sig();
    for a in &s.axioms {
        for t in [&a.lhs, &a.rhs] {
            let n = normalize(t, &s).unwrap();
            assert_eq!(normalize(&n.to_term(), &s).unwrap(), n, "{}", a.name);
        }
    }
}
