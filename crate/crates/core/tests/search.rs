use distlaw::builtin;
use distlaw::distlaw::{check_algebra, monoidal_to_algebra, DistLawMonoidal};
use distlaw::search::*;
use distlaw::{Element, Error, FinSet, NatTrans, TestUniverse};

fn maybe_over(p: distlaw::monad::MonadMonoidal, form: TargetForm, max: usize) -> SearchSpec {
    SearchSpec::new(
        builtin::maybe(),
        p,
        form,
        TestUniverse::sizes(max),
        1_000_000,
    )
    .unwrap()
}

#[test]
fn maybe_over_identity_has_exactly_the_identity() {
    for form in [TargetForm::Monoidal, TargetForm::Decagon] {
        let spec = maybe_over(builtin::identity_monad(), form, 2);
        let r = enumerate_candidates(&spec).unwrap();
        // Π |X+1|^|X+1| over sizes 0, 1, 2: 1, 4 and 27.
        assert_eq!(r.count("raw"), Some(4 * 27));
        assert_eq!(r.survivors.len(), 1);
        let id = builtin::trivial_law(&spec.t, &spec.p).unwrap();
        assert!(r.contains(&id, &spec.universe).unwrap());
    }
}

#[test]
fn identity_over_identity_has_one_survivor() {
    let id = builtin::identity_monad();
    let spec = SearchSpec::new(
        id.clone(),
        id,
        TargetForm::Decagon,
        TestUniverse::sizes(2),
        1000,
    )
    .unwrap();
    assert_eq!(enumerate_candidates(&spec).unwrap().survivors.len(), 1);
}

#[test]
fn registered_exception_law_survives_at_size_one() {
    let spec = maybe_over(builtin::powerset(), TargetForm::Monoidal, 1);
    let r = enumerate_candidates(&spec).unwrap();
    let known = builtin::exception_dist(&spec.t, &spec.p);
    assert!(r.contains(&known, &spec.universe).unwrap());
    assert!(r.header.starts_with("evidence"));
}

#[test]
fn beck_and_decagon_survivors_coincide() {
    for (p, max) in [(builtin::identity_monad(), 2), (builtin::powerset(), 1)] {
        let a = enumerate_candidates(&maybe_over(p.clone(), TargetForm::Monoidal, max)).unwrap();
        let b = enumerate_candidates(&maybe_over(p, TargetForm::Decagon, max)).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.count("natural"), b.count("natural"));
    }
}

#[test]
fn runs_are_deterministic() {
    let spec = maybe_over(builtin::powerset(), TargetForm::Decagon, 1);
    let a = enumerate_candidates(&spec).unwrap();
    let b = enumerate_candidates(&spec).unwrap();
    assert_eq!(a.fingerprint(), b.fingerprint());
    assert_eq!(a.stages, b.stages);
}

#[test]
fn stage_counts_are_monotone() {
    let r =
        enumerate_candidates(&maybe_over(builtin::powerset(), TargetForm::Monoidal, 1)).unwrap();
    let counts: Vec<u128> = r.stages.iter().map(|s| s.count.parse().unwrap()).collect();
    assert!(counts.windows(2).all(|w| w[0] >= w[1]), "{:?}", r.stages);
    assert_eq!(*counts.last().unwrap(), r.survivors.len() as u128);
}

#[test]
fn survivors_convert_to_algebra_laws() {
    let spec = maybe_over(builtin::powerset(), TargetForm::Monoidal, 1);
    let r = enumerate_candidates(&spec).unwrap();
    for c in &r.survivors {
        let d =
            DistLawMonoidal::new("s", spec.t.clone(), spec.p.clone(), c.family.clone()).unwrap();
        let a = monoidal_to_algebra(&d);
        assert!(check_algebra(&a, &spec.universe).passed());
    }
}

#[test]
fn budget_refusal_reports_exact_count() {
    let spec = SearchSpec::new(
        builtin::maybe(),
        builtin::powerset(),
        TargetForm::Monoidal,
        TestUniverse::sizes(1),
        10,
    )
    .unwrap();
    match enumerate_candidates(&spec) {
        // |PT0|^|TP0| · |PT1|^|TP1| = 2^2 · 4^3.
        Err(Error::Budget { raw, budget }) => {
            assert_eq!(raw, "256");
            assert_eq!(budget, 10);
        }
        other => panic!("expected refusal, got {}", other.is_ok()),
    }
}

#[test]
fn refute_known_and_constant_empty() {
    let spec = maybe_over(builtin::powerset(), TargetForm::Monoidal, 2);
    let good = builtin::exception_dist(&spec.t, &spec.p);
    assert!(refute(&good, &spec).unwrap().passed());
    let (src, tgt) = spec.boundary();
    let empty = NatTrans::point("empty", src, tgt, |_| Ok(Element::subset(vec![])));
    let r = refute(&empty, &spec).unwrap();
    let first = r.first_failure().unwrap();
    assert_eq!(first.axiom, "unit-T triangle");
    assert_eq!(
        first.witness.as_ref().unwrap().object,
        FinSet::canonical(1).to_string()
    );
}

#[test]
fn refute_rejects_wrong_boundary() {
    let spec = maybe_over(builtin::powerset(), TargetForm::Monoidal, 1);
    let wrong = NatTrans::identity(&spec.t.t);
    assert!(matches!(refute(&wrong, &spec), Err(Error::Boundary(_))));
}

#[test]
fn identity_candidate_passes_for_identity_monads() {
    let id = builtin::identity_monad();
    let spec = SearchSpec::new(
        id.clone(),
        id.clone(),
        TargetForm::Algebra,
        TestUniverse::sizes(2),
        100,
    )
    .unwrap();
    let (src, _) = spec.boundary();
    assert!(refute(&NatTrans::identity(&src), &spec).unwrap().passed());
}
