use distlaw::builtin::{self, Monoid};
use distlaw::distlaw::*;
use distlaw::monad::*;
use distlaw::registry::{RegisteredLaw, Registry};
use distlaw::{Element, FinSet, NatTrans, TestUniverse};

fn exc_pow() -> DistLawMonoidal {
    match Registry::builtin().law("exception-over-powerset").unwrap() {
        RegisteredLaw::Dist(d) => d,
        _ => unreachable!(),
    }
}

fn writer_pow() -> DistLawMonoidal {
    match Registry::builtin().law("writer-over-powerset").unwrap() {
        RegisteredLaw::Dist(d) => d,
        _ => unreachable!(),
    }
}

fn coreader_pow() -> MixedLaw {
    match Registry::builtin().law("coreader-over-powerset").unwrap() {
        RegisteredLaw::Mixed(m) => m,
        _ => unreachable!(),
    }
}

fn u2() -> TestUniverse {
    TestUniverse::sizes(2)
}

fn assert_pass(r: &distlaw::LawReport) {
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn exception_law_passes_beck_and_decagon_exhaustively() {
    let d = exc_pow();
    let beck = check_beck(&d, &u2());
    let dec = check_decagon(&d, &u2());
    assert_pass(&beck);
    assert_pass(&dec);
    assert!(beck.exhaustive() && dec.exhaustive());
    assert_eq!(beck.axioms.len(), 4);
    assert_eq!(dec.axioms.len(), 3);
}

#[test]
fn exception_law_passes_algebra_noiter_and_five() {
    let d = exc_pow();
    let a = monoidal_to_algebra(&d);
    assert_pass(&check_algebra(&a, &u2()));
    assert_pass(&check_five_axiom(&a.alpha, &a.t, &a.p, &u2()));
    let n = algebra_to_noiter(&a, &u2()).unwrap();
    assert_pass(&check_noiter(&n, &u2()));
}

#[test]
fn writer_law_passes_every_form() {
    let d = writer_pow();
    let u = u2();
    assert_pass(&check_beck(&d, &u));
    assert_pass(&check_decagon(&d, &u));
    let a = monoidal_to_algebra(&d);
    assert_pass(&check_algebra(&a, &u));
    assert_pass(&check_five_axiom(&a.alpha, &a.t, &a.p, &u));
    assert_pass(&check_noiter(&algebra_to_noiter(&a, &u).unwrap(), &u));
}

#[test]
fn round_trips_are_table_identities() {
    let u = u2();
    for d in [exc_pow(), writer_pow()] {
        assert!(roundtrip_lambda(&d, &u).unwrap());
        let a = monoidal_to_algebra(&d);
        assert!(roundtrip_alpha_via_monoidal(&a, &u).unwrap());
        assert!(roundtrip_alpha_via_noiter(&a, &u).unwrap());
    }
}

#[test]
fn error_to_empty_fails_the_eta_triangle_only() {
    let d = exc_pow();
    let bad = NatTrans::point("bad", d.lambda.src(), d.lambda.tgt(), |x| match x {
        Element::Inr(_) => Ok(Element::subset(vec![])),
        Element::Inl(s) => Ok(Element::subset(
            s.as_subset()
                .unwrap()
                .iter()
                .cloned()
                .map(Element::inl)
                .collect(),
        )),
        _ => unreachable!(),
    });
    let b = DistLawMonoidal::new("bad", d.t, d.p, bad).unwrap();
    let beck = check_beck(&b, &u2());
    // λ ∘ uP never reaches inr, so only λ ∘ Tη = ηT sees the change.
    assert!(beck.verdict("unit-T triangle").unwrap().pass);
    let v = beck.verdict("unit-P triangle").unwrap();
    assert!(!v.pass);
    let w = v.witness.as_ref().unwrap();
    assert_eq!(w.object, "{}");
    assert_eq!(w.element, "inr(e)");
    assert!(!check_decagon(&b, &u2()).passed());
}

#[test]
fn trivial_laws_pass() {
    let u = u2();
    let id = builtin::identity_monad();
    for (t, p) in [
        (id.clone(), id.clone()),
        (builtin::maybe(), id.clone()),
        (id.clone(), builtin::powerset()),
    ] {
        let l = builtin::trivial_law(&t, &p).unwrap();
        let d = DistLawMonoidal::new("trivial", t, p, l).unwrap();
        assert_pass(&check_beck(&d, &u));
        assert_pass(&check_decagon(&d, &u));
        let a = monoidal_to_algebra(&d);
        assert_pass(&check_algebra(&a, &u));
        assert_pass(&check_five_axiom(&a.alpha, &a.t, &a.p, &u));
    }
}

#[test]
fn p_identity_gives_alpha_equal_to_m() {
    let t = builtin::maybe();
    let id = builtin::identity_monad();
    let d = DistLawMonoidal::new(
        "t",
        t.clone(),
        id.clone(),
        builtin::trivial_law(&t, &id).unwrap(),
    )
    .unwrap();
    let a = monoidal_to_algebra(&d);
    assert!(same_tables(&a.alpha, &t.mult, &u2()).unwrap());
}

#[test]
fn alpha_with_spurious_error_fails_eta_square() {
    let a = monoidal_to_algebra(&exc_pow());
    let inner = a.alpha.clone();
    let broken = NatTrans::point("broken", a.alpha.src(), a.alpha.tgt(), move |x| {
        let mut xs = inner
            .apply(&distlaw::Ctx::at(&FinSet::empty()), x)?
            .as_subset()
            .unwrap()
            .to_vec();
        xs.push(Element::inr(Element::atom("e")));
        Ok(Element::subset(xs))
    });
    let b = DistLawAlgebra::new("broken", a.t.clone(), a.p.clone(), broken).unwrap();
    let r = check_algebra(&b, &u2());
    assert!(!r.verdict("eta square").unwrap().pass, "{}", r.summary());
}

#[test]
fn broken_op_fails_first_axiom() {
    let d = exc_pow();
    let a = monoidal_to_algebra(&d);
    let mut n = algebra_to_noiter(&a, &u2()).unwrap();
    let good = n.op.clone();
    n.op = std::sync::Arc::new(move |y, f| {
        let g = good(y, f)?;
        match g.dom().elements().first() {
            None => Ok(g),
            Some(first) => {
                let v = g.apply(first)?;
                distlaw::FinFn::from_fn(g.dom().clone(), g.cod().clone(), |_| Ok(v.clone()))
            }
        }
    });
    let r = check_noiter(&n, &u2());
    assert!(!r.verdict("op after unit").unwrap().pass);
    assert!(noiter_to_algebra(&n, &u2()).is_err());
}

#[test]
fn composite_monad_passes_monad_laws() {
    let u = u2();
    for d in [exc_pow(), writer_pow()] {
        let a = monoidal_to_algebra(&d);
        let c = compose_monads(&a, &u).unwrap();
        assert_pass(&check_monad_monoidal(&c, &u));
    }
}

#[test]
fn composite_with_identity_factor_is_the_other_factor() {
    let u = u2();
    let id = builtin::identity_monad();
    let p = builtin::powerset();
    let d = DistLawMonoidal::new(
        "t",
        id.clone(),
        p.clone(),
        builtin::trivial_law(&id, &p).unwrap(),
    )
    .unwrap();
    let c = compose_monads(&monoidal_to_algebra(&d), &u).unwrap();
    assert!(same_tables(&c.mult, &p.mult, &u).unwrap());
    assert!(same_tables(&c.unit, &p.unit, &u).unwrap());
}

#[test]
fn kleisli_extension_passes_extensive_laws() {
    let u = u2();
    for d in [exc_pow(), writer_pow()] {
        let e = extend_to_kleisli(&monoidal_to_algebra(&d), &u).unwrap();
        assert_pass(&check_monad_extensive(&e, &u));
    }
}

#[test]
fn kleisli_unit_of_maybe_over_powerset() {
    let d = exc_pow();
    let e = extend_to_kleisli(&monoidal_to_algebra(&d), &u2()).unwrap();
    let x = FinSet::atoms(&["a"]);
    let ux = (e.unit)(&x).unwrap();
    assert_eq!(
        ux.apply(&Element::atom("a")).unwrap().to_string(),
        "{inl(a)}"
    );
}

#[test]
fn coreader_law_passes_both_mixed_suites() {
    let m = coreader_pow();
    let u = u2();
    check_mixed_factors(&m, &u).unwrap();
    let dec = check_mixed_decagon(&m, &u);
    let cls = check_mixed_classic(&m, &u);
    assert_pass(&dec);
    assert_pass(&cls);
    assert!(dec.exhaustive() && cls.exhaustive());
}

#[test]
fn empty_strength_fails_epsilon_triangle() {
    let m = coreader_pow();
    let bad = NatTrans::point("bad", m.lambda.src(), m.lambda.tgt(), |_| {
        Ok(Element::subset(vec![]))
    });
    let b = MixedLaw::new("bad", m.l, m.r, bad).unwrap();
    assert!(
        !check_mixed_decagon(&b, &u2())
            .verdict("epsilon triangle")
            .unwrap()
            .pass
    );
}

#[test]
fn constant_empty_fails_unit_t_at_smallest_nonempty_object() {
    let d = exc_pow();
    let bad = NatTrans::point("bad", d.lambda.src(), d.lambda.tgt(), |_| {
        Ok(Element::subset(vec![]))
    });
    let b = DistLawMonoidal::new("bad", d.t, d.p, bad).unwrap();
    let r = check_beck(&b, &u2());
    let first = r.first_failure().unwrap();
    assert_eq!(first.axiom, "unit-T triangle");
    assert_eq!(first.witness.as_ref().unwrap().object, "{a}");
}

#[test]
fn mutated_delta_leg_fails_delta_pentagon() {
    // Tags with a1 on atoms and keeps the tag otherwise: second components
    // are untouched, so the counit triangle still holds.
    let m = coreader_pow();
    let bad = NatTrans::point("bad", m.lambda.src(), m.lambda.tgt(), |x| {
        let (a, s) = x.as_pair().unwrap();
        Ok(Element::subset(
            s.as_subset()
                .unwrap()
                .iter()
                .map(|y| match y {
                    Element::Atom(_) => Element::pair(Element::atom("a1"), y.clone()),
                    _ => Element::pair(a.clone(), y.clone()),
                })
                .collect(),
        ))
    });
    let b = MixedLaw::new("bad", m.l, m.r, bad).unwrap();
    let r = check_mixed_classic(&b, &u2());
    assert!(r.verdict("epsilon triangle").unwrap().pass);
    assert!(!r.verdict("delta pentagon").unwrap().pass);
}

#[test]
fn identity_mixed_law_passes() {
    let l = builtin::identity_comonad();
    let r = builtin::powerset();
    let m = MixedLaw::new("id", l, r.clone(), NatTrans::identity(&r.t)).unwrap();
    assert_pass(&check_mixed_decagon(&m, &u2()));
    assert_pass(&check_mixed_classic(&m, &u2()));
}

#[test]
fn writer_over_z2_passes_extensive_laws() {
    let w = builtin::writer(&Monoid::z2()).unwrap();
    let r = check_monad_extensive(&monoidal_to_extensive(&w), &u2());
    assert_pass(&r);
}
