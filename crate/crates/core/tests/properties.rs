//! Randomized checks of the finite-set and monad invariants.

use std::cmp::Ordering;
use std::sync::Arc;

use distlaw::finset::{all_functions, compose, fn_equal};
use distlaw::monad::{extensive_to_monoidal, monoidal_to_extensive, Base, MonadMonoidal};
use distlaw::registry::Registry;
use distlaw::{Element, FinFn, FinSet, FunctorExpr, TestUniverse};
use proptest::prelude::*;

fn arb_element() -> impl Strategy<Value = Element> {
    let leaf = prop::sample::select(vec!["a", "b", "c"]).prop_map(Element::atom);
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Element::inl),
            inner.clone().prop_map(Element::inr),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Element::pair(a, b)),
            prop::collection::vec(inner.clone(), 0..3).prop_map(Element::subset),
            prop::collection::vec((inner.clone(), inner), 0..3).prop_map(Element::fn_table),
        ]
    })
}

/// A function `X -> Y` read off a stream of choices; `None` when `Y` is
/// empty and `X` is not.
fn pick(x: &FinSet, y: &FinSet, choices: &[usize]) -> Option<FinFn> {
    if y.is_empty() && !x.is_empty() {
        return None;
    }
    let table = (0..x.len())
        .map(|i| y.elements()[choices[i % choices.len()] % y.len()].clone())
        .collect();
    Some(FinFn::new(x.clone(), y.clone(), table).unwrap())
}

fn choices() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..1000, 1..40)
}

/// Small functors over the whole grammar; carriers stay under a few
/// hundred elements at size 2.
fn arb_functor() -> impl Strategy<Value = FunctorExpr> {
    let leaf = prop_oneof![
        Just(FunctorExpr::Id),
        Just(FunctorExpr::Power),
        (0usize..3).prop_map(|n| FunctorExpr::constant(FinSet::canonical(n))),
        (0usize..3).prop_map(|n| FunctorExpr::exp(FinSet::canonical(n))),
    ];
    leaf.prop_recursive(2, 4, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FunctorExpr::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FunctorExpr::prod(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| FunctorExpr::comp(&a, &b)),
        ]
    })
}

fn registered_monads() -> Vec<MonadMonoidal> {
    let reg = Registry::builtin();
    reg.monad_names()
        .iter()
        .map(|k| reg.monad(k).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn element_order_is_a_strict_total_order(
        a in arb_element(), b in arb_element(), c in arb_element()
    ) {
        prop_assert!(a.is_canonical() && b.is_canonical());
        prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        if a < b && b < c {
            prop_assert!(a < c);
        }
    }

    #[test]
    fn equal_sets_have_identical_representations(xs in prop::collection::vec(arb_element(), 0..6)) {
        let mut rev = xs.clone();
        rev.reverse();
        rev.extend(xs.iter().cloned());
        let (s, r) = (FinSet::new(xs), FinSet::new(rev));
        prop_assert_eq!(s.elements(), r.elements());
    }

    #[test]
    fn composition_is_associative_and_unital(
        sizes in (0usize..4, 0usize..4, 0usize..4, 0usize..4),
        cf in choices(), cg in choices(), ch in choices(),
    ) {
        let (a, b, c, d) = (
            FinSet::canonical(sizes.0),
            FinSet::canonical(sizes.1),
            FinSet::canonical(sizes.2),
            FinSet::canonical(sizes.3),
        );
        let (Some(f), Some(g), Some(h)) = (pick(&a, &b, &cf), pick(&b, &c, &cg), pick(&c, &d, &ch)) else {
            return Ok(());
        };
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert!(fn_equal(&left, &right));
        prop_assert!(fn_equal(&compose(&f, &FinFn::identity(&a)).unwrap(), &f));
        prop_assert!(fn_equal(&compose(&FinFn::identity(&b), &f).unwrap(), &f));
    }

    #[test]
    fn all_functions_counts_and_distinctness(x in 0usize..5, y in 0usize..5) {
        let (xs, ys) = (FinSet::canonical(x), FinSet::canonical(y));
        let fs: Vec<FinFn> = all_functions(&xs, &ys).collect();
        prop_assert_eq!(fs.len(), y.pow(x as u32));
        for w in fs.windows(2) {
            prop_assert!(!fn_equal(&w[0], &w[1]));
        }
    }

    #[test]
    fn functors_preserve_identities_and_composition(
        t in arb_functor(),
        sizes in (0usize..3, 0usize..3, 0usize..3),
        cf in choices(), cg in choices(),
    ) {
        let (a, b, c) = (
            FinSet::canonical(sizes.0),
            FinSet::canonical(sizes.1),
            FinSet::canonical(sizes.2),
        );
        prop_assume!(t.card(3).is_some_and(|n| n <= 4096));
        let (Some(f), Some(g)) = (pick(&a, &b, &cf), pick(&b, &c, &cg)) else {
            return Ok(());
        };
        let tf = t.apply_mor(&f).unwrap();
        prop_assert_eq!(tf.dom(), &t.apply_obj(&a));
        prop_assert_eq!(tf.cod(), &t.apply_obj(&b));
        let id = t.apply_mor(&FinFn::identity(&a)).unwrap();
        prop_assert!(fn_equal(&id, &FinFn::identity(&t.apply_obj(&a))));
        let whole = t.apply_mor(&compose(&g, &f).unwrap()).unwrap();
        let parts = compose(&t.apply_mor(&g).unwrap(), &tf).unwrap();
        prop_assert!(fn_equal(&whole, &parts));
    }

    #[test]
    fn extension_laws_of_registered_monads(
        which in 0usize..16,
        sizes in (0usize..3, 0usize..3, 0usize..3),
        cf in choices(), cg in choices(),
    ) {
        let monads = registered_monads();
        let m = &monads[which % monads.len()];
        let (x, y, z) = (
            FinSet::canonical(sizes.0),
            FinSet::canonical(sizes.1),
            FinSet::canonical(sizes.2),
        );
        let (Some(f), Some(g)) = (pick(&x, &m.t.apply_obj(&y), &cf), pick(&y, &m.t.apply_obj(&z), &cg)) else {
            return Ok(());
        };
        let (fe, ge) = (m.ext(&y, &f).unwrap(), m.ext(&z, &g).unwrap());
        let ux = m.unit.component(&x).unwrap();
        prop_assert!(fn_equal(&compose(&fe, &ux).unwrap(), &f));
        let ty = m.t.apply_obj(&y);
        prop_assert!(fn_equal(&m.ext(&y, &FinFn::identity(&ty)).unwrap(), &m.mult.component(&y).unwrap()));
        let lhs = m.ext(&z, &compose(&ge, &f).unwrap()).unwrap();
        let rhs = compose(&ge, &fe).unwrap();
        prop_assert!(fn_equal(&lhs, &rhs), "{}: (g^T f)^T != g^T f^T", m.name);
    }

    #[test]
    fn unit_and_multiplication_are_natural(
        which in 0usize..16,
        sizes in (0usize..3, 0usize..3),
        ch in choices(),
    ) {
        let monads = registered_monads();
        let m = &monads[which % monads.len()];
        let (x, y) = (FinSet::canonical(sizes.0), FinSet::canonical(sizes.1));
        let Some(h) = pick(&x, &y, &ch) else { return Ok(()) };
        let th = m.t.apply_mor(&h).unwrap();
        let (ux, uy) = (m.unit.component(&x).unwrap(), m.unit.component(&y).unwrap());
        prop_assert!(fn_equal(&compose(&th, &ux).unwrap(), &compose(&uy, &h).unwrap()));
        let tth = m.t.apply_mor(&th).unwrap();
        let (mx, my) = (m.mult.component(&x).unwrap(), m.mult.component(&y).unwrap());
        prop_assert!(fn_equal(&compose(&th, &mx).unwrap(), &compose(&my, &tth).unwrap()));
    }

    #[test]
    fn kleisli_composition_is_associative_and_unital(
        sizes in (0usize..3, 0usize..3, 0usize..3, 0usize..3),
        cf in choices(), cg in choices(), ch in choices(),
    ) {
        let reg = Registry::builtin();
        let base = Base::Kleisli(Arc::new(monoidal_to_extensive(&reg.monad("powerset").unwrap())));
        let (a, b, c, d) = (
            FinSet::canonical(sizes.0),
            FinSet::canonical(sizes.1),
            FinSet::canonical(sizes.2),
            FinSet::canonical(sizes.3),
        );
        let (Some(f), Some(g), Some(h)) = (
            pick(&a, &base.hom_cod(&b), &cf),
            pick(&b, &base.hom_cod(&c), &cg),
            pick(&c, &base.hom_cod(&d), &ch),
        ) else {
            return Ok(());
        };
        let left = base.compose(&h, &base.compose(&g, &f, &c).unwrap(), &d).unwrap();
        let right = base.compose(&base.compose(&h, &g, &d).unwrap(), &f, &d).unwrap();
        prop_assert!(fn_equal(&left, &right));
        let (ia, ib) = (base.identity(&a).unwrap(), base.identity(&b).unwrap());
        prop_assert!(fn_equal(&base.compose(&f, &ia, &b).unwrap(), &f));
        prop_assert!(fn_equal(&base.compose(&ib, &f, &b).unwrap(), &f));
    }
}

#[test]
fn extensive_round_trip_recovers_every_registered_monad() {
    let u = TestUniverse::sizes(2);
    for m in registered_monads() {
        let back = extensive_to_monoidal(&monoidal_to_extensive(&m), &m.t, &u).unwrap();
        for x in &u.objects {
            assert!(fn_equal(
                &back.unit.component(x).unwrap(),
                &m.unit.component(x).unwrap()
            ));
            assert!(
                fn_equal(
                    &back.mult.component(x).unwrap(),
                    &m.mult.component(x).unwrap()
                ),
                "{} at {x}",
                m.name
            );
        }
    }
}
