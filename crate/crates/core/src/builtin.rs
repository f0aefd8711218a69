//! The built-in monads, comonads and laws, parameterized by finite data.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::functor::FunctorExpr;
use crate::monad::{ComonadMonoidal, MonadMonoidal};
use crate::nat::NatTrans;

fn shape(x: &Element, context: &str) -> Error {
    Error::Shape {
        element: x.to_string(),
        context: context.to_string(),
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    pub elems: Vec<String>,
    /// `op[i][j] = elems[i] · elems[j]`.
    pub op: Vec<Vec<String>>,
    pub unit: String,
}

impl Monoid {
    /// `{1, s}` with `s · s = 1`.
    pub fn z2() -> Monoid {
        Monoid {
            elems: vec!["1".into(), "s".into()],
            op: vec![vec!["1".into(), "s".into()], vec!["s".into(), "1".into()]],
            unit: "1".into(),
        }
    }

    fn index(&self, a: &str) -> Result<usize> {
        self.elems
            .iter()
            .position(|e| e == a)
            .ok_or_else(|| Error::Config(format!("'{a}' is not an element of the monoid")))
    }

    pub fn mul(&self, a: &str, b: &str) -> Result<&str> {
        Ok(&self.op[self.index(a)?][self.index(b)?])
    }

    /// Checks closure, the unit laws and associativity of the table.
    pub fn validate(&self) -> Result<()> {
        let n = self.elems.len();
        if n == 0 {
            return Err(Error::Config("monoid has no elements".into()));
        }
        let mut sorted = self.elems.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Config("monoid elements are not distinct".into()));
        }
        if self.op.len() != n || self.op.iter().any(|row| row.len() != n) {
            return Err(Error::Config(format!("monoid table must be {n} x {n}")));
        }
        for row in &self.op {
            for c in row {
                self.index(c)?;
            }
        }
        self.index(&self.unit)?;
        for a in &self.elems {
            if self.mul(&self.unit, a)? != a || self.mul(a, &self.unit)? != a {
                return Err(Error::Config(format!(
                    "'{}' is not a two-sided unit (fails at '{a}')",
                    self.unit
                )));
            }
        }
        for a in &self.elems {
            for b in &self.elems {
                for c in &self.elems {
                    let ab_c = self.mul(self.mul(a, b)?, c)?;
                    let a_bc = self.mul(a, self.mul(b, c)?)?;
                    if ab_c != a_bc {
                        return Err(Error::Config(format!(
                            "monoid is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> FinSet {
        FinSet::atoms(&self.elems)
    }
}

fn ident_prim(name: &str, f: &FunctorExpr) -> NatTrans {
    NatTrans::point(name, f.clone(), f.clone(), |x| Ok(x.clone()))
}

pub fn identity_monad() -> MonadMonoidal {
    MonadMonoidal::new(
        "identity",
        FunctorExpr::Id,
        ident_prim("u", &FunctorExpr::Id),
        ident_prim("m", &FunctorExpr::Id),
    )
    .expect("identity monad boundaries")
}

pub fn exception_functor(e: &FinSet) -> FunctorExpr {
    FunctorExpr::sum(FunctorExpr::Id, FunctorExpr::constant(e.clone()))
}

/// `X ↦ X + E`.
pub fn exception(e: &FinSet) -> MonadMonoidal {
    let t = exception_functor(e);
    let unit = NatTrans::point("u", FunctorExpr::Id, t.clone(), |x| {
        Ok(Element::inl(x.clone()))
    });
    let mult = NatTrans::point("m", FunctorExpr::comp(&t, &t), t.clone(), |x| match x {
        Element::Inl(inner) => Ok((**inner).clone()),
        Element::Inr(_) => Ok(x.clone()),
        _ => Err(shape(x, "exception multiplication")),
    });
    MonadMonoidal::new("exception", t, unit, mult).expect("exception monad boundaries")
}

pub fn maybe() -> MonadMonoidal {
    let mut m = exception(&FinSet::atoms(&["e"]));
    m.name = "maybe".into();
    m
}

pub fn writer_functor(monoid: &Monoid) -> FunctorExpr {
    FunctorExpr::prod(FunctorExpr::constant(monoid.carrier()), FunctorExpr::Id)
}

/// `X ↦ M × X`.
pub fn writer(monoid: &Monoid) -> Result<MonadMonoidal> {
    monoid.validate()?;
    let t = writer_functor(monoid);
    let one = Element::atom(&monoid.unit);
    let unit = NatTrans::point("u", FunctorExpr::Id, t.clone(), move |x| {
        Ok(Element::pair(one.clone(), x.clone()))
    });
    let mo = monoid.clone();
    let label = |e: &Element| match e {
        Element::Atom(s) => Ok(s.to_string()),
        _ => Err(shape(e, "monoid element")),
    };
    let mult = NatTrans::point("m", FunctorExpr::comp(&t, &t), t.clone(), move |x| {
        let (a, rest) = x
            .as_pair()
            .ok_or_else(|| shape(x, "writer multiplication"))?;
        let (b, y) = rest
            .as_pair()
            .ok_or_else(|| shape(x, "writer multiplication"))?;
        let ab = mo.mul(&label(a)?, &label(b)?)?;
        Ok(Element::pair(Element::atom(ab), y.clone()))
    });
    MonadMonoidal::new("writer", t, unit, mult)
}

/// `X ↦ X^R`.
pub fn reader(r: &FinSet) -> MonadMonoidal {
    let t = FunctorExpr::exp(r.clone());
    let r1 = r.clone();
    let unit = NatTrans::point("u", FunctorExpr::Id, t.clone(), move |x| {
        Ok(Element::fn_table(
            r1.iter().map(|k| (k.clone(), x.clone())).collect(),
        ))
    });
    let mult = NatTrans::point("m", FunctorExpr::comp(&t, &t), t.clone(), |x| {
        let outer = x
            .as_table()
            .ok_or_else(|| shape(x, "reader multiplication"))?;
        let diag = outer
            .iter()
            .map(|(k, inner)| {
                inner
                    .lookup(k)
                    .cloned()
                    .map(|v| (k.clone(), v))
                    .ok_or_else(|| shape(x, "reader multiplication"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::fn_table(diag))
    });
    MonadMonoidal::new("reader", t, unit, mult).expect("reader monad boundaries")
}

/// Finite powerset with singleton and union.
pub fn powerset() -> MonadMonoidal {
    let t = FunctorExpr::Power;
    let unit = NatTrans::point("eta", FunctorExpr::Id, t.clone(), |x| {
        Ok(Element::subset(vec![x.clone()]))
    });
    let mult = NatTrans::point("mu", FunctorExpr::comp(&t, &t), t.clone(), |x| {
        let outer = x.as_subset().ok_or_else(|| shape(x, "union"))?;
        let mut all = Vec::new();
        for s in outer {
            all.extend(
                s.as_subset()
                    .ok_or_else(|| shape(x, "union"))?
                    .iter()
                    .cloned(),
            );
        }
        Ok(Element::subset(all))
    });
    MonadMonoidal::new("powerset", t, unit, mult).expect("powerset boundaries")
}

pub fn identity_comonad() -> ComonadMonoidal {
    ComonadMonoidal::new(
        "identity",
        FunctorExpr::Id,
        ident_prim("epsilon", &FunctorExpr::Id),
        ident_prim("delta", &FunctorExpr::Id),
    )
    .expect("identity comonad boundaries")
}

/// `X ↦ A × X` with projection and diagonal.
pub fn coreader(a: &FinSet) -> ComonadMonoidal {
    let l = FunctorExpr::prod(FunctorExpr::constant(a.clone()), FunctorExpr::Id);
    let counit = NatTrans::point("epsilon", l.clone(), FunctorExpr::Id, |x| {
        x.as_pair()
            .map(|(_, y)| y.clone())
            .ok_or_else(|| shape(x, "coreader counit"))
    });
    let comult = NatTrans::point("delta", l.clone(), FunctorExpr::comp(&l, &l), |x| {
        let (a, _) = x
            .as_pair()
            .ok_or_else(|| shape(x, "coreader comultiplication"))?;
        Ok(Element::pair(a.clone(), x.clone()))
    });
    ComonadMonoidal::new("coreader", l, counit, comult).expect("coreader boundaries")
}

/// `λ: PX + E -> P(X + E)`, `inl S ↦ {inl s | s ∈ S}`, `inr e ↦ {inr e}`.
pub fn exception_dist(t: &MonadMonoidal, p: &MonadMonoidal) -> NatTrans {
    let src = FunctorExpr::comp(&t.t, &p.t);
    let tgt = FunctorExpr::comp(&p.t, &t.t);
    NatTrans::point("lambda", src, tgt, |x| match x {
        Element::Inl(s) => {
            let xs = s
                .as_subset()
                .ok_or_else(|| shape(x, "exception distribution"))?;
            Ok(Element::subset(
                xs.iter().cloned().map(Element::inl).collect(),
            ))
        }
        Element::Inr(_) => Ok(Element::subset(vec![x.clone()])),
        _ => Err(shape(x, "exception distribution")),
    })
}

/// `(a, S) ↦ {(a, s) | s ∈ S}`, for any functor of the form `A × (-)` over
/// the powerset. Serves both the writer law and the mixed coreader law.
pub fn pair_strength(src: FunctorExpr, tgt: FunctorExpr) -> NatTrans {
    NatTrans::point("lambda", src, tgt, |x| {
        let (a, s) = x.as_pair().ok_or_else(|| shape(x, "strength"))?;
        let xs = s.as_subset().ok_or_else(|| shape(x, "strength"))?;
        Ok(Element::subset(
            xs.iter()
                .map(|y| Element::pair(a.clone(), y.clone()))
                .collect(),
        ))
    })
}

/// The identity `TP -> PT` when one of the two functors is `Id`.
pub fn trivial_law(t: &MonadMonoidal, p: &MonadMonoidal) -> Result<NatTrans> {
    let tp = FunctorExpr::comp(&t.t, &p.t);
    let pt = FunctorExpr::comp(&p.t, &t.t);
    if !tp.equiv(&pt) {
        return Err(Error::Boundary(format!("{tp} and {pt} differ")));
    }
    Ok(ident_prim("lambda", &tp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{check_comonad, check_monad_monoidal};
    use crate::universe::TestUniverse;

    #[test]
    fn z2_is_a_monoid() {
        assert!(Monoid::z2().validate().is_ok());
    }

    #[test]
    fn non_associative_table_rejected() {
        let bad = Monoid {
            elems: vec!["1".into(), "a".into(), "b".into()],
            op: vec![
                vec!["1".into(), "a".into(), "b".into()],
                vec!["a".into(), "b".into(), "1".into()],
                vec!["b".into(), "b".into(), "a".into()],
            ],
            unit: "1".into(),
        };
        assert!(matches!(bad.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn builtin_monads_pass_at_size_two() {
        let u = TestUniverse::sizes(2);
        let e2 = FinSet::atoms(&["e1", "e2"]);
        let r2 = FinSet::atoms(&["r1", "r2"]);
        for m in [
            identity_monad(),
            maybe(),
            exception(&e2),
            writer(&Monoid::z2()).unwrap(),
            reader(&r2),
            powerset(),
        ] {
            let r = check_monad_monoidal(&m, &u);
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn coreader_passes_comonad_laws() {
        let u = TestUniverse::sizes(2);
        let r = check_comonad(&coreader(&FinSet::atoms(&["p", "q"])), &u);
        assert!(r.passed() && r.exhaustive());
    }
}
