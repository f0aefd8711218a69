//! Monads in monoidal and extensive form, comonads, and Kleisli categories.

use std::sync::Arc;

use crate::check::{check_equation, check_naturality, TableCheck};
use crate::error::{Error, Result};
use crate::finset::{compose, FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::nat::{Ctx, NatTrans};
use crate::report::LawReport;
use crate::universe::TestUniverse;

/// `(T, u, m)`.
#[derive(Clone)]
pub struct MonadMonoidal {
    pub name: String,
    pub t: FunctorExpr,
    pub unit: NatTrans,
    pub mult: NatTrans,
}

impl MonadMonoidal {
    pub fn new(
        name: &str,
        t: FunctorExpr,
        unit: NatTrans,
        mult: NatTrans,
    ) -> Result<MonadMonoidal> {
        let tt = FunctorExpr::comp(&t, &t);
        if !unit.src().equiv(&FunctorExpr::Id) || !unit.tgt().equiv(&t) {
            return Err(Error::Boundary(format!(
                "unit of {name} must be Id -> {t}, got {} -> {}",
                unit.src(),
                unit.tgt()
            )));
        }
        if !mult.src().equiv(&tt) || !mult.tgt().equiv(&t) {
            return Err(Error::Boundary(format!(
                "multiplication of {name} must be {tt} -> {t}, got {} -> {}",
                mult.src(),
                mult.tgt()
            )));
        }
        Ok(MonadMonoidal {
            name: name.to_string(),
            t: t.normalize(),
            unit,
            mult,
        })
    }

    /// `f^T = m_Y ∘ T f` for `f: X -> TY`.
    pub fn ext(&self, y: &FinSet, f: &FinFn) -> Result<FinFn> {
        let ty = self.t.apply_obj(y);
        if f.cod() != &ty {
            return Err(Error::Boundary(format!(
                "extension needs a map into {ty}, got codomain {}",
                f.cod()
            )));
        }
        let ctx = Ctx::at(y);
        FinFn::from_fn(self.t.apply_obj(f.dom()), ty, |x| {
            let tx = self.t.fmap(x, &|e| f.apply(e))?;
            self.mult.apply(&ctx, &tx)
        })
    }
}

fn ident(f: &FunctorExpr) -> NatTrans {
    NatTrans::identity(f)
}

pub fn check_monad_monoidal(m: &MonadMonoidal, u: &TestUniverse) -> LawReport {
    let t = &m.t;
    let id = FunctorExpr::Id;
    let build = || -> Result<Vec<(String, NatTrans, NatTrans)>> {
        Ok(vec![
            (
                "left unit".into(),
                NatTrans::whisker(&id, &m.unit, t).then(&m.mult)?,
                ident(t),
            ),
            (
                "right unit".into(),
                NatTrans::whisker(t, &m.unit, &id).then(&m.mult)?,
                ident(t),
            ),
            (
                "associativity".into(),
                NatTrans::whisker(t, &m.mult, &id).then(&m.mult)?,
                NatTrans::whisker(&id, &m.mult, t).then(&m.mult)?,
            ),
        ])
    };
    let axioms = match build() {
        Ok(eqs) => eqs
            .iter()
            .map(|(n, l, r)| check_equation(n, l, r, u))
            .collect(),
        Err(e) => vec![crate::report::AxiomVerdict::failed(
            "boundaries",
            e.to_string(),
        )],
    };
    LawReport::new(&m.name, "monad (monoidal)", u.describe(), axioms)
}

/// Naturality of the unit and multiplication.
pub fn check_monad_naturality(m: &MonadMonoidal, u: &TestUniverse) -> LawReport {
    LawReport::new(
        &m.name,
        "monad naturality",
        u.describe(),
        vec![
            check_naturality("unit natural", &m.unit, u),
            check_naturality("multiplication natural", &m.mult, u),
        ],
    )
}

pub type ObjMap = Arc<dyn Fn(&FinSet) -> FinSet + Send + Sync>;
pub type UnitMap = Arc<dyn Fn(&FinSet) -> Result<FinFn> + Send + Sync>;
/// `(Y, f: X -> hom(TY)) ↦ f^T: TX -> hom(TY)`.
pub type ExtMap = Arc<dyn Fn(&FinSet, &FinFn) -> Result<FinFn> + Send + Sync>;

/// The category a monad in extensive form lives on.
#[derive(Clone)]
pub enum Base {
    Sets,
    /// The Kleisli category of a monad on sets: maps `X -> Y` are functions
    /// `X -> P Y`.
    Kleisli(Arc<MonadExtensive>),
}

impl Base {
    /// The set of which hom-set elements `X -> Y` are functions into.
    pub fn hom_cod(&self, y: &FinSet) -> FinSet {
        match self {
            Base::Sets => y.clone(),
            Base::Kleisli(p) => (p.obj)(y),
        }
    }

    /// `g ∘ f` for `f: A -> B`, `g: B -> C`.
    pub fn compose(&self, g: &FinFn, f: &FinFn, c: &FinSet) -> Result<FinFn> {
        match self {
            Base::Sets => compose(g, f),
            Base::Kleisli(p) => compose(&(p.ext)(c, g)?, f),
        }
    }

    pub fn identity(&self, x: &FinSet) -> Result<FinFn> {
        match self {
            Base::Sets => Ok(FinFn::identity(x)),
            Base::Kleisli(p) => (p.unit)(x),
        }
    }
}

/// `(T, u, (-)^T)`.
#[derive(Clone)]
pub struct MonadExtensive {
    pub name: String,
    pub obj: ObjMap,
    pub unit: UnitMap,
    pub ext: ExtMap,
    pub base: Base,
}

impl MonadExtensive {
    pub fn hom_cod_t(&self, y: &FinSet) -> FinSet {
        self.base.hom_cod(&(self.obj)(y))
    }
}

pub fn monoidal_to_extensive(m: &MonadMonoidal) -> MonadExtensive {
    let (t1, m1, m2) = (m.t.clone(), m.clone(), m.clone());
    MonadExtensive {
        name: m.name.clone(),
        obj: Arc::new(move |x| t1.apply_obj(x)),
        unit: Arc::new(move |x| m1.unit.component(x)),
        ext: Arc::new(move |y, f| m2.ext(y, f)),
        base: Base::Sets,
    }
}

/// Recovers the multiplication as `m_X = (id_{TX})^T`. `f` must agree with
/// the object assignment of `m` on every object of `u`.
pub fn extensive_to_monoidal(
    m: &MonadExtensive,
    f: &FunctorExpr,
    u: &TestUniverse,
) -> Result<MonadMonoidal> {
    if !matches!(m.base, Base::Sets) {
        return Err(Error::Conversion(format!(
            "{} is not a monad on sets",
            m.name
        )));
    }
    for x in &u.objects {
        if f.apply_obj(x) != (m.obj)(x) {
            return Err(Error::Conversion(format!(
                "functor {f} disagrees with the object map of {} at {x}",
                m.name
            )));
        }
    }
    let (mu, me, f1) = (m.clone(), m.clone(), f.clone());
    let unit = NatTrans::per_object("u", FunctorExpr::Id, f.clone(), move |x| (mu.unit)(x));
    let mult = NatTrans::per_object("m", FunctorExpr::comp(f, f), f.clone(), move |x| {
        (me.ext)(x, &FinFn::identity(&f1.apply_obj(x)))
    });
    MonadMonoidal::new(&m.name, f.clone(), unit, mult)
}

pub fn check_monad_extensive(m: &MonadExtensive, u: &TestUniverse) -> LawReport {
    let mut a1 = TableCheck::new("extension after unit");
    let mut a2 = TableCheck::new("extension of unit");
    let mut a3 = TableCheck::new("extension of composite");
    let b = &m.base;
    for x in &u.objects {
        let ux = (m.unit)(x);
        let idtx = b.identity(&(m.obj)(x));
        let lhs = ux.clone().and_then(|ux| (m.ext)(x, &ux));
        a2.record(x, &[], lhs, idtx);
    }
    for x in &u.objects {
        for y in &u.objects {
            let ty = (m.obj)(y);
            let (fs, full) = u.functions(x, &b.hom_cod(&ty));
            a1.mark_sampled(full);
            for f in &fs {
                let lhs = (m.unit)(x)
                    .and_then(|ux| (m.ext)(y, f).and_then(|ft| b.compose(&ft, &ux, &ty)));
                if !a1.record(x, &[f], lhs, Ok(f.clone())) {
                    break;
                }
            }
        }
    }
    'outer: for y in &u.objects {
        let ty = (m.obj)(y);
        for z in &u.objects {
            let tz = (m.obj)(z);
            let (gs, gfull) = u.functions(y, &b.hom_cod(&tz));
            a3.mark_sampled(gfull);
            for g in &gs {
                let gt = (m.ext)(z, g);
                for x in &u.objects {
                    let (fs, ffull) = u.functions(x, &b.hom_cod(&ty));
                    a3.mark_sampled(ffull);
                    for f in &fs {
                        let lhs = gt
                            .clone()
                            .and_then(|gt| b.compose(&gt, f, &tz))
                            .and_then(|gf| (m.ext)(z, &gf));
                        let rhs = gt
                            .clone()
                            .and_then(|gt| (m.ext)(y, f).and_then(|ft| b.compose(&gt, &ft, &tz)));
                        if !a3.record(x, &[f, g], lhs, rhs) {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    LawReport::new(
        &m.name,
        "monad (extensive)",
        u.describe(),
        vec![a1.finish(), a2.finish(), a3.finish()],
    )
}

/// The Kleisli category of a monad in extensive form.
#[derive(Clone)]
pub struct KleisliCat {
    pub monad: MonadExtensive,
}

pub fn kleisli(m: &MonadExtensive, u: &TestUniverse) -> Result<KleisliCat> {
    let r = check_monad_extensive(m, u);
    if let Some(bad) = r.first_failure() {
        return Err(Error::Precondition(format!(
            "{} fails the extensive axiom '{}'",
            m.name, bad.axiom
        )));
    }
    Ok(KleisliCat { monad: m.clone() })
}

impl KleisliCat {
    pub fn identity(&self, x: &FinSet) -> Result<FinFn> {
        (self.monad.unit)(x)
    }

    /// `g · f = g^T ∘ f` for `f: X -> TY`, `g: Y -> TZ`.
    pub fn compose(&self, g: &FinFn, f: &FinFn, z: &FinSet) -> Result<FinFn> {
        let m = &self.monad;
        m.base.compose(&(m.ext)(z, g)?, f, &(m.obj)(z))
    }

    /// The monad on sets this category is the Kleisli category of.
    pub fn as_base(&self) -> Base {
        Base::Kleisli(Arc::new(self.monad.clone()))
    }

    pub fn check_category(&self, u: &TestUniverse) -> LawReport {
        let m = &self.monad;
        let hom = |a: &FinSet, b: &FinSet| u.functions(a, &m.hom_cod_t(b));
        let mut left = TableCheck::new("left identity");
        let mut right = TableCheck::new("right identity");
        let mut assoc = TableCheck::new("associativity");
        for x in &u.objects {
            for y in &u.objects {
                let (fs, full) = hom(x, y);
                left.mark_sampled(full);
                right.mark_sampled(full);
                for f in &fs {
                    let l = self.identity(y).and_then(|i| self.compose(&i, f, y));
                    left.record(x, &[f], l, Ok(f.clone()));
                    let r = self.identity(x).and_then(|i| self.compose(f, &i, y));
                    right.record(x, &[f], r, Ok(f.clone()));
                }
            }
        }
        'outer: for x in &u.objects {
            for y in &u.objects {
                let (fs, ffull) = hom(x, y);
                for z in &u.objects {
                    let (gs, gfull) = hom(y, z);
                    for w in &u.objects {
                        let (hs, hfull) = hom(z, w);
                        assoc.mark_sampled(ffull && gfull && hfull);
                        for h in &hs {
                            for g in &gs {
                                let hg = self.compose(h, g, w);
                                for f in &fs {
                                    let lhs = self
                                        .compose(g, f, z)
                                        .and_then(|gf| self.compose(h, &gf, w));
                                    let rhs = hg.clone().and_then(|hg| self.compose(&hg, f, w));
                                    if !assoc.record(x, &[f, g, h], lhs, rhs) {
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        LawReport::new(
            &m.name,
            "Kleisli category",
            u.describe(),
            vec![left.finish(), right.finish(), assoc.finish()],
        )
    }
}

/// `(L, ε, δ)`.
#[derive(Clone)]
pub struct ComonadMonoidal {
    pub name: String,
    pub l: FunctorExpr,
    pub counit: NatTrans,
    pub comult: NatTrans,
}

impl ComonadMonoidal {
    pub fn new(
        name: &str,
        l: FunctorExpr,
        counit: NatTrans,
        comult: NatTrans,
    ) -> Result<ComonadMonoidal> {
        let ll = FunctorExpr::comp(&l, &l);
        if !counit.src().equiv(&l) || !counit.tgt().equiv(&FunctorExpr::Id) {
            return Err(Error::Boundary(format!(
                "counit of {name} must be {l} -> Id"
            )));
        }
        if !comult.src().equiv(&l) || !comult.tgt().equiv(&ll) {
            return Err(Error::Boundary(format!(
                "comultiplication of {name} must be {l} -> {ll}"
            )));
        }
        Ok(ComonadMonoidal {
            name: name.to_string(),
            l: l.normalize(),
            counit,
            comult,
        })
    }
}

pub fn check_comonad(c: &ComonadMonoidal, u: &TestUniverse) -> LawReport {
    let l = &c.l;
    let id = FunctorExpr::Id;
    let build = || -> Result<Vec<(String, NatTrans, NatTrans)>> {
        Ok(vec![
            (
                "left counit".into(),
                c.comult.then(&NatTrans::whisker(&id, &c.counit, l))?,
                ident(l),
            ),
            (
                "right counit".into(),
                c.comult.then(&NatTrans::whisker(l, &c.counit, &id))?,
                ident(l),
            ),
            (
                "coassociativity".into(),
                c.comult.then(&NatTrans::whisker(&id, &c.comult, l))?,
                c.comult.then(&NatTrans::whisker(l, &c.comult, &id))?,
            ),
        ])
    };
    let axioms = match build() {
        Ok(eqs) => eqs
            .iter()
            .map(|(n, a, b)| check_equation(n, a, b, u))
            .collect(),
        Err(e) => vec![crate::report::AxiomVerdict::failed(
            "boundaries",
            e.to_string(),
        )],
    };
    LawReport::new(&c.name, "comonad", u.describe(), axioms)
}
