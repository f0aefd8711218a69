//! Distributive laws in four presentations, their checkers and converters,
//! the composite monad, the extension to the Kleisli category, and mixed
//! laws of a comonad over a monad.

use std::sync::Arc;

use crate::check::{check_equation, TableCheck};
use crate::error::{Error, Result};
use crate::finset::{compose, FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::monad::{
    check_comonad, check_monad_monoidal, monoidal_to_extensive, Base, ComonadMonoidal,
    MonadExtensive, MonadMonoidal,
};
use crate::nat::{Ctx, NatTrans};
use crate::report::{AxiomVerdict, LawReport};
use crate::universe::TestUniverse;

/// `λ: TP -> PT`. The monoidal and decagon presentations share this record
/// and differ only in which axioms are checked.
#[derive(Clone)]
pub struct DistLawMonoidal {
    pub name: String,
    pub t: MonadMonoidal,
    pub p: MonadMonoidal,
    pub lambda: NatTrans,
}

pub type DistLawDecagon = DistLawMonoidal;

/// `α: TPT -> PT`.
#[derive(Clone)]
pub struct DistLawAlgebra {
    pub name: String,
    pub t: MonadMonoidal,
    pub p: MonadMonoidal,
    pub alpha: NatTrans,
}

/// `(Y, f: X -> PTY) ↦ f^λ: TX -> PTY`.
pub type PastingOp = Arc<dyn Fn(&FinSet, &FinFn) -> Result<FinFn> + Send + Sync>;

#[derive(Clone)]
pub struct DistLawNoIteration {
    pub name: String,
    pub t: MonadMonoidal,
    pub p: MonadExtensive,
    /// The functor underlying `p`, used to name carriers.
    pub p_functor: FunctorExpr,
    pub op: PastingOp,
}

/// `λ: LR -> RL` for a comonad `L` and a monad `R`.
#[derive(Clone)]
pub struct MixedLaw {
    pub name: String,
    pub l: ComonadMonoidal,
    pub r: MonadMonoidal,
    pub lambda: NatTrans,
}

fn check_boundary(what: &str, t: &NatTrans, src: &FunctorExpr, tgt: &FunctorExpr) -> Result<()> {
    if t.src().equiv(src) && t.tgt().equiv(tgt) {
        Ok(())
    } else {
        Err(Error::Boundary(format!(
            "{what} must be {src} -> {tgt}, got {} -> {}",
            t.src(),
            t.tgt()
        )))
    }
}

fn word(fs: &[&FunctorExpr]) -> FunctorExpr {
    FunctorExpr::word(fs)
}

/// `l · n · r` with the whiskers given as words, outermost first.
fn w(l: &[&FunctorExpr], n: &NatTrans, r: &[&FunctorExpr]) -> NatTrans {
    NatTrans::whisker(&word(l), n, &word(r))
}

fn seq(parts: &[NatTrans]) -> Result<NatTrans> {
    NatTrans::seq(parts)
}

type Equations = Vec<(&'static str, NatTrans, NatTrans)>;

fn run(law: &str, suite: &str, u: &TestUniverse, eqs: Result<Equations>) -> LawReport {
    let axioms = match eqs {
        Ok(eqs) => eqs
            .iter()
            .map(|(n, l, r)| check_equation(n, l, r, u))
            .collect(),
        Err(e) => vec![AxiomVerdict::failed("boundaries", e.to_string())],
    };
    LawReport::new(law, suite, u.describe(), axioms)
}

impl DistLawMonoidal {
    pub fn new(
        name: &str,
        t: MonadMonoidal,
        p: MonadMonoidal,
        lambda: NatTrans,
    ) -> Result<DistLawMonoidal> {
        check_boundary(
            "lambda",
            &lambda,
            &FunctorExpr::comp(&t.t, &p.t),
            &FunctorExpr::comp(&p.t, &t.t),
        )?;
        Ok(DistLawMonoidal {
            name: name.to_string(),
            t,
            p,
            lambda,
        })
    }

    fn beck_equations(&self) -> Result<Equations> {
        let (t, p, id) = (&self.t.t, &self.p.t, &FunctorExpr::Id);
        let (u, m, eta, mu, l) = (
            &self.t.unit,
            &self.t.mult,
            &self.p.unit,
            &self.p.mult,
            &self.lambda,
        );
        Ok(vec![
            (
                "unit-T triangle",
                seq(&[w(&[], u, &[p]), l.clone()])?,
                w(&[p], u, &[]),
            ),
            (
                "unit-P triangle",
                seq(&[w(&[t], eta, &[]), l.clone()])?,
                w(&[id], eta, &[t]),
            ),
            (
                "m-pentagon",
                seq(&[w(&[], m, &[p]), l.clone()])?,
                seq(&[w(&[t], l, &[]), w(&[], l, &[t]), w(&[p], m, &[])])?,
            ),
            (
                "mu-pentagon",
                seq(&[w(&[t], mu, &[]), l.clone()])?,
                seq(&[w(&[], l, &[p]), w(&[p], l, &[]), w(&[], mu, &[t])])?,
            ),
        ])
    }

    fn decagon_equations(&self) -> Result<Equations> {
        let (t, p) = (&self.t.t, &self.p.t);
        let (m, mu, l) = (&self.t.mult, &self.p.mult, &self.lambda);
        let mut eqs = self.beck_equations()?;
        eqs.truncate(2);
        let top = seq(&[
            w(&[t, p], l, &[t]),
            w(&[t, p, p], m, &[]),
            w(&[t], mu, &[t]),
            w(&[], l, &[t]),
            w(&[p], m, &[]),
        ])?;
        let bottom = seq(&[
            w(&[], l, &[t, p, t]),
            w(&[p], m, &[p, t]),
            w(&[p], l, &[t]),
            w(&[p, p], m, &[]),
            w(&[], mu, &[t]),
        ])?;
        eqs.push(("decagon", top, bottom));
        Ok(eqs)
    }
}

pub fn check_beck(d: &DistLawMonoidal, u: &TestUniverse) -> LawReport {
    run(&d.name, "monoidal (Beck)", u, d.beck_equations())
}

pub fn check_decagon(d: &DistLawDecagon, u: &TestUniverse) -> LawReport {
    run(&d.name, "decagon", u, d.decagon_equations())
}

impl DistLawAlgebra {
    pub fn new(
        name: &str,
        t: MonadMonoidal,
        p: MonadMonoidal,
        alpha: NatTrans,
    ) -> Result<DistLawAlgebra> {
        check_boundary(
            "alpha",
            &alpha,
            &FunctorExpr::word(&[&t.t, &p.t, &t.t]),
            &FunctorExpr::comp(&p.t, &t.t),
        )?;
        Ok(DistLawAlgebra {
            name: name.to_string(),
            t,
            p,
            alpha,
        })
    }

    fn unit_triangle(&self) -> Result<(&'static str, NatTrans, NatTrans)> {
        let (t, p) = (&self.t.t, &self.p.t);
        Ok((
            "unit triangle",
            seq(&[w(&[], &self.t.unit, &[p, t]), self.alpha.clone()])?,
            NatTrans::identity(&word(&[p, t])),
        ))
    }

    fn eta_square(&self) -> Result<(&'static str, NatTrans, NatTrans)> {
        let t = &self.t.t;
        Ok((
            "eta square",
            seq(&[w(&[t], &self.p.unit, &[t]), self.alpha.clone()])?,
            seq(&[self.t.mult.clone(), w(&[], &self.p.unit, &[t])])?,
        ))
    }

    fn algebra_equations(&self) -> Result<Equations> {
        let (t, p) = (&self.t.t, &self.p.t);
        let (a, mu) = (&self.alpha, &self.p.mult);
        Ok(vec![
            self.unit_triangle()?,
            self.eta_square()?,
            (
                "hexagon",
                seq(&[w(&[t, p], a, &[]), w(&[t], mu, &[t]), a.clone()])?,
                seq(&[w(&[], a, &[p, t]), w(&[p], a, &[]), w(&[], mu, &[t])])?,
            ),
        ])
    }

    fn five_equations(&self) -> Result<Equations> {
        let (t, p) = (&self.t.t, &self.p.t);
        let (a, u, m, mu) = (&self.alpha, &self.t.unit, &self.t.mult, &self.p.mult);
        let (_, unit_l, unit_r) = self.unit_triangle()?;
        let (_, eta_l, eta_r) = self.eta_square()?;
        Ok(vec![
            ("algebra unit", unit_l, unit_r),
            (
                "algebra multiplication",
                seq(&[w(&[], m, &[p, t]), a.clone()])?,
                seq(&[w(&[t], a, &[]), a.clone()])?,
            ),
            (
                "m compatibility",
                seq(&[w(&[t, p], m, &[]), a.clone()])?,
                seq(&[w(&[], a, &[t]), w(&[p], m, &[])])?,
            ),
            ("eta compatibility", eta_l, eta_r),
            (
                "mu compatibility",
                seq(&[
                    w(&[t, p], u, &[p, t]),
                    w(&[], a, &[p, t]),
                    w(&[p], a, &[]),
                    w(&[], mu, &[t]),
                ])?,
                seq(&[w(&[t], mu, &[t]), a.clone()])?,
            ),
        ])
    }
}

pub fn check_algebra(d: &DistLawAlgebra, u: &TestUniverse) -> LawReport {
    run(&d.name, "algebra", u, d.algebra_equations())
}

pub fn check_five_axiom(
    alpha: &NatTrans,
    t: &MonadMonoidal,
    p: &MonadMonoidal,
    u: &TestUniverse,
) -> LawReport {
    match DistLawAlgebra::new("alpha", t.clone(), p.clone(), alpha.clone()) {
        Ok(d) => run("alpha", "five-axiom", u, d.five_equations()),
        Err(e) => run("alpha", "five-axiom", u, Err(e)),
    }
}

fn refuse_unless(r: LawReport) -> Result<()> {
    match r.first_failure() {
        None => Ok(()),
        Some(bad) => Err(Error::Precondition(format!(
            "{} fails '{}' [{}]",
            r.law, bad.axiom, r.suite
        ))),
    }
}

/// `α = Pm ∘ λT`.
pub fn monoidal_to_algebra(d: &DistLawMonoidal) -> DistLawAlgebra {
    let (t, p) = (&d.t.t, &d.p.t);
    let alpha = seq(&[w(&[], &d.lambda, &[t]), w(&[p], &d.t.mult, &[])]).expect("alpha boundaries");
    DistLawAlgebra {
        name: d.name.clone(),
        t: d.t.clone(),
        p: d.p.clone(),
        alpha,
    }
}

/// `λ = α ∘ TPu`.
pub fn algebra_to_monoidal(d: &DistLawAlgebra, u: &TestUniverse) -> Result<DistLawMonoidal> {
    refuse_unless(check_algebra(d, u))?;
    Ok(algebra_to_monoidal_unchecked(d))
}

fn algebra_to_monoidal_unchecked(d: &DistLawAlgebra) -> DistLawMonoidal {
    let (t, p) = (&d.t.t, &d.p.t);
    let lambda = seq(&[w(&[t, p], &d.t.unit, &[]), d.alpha.clone()]).expect("lambda boundaries");
    DistLawMonoidal {
        name: d.name.clone(),
        t: d.t.clone(),
        p: d.p.clone(),
        lambda,
    }
}

/// `op(f) = α_Y ∘ Tf`.
pub fn algebra_to_noiter(d: &DistLawAlgebra, u: &TestUniverse) -> Result<DistLawNoIteration> {
    refuse_unless(check_algebra(d, u))?;
    let (t, alpha) = (d.t.t.clone(), d.alpha.clone());
    let pt = FunctorExpr::comp(&d.p.t, &d.t.t);
    let op: PastingOp = Arc::new(move |y, f| {
        let pty = pt.apply_obj(y);
        if f.cod() != &pty {
            return Err(Error::Boundary(format!(
                "pasting operator needs a map into {pty}, got codomain {}",
                f.cod()
            )));
        }
        let ctx = Ctx::at(y);
        FinFn::from_fn(t.apply_obj(f.dom()), pty, |x| {
            alpha.apply(&ctx, &t.fmap(x, &|e| f.apply(e))?)
        })
    });
    Ok(DistLawNoIteration {
        name: d.name.clone(),
        t: d.t.clone(),
        p: monoidal_to_extensive(&d.p),
        p_functor: d.p.t.clone(),
        op,
    })
}

/// Largest `TPTX` on which `α_X = op(id_{PTX})` is tabulated.
const OP_TABLE_CAP: u128 = 1 << 20;

/// `α_X = op(id_{PTX})`.
pub fn noiter_to_algebra(d: &DistLawNoIteration, u: &TestUniverse) -> Result<DistLawAlgebra> {
    refuse_unless(check_noiter(d, u))?;
    Ok(noiter_to_algebra_unchecked(d))
}

fn noiter_to_algebra_unchecked(d: &DistLawNoIteration) -> DistLawAlgebra {
    let (t, pf) = (&d.t.t, &d.p_functor);
    let pt = FunctorExpr::comp(pf, t);
    let (op, pt1) = (d.op.clone(), pt.clone());
    let src = word(&[t, pf, t]);
    let src1 = src.clone();
    let alpha = NatTrans::per_object("alpha", src, pt, move |x| {
        // The table lives on TPTX; past the cap the component is reported
        // as unavailable instead of exhausting memory.
        match src1.card(x.len() as u128) {
            Some(n) if n <= OP_TABLE_CAP => op(x, &FinFn::identity(&pt1.apply_obj(x))),
            _ => Err(Error::OutOfRange(format!(
                "op(id) at a set of size {} needs a table on TPT of it",
                x.len()
            ))),
        }
    });
    DistLawAlgebra {
        name: d.name.clone(),
        t: d.t.clone(),
        p: extensive_p_as_monoidal(d),
        alpha,
    }
}

fn extensive_p_as_monoidal(d: &DistLawNoIteration) -> MonadMonoidal {
    let (pu, pe, pf) = (d.p.clone(), d.p.clone(), d.p_functor.clone());
    let unit = NatTrans::per_object("eta", FunctorExpr::Id, pf.clone(), move |x| (pu.unit)(x));
    let mult = NatTrans::per_object("mu", FunctorExpr::comp(&pf, &pf), pf.clone(), move |x| {
        (pe.ext)(x, &FinFn::identity(&pf.apply_obj(x)))
    });
    MonadMonoidal::new(&d.p.name, d.p_functor.clone(), unit, mult).expect("P boundaries")
}

impl DistLawNoIteration {
    fn pt(&self, y: &FinSet) -> FinSet {
        (self.p.obj)(&self.t.t.apply_obj(y))
    }

    /// `k^P = μ ∘ Pk` for `k: A -> PB`.
    fn p_ext(&self, b: &FinSet, k: &FinFn) -> Result<FinFn> {
        (self.p.ext)(b, k)
    }
}

pub fn check_noiter(d: &DistLawNoIteration, u: &TestUniverse) -> LawReport {
    let mut a1 = TableCheck::new("op after unit");
    let mut a2 = TableCheck::new("op of eta");
    let mut a3 = TableCheck::new("op of composite");
    let t = &d.t;
    for x in &u.objects {
        let tx = t.t.apply_obj(x);
        let eta_tx = (d.p.unit)(&tx);
        let lhs = eta_tx.clone().and_then(|e| (d.op)(x, &e));
        let rhs = eta_tx.and_then(|e| t.mult.component(x).and_then(|m| compose(&e, &m)));
        a2.record(x, &[], lhs, rhs);
    }
    for x in &u.objects {
        let ux = t.unit.component(x);
        for y in &u.objects {
            let (fs, full) = u.functions(x, &d.pt(y));
            a1.mark_sampled(full);
            for f in &fs {
                let lhs = ux.clone().and_then(|ux| compose(&(d.op)(y, f)?, &ux));
                if !a1.record(x, &[f], lhs, Ok(f.clone())) {
                    break;
                }
            }
        }
    }
    'outer: for y in &u.objects {
        for z in &u.objects {
            let tz = t.t.apply_obj(z);
            let (gs, gfull) = u.functions(y, &d.pt(z));
            a3.mark_sampled(gfull);
            for g in &gs {
                // (op g)^P : PTY -> PTZ
                let gp = (d.op)(z, g).and_then(|og| d.p_ext(&tz, &og));
                for x in &u.objects {
                    let (fs, ffull) = u.functions(x, &d.pt(y));
                    a3.mark_sampled(ffull);
                    for f in &fs {
                        let lhs = gp.clone().and_then(|gp| compose(&gp, &(d.op)(y, f)?));
                        let rhs = gp.clone().and_then(|gp| (d.op)(z, &compose(&gp, f)?));
                        if !a3.record(x, &[f, g], lhs, rhs) {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    LawReport::new(
        &d.name,
        "no-iteration",
        u.describe(),
        vec![a1.finish(), a2.finish(), a3.finish()],
    )
}

/// The monad `PT` with unit `ηT ∘ u` and multiplication
/// `μT ∘ PPm ∘ PλT`, where `λ = α ∘ TPu`.
pub fn compose_monads(d: &DistLawAlgebra, u: &TestUniverse) -> Result<MonadMonoidal> {
    refuse_unless(check_algebra(d, u))?;
    let (t, p) = (&d.t.t, &d.p.t);
    let lambda = algebra_to_monoidal_unchecked(d).lambda;
    let unit = seq(&[d.t.unit.clone(), w(&[], &d.p.unit, &[t])])?;
    let mult = seq(&[
        w(&[p], &lambda, &[t]),
        w(&[p, p], &d.t.mult, &[]),
        w(&[], &d.p.mult, &[t]),
    ])?;
    MonadMonoidal::new(&format!("{} composite", d.name), word(&[p, t]), unit, mult)
}

/// `T` as a monad on the Kleisli category of `P`: unit `η_{TX} ∘ u_X`,
/// extension `f ↦ α_Y ∘ Tf`.
pub fn extend_to_kleisli(d: &DistLawAlgebra, u: &TestUniverse) -> Result<MonadExtensive> {
    let n = algebra_to_noiter(d, u)?;
    let p = Arc::new(monoidal_to_extensive(&d.p));
    let (t1, t2) = (d.t.t.clone(), d.t.clone());
    let p1 = p.clone();
    let op = n.op.clone();
    Ok(MonadExtensive {
        name: format!("{} over Kleisli", d.t.name),
        obj: Arc::new(move |x| t1.apply_obj(x)),
        unit: Arc::new(move |x| {
            let ux = t2.unit.component(x)?;
            compose(&(p1.unit)(ux.cod())?, &ux)
        }),
        ext: Arc::new(move |y, f| op(y, f)),
        base: Base::Kleisli(p),
    })
}

/// Monad laws for both factors.
pub fn check_factors(t: &MonadMonoidal, p: &MonadMonoidal, u: &TestUniverse) -> Result<()> {
    refuse_unless(check_monad_monoidal(t, u))?;
    refuse_unless(check_monad_monoidal(p, u))
}

impl MixedLaw {
    pub fn new(
        name: &str,
        l: ComonadMonoidal,
        r: MonadMonoidal,
        lambda: NatTrans,
    ) -> Result<MixedLaw> {
        check_boundary(
            "lambda",
            &lambda,
            &FunctorExpr::comp(&l.l, &r.t),
            &FunctorExpr::comp(&r.t, &l.l),
        )?;
        Ok(MixedLaw {
            name: name.to_string(),
            l,
            r,
            lambda,
        })
    }

    fn triangles(&self) -> Result<Equations> {
        let (l, r) = (&self.l.l, &self.r.t);
        let (eps, eta, lam) = (&self.l.counit, &self.r.unit, &self.lambda);
        Ok(vec![
            (
                "epsilon triangle",
                seq(&[lam.clone(), w(&[r], eps, &[])])?,
                w(&[], eps, &[r]),
            ),
            (
                "eta triangle",
                seq(&[w(&[l], eta, &[]), lam.clone()])?,
                w(&[], eta, &[l]),
            ),
        ])
    }
}

pub fn check_mixed_decagon(mx: &MixedLaw, u: &TestUniverse) -> LawReport {
    let eqs = (|| {
        let (l, r) = (&mx.l.l, &mx.r.t);
        let (delta, mu, lam) = (&mx.l.comult, &mx.r.mult, &mx.lambda);
        let mut eqs = mx.triangles()?;
        let top = seq(&[
            w(&[], lam, &[r]),
            w(&[r], delta, &[r]),
            w(&[r, l], lam, &[]),
            w(&[r], lam, &[l]),
            w(&[], mu, &[l, l]),
        ])?;
        let bottom = seq(&[
            w(&[], delta, &[r, r]),
            w(&[l], lam, &[r]),
            w(&[l, r], lam, &[]),
            w(&[l], mu, &[l]),
            w(&[], lam, &[l]),
        ])?;
        eqs.push(("mixed decagon", top, bottom));
        Ok(eqs)
    })();
    run(&mx.name, "mixed decagon", u, eqs)
}

pub fn check_mixed_classic(mx: &MixedLaw, u: &TestUniverse) -> LawReport {
    let eqs = (|| {
        let (l, r) = (&mx.l.l, &mx.r.t);
        let (delta, mu, lam) = (&mx.l.comult, &mx.r.mult, &mx.lambda);
        let mut eqs = mx.triangles()?;
        eqs.push((
            "delta pentagon",
            seq(&[lam.clone(), w(&[r], delta, &[])])?,
            seq(&[w(&[], delta, &[r]), w(&[l], lam, &[]), w(&[], lam, &[l])])?,
        ));
        eqs.push((
            "mu pentagon",
            seq(&[w(&[l], mu, &[]), lam.clone()])?,
            seq(&[w(&[], lam, &[r]), w(&[r], lam, &[]), w(&[], mu, &[l])])?,
        ));
        Ok(eqs)
    })();
    run(&mx.name, "mixed classic", u, eqs)
}

/// Comonad laws for `L` and monad laws for `R`.
pub fn check_mixed_factors(mx: &MixedLaw, u: &TestUniverse) -> Result<()> {
    refuse_unless(check_comonad(&mx.l, u))?;
    refuse_unless(check_monad_monoidal(&mx.r, u))
}

/// Table equality of two families at every object of the universe.
pub fn same_tables(a: &NatTrans, b: &NatTrans, u: &TestUniverse) -> Result<bool> {
    for x in &u.objects {
        if a.component(x)? != b.component(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `monoidal -> algebra -> monoidal` reproduces the λ tables.
pub fn roundtrip_lambda(d: &DistLawMonoidal, u: &TestUniverse) -> Result<bool> {
    let back = algebra_to_monoidal(&monoidal_to_algebra(d), u)?;
    same_tables(&d.lambda, &back.lambda, u)
}

/// `algebra -> monoidal -> algebra` reproduces the α tables.
pub fn roundtrip_alpha_via_monoidal(d: &DistLawAlgebra, u: &TestUniverse) -> Result<bool> {
    let back = monoidal_to_algebra(&algebra_to_monoidal(d, u)?);
    same_tables(&d.alpha, &back.alpha, u)
}

/// `algebra -> no-iteration -> algebra` reproduces the α tables.
pub fn roundtrip_alpha_via_noiter(d: &DistLawAlgebra, u: &TestUniverse) -> Result<bool> {
    let back = noiter_to_algebra(&algebra_to_noiter(d, u)?, u)?;
    same_tables(&d.alpha, &back.alpha, u)
}
