//! Degenerate evaluation: a strict instance reads every functor symbol as
//! a functor on finite sets, every 1-cell as a natural transformation and
//! every 2-cell as the equation between its two boundary composites.
//!
//! Object symbols (`A`, `B`, ...) stand for constant functors and generic
//! arrows (`f`, `g`, ...) for functions between their carriers. Both are
//! quantified over the test universe.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::signature::Signature;
use super::term::{normalize, PastingTerm};
use super::word::{Path, Word};
use crate::builtin;
use crate::check::check_equation;
use crate::distlaw::{monoidal_to_algebra, DistLawMonoidal};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::{Carrier, FunctorExpr};
use crate::nat::{Ctx, NatTrans};
use crate::registry::{RegisteredLaw, Registry};
use crate::report::{AxiomVerdict, LawReport, Witness};
use crate::universe::{stable_hash, TestUniverse};

/// Assignments of generic arrows tried per tuple of objects before
/// switching to seeded sampling.
const GENERIC_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct Interpretation {
    pub name: String,
    pub functors: BTreeMap<String, FunctorExpr>,
    pub arrows: BTreeMap<String, NatTrans>,
}

impl Interpretation {
    /// `T`, `P`, their units and multiplications, `lambda`, and the induced
    /// `alpha = P m ∘ lambda T`.
    pub fn from_law(d: &DistLawMonoidal) -> Interpretation {
        let alpha = monoidal_to_algebra(d).alpha;
        Interpretation {
            name: d.name.clone(),
            functors: BTreeMap::from([
                ("T".to_string(), d.t.t.clone()),
                ("P".to_string(), d.p.t.clone()),
            ]),
            arrows: BTreeMap::from([
                ("u".to_string(), d.t.unit.clone()),
                ("m".to_string(), d.t.mult.clone()),
                ("eta".to_string(), d.p.unit.clone()),
                ("mu".to_string(), d.p.mult.clone()),
                ("lambda".to_string(), d.lambda.clone()),
                ("alpha".to_string(), alpha),
            ]),
        }
    }

    /// Both monads the identity, every 1-cell an identity.
    pub fn identity() -> Interpretation {
        let id = builtin::identity_monad();
        let lambda = NatTrans::identity(&FunctorExpr::Id);
        let d = DistLawMonoidal {
            name: "identity".into(),
            t: id.clone(),
            p: id,
            lambda,
        };
        Interpretation::from_law(&d)
    }

    pub fn from_registry(reg: &Registry, name: &str) -> Result<Interpretation> {
        if name == "identity" {
            return Ok(Interpretation::identity());
        }
        match reg.law(name)? {
            RegisteredLaw::Dist(d) => Ok(Interpretation::from_law(&d)),
            RegisteredLaw::Mixed(_) => Err(Error::Interpretation(format!(
                "{name} is a mixed law; only distributive laws of monads interpret the signature"
            ))),
        }
    }

    fn functor(&self, sym: &str) -> Result<FunctorExpr> {
        self.functors
            .get(sym)
            .cloned()
            .ok_or_else(|| Error::Interpretation(format!("no functor assigned to {sym}")))
    }
}

/// Values of the object symbols and generic arrows in one instance.
#[derive(Clone, Debug, Default)]
struct Env {
    objects: BTreeMap<String, FinSet>,
    arrows: BTreeMap<String, (FinFn, NatTrans)>,
}

impl Env {
    fn describe(&self) -> String {
        let parts: Vec<String> = self
            .objects
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        parts.join(", ")
    }

    fn morphisms(&self) -> Vec<String> {
        self.arrows
            .iter()
            .map(|(k, (f, _))| format!("{k} = {f}"))
            .collect()
    }
}

struct Evaluator<'a> {
    sig: &'a Signature,
    interp: &'a Interpretation,
}

impl Evaluator<'_> {
    fn word(&self, w: &Word, env: &Env) -> Result<FunctorExpr> {
        let syms: Vec<&str> = w.symbols().collect();
        let mut fs = Vec::with_capacity(syms.len());
        for (i, s) in syms.iter().enumerate() {
            if self.sig.is_object(s) {
                if i + 1 != syms.len() {
                    return Err(Error::Interpretation(format!(
                        "object symbol {s} must end the word {w}"
                    )));
                }
                let x = env
                    .objects
                    .get(*s)
                    .ok_or_else(|| Error::Interpretation(format!("no object assigned to {s}")))?;
                fs.push(FunctorExpr::constant(x.clone()));
            } else {
                fs.push(self.interp.functor(s)?);
            }
        }
        Ok(FunctorExpr::from_factors(&fs))
    }

    fn path(&self, p: &Path, env: &Env) -> Result<NatTrans> {
        if p.is_empty() {
            return Ok(NatTrans::identity(&self.word(p.start(), env)?));
        }
        let mut parts = Vec::with_capacity(p.len());
        for a in p.atoms() {
            let gen: &str = &a.gen;
            let t = match env.arrows.get(gen) {
                Some((_, t)) => t.clone(),
                None => self.interp.arrows.get(gen).cloned().ok_or_else(|| {
                    Error::Interpretation(format!("no transformation assigned to {gen}"))
                })?,
            };
            let (src, tgt) = (self.word(&a.gen_src, env)?, self.word(&a.gen_tgt, env)?);
            if !t.src().equiv(&src) || !t.tgt().equiv(&tgt) {
                return Err(Error::Interpretation(format!(
                    "{gen} is assigned {} -> {}, but its boundary reads as {src} -> {tgt}",
                    t.src(),
                    t.tgt()
                )));
            }
            parts.push(NatTrans::whisker(
                &self.word(&a.prefix, env)?,
                &t,
                &self.word(&a.suffix, env)?,
            ));
        }
        NatTrans::seq(&parts)
    }

    /// Object symbols and generic arrows mentioned by the paths.
    fn free_symbols(&self, paths: &[&Path]) -> (Vec<String>, Vec<String>) {
        let mut objects = BTreeSet::new();
        let mut arrows = BTreeSet::new();
        let mut note = |w: &Word| {
            for s in w.symbols() {
                if self.sig.is_object(s) {
                    objects.insert(s.to_string());
                }
            }
        };
        for p in paths {
            note(p.start());
            for a in p.atoms() {
                note(&a.src());
                note(&a.tgt());
                if let Ok(g) = self.sig.arrow(&a.gen) {
                    if self.sig.is_generic(g) {
                        arrows.insert(g.name.clone());
                        note(&g.src);
                        note(&g.tgt);
                    }
                }
            }
        }
        (objects.into_iter().collect(), arrows.into_iter().collect())
    }

    /// Every assignment of universe objects to `objects`, each extended by
    /// functions for the generic arrows. The flag is false when some
    /// choices were sampled.
    fn environments(
        &self,
        name: &str,
        objects: &[String],
        arrows: &[String],
        u: &TestUniverse,
    ) -> Result<(Vec<Env>, bool)> {
        let mut tuples: Vec<BTreeMap<String, FinSet>> = vec![BTreeMap::new()];
        for o in objects {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    u.objects.iter().map(move |x| {
                        let mut t = t.clone();
                        t.insert(o.clone(), x.clone());
                        t
                    })
                })
                .collect();
        }
        let mut exhaustive = true;
        let mut out = Vec::new();
        for objs in tuples {
            let base = Env {
                objects: objs,
                arrows: BTreeMap::new(),
            };
            let mut homs = Vec::with_capacity(arrows.len());
            for a in arrows {
                let g = self.sig.arrow(a)?;
                let (src, tgt) = (self.word(&g.src, &base)?, self.word(&g.tgt, &base)?);
                let none = FinSet::empty();
                let (fs, full) = u.functions(&src.apply_obj(&none), &tgt.apply_obj(&none));
                exhaustive &= full;
                homs.push((a.clone(), src, tgt, fs));
            }
            if homs.iter().any(|h| h.3.is_empty()) {
                continue;
            }
            let total = homs
                .iter()
                .try_fold(1usize, |acc, h| acc.checked_mul(h.3.len()))
                .unwrap_or(usize::MAX);
            let picks: Vec<Vec<usize>> = if total <= GENERIC_CAP {
                (0..total)
                    .map(|mut n| {
                        homs.iter()
                            .map(|h| {
                                let i = n % h.3.len();
                                n /= h.3.len();
                                i
                            })
                            .collect()
                    })
                    .collect()
            } else {
                exhaustive = false;
                let mut rng = ChaCha8Rng::seed_from_u64(
                    u.seed ^ stable_hash(&format!("{name}/{}", base.describe())),
                );
                (0..GENERIC_CAP)
                    .map(|_| homs.iter().map(|h| rng.gen_range(0..h.3.len())).collect())
                    .collect()
            };
            for pick in picks {
                let mut env = base.clone();
                for ((a, src, tgt, fs), i) in homs.iter().zip(pick) {
                    let f = fs[i].clone();
                    let table = f.clone();
                    let t = NatTrans::point(a, src.clone(), tgt.clone(), move |e| table.apply(e));
                    env.arrows.insert(a.clone(), (f, t));
                }
                out.push(env);
            }
        }
        Ok((out, exhaustive))
    }

    /// Compares the composites of two parallel paths.
    fn compare(
        &self,
        name: &str,
        src: &Path,
        tgt: &Path,
        u: &TestUniverse,
    ) -> Result<AxiomVerdict> {
        let (objects, arrows) = self.free_symbols(&[src, tgt]);
        if objects.is_empty() {
            let env = Env::default();
            let (l, r) = (self.path(src, &env)?, self.path(tgt, &env)?);
            return Ok(check_equation(name, &l, &r, u));
        }
        let (envs, mut exhaustive) = self.environments(name, &objects, &arrows, u)?;
        let mut v = AxiomVerdict::new(name);
        let none = FinSet::empty();
        let ctx = Ctx::at(&none);
        for env in envs {
            let (l, r) = (self.path(src, &env)?, self.path(tgt, &env)?);
            let (elems, full) = u.elements(&Carrier::new(&l.src(), &none), name);
            exhaustive &= full;
            for e in &elems {
                let (a, b) = (l.apply(&ctx, e), r.apply(&ctx, e));
                match (&a, &b) {
                    (Err(Error::OutOfRange(_)), _) | (_, Err(Error::OutOfRange(_))) => {
                        v.skipped += 1;
                        continue;
                    }
                    (Ok(x), Ok(y)) if x == y => {
                        v.instances += 1;
                        continue;
                    }
                    _ => {}
                }
                v.instances += 1;
                v.pass = false;
                v.witness = Some(Witness {
                    object: env.describe(),
                    element: e.to_string(),
                    lhs: show(&a),
                    rhs: show(&b),
                    morphisms: env.morphisms(),
                });
                return Ok(v);
            }
        }
        v.exhaustive = exhaustive;
        Ok(v)
    }
}

fn show(r: &Result<Element>) -> String {
    match r {
        Ok(e) => e.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// One equation to verify: the two boundary composites of a whiskered
/// generator occurring in a pasting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub name: String,
    pub src: Path,
    pub tgt: Path,
}

/// The distinct cell occurrences of the given terms, in the order their
/// normal forms list them. Interchange steps hold in every strict instance
/// and are not listed.
pub fn obligations(sig: &Signature, terms: &[&PastingTerm]) -> Result<Vec<Obligation>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in terms {
        for o in normalize(t, sig)?.steps {
            if o.name == "swap" {
                continue;
            }
            let key = if o.src <= o.tgt {
                (o.src.clone(), o.tgt.clone())
            } else {
                (o.tgt.clone(), o.src.clone())
            };
            if seen.insert(key) {
                out.push(Obligation {
                    name: o.term.to_string(),
                    src: o.src,
                    tgt: o.tgt,
                });
            }
        }
    }
    Ok(out)
}

fn run(
    sig: &Signature,
    obs: &[Obligation],
    interp: &Interpretation,
    u: &TestUniverse,
) -> Result<Vec<AxiomVerdict>> {
    let ev = Evaluator { sig, interp };
    obs.par_iter()
        .map(|o| ev.compare(&o.name, &o.src, &o.tgt, u))
        .collect()
}

/// Every cell occurring in either side of the named axiom, evaluated in
/// the strict instance.
pub fn check_axiom_degenerate(
    sig: &Signature,
    axiom: &str,
    interp: &Interpretation,
    u: &TestUniverse,
) -> Result<LawReport> {
    let ax = sig.axiom(axiom)?;
    let obs = obligations(sig, &[&ax.lhs, &ax.rhs])?;
    let verdicts = run(sig, &obs, interp, u)?;
    Ok(LawReport::new(
        &interp.name,
        &format!("degenerate {axiom}"),
        u.describe(),
        verdicts,
    ))
}

/// The two boundary composites of a pasting, then each of its cells.
pub fn check_term_degenerate(
    sig: &Signature,
    label: &str,
    term: &PastingTerm,
    interp: &Interpretation,
    u: &TestUniverse,
) -> Result<LawReport> {
    let n = normalize(term, sig)?;
    let mut obs = vec![Obligation {
        name: "boundary".into(),
        src: n.src.clone(),
        tgt: n.tgt.clone(),
    }];
    obs.extend(obligations(sig, &[term])?);
    let verdicts = run(sig, &obs, interp, u)?;
    Ok(LawReport::new(
        &interp.name,
        &format!("degenerate {label}"),
        u.describe(),
        verdicts,
    ))
}

/// The composite of a path in the strict instance, with object symbols
/// and generic arrows fixed by the caller.
pub fn evaluate_path(
    sig: &Signature,
    path: &Path,
    interp: &Interpretation,
    objects: &BTreeMap<String, FinSet>,
    arrows: &BTreeMap<String, FinFn>,
) -> Result<NatTrans> {
    let ev = Evaluator { sig, interp };
    let mut env = Env {
        objects: objects.clone(),
        arrows: BTreeMap::new(),
    };
    for (name, f) in arrows {
        let g = sig.arrow(name)?;
        let (src, tgt) = (ev.word(&g.src, &env)?, ev.word(&g.tgt, &env)?);
        let none = FinSet::empty();
        if f.dom() != &src.apply_obj(&none) || f.cod() != &tgt.apply_obj(&none) {
            return Err(Error::Interpretation(format!(
                "{name} does not map {src} to {tgt}"
            )));
        }
        let table = f.clone();
        let t = NatTrans::point(name, src, tgt, move |e| table.apply(e));
        env.arrows.insert(name.clone(), (f.clone(), t));
    }
    ev.path(path, &env)
}
