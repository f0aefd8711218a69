//! One function per subcommand. Each returns an [`Outcome`]; errors are
//! usage or configuration problems and end the run with exit code 2.

use distlaw::distlaw::{
    algebra_to_monoidal, algebra_to_noiter, check_algebra, check_beck, check_decagon,
    check_five_axiom, check_mixed_classic, check_mixed_decagon, check_noiter, compose_monads,
    extend_to_kleisli, monoidal_to_algebra, noiter_to_algebra, same_tables, DistLawAlgebra,
    DistLawMonoidal, MixedLaw,
};
use distlaw::monad::{
    check_monad_extensive, check_monad_monoidal, check_monad_naturality, extensive_to_monoidal,
    monoidal_to_extensive, MonadMonoidal,
};
use distlaw::pasting::builders::constructions;
use distlaw::pasting::Signature;
use distlaw::pasting::{boundary, check_axiom_degenerate, check_term_degenerate, Interpretation};
use distlaw::registry::{RegisteredLaw, Registry};
use distlaw::search::{enumerate_candidates, SearchResult, SearchSpec, TargetForm};
use distlaw::{AxiomVerdict, Error, NatTrans, Result, TestUniverse};
use serde_json::{json, Value};

use crate::report::{Group, Outcome};
use crate::{Form, Presentation};

fn tables(t: &NatTrans, u: &TestUniverse) -> Result<Value> {
    let mut out = serde_json::Map::new();
    for x in &u.objects {
        out.insert(x.to_string(), Value::String(t.component(x)?.to_string()));
    }
    Ok(Value::Object(out))
}

fn dist_law(reg: &Registry, name: &str) -> Result<DistLawMonoidal> {
    match reg.law(name)? {
        RegisteredLaw::Dist(d) => Ok(d),
        RegisteredLaw::Mixed(_) => Err(Error::Config(format!(
            "'{name}' is a mixed law; this command needs a law between two monads"
        ))),
    }
}

/// A failed precondition is a check failure, not a usage error.
fn or_failed<T>(subject: &str, suite: &str, r: Result<T>) -> Result<std::result::Result<T, Group>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::Precondition(_)) => Ok(Err(Group::single(
            subject,
            suite,
            AxiomVerdict::failed("precondition", e.to_string()),
        ))),
        Err(e) => Err(e),
    }
}

/// All suites pass or all fail.
fn agreement(subject: &str, groups: &[Group]) -> Group {
    let first = groups.first().map(|g| g.pass);
    let agree = groups.iter().all(|g| Some(g.pass) == first);
    let mut v = AxiomVerdict::new("all forms agree");
    v.instances = groups.len() as u64;
    if !agree {
        v.pass = false;
        let split: Vec<String> = groups
            .iter()
            .map(|g| format!("{}={}", g.suite, if g.pass { "pass" } else { "fail" }))
            .collect();
        v.note = Some(split.join(", "));
    }
    Group::single(subject, "agreement", v)
}

fn boolean(axiom: &str, pass: bool, instances: u64, note: Option<String>) -> AxiomVerdict {
    let mut v = AxiomVerdict::new(axiom);
    v.pass = pass;
    v.instances = instances;
    if !pass {
        v.note = note;
    }
    v
}

pub fn check_monad(
    reg: &Registry,
    names: &[String],
    form: Form,
    u: &TestUniverse,
) -> Result<Outcome> {
    let names = if names.is_empty() {
        reg.monad_names()
    } else {
        names.to_vec()
    };
    let (monoidal, extensive) = match form {
        Form::Monoidal => (true, false),
        Form::Extensive => (false, true),
        Form::All => (true, true),
        other => {
            return Err(Error::Config(format!(
                "check-monad takes --form monoidal, extensive or all, not {}",
                other.name()
            )))
        }
    };
    let mut out = Outcome::new(Some(u));
    for name in &names {
        let m = reg.monad(name)?;
        let mut mine = Vec::new();
        if monoidal {
            mine.push(Group::from_report(check_monad_monoidal(&m, u)));
            mine.push(Group::from_report(check_monad_naturality(&m, u)));
        }
        if extensive {
            mine.push(Group::from_report(check_monad_extensive(
                &monoidal_to_extensive(&m),
                u,
            )));
        }
        if monoidal && extensive {
            mine.push(monad_round_trip(&m, u)?);
            let suites: Vec<Group> = mine
                .iter()
                .filter(|g| g.suite != "round trip")
                .cloned()
                .collect();
            mine.push(agreement(&m.name, &suites));
        }
        for g in mine {
            out.push(g);
        }
    }
    Ok(out)
}

fn monad_round_trip(m: &MonadMonoidal, u: &TestUniverse) -> Result<Group> {
    let back = extensive_to_monoidal(&monoidal_to_extensive(m), &m.t, u)?;
    let n = u.objects.len() as u64;
    let unit = same_tables(&m.unit, &back.unit, u)?;
    let mult = same_tables(&m.mult, &back.mult, u)?;
    Ok(Group::new(
        &m.name,
        "round trip",
        vec![
            boolean(
                "unit tables",
                unit,
                n,
                Some("unit differs after the round trip".into()),
            ),
            boolean(
                "multiplication tables",
                mult,
                n,
                Some("multiplication differs after the round trip".into()),
            ),
        ],
    ))
}

fn dist_suites(d: &DistLawMonoidal, forms: &[Form], u: &TestUniverse) -> Result<Vec<Group>> {
    let alg = monoidal_to_algebra(d);
    let mut out = Vec::new();
    for f in forms {
        let g = match f {
            Form::Monoidal => Group::from_report(check_beck(d, u)),
            Form::Decagon => Group::from_report(check_decagon(d, u)),
            Form::Algebra => Group::from_report(check_algebra(&alg, u)),
            Form::Noiter => match or_failed(&d.name, "no-iteration", algebra_to_noiter(&alg, u))? {
                Ok(n) => Group::from_report(check_noiter(&n, u)),
                Err(g) => g,
            },
            Form::Five => {
                let mut r = check_five_axiom(&alg.alpha, &d.t, &d.p, u);
                r.law.clone_from(&d.name);
                Group::from_report(r)
            }
            other => {
                return Err(Error::Config(format!(
                    "'{}' is a law between monads; --form {} does not apply",
                    d.name,
                    other.name()
                )))
            }
        };
        out.push(g);
    }
    Ok(out)
}

fn mixed_suites(mx: &MixedLaw, forms: &[Form], u: &TestUniverse) -> Result<Vec<Group>> {
    forms
        .iter()
        .map(|f| match f {
            Form::MixedDecagon => Ok(Group::from_report(check_mixed_decagon(mx, u))),
            Form::MixedClassic => Ok(Group::from_report(check_mixed_classic(mx, u))),
            other => Err(Error::Config(format!(
                "'{}' is a mixed law; --form {} does not apply",
                mx.name,
                other.name()
            ))),
        })
        .collect()
}

pub fn check_law(reg: &Registry, name: &str, form: Form, u: &TestUniverse) -> Result<Outcome> {
    let law = reg.law(name)?;
    let mut out = Outcome::new(Some(u));
    let groups = match (&law, form) {
        (RegisteredLaw::Dist(d), Form::All) => dist_suites(
            d,
            &[
                Form::Monoidal,
                Form::Decagon,
                Form::Algebra,
                Form::Noiter,
                Form::Five,
            ],
            u,
        )?,
        (RegisteredLaw::Dist(d), f) => dist_suites(d, &[f], u)?,
        (RegisteredLaw::Mixed(mx), Form::All) => {
            mixed_suites(mx, &[Form::MixedDecagon, Form::MixedClassic], u)?
        }
        (RegisteredLaw::Mixed(mx), f) => mixed_suites(mx, &[f], u)?,
    };
    let cross = (form == Form::All).then(|| agreement(law.name(), &groups));
    for g in groups.into_iter().chain(cross) {
        out.push(g);
    }
    Ok(out)
}

pub fn convert(
    reg: &Registry,
    name: &str,
    from: Presentation,
    to: Presentation,
    roundtrip: bool,
    u: &TestUniverse,
) -> Result<Outcome> {
    use Presentation::*;
    if from == to {
        return Err(Error::Config(format!(
            "--from and --to are both {}",
            from.name()
        )));
    }
    let d = dist_law(reg, name)?;
    let alg = monoidal_to_algebra(&d);
    let mut out = Outcome::new(Some(u));
    let n = u.objects.len() as u64;
    let suite = format!("convert {} to {}", from.name(), to.name());

    // The source presentation, already checked where a converter needs it.
    let source_alg: DistLawAlgebra = match from {
        Monoidal | Algebra => alg.clone(),
        Noiter => match or_failed(&d.name, &suite, algebra_to_noiter(&alg, u))? {
            Ok(nit) => match or_failed(&d.name, &suite, noiter_to_algebra(&nit, u))? {
                Ok(a) => a,
                Err(g) => {
                    out.push(g);
                    return Ok(out);
                }
            },
            Err(g) => {
                out.push(g);
                return Ok(out);
            }
        },
    };

    let mut details = serde_json::Map::new();
    let recovered: Option<(&str, bool)> = match to {
        Algebra => {
            let target = if from == Monoidal {
                alg.clone()
            } else {
                source_alg.clone()
            };
            out.push(Group::from_report(check_algebra(&target, u)));
            details.insert("alpha".into(), tables(&target.alpha, u)?);
            if from == Monoidal {
                match or_failed(&d.name, &suite, algebra_to_monoidal(&target, u))? {
                    Ok(m) => Some(("lambda", same_tables(&d.lambda, &m.lambda, u)?)),
                    Err(g) => {
                        out.push(g);
                        None
                    }
                }
            } else {
                Some(("alpha", same_tables(&alg.alpha, &target.alpha, u)?))
            }
        }
        Monoidal => match or_failed(&d.name, &suite, algebra_to_monoidal(&source_alg, u))? {
            Ok(m) => {
                out.push(Group::from_report(check_beck(&m, u)));
                details.insert("lambda".into(), tables(&m.lambda, u)?);
                if from == Algebra {
                    let again = monoidal_to_algebra(&m);
                    Some(("alpha", same_tables(&source_alg.alpha, &again.alpha, u)?))
                } else {
                    Some(("lambda", same_tables(&d.lambda, &m.lambda, u)?))
                }
            }
            Err(g) => {
                out.push(g);
                None
            }
        },
        Noiter => match or_failed(&d.name, &suite, algebra_to_noiter(&source_alg, u))? {
            Ok(nit) => {
                out.push(Group::from_report(check_noiter(&nit, u)));
                match or_failed(&d.name, &suite, noiter_to_algebra(&nit, u))? {
                    Ok(a) => {
                        if from == Monoidal {
                            match or_failed(&d.name, &suite, algebra_to_monoidal(&a, u))? {
                                Ok(m) => Some(("lambda", same_tables(&d.lambda, &m.lambda, u)?)),
                                Err(g) => {
                                    out.push(g);
                                    None
                                }
                            }
                        } else {
                            Some(("alpha", same_tables(&source_alg.alpha, &a.alpha, u)?))
                        }
                    }
                    Err(g) => {
                        out.push(g);
                        None
                    }
                }
            }
            Err(g) => {
                out.push(g);
                None
            }
        },
    };
    if roundtrip {
        if let Some((what, same)) = recovered {
            out.push(Group::single(
                &d.name,
                "round trip",
                boolean(
                    &format!("{what} recovered"),
                    same,
                    n,
                    Some(format!("{what} tables differ after the round trip")),
                ),
            ));
        }
    }
    out.details = Value::Object(details);
    Ok(out)
}

pub fn compose(reg: &Registry, name: &str, u: &TestUniverse) -> Result<Outcome> {
    let d = dist_law(reg, name)?;
    let mut out = Outcome::new(Some(u));
    match or_failed(
        &d.name,
        "composite monad",
        compose_monads(&monoidal_to_algebra(&d), u),
    )? {
        Ok(m) => {
            out.push(Group::from_report(check_monad_monoidal(&m, u)));
            out.details = json!({ "functor": m.t.to_string(), "name": m.name });
        }
        Err(g) => out.push(g),
    }
    Ok(out)
}

pub fn extend_kleisli(reg: &Registry, name: &str, u: &TestUniverse) -> Result<Outcome> {
    let d = dist_law(reg, name)?;
    let mut out = Outcome::new(Some(u));
    match or_failed(
        &d.name,
        "Kleisli extension",
        extend_to_kleisli(&monoidal_to_algebra(&d), u),
    )? {
        Ok(ext) => {
            let mut r = check_monad_extensive(&ext, u);
            r.suite = format!("{} over Kleisli homs", r.suite);
            out.push(Group::from_report(r));
            out.details = json!({ "name": ext.name });
        }
        Err(g) => out.push(g),
    }
    Ok(out)
}

fn search_details(r: &SearchResult) -> Value {
    json!({
        "header": r.header,
        "stages": r.stages,
        "survivors": r.views(),
        "skipped_instances": r.skipped_instances,
        "exhaustive": r.exhaustive,
    })
}

/// Survivors that pass the three-axiom algebra form must pass the five.
fn implication(spec: &SearchSpec, r: &SearchResult) -> Group {
    let u = &spec.universe;
    let mut v = AxiomVerdict::new("algebra form implies five-axiom form");
    let mut notes = Vec::new();
    for (i, c) in r.survivors.iter().enumerate() {
        let alpha = match spec.form {
            TargetForm::Algebra => c.family.clone(),
            TargetForm::Monoidal | TargetForm::Decagon => {
                monoidal_to_algebra(&DistLawMonoidal {
                    name: format!("survivor {i}"),
                    t: spec.t.clone(),
                    p: spec.p.clone(),
                    lambda: c.family.clone(),
                })
                .alpha
            }
        };
        let alg = DistLawAlgebra {
            name: format!("survivor {i}"),
            t: spec.t.clone(),
            p: spec.p.clone(),
            alpha: alpha.clone(),
        };
        if !check_algebra(&alg, u).passed() {
            continue;
        }
        v.instances += 1;
        let five = check_five_axiom(&alpha, &spec.t, &spec.p, u);
        if !five.exhaustive() {
            v.exhaustive = false;
        }
        if let Some(bad) = five.first_failure() {
            v.pass = false;
            notes.push(format!("survivor {i} fails {}", bad.axiom));
        }
    }
    if !notes.is_empty() {
        v.note = Some(notes.join("; "));
    }
    Group::single(&spec.t.name, &format!("search {}", form_name(spec.form)), v)
}

fn form_name(f: TargetForm) -> &'static str {
    match f {
        TargetForm::Monoidal => "monoidal",
        TargetForm::Decagon => "decagon",
        TargetForm::Algebra => "algebra",
    }
}

pub fn search(
    reg: &Registry,
    monads: &[String],
    form: Form,
    budget: u64,
    u: &TestUniverse,
) -> Result<Outcome> {
    let [t, p] = monads else {
        return Err(Error::Config(
            "search needs --monad twice: the first is T, the second P".into(),
        ));
    };
    let forms = match form {
        Form::Monoidal => vec![TargetForm::Monoidal],
        Form::Decagon => vec![TargetForm::Decagon],
        Form::Algebra => vec![TargetForm::Algebra],
        Form::All => vec![TargetForm::Monoidal, TargetForm::Decagon],
        other => {
            return Err(Error::Config(format!(
                "search takes --form monoidal, decagon, algebra or all, not {}",
                other.name()
            )))
        }
    };
    let (t, p) = (reg.monad(t)?, reg.monad(p)?);
    let mut out = Outcome::new(Some(u));
    let mut details = serde_json::Map::new();
    let mut results = Vec::new();
    for f in forms {
        let spec = SearchSpec::new(t.clone(), p.clone(), f, u.clone(), budget)?;
        let r = enumerate_candidates(&spec)?;
        out.exhaustive &= r.exhaustive;
        out.push(implication(&spec, &r));
        details.insert(form_name(f).into(), search_details(&r));
        results.push(r);
    }
    if results.len() == 2 {
        let same = results[0].fingerprint() == results[1].fingerprint();
        out.push(Group::single(
            &t.name,
            "agreement",
            boolean(
                "Beck and decagon survivors identical",
                same,
                results[0].survivors.len() as u64,
                Some(format!(
                    "{} survivors under Beck, {} under the decagon",
                    results[0].survivors.len(),
                    results[1].survivors.len()
                )),
            ),
        ));
    }
    out.details = Value::Object(details);
    Ok(out)
}

pub fn load_signature(path: Option<&std::path::Path>) -> Result<Signature> {
    match path {
        Some(p) => Signature::load(p),
        None => Ok(Signature::builtin()),
    }
}

pub fn pasting_check(
    reg: &Registry,
    sig: &Signature,
    axiom: Option<&str>,
    interp: &str,
    u: &TestUniverse,
) -> Result<Outcome> {
    let interp = Interpretation::from_registry(reg, interp)?;
    let names: Vec<String> = match axiom {
        Some(a) => vec![sig.axiom(a)?.name.clone()],
        None => sig.axiom_names().iter().map(|s| s.to_string()).collect(),
    };
    let mut out = Outcome::new(Some(u));
    let mut details = Vec::new();
    for name in &names {
        let ax = sig.axiom(name)?;
        let (src, tgt) = boundary(&ax.lhs, sig)?;
        details.push(json!({ "axiom": name, "src": src.to_string(), "tgt": tgt.to_string() }));
        out.push(Group::from_report(check_axiom_degenerate(
            sig, name, &interp, u,
        )?));
    }
    out.details = json!({ "signature": sig.name, "version": sig.version, "axioms": details });
    Ok(out)
}

pub fn pasting_derive(
    reg: &Registry,
    sig: &Signature,
    interp: Option<&str>,
    u: &TestUniverse,
) -> Result<Outcome> {
    let interp = interp
        .map(|i| Interpretation::from_registry(reg, i))
        .transpose()?;
    let mut out = Outcome::new(interp.as_ref().map(|_| u));
    let built = match constructions(sig) {
        Ok(b) => b,
        Err(e @ Error::Boundary(_)) => {
            out.push(Group::single(
                &sig.name,
                "constructions",
                AxiomVerdict::failed("boundary", e.to_string()),
            ));
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    let mut details = Vec::new();
    for c in &built {
        let mut v = AxiomVerdict::new("boundary");
        v.instances = 1;
        out.push(Group::single(&c.cell, "construction", v));
        if let Some(i) = &interp {
            out.push(Group::from_report(check_term_degenerate(
                sig, &c.cell, &c.term, i, u,
            )?));
        }
        details.push(json!({
            "cell": c.cell,
            "term": c.term.to_string(),
            "src": c.src.to_string(),
            "tgt": c.tgt.to_string(),
        }));
    }
    out.details = json!({ "constructions": details });
    Ok(out)
}
