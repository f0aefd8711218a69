//! The monad and law registry, built in or loaded from JSON.

use serde::Deserialize;

use crate::builtin::{self, Monoid};
use crate::distlaw::{DistLawMonoidal, MixedLaw};
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::functor::FunctorExpr;
use crate::monad::{ComonadMonoidal, MonadMonoidal};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidSpec {
    pub elems: Vec<String>,
    pub op: Vec<Vec<String>>,
    pub unit: String,
}

/// A monad (or comonad) by name and finite parameters.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadSpec {
    pub name: String,
    /// Registry key; defaults to `name`.
    #[serde(default)]
    pub label: Option<String>,
    #[serde(rename = "E", default)]
    pub e: Option<Vec<String>>,
    #[serde(default)]
    pub monoid: Option<MonoidSpec>,
    #[serde(rename = "R", default)]
    pub r: Option<Vec<String>>,
    #[serde(rename = "A", default)]
    pub a: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawSpec {
    pub law: String,
    #[serde(rename = "T", default)]
    pub t: Option<MonadSpec>,
    #[serde(rename = "P", default)]
    pub p: Option<MonadSpec>,
    #[serde(rename = "L", default)]
    pub l: Option<MonadSpec>,
    #[serde(rename = "R", default)]
    pub r: Option<MonadSpec>,
    pub lambda: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    #[serde(default)]
    pub monads: Vec<MonadSpec>,
    #[serde(default)]
    pub laws: Vec<LawSpec>,
}

/// A law in the registry: between two monads, or a comonad over a monad.
#[derive(Clone)]
pub enum RegisteredLaw {
    Dist(DistLawMonoidal),
    Mixed(MixedLaw),
}

impl RegisteredLaw {
    pub fn name(&self) -> &str {
        match self {
            RegisteredLaw::Dist(d) => &d.name,
            RegisteredLaw::Mixed(m) => &m.name,
        }
    }
}

fn need<'a>(field: &'a Option<Vec<String>>, key: &str, name: &str) -> Result<&'a Vec<String>> {
    field
        .as_ref()
        .ok_or_else(|| Error::Config(format!("monad '{name}' needs the field \"{key}\"")))
}

fn refuse_extra(spec: &MonadSpec, allowed: &[&str]) -> Result<()> {
    let present = [
        ("E", spec.e.is_some()),
        ("monoid", spec.monoid.is_some()),
        ("R", spec.r.is_some()),
        ("A", spec.a.is_some()),
    ];
    for (key, here) in present {
        if here && !allowed.contains(&key) {
            return Err(Error::Config(format!(
                "field \"{key}\" does not apply to '{}'",
                spec.name
            )));
        }
    }
    Ok(())
}

fn atoms(labels: &[String], key: &str, name: &str) -> Result<FinSet> {
    let set = FinSet::atoms(labels);
    if set.len() != labels.len() {
        return Err(Error::Config(format!(
            "field \"{key}\" of '{name}' repeats a label"
        )));
    }
    Ok(set)
}

impl MonadSpec {
    pub fn simple(name: &str) -> MonadSpec {
        MonadSpec {
            name: name.into(),
            label: None,
            e: None,
            monoid: None,
            r: None,
            a: None,
        }
    }

    pub fn key(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.name)
    }

    pub fn build(&self) -> Result<MonadMonoidal> {
        let n = self.name.as_str();
        let mut m = match n {
            "identity" => {
                refuse_extra(self, &[])?;
                builtin::identity_monad()
            }
            "maybe" => {
                refuse_extra(self, &[])?;
                builtin::maybe()
            }
            "exception" => {
                refuse_extra(self, &["E"])?;
                builtin::exception(&atoms(need(&self.e, "E", n)?, "E", n)?)
            }
            "writer" => {
                refuse_extra(self, &["monoid"])?;
                let spec = self.monoid.as_ref().ok_or_else(|| {
                    Error::Config("monad 'writer' needs the field \"monoid\"".into())
                })?;
                builtin::writer(&Monoid {
                    elems: spec.elems.clone(),
                    op: spec.op.clone(),
                    unit: spec.unit.clone(),
                })?
            }
            "reader" => {
                refuse_extra(self, &["R"])?;
                builtin::reader(&atoms(need(&self.r, "R", n)?, "R", n)?)
            }
            "powerset" => {
                refuse_extra(self, &[])?;
                builtin::powerset()
            }
            other => return Err(Error::Config(format!("unknown monad '{other}'"))),
        };
        m.name = self.key().to_string();
        Ok(m)
    }

    pub fn build_comonad(&self) -> Result<ComonadMonoidal> {
        let n = self.name.as_str();
        match n {
            "identity" => {
                refuse_extra(self, &[])?;
                Ok(builtin::identity_comonad())
            }
            "coreader" => {
                refuse_extra(self, &["A"])?;
                Ok(builtin::coreader(&atoms(need(&self.a, "A", n)?, "A", n)?))
            }
            other => Err(Error::Config(format!("unknown comonad '{other}'"))),
        }
    }
}

fn labelled(name: &str, label: &str) -> MonadSpec {
    MonadSpec {
        label: Some(label.into()),
        ..MonadSpec::simple(name)
    }
}

fn strs(xs: &[&str]) -> Option<Vec<String>> {
    Some(xs.iter().map(|s| s.to_string()).collect())
}

fn z2_spec() -> MonoidSpec {
    let m = Monoid::z2();
    MonoidSpec {
        elems: m.elems,
        op: m.op,
        unit: m.unit,
    }
}

impl Registry {
    pub fn builtin() -> Registry {
        let exc = |label: &str, e: &[&str]| MonadSpec {
            e: strs(e),
            ..labelled("exception", label)
        };
        let rdr = |label: &str, r: &[&str]| MonadSpec {
            r: strs(r),
            ..labelled("reader", label)
        };
        let writer = MonadSpec {
            monoid: Some(z2_spec()),
            ..labelled("writer", "writer-z2")
        };
        let monads = vec![
            MonadSpec::simple("identity"),
            MonadSpec::simple("maybe"),
            exc("exception-1", &["e"]),
            exc("exception-2", &["e1", "e2"]),
            writer.clone(),
            rdr("reader-1", &["r"]),
            rdr("reader-2", &["r1", "r2"]),
            MonadSpec::simple("powerset"),
        ];
        let laws = vec![
            LawSpec {
                law: "exception-over-powerset".into(),
                t: Some(MonadSpec {
                    e: strs(&["e"]),
                    ..MonadSpec::simple("exception")
                }),
                p: Some(MonadSpec::simple("powerset")),
                l: None,
                r: None,
                lambda: "builtin:exception-dist".into(),
            },
            LawSpec {
                law: "writer-over-powerset".into(),
                t: Some(MonadSpec {
                    label: None,
                    ..writer
                }),
                p: Some(MonadSpec::simple("powerset")),
                l: None,
                r: None,
                lambda: "builtin:writer-strength".into(),
            },
            LawSpec {
                law: "coreader-over-powerset".into(),
                t: None,
                p: None,
                l: Some(MonadSpec {
                    a: strs(&["a1", "a2"]),
                    ..MonadSpec::simple("coreader")
                }),
                r: Some(MonadSpec::simple("powerset")),
                lambda: "builtin:coreader-strength".into(),
            },
        ];
        Registry { monads, laws }
    }

    /// Parses a registry document. Errors carry the line of the offending
    /// field.
    pub fn from_json(text: &str) -> Result<Registry> {
        let reg: Registry = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        for m in &reg.monads {
            m.build()?;
        }
        for l in &reg.laws {
            reg.build_law(l)?;
        }
        Ok(reg)
    }

    pub fn load(path: &std::path::Path) -> Result<Registry> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Registry::from_json(&text)
    }

    pub fn monad_names(&self) -> Vec<String> {
        self.monads.iter().map(|m| m.key().to_string()).collect()
    }

    pub fn law_names(&self) -> Vec<String> {
        self.laws.iter().map(|l| l.law.clone()).collect()
    }

    pub fn monad(&self, key: &str) -> Result<MonadMonoidal> {
        self.monads
            .iter()
            .find(|m| m.key() == key)
            .ok_or_else(|| Error::Config(format!("unknown monad '{key}'")))?
            .build()
    }

    pub fn law(&self, name: &str) -> Result<RegisteredLaw> {
        let spec = self
            .laws
            .iter()
            .find(|l| l.law == name)
            .ok_or_else(|| Error::Config(format!("unknown law '{name}'")))?;
        self.build_law(spec)
    }

    fn build_law(&self, spec: &LawSpec) -> Result<RegisteredLaw> {
        let field = |m: &Option<MonadSpec>, key: &str| {
            m.clone().ok_or_else(|| {
                Error::Config(format!("law '{}' needs the field \"{key}\"", spec.law))
            })
        };
        let builtin_name = spec.lambda.strip_prefix("builtin:").ok_or_else(|| {
            Error::Config(format!(
                "law '{}': lambda must be \"builtin:<name>\", got \"{}\"",
                spec.law, spec.lambda
            ))
        })?;
        let expect_shape = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "law '{}': builtin:{builtin_name} needs {what}",
                    spec.law
                )))
            }
        };
        match builtin_name {
            "exception-dist" | "writer-strength" => {
                let t = field(&spec.t, "T")?.build()?;
                let p = field(&spec.p, "P")?.build()?;
                expect_shape(p.t == FunctorExpr::Power, "P = powerset")?;
                let lambda = if builtin_name == "exception-dist" {
                    expect_shape(
                        spec.t
                            .as_ref()
                            .is_some_and(|m| m.name == "exception" || m.name == "maybe"),
                        "T = exception",
                    )?;
                    builtin::exception_dist(&t, &p)
                } else {
                    expect_shape(
                        spec.t.as_ref().is_some_and(|m| m.name == "writer"),
                        "T = writer",
                    )?;
                    builtin::pair_strength(
                        FunctorExpr::comp(&t.t, &p.t),
                        FunctorExpr::comp(&p.t, &t.t),
                    )
                };
                Ok(RegisteredLaw::Dist(DistLawMonoidal::new(
                    &spec.law, t, p, lambda,
                )?))
            }
            "coreader-strength" => {
                let l = field(&spec.l, "L")?.build_comonad()?;
                let r = field(&spec.r, "R")?.build()?;
                expect_shape(r.t == FunctorExpr::Power, "R = powerset")?;
                expect_shape(
                    spec.l.as_ref().is_some_and(|m| m.name == "coreader"),
                    "L = coreader",
                )?;
                let lambda = builtin::pair_strength(
                    FunctorExpr::comp(&l.l, &r.t),
                    FunctorExpr::comp(&r.t, &l.l),
                );
                Ok(RegisteredLaw::Mixed(MixedLaw::new(
                    &spec.law, l, r, lambda,
                )?))
            }
            other => Err(Error::Config(format!(
                "law '{}': unknown builtin '{other}'",
                spec.law
            ))),
        }
    }
}
