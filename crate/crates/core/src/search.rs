//! Brute-force search for distributive-law candidates at small sizes.
//!
//! A candidate assigns a table to every object of the universe. Tables are
//! enumerated object by object, pruned by naturality against the objects
//! already fixed, and the natural families are then filtered by an axiom
//! system. Components at other sets of an enumerated size are obtained by
//! transport along the sorted bijection; components at larger sets are
//! unavailable, and axiom instances that need them are skipped.

use serde::Serialize;

use crate::distlaw::{check_algebra, check_beck, check_decagon, DistLawAlgebra, DistLawMonoidal};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{all_functions, FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::monad::MonadMonoidal;
use crate::nat::NatTrans;
use crate::report::LawReport;
use crate::universe::TestUniverse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetForm {
    Monoidal,
    Decagon,
    Algebra,
}

impl TargetForm {
    pub fn parse(s: &str) -> Option<TargetForm> {
        match s {
            "monoidal" => Some(TargetForm::Monoidal),
            "decagon" => Some(TargetForm::Decagon),
            "algebra" => Some(TargetForm::Algebra),
            _ => None,
        }
    }
}

#[derive(Clone)]
pub struct SearchSpec {
    pub t: MonadMonoidal,
    pub p: MonadMonoidal,
    pub form: TargetForm,
    pub universe: TestUniverse,
    pub budget: u64,
}

impl SearchSpec {
    pub fn new(
        t: MonadMonoidal,
        p: MonadMonoidal,
        form: TargetForm,
        universe: TestUniverse,
        budget: u64,
    ) -> Result<SearchSpec> {
        if budget == 0 {
            return Err(Error::Config("search budget must be positive".into()));
        }
        if universe.objects.iter().any(|x| x.len() > 3) {
            return Err(Error::Config(
                "search universes are limited to sets of size 3".into(),
            ));
        }
        Ok(SearchSpec {
            t,
            p,
            form,
            universe,
            budget,
        })
    }

    /// `TP -> PT`, or `TPT -> PT` for the algebra form.
    pub fn boundary(&self) -> (FunctorExpr, FunctorExpr) {
        let (t, p) = (&self.t.t, &self.p.t);
        let src = match self.form {
            TargetForm::Algebra => FunctorExpr::word(&[t, p, t]),
            _ => FunctorExpr::comp(t, p),
        };
        (src, FunctorExpr::comp(p, t))
    }

    /// `Π_X |tgt X|^|src X|` over the universe objects.
    pub fn raw_count(&self) -> Option<u128> {
        let (src, tgt) = self.boundary();
        let mut total: u128 = 1;
        for x in &self.universe.objects {
            let (s, t) = (src.card(x.len() as u128)?, tgt.card(x.len() as u128)?);
            let k = u32::try_from(s).ok()?;
            total = total.checked_mul(t.checked_pow(k)?)?;
        }
        Some(total)
    }

    fn check(&self, name: &str, family: NatTrans) -> LawReport {
        let u = &self.universe;
        let (t, p) = (self.t.clone(), self.p.clone());
        match self.form {
            TargetForm::Algebra => check_algebra(
                &DistLawAlgebra {
                    name: name.into(),
                    t,
                    p,
                    alpha: family,
                },
                u,
            ),
            TargetForm::Monoidal | TargetForm::Decagon => {
                let d = DistLawMonoidal {
                    name: name.into(),
                    t,
                    p,
                    lambda: family,
                };
                if self.form == TargetForm::Monoidal {
                    check_beck(&d, u)
                } else {
                    check_decagon(&d, u)
                }
            }
        }
    }
}

/// A natural family given by one table per universe object.
#[derive(Clone)]
pub struct Candidate {
    pub tables: Vec<FinFn>,
    pub family: NatTrans,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCount {
    pub stage: String,
    pub count: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorView {
    pub index: usize,
    pub tables: Vec<String>,
}

#[derive(Clone)]
pub struct SearchResult {
    pub header: String,
    pub form: TargetForm,
    pub stages: Vec<StageCount>,
    pub survivors: Vec<Candidate>,
    /// Every candidate was enumerated and every morphism was used.
    pub exhaustive: bool,
    /// Axiom instances skipped because they need components outside the
    /// enumerated sizes, summed over the survivors.
    pub skipped_instances: u64,
}

impl SearchResult {
    pub fn views(&self) -> Vec<SurvivorView> {
        self.survivors
            .iter()
            .enumerate()
            .map(|(index, c)| SurvivorView {
                index,
                tables: c.tables.iter().map(|t| t.to_string()).collect(),
            })
            .collect()
    }

    pub fn count(&self, stage: &str) -> Option<u128> {
        self.stages
            .iter()
            .find(|s| s.stage == stage)
            .and_then(|s| s.count.parse().ok())
    }

    /// Survivor tables, for comparing runs.
    pub fn fingerprint(&self) -> Vec<Vec<FinFn>> {
        self.survivors.iter().map(|c| c.tables.clone()).collect()
    }

    /// Whether some survivor agrees with `family` on every universe object.
    pub fn contains(&self, family: &NatTrans, u: &TestUniverse) -> Result<bool> {
        let want = u
            .objects
            .iter()
            .map(|x| family.component(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.survivors.iter().any(|c| c.tables == want))
    }
}

/// Index form of `F(f)` for every morphism, used by the naturality filter.
struct MorphismAction {
    from: usize,
    to: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
}

fn index_table(f: &FinFn) -> Result<Vec<usize>> {
    f.values()
        .iter()
        .map(|v| {
            f.cod().index_of(v).ok_or_else(|| Error::NotMember {
                element: v.to_string(),
                set: f.cod().to_string(),
            })
        })
        .collect()
}

/// Builds the family of natural transformations defined by per-object
/// tables, transported along sorted bijections to other sets of the same
/// size.
pub fn family_from_tables(
    name: &str,
    src: &FunctorExpr,
    tgt: &FunctorExpr,
    objects: &[FinSet],
    tables: Vec<FinFn>,
) -> NatTrans {
    let (s, t) = (src.clone(), tgt.clone());
    let objects = objects.to_vec();
    NatTrans::per_object(name, src.clone(), tgt.clone(), move |set| {
        if let Some(i) = objects.iter().position(|x| x == set) {
            return Ok(tables[i].clone());
        }
        let i = objects
            .iter()
            .position(|x| x.len() == set.len())
            .ok_or_else(|| Error::OutOfRange(format!("no enumerated component at {set}")))?;
        let there = &objects[i];
        let to = |e: &Element| -> Result<Element> {
            Ok(
                there.elements()[set.index_of(e).ok_or_else(|| Error::NotMember {
                    element: e.to_string(),
                    set: set.to_string(),
                })?]
                .clone(),
            )
        };
        let back = |e: &Element| -> Result<Element> {
            Ok(
                set.elements()[there.index_of(e).ok_or_else(|| Error::NotMember {
                    element: e.to_string(),
                    set: there.to_string(),
                })?]
                .clone(),
            )
        };
        FinFn::from_fn(s.apply_obj(set), t.apply_obj(set), |x| {
            let moved = s.fmap(x, &to)?;
            t.fmap(&tables[i].apply(&moved)?, &back)
        })
    })
}

pub fn enumerate_candidates(spec: &SearchSpec) -> Result<SearchResult> {
    let u = &spec.universe;
    let raw = spec.raw_count();
    match raw {
        Some(n) if n <= spec.budget as u128 => {}
        _ => {
            return Err(Error::Budget {
                raw: raw.map_or_else(|| "more than 2^128".to_string(), |n| n.to_string()),
                budget: spec.budget,
            })
        }
    }
    let raw = raw.unwrap_or(0);
    let (src, tgt) = spec.boundary();
    let objs = &u.objects;
    let carriers: Vec<(FinSet, FinSet)> = objs
        .iter()
        .map(|x| (src.apply_obj(x), tgt.apply_obj(x)))
        .collect();

    let mut actions = Vec::new();
    let mut all_morphisms = true;
    for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            let (fs, full) = u.functions(x, y);
            all_morphisms &= full;
            for f in fs {
                actions.push(MorphismAction {
                    from: i,
                    to: j,
                    src: index_table(&src.apply_mor(&f)?)?,
                    tgt: index_table(&tgt.apply_mor(&f)?)?,
                });
            }
        }
    }

    // Per-object tables as index vectors, pruned by endomorphisms first.
    let mut options: Vec<Vec<Vec<usize>>> = Vec::new();
    for (i, (s, t)) in carriers.iter().enumerate() {
        let endos: Vec<&MorphismAction> = actions
            .iter()
            .filter(|a| a.from == i && a.to == i)
            .collect();
        let mut opts = Vec::new();
        for f in all_functions(s, t) {
            let c = index_table(&f)?;
            if endos.iter().all(|a| natural(a, &c, &c)) {
                opts.push(c);
            }
        }
        options.push(opts);
    }

    let mut natural_families = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    extend(&options, &actions, &mut chosen, &mut natural_families);

    let to_tables = |choice: &[usize]| -> Result<Vec<FinFn>> {
        choice
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let (s, t) = &carriers[i];
                FinFn::new(
                    s.clone(),
                    t.clone(),
                    options[i][k]
                        .iter()
                        .map(|&v| t.elements()[v].clone())
                        .collect(),
                )
            })
            .collect()
    };

    let mut stages = vec![
        StageCount {
            stage: "raw".into(),
            count: raw.to_string(),
        },
        StageCount {
            stage: "natural".into(),
            count: natural_families.len().to_string(),
        },
    ];
    let mut reports = Vec::new();
    let mut candidates = Vec::new();
    for (n, choice) in natural_families.iter().enumerate() {
        let tables = to_tables(choice)?;
        let family =
            family_from_tables(&format!("candidate {n}"), &src, &tgt, objs, tables.clone());
        reports.push(spec.check(&format!("candidate {n}"), family.clone()));
        candidates.push(Candidate { tables, family });
    }
    let axiom_names: Vec<String> = match reports.first() {
        Some(r) => r.axioms.iter().map(|a| a.axiom.clone()).collect(),
        None => spec
            .check("probe", NatTrans::identity(&src))
            .axioms
            .iter()
            .map(|a| a.axiom.clone())
            .collect(),
    };
    for (k, name) in axiom_names.iter().enumerate() {
        let count = reports
            .iter()
            .filter(|r| r.axioms[..=k].iter().all(|a| a.pass))
            .count();
        stages.push(StageCount {
            stage: name.clone(),
            count: count.to_string(),
        });
    }
    let mut survivors = Vec::new();
    let mut skipped = 0;
    for (c, r) in candidates.into_iter().zip(&reports) {
        if r.passed() {
            skipped += r.axioms.iter().map(|a| a.skipped).sum::<u64>();
            survivors.push(c);
        }
    }
    let max = objs.iter().map(FinSet::len).max().unwrap_or(0);
    Ok(SearchResult {
        header: format!(
            "evidence: survivors at sizes <= {max}; a survivor need not extend to a law on all sets"
        ),
        form: spec.form,
        stages,
        survivors,
        exhaustive: all_morphisms && reports.iter().all(|r| r.exhaustive()),
        skipped_instances: skipped,
    })
}

/// `tgt(f) ∘ c_X = c_Y ∘ src(f)` on index tables.
fn natural(a: &MorphismAction, cx: &[usize], cy: &[usize]) -> bool {
    (0..cx.len()).all(|s| a.tgt[cx[s]] == cy[a.src[s]])
}

fn extend(
    options: &[Vec<Vec<usize>>],
    actions: &[MorphismAction],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = chosen.len();
    if i == options.len() {
        out.push(chosen.clone());
        return;
    }
    for (k, c) in options[i].iter().enumerate() {
        let ok = actions.iter().all(|a| {
            if a.from == i && a.to < i {
                natural(a, c, &options[a.to][chosen[a.to]])
            } else if a.to == i && a.from < i {
                natural(a, &options[a.from][chosen[a.from]], c)
            } else {
                true
            }
        });
        if ok {
            chosen.push(k);
            extend(options, actions, chosen, out);
            chosen.pop();
        }
    }
}

/// Runs the chosen axiom system on one candidate.
pub fn refute(candidate: &NatTrans, spec: &SearchSpec) -> Result<LawReport> {
    let (src, tgt) = spec.boundary();
    if !candidate.src().equiv(&src) || !candidate.tgt().equiv(&tgt) {
        return Err(Error::Boundary(format!(
            "candidate must be {src} -> {tgt}, got {} -> {}",
            candidate.src(),
            candidate.tgt()
        )));
    }
    Ok(spec.check(&candidate.to_string(), candidate.clone()))
}
