//! The JSON report written to standard output.

use distlaw::universe::UniverseDescriptor;
use distlaw::{AxiomVerdict, LawReport, TestUniverse, Witness};
use serde::Serialize;
use serde_json::Value;

/// One suite of checks against one subject.
#[derive(Clone, Debug, Serialize)]
pub struct Group {
    pub subject: String,
    pub suite: String,
    pub pass: bool,
    pub exhaustive: bool,
    pub axioms: Vec<AxiomVerdict>,
}

impl Group {
    pub fn new(subject: &str, suite: &str, axioms: Vec<AxiomVerdict>) -> Group {
        Group {
            subject: subject.to_string(),
            suite: suite.to_string(),
            pass: axioms.iter().all(|a| a.pass),
            exhaustive: axioms.iter().all(|a| a.exhaustive),
            axioms,
        }
    }

    pub fn from_report(r: LawReport) -> Group {
        Group::new(&r.law, &r.suite, r.axioms)
    }

    /// A single named verdict, for checks that are not axiom suites.
    pub fn single(subject: &str, suite: &str, v: AxiomVerdict) -> Group {
        Group::new(subject, suite, vec![v])
    }
}

#[derive(Clone, Debug, Serialize)]
struct WitnessEntry {
    subject: String,
    suite: String,
    axiom: String,
    witness: Witness,
}

#[derive(Clone, Debug, Serialize)]
struct Command {
    name: String,
    args: Value,
}

#[derive(Clone, Debug, Serialize)]
struct Report {
    command: Command,
    universe: Option<UniverseDescriptor>,
    verdicts: Vec<Group>,
    witnesses: Vec<WitnessEntry>,
    timing_ms: u64,
    exhaustive: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    details: Value,
}

/// What a command produced, before it is serialized.
pub struct Outcome {
    pub universe: Option<TestUniverse>,
    pub groups: Vec<Group>,
    /// Extra exhaustiveness information not carried by the groups, such as
    /// a truncated search.
    pub exhaustive: bool,
    pub details: Value,
}

impl Outcome {
    pub fn new(universe: Option<&TestUniverse>) -> Outcome {
        Outcome {
            universe: universe.cloned(),
            groups: Vec::new(),
            exhaustive: true,
            details: Value::Null,
        }
    }

    pub fn push(&mut self, g: Group) {
        self.groups.push(g);
    }

    pub fn passed(&self) -> bool {
        self.groups.iter().all(|g| g.pass)
    }

    /// Deterministic JSON with sorted keys.
    pub fn to_json(&self, name: &str, args: Value, timing_ms: u64) -> String {
        let witnesses = self
            .groups
            .iter()
            .flat_map(|g| {
                g.axioms.iter().filter_map(move |a| {
                    a.witness.clone().map(|witness| WitnessEntry {
                        subject: g.subject.clone(),
                        suite: g.suite.clone(),
                        axiom: a.axiom.clone(),
                        witness,
                    })
                })
            })
            .collect();
        let report = Report {
            command: Command {
                name: name.to_string(),
                args,
            },
            universe: self.universe.as_ref().map(TestUniverse::descriptor),
            verdicts: self.groups.clone(),
            witnesses,
            timing_ms,
            exhaustive: self.exhaustive && self.groups.iter().all(|g| g.exhaustive),
            details: self.details.clone(),
        };
        // Going through Value sorts every object's keys.
        let value = serde_json::to_value(&report).expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }

    /// One line per axiom, for standard error.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            out.push_str(&format!("{} [{}]\n", g.subject, g.suite));
            for a in &g.axioms {
                out.push_str(&format!(
                    "  {:<34} {} ({} instances{})\n",
                    a.axiom,
                    if a.pass { "pass" } else { "FAIL" },
                    a.instances,
                    if a.exhaustive { "" } else { ", sampled" }
                ));
                if a.skipped > 0 {
                    out.push_str(&format!("    {} instances skipped\n", a.skipped));
                }
                if let Some(n) = &a.note {
                    if !a.pass {
                        out.push_str(&format!("    {n}\n"));
                    }
                }
                if let Some(w) = &a.witness {
                    out.push_str(&format!(
                        "    at {} on {}: {} vs {}\n",
                        w.object, w.element, w.lhs, w.rhs
                    ));
                }
            }
        }
        out
    }
}
