//! Check results.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub object: String,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<String>,
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub pass: bool,
    pub instances: u64,
    pub exhaustive: bool,
    /// Instances that needed a component outside the enumerated sizes.
    #[serde(skip_serializing_if = "is_zero")]
    pub skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomVerdict {
    pub fn new(axiom: &str) -> AxiomVerdict {
        AxiomVerdict {
            axiom: axiom.to_string(),
            pass: true,
            instances: 0,
            exhaustive: true,
            skipped: 0,
            witness: None,
            note: None,
        }
    }

    pub fn failed(axiom: &str, note: String) -> AxiomVerdict {
        AxiomVerdict {
            pass: false,
            note: Some(note),
            ..AxiomVerdict::new(axiom)
        }
    }

    pub fn with_note(mut self, note: &str) -> AxiomVerdict {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub suite: String,
    pub universe: String,
    pub axioms: Vec<AxiomVerdict>,
}

impl LawReport {
    pub fn new(law: &str, suite: &str, universe: String, axioms: Vec<AxiomVerdict>) -> LawReport {
        LawReport {
            law: law.to_string(),
            suite: suite.to_string(),
            universe,
            axioms,
        }
    }

    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn exhaustive(&self) -> bool {
        self.axioms.iter().all(|a| a.exhaustive)
    }

    pub fn first_failure(&self) -> Option<&AxiomVerdict> {
        self.axioms.iter().find(|a| !a.pass)
    }

    pub fn verdict(&self, axiom: &str) -> Option<&AxiomVerdict> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }

    /// One line per axiom, for humans.
    pub fn summary(&self) -> String {
        let mut out = format!("{} [{}]\n", self.law, self.suite);
        for a in &self.axioms {
            out.push_str(&format!(
                "  {:<28} {} ({} instances{})\n",
                a.axiom,
                if a.pass { "pass" } else { "FAIL" },
                a.instances,
                if a.exhaustive { "" } else { ", sampled" }
            ));
            if a.skipped > 0 {
                out.push_str(&format!("    {} instances skipped\n", a.skipped));
            }
            if let Some(w) = &a.witness {
                out.push_str(&format!(
                    "    at {} on {}: {} vs {}\n",
                    w.object, w.element, w.lhs, w.rhs
                ));
            }
        }
        out
    }
}
