//! Signatures: functor and object symbols, generating 1-cells and 2-cells,
//! and named axioms as pairs of parallel pasting terms.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use super::syntax;
use super::term::{boundary, PastingTerm};
use super::word::{Atom, Path, Sym, Word};
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../assets/pseudodist.sig");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowGen {
    pub name: String,
    pub src: Word,
    pub tgt: Word,
}

impl ArrowGen {
    pub fn atom(&self, prefix: Word, suffix: Word) -> Atom {
        Atom {
            prefix,
            gen: Sym::from(self.name.as_str()),
            gen_src: self.src.clone(),
            gen_tgt: self.tgt.clone(),
            suffix,
        }
    }

    pub fn path(&self) -> Path {
        Path::from_atoms(vec![self.atom(Word::empty(), Word::empty())]).expect("single atom")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGen {
    pub name: String,
    pub src: Path,
    pub tgt: Path,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub lhs: PastingTerm,
    pub rhs: PastingTerm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub name: String,
    pub version: u32,
    pub functors: Vec<String>,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowGen>,
    pub cells: Vec<CellGen>,
    pub axioms: Vec<Axiom>,
}

impl Signature {
    pub fn empty() -> Signature {
        Signature::default()
    }

    /// The shipped signature of pseudo-distributive laws.
    pub fn builtin() -> Signature {
        Signature::parse(BUILTIN).expect("the bundled signature parses")
    }

    pub fn builtin_text() -> &'static str {
        BUILTIN
    }

    pub fn parse(text: &str) -> Result<Signature> {
        syntax::parse_signature(text)
    }

    pub fn load(path: &FsPath) -> Result<Signature> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Signature::parse(&text)
    }

    pub fn is_symbol(&self, s: &str) -> bool {
        self.is_functor(s) || self.is_object(s)
    }

    pub fn is_functor(&self, s: &str) -> bool {
        self.functors.iter().any(|f| f == s)
    }

    pub fn is_object(&self, s: &str) -> bool {
        self.objects.iter().any(|f| f == s)
    }

    /// Generic arrows are those whose boundary mentions an object symbol.
    pub fn is_generic(&self, arrow: &ArrowGen) -> bool {
        arrow
            .src
            .symbols()
            .chain(arrow.tgt.symbols())
            .any(|s| self.is_object(s))
    }

    pub fn arrow(&self, name: &str) -> Result<&ArrowGen> {
        self.arrows
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::Config(format!("unknown 1-cell {name}")))
    }

    pub fn cell(&self, name: &str) -> Result<&CellGen> {
        self.cells
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Config(format!("unknown 2-cell {name}")))
    }

    pub fn axiom(&self, name: &str) -> Result<&Axiom> {
        self.axioms
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::Config(format!("unknown axiom {name}")))
    }

    pub fn axiom_names(&self) -> Vec<&str> {
        self.axioms.iter().map(|a| a.name.as_str()).collect()
    }

    fn taken(&self, name: &str) -> bool {
        self.is_symbol(name)
            || self.arrows.iter().any(|a| a.name == name)
            || self.cells.iter().any(|c| c.name == name)
            || self.axioms.iter().any(|a| a.name == name)
    }

    pub fn declare_symbol(&mut self, name: &str, object: bool) -> Result<()> {
        if self.taken(name) || name == "epsilon" {
            return Err(Error::Config(format!("{name} is declared twice")));
        }
        if object {
            self.objects.push(name.to_string());
        } else {
            self.functors.push(name.to_string());
        }
        Ok(())
    }

    pub fn add_arrow(&mut self, a: ArrowGen) -> Result<()> {
        if self.taken(&a.name) {
            return Err(Error::Config(format!("{} is declared twice", a.name)));
        }
        self.arrows.push(a);
        Ok(())
    }

    pub fn add_cell(&mut self, c: CellGen) -> Result<()> {
        if self.taken(&c.name) {
            return Err(Error::Config(format!("{} is declared twice", c.name)));
        }
        if !c.src.parallel(&c.tgt) {
            return Err(Error::Boundary(format!(
                "cell {}: {} and {} are not parallel",
                c.name, c.src, c.tgt
            )));
        }
        self.cells.push(c);
        Ok(())
    }

    /// Both sides must have exactly the same source and target paths.
    pub fn add_axiom(&mut self, a: Axiom) -> Result<()> {
        if self.taken(&a.name) {
            return Err(Error::Config(format!("{} is declared twice", a.name)));
        }
        let (ls, lt) = boundary(&a.lhs, self)?;
        let (rs, rt) = boundary(&a.rhs, self)?;
        if ls != rs || lt != rt {
            return Err(Error::Boundary(format!(
                "axiom {}: left side {ls} => {lt}, right side {rs} => {rt}",
                a.name
            )));
        }
        self.axioms.push(a);
        Ok(())
    }

    /// Prints the signature back in the textual format. Chains are printed
    /// in their expanded form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "(signature {} {})", self.name, self.version);
        if !self.functors.is_empty() {
            let _ = writeln!(out, "(functors {})", self.functors.join(" "));
        }
        if !self.objects.is_empty() {
            let _ = writeln!(out, "(objects {})", self.objects.join(" "));
        }
        for a in &self.arrows {
            let _ = writeln!(out, "(arrow {} {} -> {})", a.name, a.src, a.tgt);
        }
        for c in &self.cells {
            let _ = writeln!(out, "(cell {} {} => {})", c.name, c.src, c.tgt);
        }
        for a in &self.axioms {
            let _ = writeln!(out, "(axiom {} {} {})", a.name, a.lhs, a.rhs);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_signature_loads() {
        let sig = Signature::parse(Signature::builtin_text()).unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(sig.axioms.len(), 16);
    }
}
