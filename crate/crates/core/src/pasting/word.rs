//! Words, whiskered arrow atoms and composable paths.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Sym = Arc<str>;

/// A composite of functor symbols, outermost first. Object symbols may
/// appear as the last letter when generic morphisms are involved.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Sym>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn parse(s: &str) -> Word {
        Word(
            s.split_whitespace()
                .filter(|t| *t != "epsilon")
                .map(Sym::from)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().cloned()).collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|s| s.as_ref())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "epsilon");
        }
        let parts: Vec<&str> = self.symbols().collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `prefix · gen · suffix`. The generator's boundary words are stored with
/// the atom so paths can be composed without a signature at hand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub prefix: Word,
    pub gen: Sym,
    pub gen_src: Word,
    pub gen_tgt: Word,
    pub suffix: Word,
}

impl Atom {
    pub fn src(&self) -> Word {
        Word::concat(&[&self.prefix, &self.gen_src, &self.suffix])
    }

    pub fn tgt(&self) -> Word {
        Word::concat(&[&self.prefix, &self.gen_tgt, &self.suffix])
    }

    pub fn whisker(&self, left: &Word, right: &Word) -> Atom {
        Atom {
            prefix: Word::concat(&[left, &self.prefix]),
            suffix: Word::concat(&[&self.suffix, right]),
            ..self.clone()
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} . {} . {}]", self.prefix, self.gen, self.suffix)
    }
}

/// A composable sequence of atoms starting at `start`. The empty path is
/// the identity on its start word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: Word,
    atoms: Vec<Atom>,
}

impl Path {
    pub fn identity(w: Word) -> Path {
        Path {
            start: w,
            atoms: Vec::new(),
        }
    }

    pub fn new(start: Word, atoms: Vec<Atom>) -> Result<Path> {
        let mut cur = start.clone();
        for a in &atoms {
            if a.src() != cur {
                return Err(Error::Boundary(format!(
                    "atom {a} has source {} but the path is at {cur}",
                    a.src()
                )));
            }
            cur = a.tgt();
        }
        Ok(Path { start, atoms })
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Path> {
        match atoms.first() {
            None => Err(Error::Boundary("an empty path needs its word".into())),
            Some(a) => Path::new(a.src(), atoms),
        }
    }

    pub fn start(&self) -> &Word {
        &self.start
    }

    pub fn end(&self) -> Word {
        self.atoms
            .last()
            .map(Atom::tgt)
            .unwrap_or_else(|| self.start.clone())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The word between atom `k - 1` and atom `k`.
    pub fn word_at(&self, k: usize) -> Word {
        if k == 0 {
            self.start.clone()
        } else {
            self.atoms[k - 1].tgt()
        }
    }

    pub fn parallel(&self, other: &Path) -> bool {
        self.start == other.start && self.end() == other.end()
    }

    pub fn whisker(&self, left: &Word, right: &Word) -> Path {
        Path {
            start: Word::concat(&[left, &self.start, right]),
            atoms: self.atoms.iter().map(|a| a.whisker(left, right)).collect(),
        }
    }

    pub fn then(&self, next: &Path) -> Result<Path> {
        if self.end() != next.start {
            return Err(Error::Boundary(format!(
                "path {self} ends at {} but {next} starts at {}",
                self.end(),
                next.start
            )));
        }
        let mut atoms = self.atoms.clone();
        atoms.extend(next.atoms.iter().cloned());
        Ok(Path {
            start: self.start.clone(),
            atoms,
        })
    }

    pub fn sub(&self, from: usize, to: usize) -> Path {
        Path {
            start: self.word_at(from),
            atoms: self.atoms[from..to].to_vec(),
        }
    }

    /// Replaces atoms `k .. k + replaced.len()` by `by`, checking that the
    /// replaced segment is exactly `replaced`.
    pub fn splice(&self, k: usize, replaced: &Path, by: &Path) -> Result<Path> {
        let n = replaced.len();
        if k + n > self.len()
            || self.word_at(k) != *replaced.start()
            || self.atoms[k..k + n] != replaced.atoms[..]
        {
            return Err(Error::Boundary(format!(
                "expected {replaced} at offset {k} of {self}"
            )));
        }
        let mut atoms = self.atoms[..k].to_vec();
        atoms.extend(by.atoms.iter().cloned());
        atoms.extend(self.atoms[k + n..].iter().cloned());
        Path::new(self.start.clone(), atoms)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "{{{}}}", self.start);
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

/// Whether `b` applied after `a` can be moved before it: the interval `b`
/// consumes in `a`'s output word must miss the interval `a` produced. Two
/// empty intervals at the same point are treated as dependent.
pub fn independent(a_start: usize, a_len: usize, b_start: usize, b_len: usize) -> Option<Side> {
    if a_len == 0 && b_len == 0 && a_start == b_start {
        return None;
    }
    if b_start + b_len <= a_start {
        Some(Side::Left)
    } else if b_start >= a_start + a_len {
        Some(Side::Right)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Interchange of two consecutive atoms acting on disjoint parts of the
/// word: returns `(b', a')` with `b'; a'` parallel to `a; b`.
pub fn swap_atoms(a: &Atom, b: &Atom) -> Result<(Atom, Atom)> {
    let (la, ta) = (a.prefix.len(), a.gen_tgt.len());
    let (lb, sb) = (b.prefix.len(), b.gen_src.len());
    let mid = a.tgt();
    let fail = || {
        Error::Boundary(format!(
            "atoms {a} and {b} do not act on disjoint intervals"
        ))
    };
    if b.src() != mid {
        return Err(Error::Boundary(format!(
            "atoms {a} and {b} are not composable"
        )));
    }
    match independent(la, ta, lb, sb).ok_or_else(fail)? {
        Side::Left => {
            // a.prefix = x · b.src · y
            let x = b.prefix.clone();
            let y = a.prefix.slice(lb + sb, la);
            let b2 = Atom {
                prefix: x.clone(),
                suffix: Word::concat(&[&y, &a.gen_src, &a.suffix]),
                ..b.clone()
            };
            let a2 = Atom {
                prefix: Word::concat(&[&x, &b.gen_tgt, &y]),
                ..a.clone()
            };
            Ok((b2, a2))
        }
        Side::Right => {
            // a.suffix = y · b.src · z
            let y = mid.slice(la + ta, lb);
            let z = b.suffix.clone();
            let b2 = Atom {
                prefix: Word::concat(&[&a.prefix, &a.gen_src, &y]),
                ..b.clone()
            };
            let a2 = Atom {
                suffix: Word::concat(&[&y, &b.gen_tgt, &z]),
                ..a.clone()
            };
            Ok((b2, a2))
        }
    }
}

/// Simultaneous substitution of object symbols by words and of generic
/// arrows by paths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subst {
    pub objects: BTreeMap<Sym, Word>,
    pub arrows: BTreeMap<Sym, Path>,
}

impl Subst {
    pub fn word(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for s in &w.0 {
            match self.objects.get(s) {
                Some(r) => out.extend(r.0.iter().cloned()),
                None => out.push(s.clone()),
            }
        }
        Word(out)
    }

    pub fn atom(&self, a: &Atom) -> Result<Path> {
        let (l, r) = (self.word(&a.prefix), self.word(&a.suffix));
        match self.arrows.get(&a.gen) {
            Some(p) => {
                if *p.start() != self.word(&a.gen_src) || p.end() != self.word(&a.gen_tgt) {
                    return Err(Error::Boundary(format!(
                        "substituting {p} for {} needs {} -> {}",
                        a.gen,
                        self.word(&a.gen_src),
                        self.word(&a.gen_tgt)
                    )));
                }
                Ok(p.whisker(&l, &r))
            }
            None => {
                let b = Atom {
                    prefix: l,
                    gen: a.gen.clone(),
                    gen_src: self.word(&a.gen_src),
                    gen_tgt: self.word(&a.gen_tgt),
                    suffix: r,
                };
                Path::from_atoms(vec![b])
            }
        }
    }

    pub fn path(&self, p: &Path) -> Result<Path> {
        let mut out = Path::identity(self.word(p.start()));
        for a in p.atoms() {
            out = out.then(&self.atom(a)?)?;
        }
        Ok(out)
    }

    /// Number of atoms that atoms `0 .. k` of `p` become.
    pub fn image_len(&self, p: &Path, k: usize) -> usize {
        p.atoms()[..k]
            .iter()
            .map(|a| self.arrows.get(&a.gen).map_or(1, Path::len))
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.arrows.is_empty()
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, w) in &self.objects {
            parts.push(format!("(obj {k} {w})"));
        }
        for (k, p) in &self.arrows {
            parts.push(format!("(arrow {k} {p})"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(p: &str, g: &str, s: &str, t: &str, q: &str) -> Atom {
        Atom {
            prefix: Word::parse(p),
            gen: g.into(),
            gen_src: Word::parse(s),
            gen_tgt: Word::parse(t),
            suffix: Word::parse(q),
        }
    }

    #[test]
    fn swap_moves_unit_past_lambda() {
        // TPu then λT becomes λ then PTu.
        let a = atom("T P", "u", "epsilon", "T", "epsilon");
        let b = atom("epsilon", "lambda", "T P", "P T", "T");
        let (b2, a2) = swap_atoms(&a, &b).unwrap();
        assert_eq!(b2.to_string(), "[epsilon . lambda . epsilon]");
        assert_eq!(a2.to_string(), "[P T . u . epsilon]");
    }

    #[test]
    fn swap_to_the_right() {
        let a = atom("epsilon", "eta", "epsilon", "P", "T P");
        let b = atom("P", "lambda", "T P", "P T", "epsilon");
        let (b2, a2) = swap_atoms(&a, &b).unwrap();
        assert_eq!(b2.to_string(), "[epsilon . lambda . epsilon]");
        assert_eq!(a2.to_string(), "[epsilon . eta . P T]");
    }

    #[test]
    fn overlapping_atoms_do_not_swap() {
        let a = atom("epsilon", "m", "T T", "T", "P");
        let b = atom("epsilon", "lambda", "T P", "P T", "epsilon");
        assert!(swap_atoms(&a, &b).is_err());
    }

    #[test]
    fn broken_junction_is_rejected() {
        let a = atom("epsilon", "m", "T T", "T", "epsilon");
        assert!(Path::new(Word::parse("T"), vec![a]).is_err());
    }
}
