//! Pasting terms, their boundaries and the interchange normal form.

use std::fmt;

use super::signature::Signature;
use super::word::{independent, swap_atoms, Path, Side, Subst, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PastingTerm {
    Cell(String),
    Inverse(String),
    Id(Path),
    Whisker(Word, Box<PastingTerm>, Word),
    /// `upper` first, then `lower`.
    VComp(Box<PastingTerm>, Box<PastingTerm>),
    /// Side by side along a path: `t1`'s paths are followed by `t2`'s.
    HComp(Box<PastingTerm>, Box<PastingTerm>),
    /// Interchange of two consecutive atoms on disjoint intervals.
    Swap(Path),
    Subst(Box<PastingTerm>, Subst),
}

impl PastingTerm {
    pub fn cell(name: &str) -> PastingTerm {
        PastingTerm::Cell(name.to_string())
    }

    pub fn inverse(name: &str) -> PastingTerm {
        PastingTerm::Inverse(name.to_string())
    }

    pub fn whisker(left: Word, t: PastingTerm, right: Word) -> PastingTerm {
        if left.is_empty() && right.is_empty() {
            t
        } else {
            PastingTerm::Whisker(left, Box::new(t), right)
        }
    }

    pub fn vcomp(a: PastingTerm, b: PastingTerm) -> PastingTerm {
        PastingTerm::VComp(Box::new(a), Box::new(b))
    }

    pub fn hcomp(a: PastingTerm, b: PastingTerm) -> PastingTerm {
        PastingTerm::HComp(Box::new(a), Box::new(b))
    }

    /// `t` placed at atom offset `k` of `around`, which must contain `t`'s
    /// source there.
    pub fn at(
        around: &Path,
        k: usize,
        t: PastingTerm,
        sig: &Signature,
    ) -> Result<(PastingTerm, Path)> {
        let (src, tgt) = boundary(&t, sig)?;
        let next = around.splice(k, &src, &tgt)?;
        let before = PastingTerm::Id(around.sub(0, k));
        let after = PastingTerm::Id(around.sub(k + src.len(), around.len()));
        let step = PastingTerm::hcomp(PastingTerm::hcomp(before, t), after);
        Ok((step, next))
    }
}

impl fmt::Display for PastingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PastingTerm::Cell(n) => write!(f, "(cell {n})"),
            PastingTerm::Inverse(n) => write!(f, "(inv {n})"),
            PastingTerm::Id(p) => write!(f, "(id {p})"),
            PastingTerm::Whisker(l, t, r) => write!(f, "(whisker {l} {t} {r})"),
            PastingTerm::VComp(a, b) => write!(f, "(vcomp {a} {b})"),
            PastingTerm::HComp(a, b) => write!(f, "(hcomp {a} {b})"),
            PastingTerm::Swap(p) => write!(f, "(swap {p})"),
            PastingTerm::Subst(t, s) => write!(f, "(subst {t} {s})"),
        }
    }
}

/// One whiskered generator applied at atom `offset` of the current path.
/// `src` and `tgt` are the whiskered boundary segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub offset: usize,
    pub term: PastingTerm,
    pub name: String,
    pub left: usize,
    pub src: Path,
    pub tgt: Path,
}

impl Occurrence {
    fn key(&self) -> (usize, usize, String, String) {
        (
            self.offset,
            self.left,
            self.name.clone(),
            self.term.to_string(),
        )
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{} {}", self.offset, self.term)
    }
}

/// A term as a vertical sequence of generator occurrences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub src: Path,
    pub tgt: Path,
    pub steps: Vec<Occurrence>,
}

pub fn boundary(t: &PastingTerm, sig: &Signature) -> Result<(Path, Path)> {
    let f = flatten(t, sig)?;
    Ok((f.src, f.tgt))
}

fn unit(src: Path, tgt: Path, term: PastingTerm, name: &str) -> Flat {
    Flat {
        steps: vec![Occurrence {
            offset: 0,
            term,
            name: name.to_string(),
            left: 0,
            src: src.clone(),
            tgt: tgt.clone(),
        }],
        src,
        tgt,
    }
}

pub fn flatten(t: &PastingTerm, sig: &Signature) -> Result<Flat> {
    match t {
        PastingTerm::Cell(n) => {
            let c = sig.cell(n)?;
            Ok(unit(c.src.clone(), c.tgt.clone(), t.clone(), n))
        }
        PastingTerm::Inverse(n) => {
            let c = sig.cell(n)?;
            if !c.invertible {
                return Err(Error::Boundary(format!(
                    "cell {n} is not declared invertible"
                )));
            }
            Ok(unit(c.tgt.clone(), c.src.clone(), t.clone(), n))
        }
        PastingTerm::Id(p) => Ok(Flat {
            src: p.clone(),
            tgt: p.clone(),
            steps: vec![],
        }),
        PastingTerm::Swap(p) => {
            if p.len() != 2 {
                return Err(Error::Boundary(format!("swap needs two atoms, got {p}")));
            }
            let (b, a) = swap_atoms(&p.atoms()[0], &p.atoms()[1])?;
            let tgt = Path::new(p.start().clone(), vec![b, a])?;
            Ok(unit(p.clone(), tgt, t.clone(), "swap"))
        }
        PastingTerm::Whisker(l, inner, r) => {
            let f = flatten(inner, sig)?;
            let steps = f
                .steps
                .into_iter()
                .map(|o| {
                    let (src, tgt) = (o.src.whisker(l, r), o.tgt.whisker(l, r));
                    match o.term {
                        PastingTerm::Swap(_) => Occurrence {
                            term: PastingTerm::Swap(src.clone()),
                            src,
                            tgt,
                            ..o
                        },
                        PastingTerm::Whisker(l2, core, r2) => Occurrence {
                            term: PastingTerm::whisker(
                                Word::concat(&[l, &l2]),
                                *core,
                                Word::concat(&[&r2, r]),
                            ),
                            left: o.left + l.len(),
                            src,
                            tgt,
                            ..o
                        },
                        core => Occurrence {
                            term: PastingTerm::whisker(l.clone(), core, r.clone()),
                            left: o.left + l.len(),
                            src,
                            tgt,
                            ..o
                        },
                    }
                })
                .collect();
            Ok(Flat {
                src: f.src.whisker(l, r),
                tgt: f.tgt.whisker(l, r),
                steps,
            })
        }
        PastingTerm::VComp(a, b) => {
            let (fa, fb) = (flatten(a, sig)?, flatten(b, sig)?);
            if fa.tgt != fb.src {
                return Err(Error::Boundary(format!(
                    "vertical junction mismatch: {} versus {}",
                    fa.tgt, fb.src
                )));
            }
            let mut steps = fa.steps;
            steps.extend(fb.steps);
            Ok(Flat {
                src: fa.src,
                tgt: fb.tgt,
                steps,
            })
        }
        PastingTerm::HComp(a, b) => {
            let (fa, fb) = (flatten(a, sig)?, flatten(b, sig)?);
            if fa.src.end() != *fb.src.start() {
                return Err(Error::Boundary(format!(
                    "horizontal junction mismatch: {} ends at {} but {} starts at {}",
                    fa.src,
                    fa.src.end(),
                    fb.src,
                    fb.src.start()
                )));
            }
            let shift = fa.tgt.len();
            let mut steps = fa.steps;
            steps.extend(fb.steps.into_iter().map(|o| Occurrence {
                offset: o.offset + shift,
                ..o
            }));
            Ok(Flat {
                src: fa.src.then(&fb.src)?,
                tgt: fa.tgt.then(&fb.tgt)?,
                steps,
            })
        }
        PastingTerm::Subst(inner, s) => {
            let f = flatten(inner, sig)?;
            let mut cur = f.src.clone();
            let mut steps = Vec::new();
            for o in f.steps {
                let offset = s.image_len(&cur, o.offset);
                cur = cur.splice(o.offset, &o.src, &o.tgt)?;
                let term = match o.term {
                    PastingTerm::Whisker(l, core, r) => PastingTerm::whisker(
                        s.word(&l),
                        PastingTerm::Subst(core, s.clone()),
                        s.word(&r),
                    ),
                    core => PastingTerm::Subst(Box::new(core), s.clone()),
                };
                steps.push(Occurrence {
                    offset,
                    term,
                    left: o.left,
                    src: s.path(&o.src)?,
                    tgt: s.path(&o.tgt)?,
                    name: o.name,
                });
            }
            Ok(Flat {
                src: s.path(&f.src)?,
                tgt: s.path(&f.tgt)?,
                steps,
            })
        }
    }
}

/// Exchanges consecutive occurrences `a; b` if they act on disjoint
/// intervals, returning `(b', a')`. Empty intervals meeting at one point
/// count as overlapping, which keeps the exchange unique.
fn exchanges(a: &Occurrence, b: &Occurrence) -> Option<(Occurrence, Occurrence)> {
    let side = independent(a.offset, a.tgt.len(), b.offset, b.src.len())?;
    let (mut b2, mut a2) = (b.clone(), a.clone());
    match side {
        Side::Left => a2.offset = a.offset + b.tgt.len() - b.src.len(),
        Side::Right => b2.offset = b.offset + a.src.len() - a.tgt.len(),
    }
    Some((b2, a2))
}

/// The canonical representative of a term modulo interchange and units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalPasting {
    pub src: Path,
    pub tgt: Path,
    pub steps: Vec<Occurrence>,
}

impl NormalPasting {
    /// The normal form read back as a term.
    pub fn to_term(&self) -> PastingTerm {
        let mut cur = self.src.clone();
        let mut out: Option<PastingTerm> = None;
        for o in &self.steps {
            let before = PastingTerm::Id(cur.sub(0, o.offset));
            let after = PastingTerm::Id(cur.sub(o.offset + o.src.len(), cur.len()));
            let step = PastingTerm::hcomp(PastingTerm::hcomp(before, o.term.clone()), after);
            cur = cur
                .splice(o.offset, &o.src, &o.tgt)
                .expect("normal form replays");
            out = Some(match out {
                None => step,
                Some(t) => PastingTerm::vcomp(t, step),
            });
        }
        out.unwrap_or_else(|| PastingTerm::Id(self.src.clone()))
    }
}

impl fmt::Display for NormalPasting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} => {}", self.src, self.tgt)?;
        for o in &self.steps {
            writeln!(f, "  {o}")?;
        }
        Ok(())
    }
}

/// Occurrences of `rest` that can be exchanged to the front, each in a
/// front form together with the remainder it leaves behind.
fn movable(rest: &[Occurrence]) -> Vec<(Occurrence, Vec<Occurrence>)> {
    let mut out = Vec::new();
    'next: for i in 0..rest.len() {
        let mut cur = rest[i].clone();
        let mut passed = Vec::with_capacity(i);
        for j in (0..i).rev() {
            match exchanges(&rest[j], &cur) {
                Some((c2, r2)) => {
                    cur = c2;
                    passed.push(r2);
                }
                None => continue 'next,
            }
        }
        passed.reverse();
        passed.extend(rest[i + 1..].iter().cloned());
        out.push((cur, passed));
    }
    out
}

/// The lexicographically least linearization, comparing occurrences by
/// offset, left whisker length, generator name, then printed form.
///
/// Equal leading keys arise only for copies of one cell with an empty
/// source at a single point. Those branches are all explored, so the result
/// does not depend on the order the input happened to use.
pub fn normal_form(flat: Flat) -> NormalPasting {
    NormalPasting {
        steps: least_linearization(flat.steps),
        src: flat.src,
        tgt: flat.tgt,
    }
}

fn least_linearization(mut rest: Vec<Occurrence>) -> Vec<Occurrence> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let cands = movable(&rest);
        let least = cands
            .iter()
            .map(|c| c.0.key())
            .min()
            .expect("the first occurrence is always movable");
        let mut tied: Vec<(Occurrence, Vec<Occurrence>)> =
            cands.into_iter().filter(|c| c.0.key() == least).collect();
        if tied.len() == 1 {
            let (front, next) = tied.pop().expect("one candidate");
            out.push(front);
            rest = next;
            continue;
        }
        let best = tied
            .into_iter()
            .map(|(front, next)| {
                let mut seq = vec![front];
                seq.extend(least_linearization(next));
                seq
            })
            .min_by(|x, y| {
                x.iter()
                    .map(Occurrence::key)
                    .cmp(y.iter().map(Occurrence::key))
            })
            .expect("non-empty");
        out.extend(best);
        return out;
    }
    out
}

pub fn normalize(t: &PastingTerm, sig: &Signature) -> Result<NormalPasting> {
    Ok(normal_form(flatten(t, sig)?))
}
