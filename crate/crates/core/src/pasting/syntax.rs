//! Reader for the textual format of words, paths, terms and signatures.
//!
//! ```text
//! (arrow lambda T P -> P T)
//! (cell omega1 [epsilon . u . P] ; [epsilon . lambda . epsilon] => [P . u . epsilon])
//! (axiom W10 (chain <path> (at 1 (cell omega2)) (swap 0)) (chain <path> ...))
//! ```
//!
//! `#` starts a comment. Inside a `chain`, `(at k t)` applies `t` to the
//! atoms starting at offset `k` of the current path and `(swap k)`
//! exchanges atoms `k` and `k + 1`.

use super::signature::{ArrowGen, Axiom, CellGen, Signature};
use super::term::PastingTerm;
use super::word::{swap_atoms, Atom, Path, Subst, Sym, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    OpenAtom,
    CloseAtom,
    OpenWord,
    CloseWord,
    Dot,
    Semi,
    To,
    Implies,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = line.split('#').next().unwrap_or("");
        let cs: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < cs.len() {
            let c = cs[i];
            let single = match c {
                '(' => Some(Tok::Open),
                ')' => Some(Tok::Close),
                '[' => Some(Tok::OpenAtom),
                ']' => Some(Tok::CloseAtom),
                '{' => Some(Tok::OpenWord),
                '}' => Some(Tok::CloseWord),
                '.' => Some(Tok::Dot),
                ';' => Some(Tok::Semi),
                _ => None,
            };
            if let Some(t) = single {
                out.push((t, line_no));
                i += 1;
            } else if c.is_whitespace() {
                i += 1;
            } else if c == '-' && cs.get(i + 1) == Some(&'>') {
                out.push((Tok::To, line_no));
                i += 2;
            } else if c == '=' && cs.get(i + 1) == Some(&'>') {
                out.push((Tok::Implies, line_no));
                i += 2;
            } else if c.is_alphanumeric() || c == '_' {
                let s = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '-') {
                    if cs[i] == '-' && cs.get(i + 1) == Some(&'>') {
                        break;
                    }
                    i += 1;
                }
                out.push((Tok::Ident(cs[s..i].iter().collect()), line_no));
            } else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    Ok(out)
}

struct Reader<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Reader<'a> {
    fn new(text: &str, sig: &'a Signature) -> Result<Reader<'a>> {
        Ok(Reader {
            toks: tokenize(text)?,
            pos: 0,
            sig,
        })
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |t| t.1)
    }

    fn err<T>(&self, message: String) -> Result<T> {
        Err(Error::Parse {
            line: self.line(),
            message,
        })
    }

    /// Attaches the current line to errors raised while building values.
    fn at<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                line: self.line(),
                message: other.to_string(),
            },
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> Result<Tok> {
        match self.toks.get(self.pos) {
            Some((t, _)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => self.err("unexpected end of input".into()),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            self.pos -= 1;
            self.err(format!("expected {want:?}, found {got:?}"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => {
                self.pos -= 1;
                self.err(format!("expected a name, found {other:?}"))
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        let s = self.ident()?;
        match s.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos -= 1;
                self.err(format!("expected a number, found {s}"))
            }
        }
    }

    /// Symbols up to the next non-identifier token.
    fn word(&mut self) -> Result<Word> {
        let mut syms: Vec<Sym> = Vec::new();
        while let Some(Tok::Ident(s)) = self.peek() {
            let s = s.clone();
            if s != "epsilon" {
                if !self.sig.is_symbol(&s) {
                    return self.err(format!("unknown functor or object symbol {s}"));
                }
                syms.push(Sym::from(s.as_str()));
            }
            self.pos += 1;
        }
        Ok(Word(syms))
    }

    fn atom(&mut self) -> Result<Atom> {
        self.expect(Tok::OpenAtom)?;
        let prefix = self.word()?;
        self.expect(Tok::Dot)?;
        let name = self.ident()?;
        let g = match self.sig.arrow(&name) {
            Ok(g) => g.clone(),
            Err(e) => return self.err(e.to_string()),
        };
        self.expect(Tok::Dot)?;
        let suffix = self.word()?;
        self.expect(Tok::CloseAtom)?;
        Ok(g.atom(prefix, suffix))
    }

    fn path(&mut self) -> Result<Path> {
        if self.peek() == Some(&Tok::OpenWord) {
            self.pos += 1;
            let w = self.word()?;
            self.expect(Tok::CloseWord)?;
            return Ok(Path::identity(w));
        }
        let mut atoms = vec![self.atom()?];
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            atoms.push(self.atom()?);
        }
        let p = Path::from_atoms(atoms);
        self.at(p)
    }

    fn term(&mut self) -> Result<PastingTerm> {
        self.expect(Tok::Open)?;
        let head = self.ident()?;
        let t = match head.as_str() {
            "cell" => PastingTerm::Cell(self.ident()?),
            "inv" => PastingTerm::Inverse(self.ident()?),
            "id" => PastingTerm::Id(self.path()?),
            "swap" => PastingTerm::Swap(self.path()?),
            "whisker" => {
                let l = self.word()?;
                let t = self.term()?;
                let r = self.word()?;
                PastingTerm::Whisker(l, Box::new(t), r)
            }
            "vcomp" | "hcomp" => {
                let mut t = self.term()?;
                while self.peek() == Some(&Tok::Open) {
                    let next = self.term()?;
                    t = if head == "vcomp" {
                        PastingTerm::vcomp(t, next)
                    } else {
                        PastingTerm::hcomp(t, next)
                    };
                }
                t
            }
            "subst" => {
                let inner = self.term()?;
                let mut s = Subst::default();
                while self.peek() == Some(&Tok::Open) {
                    self.pos += 1;
                    match self.ident()?.as_str() {
                        "obj" => {
                            let k = self.ident()?;
                            let w = self.word()?;
                            s.objects.insert(Sym::from(k.as_str()), w);
                        }
                        "arrow" => {
                            let k = self.ident()?;
                            let p = self.path()?;
                            s.arrows.insert(Sym::from(k.as_str()), p);
                        }
                        other => return self.err(format!("unknown substitution entry {other}")),
                    }
                    self.expect(Tok::Close)?;
                }
                PastingTerm::Subst(Box::new(inner), s)
            }
            "chain" => self.chain()?,
            other => return self.err(format!("unknown term form {other}")),
        };
        self.expect(Tok::Close)?;
        Ok(t)
    }

    fn chain(&mut self) -> Result<PastingTerm> {
        let start = self.path()?;
        let mut cur = start.clone();
        let mut out: Option<PastingTerm> = None;
        while self.peek() == Some(&Tok::Open) {
            self.pos += 1;
            let head = self.ident()?;
            let (step, next) = match head.as_str() {
                "at" => {
                    let k = self.number()?;
                    let t = self.term()?;
                    let r = PastingTerm::at(&cur, k, t, self.sig);
                    self.at(r)?
                }
                "swap" => {
                    let k = self.number()?;
                    if k + 2 > cur.len() {
                        return self.err(format!("no atoms {k} and {} in {cur}", k + 1));
                    }
                    let r = swap_atoms(&cur.atoms()[k], &cur.atoms()[k + 1]);
                    self.at(r)?;
                    let r =
                        PastingTerm::at(&cur, k, PastingTerm::Swap(cur.sub(k, k + 2)), self.sig);
                    self.at(r)?
                }
                other => return self.err(format!("unknown chain step {other}")),
            };
            self.expect(Tok::Close)?;
            cur = next;
            out = Some(match out {
                None => step,
                Some(t) => PastingTerm::vcomp(t, step),
            });
        }
        Ok(out.unwrap_or(PastingTerm::Id(start)))
    }
}

pub fn parse_word(text: &str, sig: &Signature) -> Result<Word> {
    let mut r = Reader::new(text, sig)?;
    let w = r.word()?;
    r.finish(w)
}

pub fn parse_path(text: &str, sig: &Signature) -> Result<Path> {
    let mut r = Reader::new(text, sig)?;
    let p = r.path()?;
    r.finish(p)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<PastingTerm> {
    let mut r = Reader::new(text, sig)?;
    let t = r.term()?;
    r.finish(t)
}

impl Reader<'_> {
    fn finish<T>(&self, v: T) -> Result<T> {
        if self.done() {
            Ok(v)
        } else {
            self.err(format!("trailing input at {:?}", self.peek()))
        }
    }
}

/// A parsed statement, applied once its references have resolved.
type Update = Box<dyn FnOnce(&mut Signature) -> Result<()>>;

/// Reads a whole signature. Later statements may refer to earlier ones.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let toks = tokenize(text)?;
    let mut sig = Signature::empty();
    let mut pos = 0;
    while pos < toks.len() {
        let mut r = Reader {
            toks: toks.clone(),
            pos,
            sig: &sig,
        };
        r.expect(Tok::Open)?;
        let head = r.ident()?;
        let line = r.line();
        let update: Update = match head.as_str() {
            "signature" => {
                let name = r.ident()?;
                let version = r.number()?;
                Box::new(move |s| {
                    s.name = name;
                    s.version = version as u32;
                    Ok(())
                })
            }
            "functors" | "objects" => {
                let mut names = Vec::new();
                while let Some(Tok::Ident(_)) = r.peek() {
                    names.push(r.ident()?);
                }
                let objects = head == "objects";
                Box::new(move |s| {
                    for n in names {
                        s.declare_symbol(&n, objects)?;
                    }
                    Ok(())
                })
            }
            "arrow" => {
                let name = r.ident()?;
                let src = r.word()?;
                r.expect(Tok::To)?;
                let tgt = r.word()?;
                Box::new(move |s| s.add_arrow(ArrowGen { name, src, tgt }))
            }
            "cell" => {
                let name = r.ident()?;
                let src = r.path()?;
                r.expect(Tok::Implies)?;
                let tgt = r.path()?;
                Box::new(move |s| {
                    s.add_cell(CellGen {
                        name,
                        src,
                        tgt,
                        invertible: true,
                    })
                })
            }
            "axiom" => {
                let name = r.ident()?;
                let lhs = r.term()?;
                let rhs = r.term()?;
                Box::new(move |s| s.add_axiom(Axiom { name, lhs, rhs }))
            }
            other => return r.err(format!("unknown statement {other}")),
        };
        r.expect(Tok::Close)?;
        pos = r.pos;
        update(&mut sig).map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        })?;
    }
    Ok(sig)
}
