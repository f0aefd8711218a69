//! Evaluation of equations between composites over a test universe.

use rayon::prelude::*;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::Carrier;
use crate::nat::{Ctx, NatTrans};
use crate::report::{AxiomVerdict, Witness};
use crate::universe::TestUniverse;

fn show(r: &Result<Element>) -> String {
    match r {
        Ok(e) => e.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn out_of_range(r: &Result<Element>) -> bool {
    matches!(r, Err(Error::OutOfRange(_)))
}

/// `Some(true)` on a difference, `None` when the instance cannot be
/// evaluated because a component lies outside the enumerated sizes.
fn compare(a: &Result<Element>, b: &Result<Element>) -> Option<bool> {
    if out_of_range(a) || out_of_range(b) {
        return None;
    }
    Some(match (a, b) {
        (Ok(x), Ok(y)) => x != y,
        _ => true,
    })
}

fn differs(a: &Result<Element>, b: &Result<Element>) -> bool {
    compare(a, b) == Some(true)
}

fn skipped(elems: &[Element], f: impl Fn(&Element) -> Option<bool> + Sync) -> u64 {
    elems.par_iter().filter(|e| f(e).is_none()).count() as u64
}

/// Compares two parallel composites at every object of the universe,
/// element by element. The witness is the first element of the smallest
/// failing object.
pub fn check_equation(
    axiom: &str,
    lhs: &NatTrans,
    rhs: &NatTrans,
    u: &TestUniverse,
) -> AxiomVerdict {
    if !lhs.src().equiv(&rhs.src()) || !lhs.tgt().equiv(&rhs.tgt()) {
        return AxiomVerdict::failed(
            axiom,
            format!(
                "sides are not parallel: {} -> {} versus {} -> {}",
                lhs.src(),
                lhs.tgt(),
                rhs.src(),
                rhs.tgt()
            ),
        );
    }
    let mut v = AxiomVerdict::new(axiom);
    let src = lhs.src();
    for x in &u.objects {
        let carrier = Carrier::new(&src, x);
        let (elems, full) = u.elements(&carrier, axiom);
        v.exhaustive &= full;
        let ctx = Ctx::at(x);
        let bad = elems
            .par_iter()
            .position_first(|e| differs(&lhs.apply(&ctx, e), &rhs.apply(&ctx, e)));
        match bad {
            None => {
                let s = skipped(&elems, |e| {
                    compare(&lhs.apply(&ctx, e), &rhs.apply(&ctx, e))
                });
                v.skipped += s;
                v.instances += elems.len() as u64 - s;
            }
            Some(i) => {
                let e = &elems[i];
                v.instances += i as u64 + 1;
                v.pass = false;
                v.witness = Some(Witness {
                    object: x.to_string(),
                    element: e.to_string(),
                    lhs: show(&lhs.apply(&ctx, e)),
                    rhs: show(&rhs.apply(&ctx, e)),
                    morphisms: vec![],
                });
                return v;
            }
        }
    }
    v
}

/// Naturality of `t` against every morphism of the universe.
pub fn check_naturality(axiom: &str, t: &NatTrans, u: &TestUniverse) -> AxiomVerdict {
    let mut v = AxiomVerdict::new(axiom);
    let (src, tgt) = (t.src(), t.tgt());
    for x in &u.objects {
        let (elems, full) = u.elements(&Carrier::new(&src, x), axiom);
        v.exhaustive &= full;
        for y in &u.objects {
            let (homs, hfull) = u.functions(x, y);
            v.exhaustive &= hfull;
            let (cx, cy) = (Ctx::at(x), Ctx::at(y));
            for f in &homs {
                let g = |e: &Element| f.apply(e);
                let lhs = |e: &Element| t.apply(&cx, e).and_then(|z| tgt.fmap(&z, &g));
                let rhs = |e: &Element| src.fmap(e, &g).and_then(|z| t.apply(&cy, &z));
                let bad = elems
                    .par_iter()
                    .position_first(|e| differs(&lhs(e), &rhs(e)));
                match bad {
                    None => v.instances += elems.len() as u64,
                    Some(i) => {
                        let e = &elems[i];
                        v.instances += i as u64 + 1;
                        v.pass = false;
                        v.witness = Some(Witness {
                            object: format!("{x} -> {y}"),
                            element: e.to_string(),
                            lhs: show(&lhs(e)),
                            rhs: show(&rhs(e)),
                            morphisms: vec![f.to_string()],
                        });
                        return v;
                    }
                }
            }
        }
    }
    v
}

/// Accumulates comparisons of tabulated functions into a verdict.
pub struct TableCheck {
    v: AxiomVerdict,
}

impl TableCheck {
    pub fn new(axiom: &str) -> TableCheck {
        TableCheck {
            v: AxiomVerdict::new(axiom),
        }
    }

    pub fn failed(&self) -> bool {
        !self.v.pass
    }

    pub fn mark_sampled(&mut self, exhaustive: bool) {
        self.v.exhaustive &= exhaustive;
    }

    /// Records one instance. Returns false once a failure has been seen.
    pub fn record(
        &mut self,
        object: &FinSet,
        morphisms: &[&FinFn],
        lhs: Result<FinFn>,
        rhs: Result<FinFn>,
    ) -> bool {
        if !self.v.pass {
            return false;
        }
        self.v.instances += 1;
        let witness = |element: String, l: String, r: String| Witness {
            object: object.to_string(),
            element,
            lhs: l,
            rhs: r,
            morphisms: morphisms.iter().map(|f| f.to_string()).collect(),
        };
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                if l.dom() != r.dom() || l.cod() != r.cod() {
                    self.v.pass = false;
                    self.v.witness = Some(witness(
                        "(boundary)".into(),
                        format!("{} -> {}", l.dom(), l.cod()),
                        format!("{} -> {}", r.dom(), r.cod()),
                    ));
                    return false;
                }
                for (i, x) in l.dom().iter().enumerate() {
                    if l.values()[i] != r.values()[i] {
                        self.v.pass = false;
                        self.v.witness = Some(witness(
                            x.to_string(),
                            l.values()[i].to_string(),
                            r.values()[i].to_string(),
                        ));
                        return false;
                    }
                }
                true
            }
            (l, r) => {
                self.v.pass = false;
                let s = |x: &Result<FinFn>| match x {
                    Ok(f) => f.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                self.v.witness = Some(witness("(evaluation)".into(), s(&l), s(&r)));
                false
            }
        }
    }

    pub fn finish(self) -> AxiomVerdict {
        self.v
    }
}
