//! A closed grammar of finitary endofunctors on finite sets.
//!
//! `Comp(f, g)` means "apply `g`, then `f`". Composites are kept in a
//! normal form (right-nested, no identity factors) so that structural
//! equality of expressions is equality of functor words.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{all_functions, FinFn, FinSet};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctorExpr {
    Id,
    Const(FinSet),
    Sum(Arc<FunctorExpr>, Arc<FunctorExpr>),
    Prod(Arc<FunctorExpr>, Arc<FunctorExpr>),
    Power,
    Exp(FinSet),
    Comp(Arc<FunctorExpr>, Arc<FunctorExpr>),
}

pub type ElemFn<'a> = &'a dyn Fn(&Element) -> Result<Element>;

impl FunctorExpr {
    pub fn constant(s: FinSet) -> FunctorExpr {
        FunctorExpr::Const(s)
    }

    pub fn sum(a: FunctorExpr, b: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Sum(Arc::new(a.normalize()), Arc::new(b.normalize()))
    }

    pub fn prod(a: FunctorExpr, b: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Prod(Arc::new(a.normalize()), Arc::new(b.normalize()))
    }

    pub fn exp(r: FinSet) -> FunctorExpr {
        FunctorExpr::Exp(r)
    }

    /// `f ∘ g`.
    pub fn comp(f: &FunctorExpr, g: &FunctorExpr) -> FunctorExpr {
        let mut fs = f.factors();
        fs.extend(g.factors());
        FunctorExpr::from_factors(&fs)
    }

    /// Composite of a word, outermost factor first: `[T, P]` is `T ∘ P`.
    pub fn word(parts: &[&FunctorExpr]) -> FunctorExpr {
        let mut fs = Vec::new();
        for p in parts {
            fs.extend(p.factors());
        }
        FunctorExpr::from_factors(&fs)
    }

    pub fn from_factors(fs: &[FunctorExpr]) -> FunctorExpr {
        match fs {
            [] => FunctorExpr::Id,
            [f] => f.clone(),
            [f, rest @ ..] => FunctorExpr::Comp(
                Arc::new(f.clone()),
                Arc::new(FunctorExpr::from_factors(rest)),
            ),
        }
    }

    /// Non-composite factors, outermost first. The identity has none.
    pub fn factors(&self) -> Vec<FunctorExpr> {
        match self {
            FunctorExpr::Id => vec![],
            FunctorExpr::Comp(a, b) => {
                let mut v = a.factors();
                v.extend(b.factors());
                v
            }
            other => vec![other.normalize()],
        }
    }

    pub fn normalize(&self) -> FunctorExpr {
        match self {
            FunctorExpr::Sum(a, b) => {
                FunctorExpr::Sum(Arc::new(a.normalize()), Arc::new(b.normalize()))
            }
            FunctorExpr::Prod(a, b) => {
                FunctorExpr::Prod(Arc::new(a.normalize()), Arc::new(b.normalize()))
            }
            FunctorExpr::Comp(_, _) => FunctorExpr::from_factors(&self.factors()),
            other => other.clone(),
        }
    }

    /// Equality as functors built from the grammar, up to association.
    pub fn equiv(&self, other: &FunctorExpr) -> bool {
        self.normalize() == other.normalize()
    }

    /// Object action. Callers are expected to check `card` first for
    /// anything that might be large.
    pub fn apply_obj(&self, x: &FinSet) -> FinSet {
        match self {
            FunctorExpr::Id => x.clone(),
            FunctorExpr::Const(s) => s.clone(),
            FunctorExpr::Sum(a, b) => {
                let mut v: Vec<Element> =
                    a.apply_obj(x).iter().cloned().map(Element::inl).collect();
                v.extend(b.apply_obj(x).iter().cloned().map(Element::inr));
                FinSet::new(v)
            }
            FunctorExpr::Prod(a, b) => {
                let (sa, sb) = (a.apply_obj(x), b.apply_obj(x));
                let mut v = Vec::with_capacity(sa.len() * sb.len());
                for p in sa.iter() {
                    for q in sb.iter() {
                        v.push(Element::pair(p.clone(), q.clone()));
                    }
                }
                FinSet::new(v)
            }
            FunctorExpr::Power => {
                let n = x.len();
                let mut v = Vec::with_capacity(1usize << n.min(30));
                for mask in 0u64..(1u64 << n) {
                    let xs: Vec<Element> = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| x.elements()[i].clone())
                        .collect();
                    v.push(Element::Subset(Arc::from(xs)));
                }
                FinSet::new(v)
            }
            FunctorExpr::Exp(r) => FinSet::new(
                all_functions(r, x)
                    .map(|f| {
                        Element::FnTable(Arc::from(
                            f.dom()
                                .iter()
                                .cloned()
                                .zip(f.values().iter().cloned())
                                .collect::<Vec<_>>(),
                        ))
                    })
                    .collect(),
            ),
            FunctorExpr::Comp(a, b) => a.apply_obj(&b.apply_obj(x)),
        }
    }

    /// Pointwise morphism action: maps `x ∈ F(A)` along `f: A -> B`.
    pub fn fmap(&self, x: &Element, f: ElemFn<'_>) -> Result<Element> {
        let shape = |ctx: &str| Error::Shape {
            element: x.to_string(),
            context: format!("{ctx} in {self}"),
        };
        match self {
            FunctorExpr::Id => f(x),
            FunctorExpr::Const(_) => Ok(x.clone()),
            FunctorExpr::Sum(a, b) => match x {
                Element::Inl(y) => Ok(Element::inl(a.fmap(y, f)?)),
                Element::Inr(y) => Ok(Element::inr(b.fmap(y, f)?)),
                _ => Err(shape("sum")),
            },
            FunctorExpr::Prod(a, b) => match x {
                Element::Pair(p, q) => Ok(Element::pair(a.fmap(p, f)?, b.fmap(q, f)?)),
                _ => Err(shape("product")),
            },
            FunctorExpr::Power => match x {
                Element::Subset(xs) => Ok(Element::subset(
                    xs.iter().map(f).collect::<Result<Vec<_>>>()?,
                )),
                _ => Err(shape("powerset")),
            },
            FunctorExpr::Exp(_) => match x {
                Element::FnTable(kvs) => Ok(Element::FnTable(Arc::from(
                    kvs.iter()
                        .map(|(k, v)| Ok((k.clone(), f(v)?)))
                        .collect::<Result<Vec<_>>>()?,
                ))),
                _ => Err(shape("exponential")),
            },
            FunctorExpr::Comp(a, b) => a.fmap(x, &|y: &Element| b.fmap(y, f)),
        }
    }

    pub fn apply_mor(&self, f: &FinFn) -> Result<FinFn> {
        let dom = self.apply_obj(f.dom());
        let cod = self.apply_obj(f.cod());
        FinFn::from_fn(dom, cod, |x| self.fmap(x, &|y| f.apply(y)))
    }

    /// Cardinality of `F(X)` when `|X| = base`; `None` on overflow.
    pub fn card(&self, base: u128) -> Option<u128> {
        match self {
            FunctorExpr::Id => Some(base),
            FunctorExpr::Const(s) => Some(s.len() as u128),
            FunctorExpr::Sum(a, b) => a.card(base)?.checked_add(b.card(base)?),
            FunctorExpr::Prod(a, b) => a.card(base)?.checked_mul(b.card(base)?),
            FunctorExpr::Power => {
                if base < 127 {
                    Some(1u128 << base)
                } else {
                    None
                }
            }
            FunctorExpr::Exp(r) => {
                let mut n: u128 = 1;
                for _ in 0..r.len() {
                    n = n.checked_mul(base)?;
                }
                Some(n)
            }
            FunctorExpr::Comp(a, b) => a.card(b.card(base)?),
        }
    }

    /// Number of non-constant symbols, used as an iteration depth.
    pub fn depth(&self) -> usize {
        self.factors().len()
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Id => write!(f, "Id"),
            FunctorExpr::Const(s) => write!(f, "K{s}"),
            FunctorExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            FunctorExpr::Prod(a, b) => write!(f, "({a} x {b})"),
            FunctorExpr::Power => write!(f, "P"),
            FunctorExpr::Exp(r) => write!(f, "(-)^{r}"),
            FunctorExpr::Comp(_, _) => {
                let fs = self.factors();
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The carrier `F(X)`, possibly too large to list.
#[derive(Clone, Debug)]
pub struct Carrier {
    pub functor: FunctorExpr,
    pub base: FinSet,
}

impl Carrier {
    pub fn new(functor: &FunctorExpr, base: &FinSet) -> Carrier {
        Carrier {
            functor: functor.normalize(),
            base: base.clone(),
        }
    }

    pub fn card(&self) -> Option<u128> {
        self.functor.card(self.base.len() as u128)
    }

    pub fn materialize(&self) -> FinSet {
        self.functor.apply_obj(&self.base)
    }

    /// Lists the carrier if it has at most `cap` elements, otherwise draws
    /// `samples` elements with `rng`. The flag says whether the list is
    /// exhaustive.
    pub fn elements(
        &self,
        cap: u128,
        samples: usize,
        rng: &mut ChaCha8Rng,
    ) -> (Vec<Element>, bool) {
        match self.card() {
            Some(n) if n <= cap => (self.materialize().elements().to_vec(), true),
            _ => {
                let fs = self.functor.factors();
                let mut v: Vec<Element> = (0..samples)
                    .filter_map(|_| sample_factors(&fs, &self.base, rng))
                    .collect();
                v.sort();
                v.dedup();
                (v, false)
            }
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Option<Element> {
        sample_factors(&self.functor.factors(), &self.base, rng)
    }
}

fn factors_card(fs: &[FunctorExpr], base: &FinSet) -> Option<u128> {
    let mut c = base.len() as u128;
    for f in fs.iter().rev() {
        c = f.card(c)?;
    }
    Some(c)
}

fn with_rest(f: &FunctorExpr, rest: &[FunctorExpr]) -> Vec<FunctorExpr> {
    let mut v = f.factors();
    v.extend(rest.iter().cloned());
    v
}

fn sample_factors(fs: &[FunctorExpr], base: &FinSet, rng: &mut ChaCha8Rng) -> Option<Element> {
    let Some((head, rest)) = fs.split_first() else {
        if base.is_empty() {
            return None;
        }
        return Some(base.elements()[rng.gen_range(0..base.len())].clone());
    };
    match head {
        FunctorExpr::Const(s) => {
            if s.is_empty() {
                None
            } else {
                Some(s.elements()[rng.gen_range(0..s.len())].clone())
            }
        }
        FunctorExpr::Sum(a, b) => {
            let (fa, fb) = (with_rest(a, rest), with_rest(b, rest));
            let weight = |c: Option<u128>| c.map(|n| n as f64).unwrap_or(f64::MAX);
            let (ca, cb) = (
                weight(factors_card(&fa, base)),
                weight(factors_card(&fb, base)),
            );
            if ca == 0.0 && cb == 0.0 {
                return None;
            }
            let left = cb == 0.0 || (ca > 0.0 && rng.gen_bool((ca / (ca + cb)).clamp(0.0, 1.0)));
            if left {
                sample_factors(&fa, base, rng).map(Element::inl)
            } else {
                sample_factors(&fb, base, rng).map(Element::inr)
            }
        }
        FunctorExpr::Prod(a, b) => {
            let p = sample_factors(&with_rest(a, rest), base, rng)?;
            let q = sample_factors(&with_rest(b, rest), base, rng)?;
            Some(Element::pair(p, q))
        }
        FunctorExpr::Power => {
            let inner = factors_card(rest, base);
            match inner {
                Some(n) if n <= 12 => {
                    let all = FunctorExpr::from_factors(rest).apply_obj(base);
                    let xs: Vec<Element> =
                        all.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
                    Some(Element::subset(xs))
                }
                _ => {
                    let k = rng.gen_range(0..=3);
                    let xs: Vec<Element> = (0..k)
                        .filter_map(|_| sample_factors(rest, base, rng))
                        .collect();
                    Some(Element::subset(xs))
                }
            }
        }
        FunctorExpr::Exp(r) => {
            let mut kvs = Vec::with_capacity(r.len());
            for k in r.iter() {
                kvs.push((k.clone(), sample_factors(rest, base, rng)?));
            }
            Some(Element::fn_table(kvs))
        }
        FunctorExpr::Id | FunctorExpr::Comp(_, _) => unreachable!("factors are never Id or Comp"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn exc() -> FunctorExpr {
        FunctorExpr::sum(FunctorExpr::Id, FunctorExpr::Const(FinSet::atoms(&["e"])))
    }

    #[test]
    fn association_is_irrelevant() {
        let t = exc();
        let p = FunctorExpr::Power;
        let a = FunctorExpr::comp(&t, &FunctorExpr::comp(&p, &t));
        let b = FunctorExpr::comp(&FunctorExpr::comp(&t, &p), &t);
        assert_eq!(a, b);
        assert_eq!(FunctorExpr::comp(&FunctorExpr::Id, &t), t);
    }

    #[test]
    fn cardinalities_match_materialisation() {
        let t = exc();
        let p = FunctorExpr::Power;
        let x = FinSet::canonical(2);
        for f in [
            t.clone(),
            FunctorExpr::word(&[&p, &t]),
            FunctorExpr::word(&[&t, &p, &t]),
            FunctorExpr::exp(FinSet::canonical(2)),
            FunctorExpr::prod(FunctorExpr::Const(FinSet::canonical(2)), FunctorExpr::Id),
        ] {
            assert_eq!(f.card(2), Some(f.apply_obj(&x).len() as u128), "{f}");
        }
        // the decagon source for one exception over the powerset
        let w = FunctorExpr::word(&[&t, &p, &t, &p, &t]);
        assert_eq!(w.card(2), Some(513));
    }

    #[test]
    fn samples_are_members() {
        let t = exc();
        let p = FunctorExpr::Power;
        let f = FunctorExpr::word(&[&t, &p, &t]);
        let x = FinSet::canonical(2);
        let all = f.apply_obj(&x);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = Carrier::new(&f, &x);
        for _ in 0..50 {
            let e = c.sample(&mut rng).unwrap();
            assert!(all.contains(&e), "{e}");
        }
    }

    #[test]
    fn powerset_direct_image() {
        let x = FinSet::canonical(2);
        let one = FinSet::canonical(1);
        let collapse = FinFn::new(x.clone(), one.clone(), vec![Element::atom("a"); 2]).unwrap();
        let pf = FunctorExpr::Power.apply_mor(&collapse).unwrap();
        let ab = Element::subset(vec![Element::atom("a"), Element::atom("b")]);
        assert_eq!(
            pf.apply(&ab).unwrap(),
            Element::subset(vec![Element::atom("a")])
        );
    }
}
