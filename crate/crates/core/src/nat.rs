//! Natural transformations between functor expressions.
//!
//! Primitive components are either pointwise rules that do not depend on
//! the object, or per-object table builders. Whiskering and vertical
//! composition are kept symbolic and evaluated element by element, so a
//! component on a huge carrier can be applied without listing the carrier.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;

pub type PointFn = Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync>;
pub type ObjFn = Arc<dyn Fn(&FinSet) -> Result<FinFn> + Send + Sync>;

type TableCache = Arc<Mutex<HashMap<(FunctorExpr, FinSet), Arc<FinFn>>>>;

#[derive(Clone)]
pub enum Component {
    Point(PointFn),
    PerObject { build: ObjFn, cache: TableCache },
}

#[derive(Clone)]
pub enum NatTrans {
    Prim {
        name: Arc<str>,
        src: FunctorExpr,
        tgt: FunctorExpr,
        comp: Component,
    },
    Identity(FunctorExpr),
    Whisker {
        left: FunctorExpr,
        inner: Arc<NatTrans>,
        right: FunctorExpr,
    },
    /// Vertical composite in diagram order.
    Seq(Arc<[NatTrans]>),
}

/// The object at which a component is evaluated: `right(base)`.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub base: FinSet,
    pub right: FunctorExpr,
}

impl Ctx {
    pub fn at(x: &FinSet) -> Ctx {
        Ctx {
            base: x.clone(),
            right: FunctorExpr::Id,
        }
    }

    fn under(&self, r: &FunctorExpr) -> Ctx {
        Ctx {
            base: self.base.clone(),
            right: FunctorExpr::comp(r, &self.right),
        }
    }
}

impl NatTrans {
    pub fn point(
        name: &str,
        src: FunctorExpr,
        tgt: FunctorExpr,
        f: impl Fn(&Element) -> Result<Element> + Send + Sync + 'static,
    ) -> NatTrans {
        NatTrans::Prim {
            name: Arc::from(name),
            src: src.normalize(),
            tgt: tgt.normalize(),
            comp: Component::Point(Arc::new(f)),
        }
    }

    pub fn per_object(
        name: &str,
        src: FunctorExpr,
        tgt: FunctorExpr,
        build: impl Fn(&FinSet) -> Result<FinFn> + Send + Sync + 'static,
    ) -> NatTrans {
        NatTrans::Prim {
            name: Arc::from(name),
            src: src.normalize(),
            tgt: tgt.normalize(),
            comp: Component::PerObject {
                build: Arc::new(build),
                cache: Arc::new(Mutex::new(HashMap::new())),
            },
        }
    }

    pub fn identity(f: &FunctorExpr) -> NatTrans {
        NatTrans::Identity(f.normalize())
    }

    /// `left · t · right`.
    pub fn whisker(left: &FunctorExpr, t: &NatTrans, right: &FunctorExpr) -> NatTrans {
        let (left, right) = (left.normalize(), right.normalize());
        if left == FunctorExpr::Id && right == FunctorExpr::Id {
            return t.clone();
        }
        match t {
            NatTrans::Identity(f) => NatTrans::Identity(FunctorExpr::word(&[&left, f, &right])),
            NatTrans::Whisker {
                left: l2,
                inner,
                right: r2,
            } => NatTrans::Whisker {
                left: FunctorExpr::comp(&left, l2),
                inner: inner.clone(),
                right: FunctorExpr::comp(r2, &right),
            },
            _ => NatTrans::Whisker {
                left,
                inner: Arc::new(t.clone()),
                right,
            },
        }
    }

    pub fn left(f: &FunctorExpr, t: &NatTrans) -> NatTrans {
        NatTrans::whisker(f, t, &FunctorExpr::Id)
    }

    pub fn right(t: &NatTrans, f: &FunctorExpr) -> NatTrans {
        NatTrans::whisker(&FunctorExpr::Id, t, f)
    }

    /// Vertical composite, first element applied first.
    pub fn seq(parts: &[NatTrans]) -> Result<NatTrans> {
        let mut flat: Vec<NatTrans> = Vec::new();
        for p in parts {
            match p {
                NatTrans::Seq(xs) => flat.extend(xs.iter().cloned()),
                other => flat.push(other.clone()),
            }
        }
        if flat.is_empty() {
            return Err(Error::Boundary("empty vertical composite".into()));
        }
        for w in flat.windows(2) {
            if !w[0].tgt().equiv(&w[1].src()) {
                return Err(Error::Composition {
                    left: format!("{} : {} -> {}", w[0], w[0].src(), w[0].tgt()),
                    right: format!("{} : {} -> {}", w[1], w[1].src(), w[1].tgt()),
                });
            }
        }
        if flat.len() == 1 {
            return Ok(flat.pop().unwrap());
        }
        Ok(NatTrans::Seq(Arc::from(flat)))
    }

    pub fn then(&self, next: &NatTrans) -> Result<NatTrans> {
        NatTrans::seq(&[self.clone(), next.clone()])
    }

    pub fn src(&self) -> FunctorExpr {
        match self {
            NatTrans::Prim { src, .. } => src.clone(),
            NatTrans::Identity(f) => f.clone(),
            NatTrans::Whisker { left, inner, right } => {
                FunctorExpr::word(&[left, &inner.src(), right])
            }
            NatTrans::Seq(xs) => xs[0].src(),
        }
    }

    pub fn tgt(&self) -> FunctorExpr {
        match self {
            NatTrans::Prim { tgt, .. } => tgt.clone(),
            NatTrans::Identity(f) => f.clone(),
            NatTrans::Whisker { left, inner, right } => {
                FunctorExpr::word(&[left, &inner.tgt(), right])
            }
            NatTrans::Seq(xs) => xs[xs.len() - 1].tgt(),
        }
    }

    fn needs_object(&self) -> bool {
        match self {
            NatTrans::Prim { comp, .. } => matches!(comp, Component::PerObject { .. }),
            NatTrans::Identity(_) => false,
            NatTrans::Whisker { inner, .. } => inner.needs_object(),
            NatTrans::Seq(xs) => xs.iter().any(NatTrans::needs_object),
        }
    }

    /// Applies the component at `ctx` to one element of its source.
    pub fn apply(&self, ctx: &Ctx, x: &Element) -> Result<Element> {
        match self {
            NatTrans::Prim { comp, .. } => match comp {
                Component::Point(f) => f(x),
                Component::PerObject { build, cache } => {
                    let key = (ctx.right.clone(), ctx.base.clone());
                    let hit = cache.lock().expect("table cache").get(&key).cloned();
                    let table = match hit {
                        Some(t) => t,
                        None => {
                            let obj = ctx.right.apply_obj(&ctx.base);
                            let t = Arc::new(build(&obj)?);
                            cache.lock().expect("table cache").insert(key, t.clone());
                            t
                        }
                    };
                    table.apply(x)
                }
            },
            NatTrans::Identity(_) => Ok(x.clone()),
            NatTrans::Whisker { left, inner, right } => {
                if inner.needs_object() {
                    let c = ctx.under(right);
                    left.fmap(x, &|y| inner.apply(&c, y))
                } else {
                    left.fmap(x, &|y| inner.apply(ctx, y))
                }
            }
            NatTrans::Seq(xs) => {
                let mut cur = x.clone();
                for t in xs.iter() {
                    cur = t.apply(ctx, &cur)?;
                }
                Ok(cur)
            }
        }
    }

    /// The component at `x` as a table.
    pub fn component(&self, x: &FinSet) -> Result<FinFn> {
        let dom = self.src().apply_obj(x);
        let cod = self.tgt().apply_obj(x);
        let ctx = Ctx::at(x);
        FinFn::from_fn(dom, cod, |e| self.apply(&ctx, e))
    }

    /// The same family, evaluated through cached component tables.
    pub fn tabulated(&self, name: &str) -> NatTrans {
        let me = self.clone();
        NatTrans::per_object(name, self.src(), self.tgt(), move |x| me.component(x))
    }

    /// The same family under a new name.
    pub fn renamed(&self, name: &str) -> NatTrans {
        let me = self.clone();
        match self {
            NatTrans::Prim { .. } | NatTrans::Seq(_) | NatTrans::Whisker { .. } => {
                let src = self.src();
                let tgt = self.tgt();
                if me.needs_object() {
                    NatTrans::per_object(name, src, tgt, move |x| me.component(x))
                } else {
                    NatTrans::point(name, src, tgt, move |e| {
                        me.apply(&Ctx::at(&FinSet::empty()), e)
                    })
                }
            }
            NatTrans::Identity(f) => NatTrans::point(name, f.clone(), f.clone(), |e| Ok(e.clone())),
        }
    }
}

impl fmt::Display for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatTrans::Prim { name, .. } => write!(f, "{name}"),
            NatTrans::Identity(x) => write!(f, "id[{x}]"),
            NatTrans::Whisker { left, inner, right } => {
                if *left != FunctorExpr::Id {
                    write!(f, "{left}.")?;
                }
                write!(f, "{inner}")?;
                if *right != FunctorExpr::Id {
                    write!(f, ".{right}")?;
                }
                Ok(())
            }
            NatTrans::Seq(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ; ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self, self.src(), self.tgt())
    }
}
