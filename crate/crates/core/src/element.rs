//! Structured elements of finite carriers.
//!
//! Elements are closed terms. The derived ordering compares the constructor
//! tag first and then the fields, which gives the canonical order used by
//! every carrier in the crate.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Atom(Arc<str>),
    Inl(Arc<Element>),
    Inr(Arc<Element>),
    Pair(Arc<Element>, Arc<Element>),
    /// Sorted and duplicate-free.
    Subset(Arc<[Element]>),
    /// Sorted by key, keys duplicate-free.
    FnTable(Arc<[(Element, Element)]>),
}

impl Element {
    pub fn atom(label: &str) -> Element {
        Element::Atom(Arc::from(label))
    }

    pub fn inl(x: Element) -> Element {
        Element::Inl(Arc::new(x))
    }

    pub fn inr(x: Element) -> Element {
        Element::Inr(Arc::new(x))
    }

    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Arc::new(a), Arc::new(b))
    }

    /// Builds a subset, sorting and removing duplicates.
    pub fn subset(mut xs: Vec<Element>) -> Element {
        xs.sort();
        xs.dedup();
        Element::Subset(Arc::from(xs))
    }

    /// Builds a function table. Later duplicates of a key are dropped.
    pub fn fn_table(mut kvs: Vec<(Element, Element)>) -> Element {
        kvs.sort_by(|a, b| a.0.cmp(&b.0));
        kvs.dedup_by(|a, b| a.0 == b.0);
        Element::FnTable(Arc::from(kvs))
    }

    pub fn as_subset(&self) -> Option<&[Element]> {
        match self {
            Element::Subset(xs) => Some(xs),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_table(&self) -> Option<&[(Element, Element)]> {
        match self {
            Element::FnTable(kvs) => Some(kvs),
            _ => None,
        }
    }

    /// Looks up a key in a function table.
    pub fn lookup(&self, key: &Element) -> Option<&Element> {
        let kvs = self.as_table()?;
        kvs.binary_search_by(|(k, _)| k.cmp(key))
            .ok()
            .map(|i| &kvs[i].1)
    }

    /// Checks the representation invariants recursively.
    pub fn is_canonical(&self) -> bool {
        match self {
            Element::Atom(_) => true,
            Element::Inl(x) | Element::Inr(x) => x.is_canonical(),
            Element::Pair(a, b) => a.is_canonical() && b.is_canonical(),
            Element::Subset(xs) => {
                xs.windows(2).all(|w| w[0] < w[1]) && xs.iter().all(Element::is_canonical)
            }
            Element::FnTable(kvs) => {
                kvs.windows(2).all(|w| w[0].0 < w[1].0)
                    && kvs
                        .iter()
                        .all(|(k, v)| k.is_canonical() && v.is_canonical())
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Element::Atom(_) => 0,
            Element::Inl(x) | Element::Inr(x) => 1 + x.depth(),
            Element::Pair(a, b) => 1 + a.depth().max(b.depth()),
            Element::Subset(xs) => 1 + xs.iter().map(Element::depth).max().unwrap_or(0),
            Element::FnTable(kvs) => {
                1 + kvs
                    .iter()
                    .map(|(k, v)| k.depth().max(v.depth()))
                    .max()
                    .unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Atom(s) => write!(f, "{s}"),
            Element::Inl(x) => write!(f, "inl({x})"),
            Element::Inr(x) => write!(f, "inr({x})"),
            Element::Pair(a, b) => write!(f, "({a},{b})"),
            Element::Subset(xs) => {
                write!(f, "{{")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "}}")
            }
            Element::FnTable(kvs) => {
                write!(f, "[")?;
                for (i, (k, v)) in kvs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}->{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
