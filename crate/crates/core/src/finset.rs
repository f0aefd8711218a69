//! Canonical finite sets and total functions between them.

use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};

/// A finite set stored as a sorted, duplicate-free list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    elems: Arc<[Element]>,
}

impl FinSet {
    pub fn new(mut elems: Vec<Element>) -> FinSet {
        elems.sort();
        elems.dedup();
        FinSet {
            elems: Arc::from(elems),
        }
    }

    pub fn empty() -> FinSet {
        FinSet::new(Vec::new())
    }

    /// A set of atoms with the given labels.
    pub fn atoms<S: AsRef<str>>(labels: &[S]) -> FinSet {
        FinSet::new(labels.iter().map(|l| Element::atom(l.as_ref())).collect())
    }

    /// The canonical set of size `n`: atoms a, b, c, ... (then x3, x4, ...).
    pub fn canonical(n: usize) -> FinSet {
        const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
        let labels: Vec<String> = (0..n)
            .map(|i| {
                NAMES
                    .get(i)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{i}"))
            })
            .collect();
        FinSet::atoms(&labels)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elems.iter()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.elems.binary_search(x).ok()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index_of(x).is_some()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A total function, tabulated in the order of its domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    table: Arc<[Element]>,
}

impl FinFn {
    /// Builds a function from values listed in domain order.
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<Element>) -> Result<FinFn> {
        if table.len() != dom.len() {
            return Err(Error::Boundary(format!(
                "table has {} entries but domain {} has {}",
                table.len(),
                dom,
                dom.len()
            )));
        }
        for v in &table {
            if !cod.contains(v) {
                return Err(Error::NotMember {
                    element: v.to_string(),
                    set: cod.to_string(),
                });
            }
        }
        Ok(FinFn {
            dom,
            cod,
            table: Arc::from(table),
        })
    }

    /// Tabulates `f` over the domain.
    pub fn from_fn(
        dom: FinSet,
        cod: FinSet,
        mut f: impl FnMut(&Element) -> Result<Element>,
    ) -> Result<FinFn> {
        let table = dom.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        FinFn::new(dom, cod, table)
    }

    pub fn identity(x: &FinSet) -> FinFn {
        FinFn {
            dom: x.clone(),
            cod: x.clone(),
            table: Arc::from(x.elements().to_vec()),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn values(&self) -> &[Element] {
        &self.table
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        match self.dom.index_of(x) {
            Some(i) => Ok(self.table[i].clone()),
            None => Err(Error::NotMember {
                element: x.to_string(),
                set: self.dom.to_string(),
            }),
        }
    }
}

impl fmt::Display for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (x, y)) in self.dom.iter().zip(self.table.iter()).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self, self.dom, self.cod)
    }
}

/// `g ∘ f`, defined when `f.cod` and `g.dom` are the same set.
pub fn compose(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.cod != g.dom {
        return Err(Error::Composition {
            left: format!("codomain {}", f.cod),
            right: format!("domain {}", g.dom),
        });
    }
    let table = f
        .table
        .iter()
        .map(|y| g.apply(y))
        .collect::<Result<Vec<_>>>()?;
    Ok(FinFn {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: Arc::from(table),
    })
}

pub fn fn_equal(f: &FinFn, g: &FinFn) -> bool {
    f.dom == g.dom && f.cod == g.cod && f.table == g.table
}

/// Every function `x -> y`, in odometer order over codomain indices.
pub fn all_functions(x: &FinSet, y: &FinSet) -> AllFunctions {
    AllFunctions {
        dom: x.clone(),
        cod: y.clone(),
        digits: if y.is_empty() && !x.is_empty() {
            None
        } else {
            Some(vec![0; x.len()])
        },
    }
}

/// `|y|^|x|`, saturating at `u128::MAX`.
pub fn function_count(x: usize, y: usize) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..x {
        n = n.saturating_mul(y as u128);
    }
    n
}

pub struct AllFunctions {
    dom: FinSet,
    cod: FinSet,
    digits: Option<Vec<usize>>,
}

impl Iterator for AllFunctions {
    type Item = FinFn;

    fn next(&mut self) -> Option<FinFn> {
        let digits = self.digits.as_mut()?;
        let table: Vec<Element> = digits
            .iter()
            .map(|&d| self.cod.elements()[d].clone())
            .collect();
        let out = FinFn {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table: Arc::from(table),
        };
        // advance, least significant digit last so the order is lexicographic
        let mut i = digits.len();
        loop {
            if i == 0 {
                self.digits = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < self.cod.len() {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2() -> FinFn {
        let x = FinSet::canonical(2);
        FinFn::new(
            x.clone(),
            x.clone(),
            vec![Element::atom("b"), Element::atom("a")],
        )
        .unwrap()
    }

    #[test]
    fn swap_twice_is_identity() {
        let s = swap2();
        let id = FinFn::identity(s.dom());
        assert!(fn_equal(&compose(&s, &s).unwrap(), &id));
        assert!(!fn_equal(&s, &id));
    }

    #[test]
    fn identities_are_neutral() {
        let s = swap2();
        let id = FinFn::identity(s.dom());
        assert!(fn_equal(&compose(&id, &s).unwrap(), &s));
        assert!(fn_equal(&compose(&s, &id).unwrap(), &s));
    }

    #[test]
    fn composition_boundary_error() {
        let s = swap2();
        let t = FinFn::identity(&FinSet::canonical(3));
        let err = compose(&t, &s).unwrap_err();
        assert!(matches!(err, Error::Composition { .. }));
    }

    #[test]
    fn function_counts() {
        let c = |a, b| all_functions(&FinSet::canonical(a), &FinSet::canonical(b)).count();
        assert_eq!(c(0, 3), 1);
        assert_eq!(c(2, 0), 0);
        assert_eq!(c(2, 3), 9);
        assert_eq!(c(0, 0), 1);
    }

    #[test]
    fn bad_table_rejected() {
        let x = FinSet::canonical(1);
        assert!(FinFn::new(x.clone(), FinSet::empty(), vec![Element::atom("a")]).is_err());
        assert!(FinFn::new(x.clone(), x.clone(), vec![]).is_err());
    }
}
