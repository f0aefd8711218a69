//! Finite-set models of monads and distributive laws between them, with
//! exhaustive axiom checkers, converters between presentations, brute-force
//! search, and a symbolic pasting layer for the two-dimensional data.

pub mod builtin;
pub mod check;
pub mod distlaw;
pub mod element;
pub mod error;
pub mod finset;
pub mod functor;
pub mod monad;
pub mod nat;
pub mod pasting;
pub mod registry;
pub mod report;
pub mod search;
pub mod universe;

pub use element::Element;
pub use error::{Error, Result};
pub use finset::{FinFn, FinSet};
pub use functor::{Carrier, FunctorExpr};
pub use nat::{Ctx, NatTrans};
pub use report::{AxiomVerdict, LawReport, Witness};
pub use universe::{MorphismPolicy, TestUniverse};
