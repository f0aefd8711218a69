//! Formal pasting diagrams over a signature of generating 1-cells and
//! invertible 2-cells, with an interchange normal form.

pub mod builders;
pub mod degenerate;
pub mod sample;
pub mod signature;
pub mod syntax;
pub mod term;
pub mod word;

pub use degenerate::{check_axiom_degenerate, check_term_degenerate, Interpretation};
pub use signature::{ArrowGen, Axiom, CellGen, Signature};
pub use syntax::{parse_path, parse_term, parse_word};
pub use term::{
    boundary, flatten, normal_form, normalize, Flat, NormalPasting, Occurrence, PastingTerm,
};
pub use word::{Atom, Path, Side, Subst, Sym, Word};
