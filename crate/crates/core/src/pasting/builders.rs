//! Constructions of 2-cells as pastings of other 2-cells. Each builder
//! checks its result against the boundary of the cell it constructs.

use super::signature::Signature;
use super::syntax::{parse_path, parse_term};
use super::term::{boundary, PastingTerm};
use super::word::{Path, Subst, Sym};
use crate::error::{Error, Result};

const OMEGA_FROM_PENTAGONS: &str = "\
(chain [T P . lambda . T] ; [T P P . m . epsilon] ; [T . mu . T] ; [epsilon . lambda . T] ; [P . m . epsilon]
    (at 2 (whisker epsilon (inv omega4) T))
    (swap 1)
    (swap 0)
    (swap 2)
    (swap 4)
    (at 3 (whisker P P (cell tassoc) epsilon))
    (at 1 (whisker P (inv omega3) T)))";
const OMEGA4_FROM_OMEGA: &str = "\
(chain [epsilon . lambda . P] ; [P . lambda . epsilon] ; [epsilon . mu . T]
    (at 2 (whisker P P (inv tr) epsilon))
    (swap 1)
    (at 2 (whisker P (inv tr) P T))
    (swap 0)
    (swap 1)
    (at 2 (inv Omega))
    (at 1 (whisker T P (cell omega1) T))
    (at 1 (whisker T P P (cell tl) epsilon))
    (swap 0)
    (swap 1)
    (at 2 (whisker P (cell tr) epsilon)))";
const OMEGA3_FROM_OMEGA: &str = "\
(chain [epsilon . m . P] ; [epsilon . lambda . epsilon]
    (at 2 (whisker P (inv tr) epsilon))
    (swap 1)
    (swap 0)
    (at 4 (whisker epsilon (inv pl) T))
    (swap 3)
    (swap 2)
    (swap 1)
    (at 1 (whisker epsilon (inv omega2) T P T))
    (at 2 (inv Omega))
    (swap 0)
    (swap 1)
    (at 2 (whisker T P P (cell tr) epsilon))
    (swap 0)
    (at 1 (whisker T (cell pl) T)))";
const H_FROM_PSI: &str = "\
(chain [T P . m . epsilon] ; [epsilon . alpha . epsilon]
    (at 1 (whisker T (inv pr) T))
    (at 0 (whisker T P (inv psi2) epsilon))
    (at 1 (cell Psi))
    (swap 0)
    (at 1 (whisker P (cell psi2) epsilon))
    (at 2 (whisker epsilon (cell pr) T)))";
const PHI: &str = "\
(chain [epsilon . f . epsilon]
    (at 1 (whisker epsilon (inv pl) T B))
    (at 1 (whisker P (inv tl) B))
    (at 1 (whisker epsilon (inv omega1) T B))
    (swap 3)
    (swap 2)
    (swap 0)
    (swap 1))";
const THETA: &str = "\
(chain [T . u . A] ; [T . eta . T A] ; [epsilon . lambda . T A] ; [P . m . A]
    (at 1 (whisker epsilon (cell omega2) T A))
    (swap 1)
    (at 0 (whisker epsilon (cell tr) A)))";
const DELTA: &str = "\
(chain [T . f . epsilon] ; [T P T . g . epsilon] ; [T P . lambda . T C] ; [T P P . m . C] ; [T . mu . T C] ; [epsilon . lambda . T C] ; [P . m . C]
    (at 2 (whisker epsilon (cell Omega) C))
    (swap 1)
    (swap 2))";
const PSI1_FROM_LAMBDA: &str = "\
(chain [epsilon . u . P T] ; [epsilon . lambda . T] ; [P . m . epsilon]
    (at 0 (whisker epsilon (cell omega1) T))
    (at 0 (whisker P (cell tl) epsilon)))";
const PSI2_FROM_LAMBDA: &str = "\
(chain [T . eta . T] ; [epsilon . lambda . T] ; [P . m . epsilon]
    (at 0 (whisker epsilon (cell omega2) T))
    (swap 0))";
const BIG_PSI_FROM_LAMBDA: &str = "\
(chain [T P . lambda . T] ; [T P P . m . epsilon] ; [T . mu . T] ; [epsilon . lambda . T] ; [P . m . epsilon]
    (at 0 (cell Omega)))";

/// A constructed pasting together with the cell whose boundary it fills.
#[derive(Clone, Debug)]
pub struct Construction {
    pub cell: String,
    pub term: PastingTerm,
    pub src: Path,
    pub tgt: Path,
}

fn build(sig: &Signature, cell: &str, text: &str, src: Path, tgt: Path) -> Result<Construction> {
    let term = parse_term(text, sig)?;
    let (s, t) = boundary(&term, sig)?;
    if s != src || t != tgt {
        return Err(Error::Boundary(format!(
            "construction of {cell} has boundary {s} => {t}, expected {src} => {tgt}"
        )));
    }
    Ok(Construction {
        cell: cell.to_string(),
        term,
        src,
        tgt,
    })
}

fn declared(sig: &Signature, cell: &str, text: &str) -> Result<Construction> {
    let c = sig.cell(cell)?;
    build(sig, cell, text, c.src.clone(), c.tgt.clone())
}

/// The decagon from the two pentagons, the multiplication constraint of T
/// and the naturality of everything else.
pub fn build_omega_from_pentagons(sig: &Signature) -> Result<PastingTerm> {
    Ok(declared(sig, "Omega", OMEGA_FROM_PENTAGONS)?.term)
}

/// `(omega4, omega3)` recovered from the decagon and the unit constraints.
pub fn build_pentagons_from_omega(sig: &Signature) -> Result<(PastingTerm, PastingTerm)> {
    let w4 = declared(sig, "omega4", OMEGA4_FROM_OMEGA)?;
    let w3 = declared(sig, "omega3", OMEGA3_FROM_OMEGA)?;
    Ok((w4.term, w3.term))
}

/// `(phi, theta, delta)`: the constraints of the extension operation on
/// Kleisli homs, built from omega1, omega2 and the decagon.
pub fn build_kleisli_extension_cells(
    sig: &Signature,
) -> Result<(PastingTerm, PastingTerm, PastingTerm)> {
    let phi = declared(sig, "phi", PHI)?;
    let theta = declared(sig, "theta", THETA)?;
    let delta = declared(sig, "delta", DELTA)?;
    Ok((phi.term, theta.term, delta.term))
}

/// The op-homomorphism constraint of alpha from Psi and psi2.
pub fn build_h(sig: &Signature) -> Result<PastingTerm> {
    Ok(declared(sig, "H", H_FROM_PSI)?.term)
}

/// The substitution sending alpha to `lambda T ; P m`.
pub fn alpha_from_lambda(sig: &Signature) -> Result<Subst> {
    let mut s = Subst::default();
    let p = parse_path("[epsilon . lambda . T] ; [P . m . epsilon]", sig)?;
    s.arrows.insert(Sym::from("alpha"), p);
    Ok(s)
}

fn algebra_constructions(sig: &Signature) -> Result<Vec<Construction>> {
    let s = alpha_from_lambda(sig)?;
    [
        ("psi1", PSI1_FROM_LAMBDA),
        ("psi2", PSI2_FROM_LAMBDA),
        ("Psi", BIG_PSI_FROM_LAMBDA),
    ]
    .into_iter()
    .map(|(cell, text)| {
        let c = sig.cell(cell)?;
        build(sig, cell, text, s.path(&c.src)?, s.path(&c.tgt)?)
    })
    .collect()
}

/// `(psi1, psi2, Psi)` for the algebra form induced by lambda, each with
/// the declared boundary after substituting alpha.
pub fn build_algebra_cells(sig: &Signature) -> Result<(PastingTerm, PastingTerm, PastingTerm)> {
    let mut it = algebra_constructions(sig)?.into_iter().map(|c| c.term);
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), Some(c)) => Ok((a, b, c)),
        _ => unreachable!("three algebra cells"),
    }
}

/// Every construction, keyed by the cell it builds.
pub fn constructions(sig: &Signature) -> Result<Vec<Construction>> {
    let mut out = vec![
        declared(sig, "Omega", OMEGA_FROM_PENTAGONS)?,
        declared(sig, "omega4", OMEGA4_FROM_OMEGA)?,
        declared(sig, "omega3", OMEGA3_FROM_OMEGA)?,
        declared(sig, "phi", PHI)?,
        declared(sig, "theta", THETA)?,
        declared(sig, "delta", DELTA)?,
        declared(sig, "H", H_FROM_PSI)?,
    ];
    out.extend(algebra_constructions(sig)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_construction_fills_its_boundary() {
        let sig = Signature::builtin();
        let all = constructions(&sig).unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(all.len(), 10);
    }
}
