//! Random pairs of terms that differ only by interchange and identity
//! insertion, for testing the normal form.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::signature::Signature;
use super::term::{boundary, PastingTerm};
use super::word::{Path, Word};

const TOY: &str = "\
(signature toy 1)
(functors X)
(arrow s X -> X)
(arrow t X -> X)
(arrow w X -> X)
(cell c [epsilon . s . epsilon] => [epsilon . t . epsilon])
(cell d [epsilon . t . epsilon] ; [epsilon . t . epsilon] => [epsilon . s . epsilon])
(cell z [epsilon . s . epsilon] ; [epsilon . t . epsilon] => {X})
";

/// One endofunctor `X`, three endo-arrows and three cells between short
/// paths of `s` and `t`. No cell mentions `w`.
pub fn toy_signature() -> Signature {
    Signature::parse(TOY).expect("toy signature parses")
}

/// A column: a start path and a sequence of steps, each acting on the
/// whole current path of the column.
struct Column {
    start: Path,
    steps: Vec<(PastingTerm, Path)>,
}

impl Column {
    fn end(&self) -> &Path {
        self.steps.last().map_or(&self.start, |s| &s.1)
    }
}

fn random_path(sig: &Signature, rng: &mut ChaCha8Rng) -> Path {
    let n = rng.gen_range(0..4);
    let atoms = (0..n)
        .map(|_| {
            let name = if rng.gen_bool(0.5) { "s" } else { "t" };
            let g = sig.arrow(name).expect("toy arrow");
            g.atom(Word::empty(), Word::empty())
        })
        .collect::<Vec<_>>();
    if atoms.is_empty() {
        Path::identity(Word::parse("X"))
    } else {
        Path::from_atoms(atoms).expect("endo-arrows compose")
    }
}

/// All single generator applications available on `p`.
fn moves(sig: &Signature, p: &Path) -> Vec<(PastingTerm, Path)> {
    let mut out = Vec::new();
    for c in &sig.cells {
        for (t, src) in [
            (PastingTerm::Cell(c.name.clone()), &c.src),
            (PastingTerm::Inverse(c.name.clone()), &c.tgt),
        ] {
            for k in 0..=p.len() {
                if k + src.len() <= p.len() && p.sub(k, k + src.len()) == *src {
                    if let Ok(step) = PastingTerm::at(p, k, t.clone(), sig) {
                        out.push(step);
                    }
                }
            }
        }
    }
    out
}

fn column(sig: &Signature, rng: &mut ChaCha8Rng) -> Column {
    let start = random_path(sig, rng);
    let mut col = Column {
        start,
        steps: Vec::new(),
    };
    for _ in 0..rng.gen_range(1..4) {
        let ms = moves(sig, col.end());
        if let Some(m) = ms.choose(rng) {
            col.steps.push(m.clone());
        }
    }
    col
}

/// Columns side by side, separated by the untouched arrow `w` so that
/// steps of different columns never meet at a point.
fn row(sig: &Signature, terms: Vec<PastingTerm>) -> PastingTerm {
    let sep = PastingTerm::Id(sig.arrow("w").expect("toy arrow").path());
    terms
        .into_iter()
        .reduce(|l, r| PastingTerm::hcomp(PastingTerm::hcomp(l, sep.clone()), r))
        .expect("at least one column")
}

/// `(columns side by side, the same steps interleaved at random with
/// identities inserted)`. Every exchange relating the two acts on disjoint
/// intervals.
pub fn interchange_pair(seed: u64) -> (Signature, PastingTerm, PastingTerm) {
    let sig = toy_signature();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols: Vec<Column> = (0..rng.gen_range(2..4))
        .map(|_| column(&sig, &mut rng))
        .collect();

    let stacked = row(
        &sig,
        cols.iter()
            .map(|c| {
                c.steps
                    .iter()
                    .map(|s| s.0.clone())
                    .reduce(PastingTerm::vcomp)
                    .unwrap_or_else(|| PastingTerm::Id(c.start.clone()))
            })
            .collect(),
    );

    let mut order: Vec<usize> = cols
        .iter()
        .enumerate()
        .flat_map(|(i, c)| std::iter::repeat_n(i, c.steps.len()))
        .collect();
    order.shuffle(&mut rng);
    let mut done = vec![0usize; cols.len()];
    let current = |done: &[usize], j: usize| -> Path {
        let c = &cols[j];
        if done[j] == 0 {
            c.start.clone()
        } else {
            c.steps[done[j] - 1].1.clone()
        }
    };
    let mut steps: Vec<PastingTerm> = Vec::new();
    for i in order {
        if rng.gen_bool(0.3) {
            steps.push(row(
                &sig,
                (0..cols.len())
                    .map(|j| PastingTerm::Id(current(&done, j)))
                    .collect(),
            ));
        }
        let parts = (0..cols.len())
            .map(|j| {
                if j == i {
                    cols[i].steps[done[i]].0.clone()
                } else {
                    PastingTerm::Id(current(&done, j))
                }
            })
            .collect();
        steps.push(row(&sig, parts));
        done[i] += 1;
    }
    let interleaved = steps
        .into_iter()
        .reduce(PastingTerm::vcomp)
        .unwrap_or_else(|| {
            row(
                &sig,
                cols.iter()
                    .map(|c| PastingTerm::Id(c.start.clone()))
                    .collect(),
            )
        });
    debug_assert_eq!(
        boundary(&stacked, &sig).ok(),
        boundary(&interleaved, &sig).ok()
    );
    (sig, stacked, interleaved)
}
