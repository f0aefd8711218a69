//! `distlaw`: check monads and distributive laws on finite sets, convert
//! between presentations, search for laws and check pasting signatures.
//!
//! The JSON report goes to standard output and a summary to standard
//! error. Exit codes: 0 when every check passes, 1 when one fails, 2 on a
//! usage or configuration error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use distlaw::registry::Registry;
use distlaw::{Result, TestUniverse};
use serde::Serialize;

use report::Outcome;

#[derive(Parser)]
#[command(
    name = "distlaw",
    version,
    about = "Distributive laws of monads on finite sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Monoidal,
    Decagon,
    Algebra,
    Noiter,
    Five,
    MixedDecagon,
    MixedClassic,
    /// Kleisli-triple form of a monad (check-monad only).
    Extensive,
    All,
}

impl Form {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Presentation {
    Monoidal,
    Algebra,
    Noiter,
}

impl Presentation {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Args, Serialize)]
struct Common {
    /// Registry JSON file; the built-in registry is used otherwise.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Largest set size in the test universe.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=3))]
    max_size: u8,
    /// Seed for sampled carriers and hom-sets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Monoidal and extensive monad laws, and the round trip between them.
    CheckMonad(CheckMonad),
    /// The axiom systems of a registered law.
    CheckLaw(CheckLaw),
    /// Convert a law between presentations.
    Convert(Convert),
    /// The composite monad PT of a law.
    Compose(LawOnly),
    /// T as a monad on the Kleisli category of P.
    ExtendKleisli(LawOnly),
    /// Brute-force search for laws between two registered monads.
    Search(Search),
    /// Degenerate checks of signature axioms in a strict interpretation.
    PastingCheck(PastingCheck),
    /// Build the pasting constructions and check their boundaries.
    PastingDerive(PastingDerive),
}

#[derive(Args, Serialize)]
struct CheckMonad {
    /// Registry key; repeat for several. Defaults to every registered monad.
    #[arg(long)]
    monad: Vec<String>,
    #[arg(long, value_enum, default_value_t = Form::All)]
    form: Form,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct CheckLaw {
    #[arg(long)]
    law: String,
    #[arg(long, value_enum, default_value_t = Form::All)]
    form: Form,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct Convert {
    #[arg(long)]
    law: String,
    #[arg(long, value_enum)]
    from: Presentation,
    #[arg(long, value_enum)]
    to: Presentation,
    /// Convert back and compare tables with the original.
    #[arg(long)]
    roundtrip: bool,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct LawOnly {
    #[arg(long)]
    law: String,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct Search {
    /// Give twice: T, then P.
    #[arg(long, num_args = 1)]
    monad: Vec<String>,
    #[arg(long, value_enum, default_value_t = Form::All)]
    form: Form,
    /// Largest number of raw candidates to enumerate.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct PastingCheck {
    /// Signature file; the bundled signature is used otherwise.
    #[arg(long)]
    signature: Option<PathBuf>,
    /// A single axiom; every axiom by default.
    #[arg(long)]
    axiom: Option<String>,
    /// A registered law between monads, or "identity".
    #[arg(long, default_value = "exception-over-powerset")]
    interpretation: String,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct PastingDerive {
    #[arg(long)]
    signature: Option<PathBuf>,
    /// Also evaluate every construction in this interpretation.
    #[arg(long)]
    interpretation: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

fn setup(c: &Common) -> Result<(Registry, TestUniverse)> {
    let reg = match &c.registry {
        Some(p) => Registry::load(p)?,
        None => Registry::builtin(),
    };
    let u = TestUniverse::sizes(c.max_size as usize).with_seed(c.seed);
    Ok((reg, u))
}

fn run(cmd: &Command) -> Result<(&'static str, serde_json::Value, bool, Outcome)> {
    fn args<T: Serialize>(a: &T) -> serde_json::Value {
        serde_json::to_value(a).expect("arguments serialize")
    }
    Ok(match cmd {
        Command::CheckMonad(a) => {
            let (reg, u) = setup(&a.common)?;
            let o = commands::check_monad(&reg, &a.monad, a.form, &u)?;
            ("check-monad", args(a), a.common.timing, o)
        }
        Command::CheckLaw(a) => {
            let (reg, u) = setup(&a.common)?;
            let o = commands::check_law(&reg, &a.law, a.form, &u)?;
            ("check-law", args(a), a.common.timing, o)
        }
        Command::Convert(a) => {
            let (reg, u) = setup(&a.common)?;
            let o = commands::convert(&reg, &a.law, a.from, a.to, a.roundtrip, &u)?;
            ("convert", args(a), a.common.timing, o)
        }
        Command::Compose(a) => {
            let (reg, u) = setup(&a.common)?;
            let o = commands::compose(&reg, &a.law, &u)?;
            ("compose", args(a), a.common.timing, o)
        }
        Command::ExtendKleisli(a) => {
            let (reg, u) = setup(&a.common)?;
            let o = commands::extend_kleisli(&reg, &a.law, &u)?;
            ("extend-kleisli", args(a), a.common.timing, o)
        }
        Command::Search(a) => {
            let (reg, u) = setup(&a.common)?;
            let o = commands::search(&reg, &a.monad, a.form, a.budget, &u)?;
            ("search", args(a), a.common.timing, o)
        }
        Command::PastingCheck(a) => {
            let (reg, u) = setup(&a.common)?;
            let sig = commands::load_signature(a.signature.as_deref())?;
            let o = commands::pasting_check(&reg, &sig, a.axiom.as_deref(), &a.interpretation, &u)?;
            ("pasting-check", args(a), a.common.timing, o)
        }
        Command::PastingDerive(a) => {
            let (reg, u) = setup(&a.common)?;
            let sig = commands::load_signature(a.signature.as_deref())?;
            let o = commands::pasting_derive(&reg, &sig, a.interpretation.as_deref(), &u)?;
            ("pasting-derive", args(a), a.common.timing, o)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok((name, args, timing, outcome)) => {
            let ms = if timing {
                start.elapsed().as_millis() as u64
            } else {
                0
            };
            println!("{}", outcome.to_json(name, args, ms));
            eprint!("{}", outcome.summary());
            let pass = outcome.passed();
            eprintln!(
                "{name}: {} in {} ms",
                if pass { "pass" } else { "FAIL" },
                start.elapsed().as_millis()
            );
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
