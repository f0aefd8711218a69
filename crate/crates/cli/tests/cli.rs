use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn distlaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distlaw"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("distlaw-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file");
    path
}

#[test]
fn decagon_check_of_the_exception_law_passes() {
    let out = distlaw(&[
        "check-law",
        "--law",
        "exception-over-powerset",
        "--form",
        "decagon",
        "--max-size",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    let axioms = r["verdicts"][0]["axioms"].as_array().unwrap();
    assert_eq!(axioms.len(), 3);
    assert!(axioms.iter().all(|a| a["pass"] == true));
}

#[test]
fn monoidal_to_algebra_round_trip() {
    let out = distlaw(&[
        "convert",
        "--law",
        "exception-over-powerset",
        "--from",
        "monoidal",
        "--to",
        "algebra",
        "--roundtrip",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    let rt = r["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|g| g["suite"] == "round trip")
        .expect("a round-trip verdict");
    assert_eq!(rt["pass"], true);
    assert!(r["details"]["alpha"].is_object());
}

#[test]
fn unknown_law_is_a_config_error() {
    let out = distlaw(&["check-law", "--law", "unknown-name"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown-name"));
    assert!(out.stdout.is_empty());
}

#[test]
fn report_keys_are_the_contract_and_sorted() {
    let out = distlaw(&["check-law", "--law", "coreader-over-powerset"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "command",
        "universe",
        "verdicts",
        "witnesses",
        "timing_ms",
        "exhaustive",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    // Sorted in the text itself, not only after parsing.
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let pos = |k: &str| text.find(&format!("\n  \"{k}\"")).unwrap();
    let order = [
        "command",
        "exhaustive",
        "timing_ms",
        "universe",
        "verdicts",
        "witnesses",
    ];
    assert!(order.windows(2).all(|w| pos(w[0]) < pos(w[1])));
    assert_eq!(r["timing_ms"], 0);
    assert_eq!(r["command"]["name"], "check-law");
    assert_eq!(r["command"]["args"]["max_size"], 2);
}

#[test]
fn default_form_cross_checks_every_system() {
    let out = distlaw(&[
        "check-law",
        "--law",
        "exception-over-powerset",
        "--max-size",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let suites: Vec<String> = report(&out)["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["suite"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(suites.len(), 6, "{suites:?}");
    assert_eq!(suites.last().map(String::as_str), Some("agreement"));
}

#[test]
fn malformed_registry_names_the_line() {
    let path = scratch(
        "bad-registry.json",
        "{\n  \"monads\": [\n    {\"name\": \"maybe\", \"colour\": 1}\n  ]\n}\n",
    );
    let out = distlaw(&["check-monad", "--registry", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("colour"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &[
            "check-law",
            "--law",
            "exception-over-powerset",
            "--frobnicate",
        ][..],
        &[
            "check-law",
            "--law",
            "exception-over-powerset",
            "--max-size",
            "4",
        ],
        &[
            "check-law",
            "--law",
            "coreader-over-powerset",
            "--form",
            "decagon",
        ],
        &[
            "check-law",
            "--law",
            "exception-over-powerset",
            "--form",
            "mixed-classic",
        ],
        &[
            "convert",
            "--law",
            "exception-over-powerset",
            "--from",
            "algebra",
            "--to",
            "algebra",
        ],
        &["compose", "--law", "coreader-over-powerset"],
        &["search", "--monad", "maybe"],
        &[
            "pasting-check",
            "--interpretation",
            "coreader-over-powerset",
        ],
        &["pasting-check", "--axiom", "W11"],
    ] {
        let out = distlaw(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn search_budget_refusal_reports_the_count() {
    let out = distlaw(&["search", "--monad", "exception-1", "--monad", "powerset"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("8388608"), "{}", stderr(&out));
}

#[test]
fn search_over_identity_finds_one_law() {
    let out = distlaw(&["search", "--monad", "exception-1", "--monad", "identity"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    for form in ["monoidal", "decagon"] {
        assert_eq!(r["details"][form]["survivors"].as_array().unwrap().len(), 1);
    }
    assert_eq!(r["exhaustive"], true);
}

#[test]
fn a_false_axiom_exits_1_with_a_witness() {
    let path = scratch(
        "false.sig",
        "(signature broken 1)\n\
         (functors T P)\n\
         (objects A B)\n\
         (arrow f A -> P T B)\n\
         (arrow g A -> P T B)\n\
         (cell same [epsilon . f . epsilon] => [epsilon . g . epsilon])\n\
         (axiom F1 (cell same) (cell same))\n",
    );
    let out = distlaw(&[
        "pasting-check",
        "--signature",
        path.to_str().unwrap(),
        "--max-size",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(r["witnesses"][0]["suite"], "degenerate F1");
}

#[test]
fn malformed_signature_names_the_line() {
    let path = scratch(
        "broken.sig",
        "(signature s 1)\n(functors T)\n(arrow u epsilon -> Q)\n",
    );
    let out = distlaw(&["pasting-check", "--signature", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn pasting_derive_lists_every_construction() {
    let out = distlaw(&["pasting-derive"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    let cells: Vec<&str> = r["details"]["constructions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["cell"].as_str().unwrap())
        .collect();
    for c in ["Omega", "omega3", "omega4", "phi", "theta", "delta", "H"] {
        assert!(cells.contains(&c), "{c} missing from {cells:?}");
    }
    assert!(r["universe"].is_null());
}

#[test]
fn pasting_derive_evaluates_when_asked() {
    let out = distlaw(&[
        "pasting-derive",
        "--interpretation",
        "identity",
        "--max-size",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let groups = report(&out)["verdicts"].as_array().unwrap().len();
    assert_eq!(groups, 20);
}

#[test]
fn monad_checks_cover_the_registry() {
    let out = distlaw(&["check-monad", "--max-size", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    let subjects: std::collections::BTreeSet<&str> = r["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["subject"].as_str().unwrap())
        .collect();
    assert_eq!(subjects.len(), 8, "{subjects:?}");
}

#[test]
fn timing_is_recorded_only_on_request() {
    let out = distlaw(&[
        "compose",
        "--law",
        "exception-over-powerset",
        "--max-size",
        "1",
        "--timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["timing_ms"].is_u64());
    assert_eq!(report(&out)["command"]["args"]["timing"], true);
}

#[test]
fn sampled_runs_are_reproducible_per_seed() {
    let args = [
        "check-law",
        "--law",
        "writer-over-powerset",
        "--form",
        "algebra",
        "--seed",
        "11",
    ];
    let (a, b) = (distlaw(&args), distlaw(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
