//! Every corpus file runs against its pinned cases in corpus/expected.

use std::path::{Path, PathBuf};

use clap::Parser;
use fuzzystable::cli::{run, Cli};
use serde_json::Value;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Objects match when every expected key matches; everything else is equal.
fn matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e
            .iter()
            .all(|(k, v)| a.get(k).is_some_and(|w| matches(v, w))),
        (Value::Array(e), Value::Array(a)) => {
            e.len() == a.len() && e.iter().zip(a).all(|(v, w)| matches(v, w))
        }
        _ => expected == actual,
    }
}

fn source_for(stem: &str) -> PathBuf {
    let dir = corpus_dir();
    for ext in ["fz", "fasp"] {
        let p = dir.join(format!("{stem}.{ext}"));
        if p.exists() {
            return p;
        }
    }
    panic!("no source for fixture {stem}");
}

#[test]
fn corpus_matches_fixtures() {
    let dir = corpus_dir();
    let mut fixtures: Vec<_> = std::fs::read_dir(dir.join("expected"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    fixtures.sort();
    assert!(!fixtures.is_empty());
    let mut cases = 0;
    for fixture in &fixtures {
        let stem = fixture.file_stem().unwrap().to_str().unwrap();
        let source = source_for(stem);
        let fixture_json: Value =
            serde_json::from_str(&std::fs::read_to_string(fixture).unwrap()).unwrap();
        for case in fixture_json["cases"].as_array().unwrap() {
            let mut argv = vec!["fuzzystable".to_string(), "--json".to_string()];
            for a in case["args"].as_array().unwrap() {
                argv.push(
                    a.as_str()
                        .unwrap()
                        .replace("{corpus}", dir.to_str().unwrap()),
                );
            }
            argv.push("-f".into());
            argv.push(source.to_str().unwrap().into());
            let cli = Cli::try_parse_from(&argv).unwrap_or_else(|e| panic!("{argv:?}: {e}"));
            let mut out = Vec::new();
            run(cli, &mut out).unwrap_or_else(|e| panic!("{argv:?}: {e:#}"));
            let actual: Value = serde_json::from_slice(&out).unwrap();
            assert!(
                matches(&case["expect"], &actual),
                "{stem} {argv:?}\nexpected {}\nactual {actual}",
                case["expect"]
            );
            cases += 1;
        }
    }
    assert!(cases >= fixtures.len());
}

#[test]
fn every_corpus_source_has_a_fixture() {
    let dir = corpus_dir();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let Some(ext) = path.extension().and_then(|e| e.to_str()) else {
            continue;
        };
        if ext == "fz" || ext == "fasp" {
            let stem = path.file_stem().unwrap().to_str().unwrap();
            let fixture = dir.join("expected").join(format!("{stem}.json"));
            assert!(fixture.exists(), "missing {}", fixture.display());
        }
    }
}
