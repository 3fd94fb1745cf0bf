//! End-to-end runs of the command line through `run_command`.

use edgeflow::metabelian::fox_words_equal;
use edgeflow::parse_word;
use crate::{run_command, ExperimentManifest, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_command(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    assert!(out.ends_with('\n') && out.matches('\n').count() == 1);
    serde_json::from_str(&out).unwrap()
}

#[test]
fn eval_placket() {
    let (_, out, _) = run(&["eval", "--variety", "metabelian", "--d", "2", "x1 x2 X1 X2"]);
    assert_eq!(
        out.trim(),
        r#"{"variety":"metabelian","d":2,"endpoint":[0,0],"flow":[{"base":[0,0],"axis":1,"mult":1},{"base":[0,0],"axis":2,"mult":-1},{"base":[0,1],"axis":1,"mult":-1},{"base":[1,0],"axis":2,"mult":1}]}"#
    );
}

#[test]
fn eq_vectors() {
    let eq = |v: &str, d: &str, a: &str, b: &str| json(&["eq", "--variety", v, "--d", d, a, b])["equal"].as_bool().unwrap();
    assert!(eq("metabelian", "3", "x1x2x3X1X2X3", "x1x2X1X2 x2x3X2X3 x2 x1x3X1X3 X2"));
    assert!(eq("abelian", "2", "x1x2", "x2x1"));
    assert!(!eq("metabelian", "2", "x1x2", "x2x1"));
    assert!(!eq("free", "2", "x1x2", "x2x1"));
    assert!(!eq("nilpotent2", "2", "x1x2", "x2x1"));
    let ll = |m: &str| {
        json(&["eq", "--variety", "lamplighter", "--d", "1", "--m", m, "a x1 a X1", "x1 a X1 a"])["equal"].as_bool().unwrap()
    };
    assert!(ll("0"));
    assert!(ll("2"));
    assert!(!json(&["eq", "--variety", "lamplighter", "--d", "1", "--m", "2", "a a", "a"])["equal"].as_bool().unwrap());
}

#[test]
fn eq_corpus_matches_expectations_and_fox() {
    let corpus = include_str!("../tests/data/eq_corpus.jsonl");
    let mut metabelian = 0;
    for line in corpus.lines() {
        let row: Value = serde_json::from_str(line).unwrap();
        let (variety, u, v) = (row["variety"].as_str().unwrap(), row["u"].as_str().unwrap(), row["v"].as_str().unwrap());
        let d = row["d"].as_u64().unwrap().to_string();
        let got = json(&["eq", "--variety", variety, "--d", &d, u, v]);
        let equal = got["equal"].as_bool().unwrap();
        assert_eq!(equal, row["equal"].as_bool().unwrap(), "{line}");
        if variety == "metabelian" {
            metabelian += 1;
            let d: usize = d.parse().unwrap();
            let fox = fox_words_equal(&parse_word(u, d).unwrap(), &parse_word(v, d).unwrap());
            assert_eq!(equal, fox, "{line}");
            let diff = &got["difference"];
            let zero = diff["flow"].as_array().unwrap().is_empty()
                && diff["endpoint"].as_array().unwrap().iter().all(|x| x == 0);
            assert_eq!(zero, equal, "{line}");
        }
    }
    assert!(metabelian >= 400);
}

#[test]
fn mul_and_inv_agree_with_concatenation() {
    for v in ["abelian", "free", "nilpotent2", "metabelian"] {
        let prod = json(&["mul", "--variety", v, "--d", "3", "x1 x2^2 X3", "x3 x1 X2"]);
        let cat = json(&["eval", "--variety", v, "--d", "3", "x1 x2^2 X3 x3 x1 X2"]);
        assert_eq!(prod, cat, "{v}");
        let inv = json(&["inv", "--variety", v, "--d", "3", "x1 x2^2 X3"]);
        let direct = json(&["eval", "--variety", v, "--d", "3", "x3 X2^2 X1"]);
        assert_eq!(inv, direct, "{v}");
    }
    let prod = json(&["mul", "--variety", "lamplighter", "--d", "2", "--m", "3", "x1 a", "x2 A^2"]);
    assert_eq!(prod, json(&["eval", "--variety", "lamplighter", "--d", "2", "--m", "3", "x1 a x2 A^2"]));
}

#[test]
fn minlen_reports_bounds() {
    let v = json(&["minlen", "--d", "2", "x1 x2 X1 X2"]);
    assert_eq!(v["exact"], 4);
    assert_eq!(v["witness"], "x1 x2 x1^-1 x2^-1");
    let (code, out, _) = run(&["minlen", "--d", "2", "x1 x2 X1 X2 x1^2 x1 x2 X1 X2 X1^2", "--max-len", "8"]);
    assert_eq!(code, EXIT_BUDGET);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["exact"].is_null());
    assert_eq!(v["lower"], 8);
    assert!(v["upper"].as_u64().unwrap() >= 10);
}

#[test]
fn usage_errors() {
    let (code, _, err) = run(&["eval", "--variety", "free", "--d", "2", "x1 x2^"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("offset 6"), "{err}");
    assert_eq!(run(&["eval", "--variety", "free", "--d", "2", "--m", "2", "x1"]).0, EXIT_USAGE);
    assert_eq!(run(&["eval", "--variety", "lamplighter", "--d", "2", "x1"]).0, EXIT_USAGE);
    assert_eq!(run(&["eval", "--variety", "lamplighter", "--d", "2", "--m", "1", "x1"]).0, EXIT_USAGE);
    assert_eq!(run(&["walk", "--variety", "free", "--d", "2", "--steps", "10"]).0, EXIT_USAGE);
    assert_eq!(run(&["boundary", "green", "--d", "2", "--x", "0,0"]).0, EXIT_USAGE);
    assert_eq!(run(&["boundary", "green", "--d", "3", "--x", "0,0,0", "--walks", "10"]).0, EXIT_USAGE);
    assert_eq!(run(&["eval", "--variety", "free", "--d", "2", "x1", "--format", "csv"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn csv_headers() {
    let (code, out, _) = run(&["--format", "csv", "entropy", "--variety", "abelian", "--d", "2", "--n-max", "3"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("N,value,ci_low,ci_high"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert!((first[1].parse::<f64>().unwrap() - 4f64.ln()).abs() < 1e-15);
    let (_, out, _) = run(&["--format", "csv", "boundary", "stable-flow", "--d", "3", "--seed", "1", "--steps", "100", "--radius", "1"]);
    assert!(out.starts_with("edge,half,value,stabilized\n"));
}

#[test]
fn manifests_replay_across_thread_counts() {
    let dir = std::env::temp_dir().join(format!("edgeflow-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("walk.json");
    let path = path.to_str().unwrap();
    let (code, first, _) = run(&[
        "--threads", "1", "--manifest", path, "walk", "--variety", "metabelian", "--d", "3", "--seed", "9",
        "--steps", "8,64", "--samples", "64",
    ]);
    assert_eq!(code, EXIT_OK);
    let manifest: ExperimentManifest = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(!manifest.command.iter().any(|a| a.contains("threads") || a.contains("manifest")));
    assert_eq!(manifest.config["seed"], 9);
    for threads in ["1", "2", "4"] {
        let (code, again, err) = run(&["--threads", threads, "replay", path]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(again, first);
    }
    let mut tampered = manifest.clone();
    tampered.output_sha256 = "00".repeat(32);
    std::fs::write(path, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert_ne!(run(&["replay", path]).0, EXIT_OK);
    std::fs::remove_dir_all(&dir).unwrap();
}
