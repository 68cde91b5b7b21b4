//! End-to-end tests of the command-line interface.

use std::path::PathBuf;
use std::process::Command;

use monofib::cli::{self, parse_instance, resolve, to_file, AnyMorphism, InstanceFile, EXIT_CAP, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

/// Runs the CLI in process and returns the exit code and report lines.
fn run(args: &[&str]) -> (i32, Vec<String>) {
    let mut out = Vec::new();
    let mut argv = vec!["monofib"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out);
    let text = String::from_utf8(out).unwrap();
    (code, text.lines().map(str::to_string).collect())
}

fn json_lines(lines: &[String]) -> Vec<Value> {
    lines.iter().map(|l| serde_json::from_str(l).expect("report line is JSON")).collect()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("monofib-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn hom_on_c2_chain_lists_six_morphisms() {
    let (code, lines) = run(&["hom", "--input", &fixture("c2_chain_hom.json")]);
    assert_eq!(code, EXIT_OK);
    let reports = json_lines(&lines);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["subject"], "hom-XY");
    assert_eq!(reports[0]["counts"]["morphisms"], 6);
    assert_eq!(reports[0]["data"]["morphisms"].as_array().unwrap().len(), 6);
}

#[test]
fn classes_on_c2_chain() {
    let (code, lines) = run(&["classes", "--input", &fixture("c2_chain_hom.json")]);
    assert_eq!(code, EXIT_OK);
    let r = &json_lines(&lines)[0];
    // The two classes are told apart by λ at the bottom element.
    assert_eq!(r["counts"]["classes"], 2);
    assert_eq!(r["data"]["class_of"], serde_json::json!([0, 1, 0, 1, 0, 1]));
}

#[test]
fn cocycle_break_fails_with_witness_triple() {
    let (code, lines) = run(&["validate", "--input", &fixture("cocycle_break.json")]);
    assert_eq!(code, EXIT_VALIDATION);
    let reports = json_lines(&lines);
    let bad = reports.iter().find(|r| r["status"] == "fail").unwrap();
    let witness = bad["witnesses"][0].as_str().unwrap();
    assert!(witness.contains("(x0,x1,x2)"), "{witness}");
}

#[test]
fn non_group_table_is_a_validation_failure() {
    let (code, lines) = run(&["validate", "--input", &fixture("not_a_group.json")]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(lines[0].contains("group axioms fail"));
}

#[test]
fn parse_errors_exit_two() {
    let malformed = temp_file("malformed.json", "{\"group\": ");
    assert_eq!(run(&["validate", "--input", &malformed]).0, EXIT_PARSE);
    let unknown_field = temp_file("unknown.json", r#"{"group": {"kind": "cyclic-product", "orders": [2]}, "extra": 1}"#);
    assert_eq!(run(&["validate", "--input", &unknown_field]).0, EXIT_PARSE);
    let cycle = temp_file(
        "cycle.json",
        r#"{"group": {"kind": "cyclic-product", "orders": [2]},
            "posets": [{"name": "P", "elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}]}"#,
    );
    assert_eq!(run(&["validate", "--input", &cycle]).0, EXIT_PARSE);
    assert_eq!(run(&["validate", "--input", "/nonexistent/file.json"]).0, EXIT_PARSE);
    assert_eq!(run(&["hom"]).0, EXIT_PARSE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_PARSE);
    assert_eq!(run(&["hom", "--input", &fixture("c2_chain_hom.json"), "--task", "missing"]).0, EXIT_PARSE);
}

#[test]
fn cap_exceeded_exits_three() {
    let (code, lines) = run(&["hom", "--input", &fixture("c2_chain_hom.json"), "--cap", "3"]);
    assert_eq!(code, EXIT_CAP);
    assert!(lines[0].contains("exceeds cap"));
}

#[test]
fn sigma_and_pi_serialize_their_images() {
    let (code, lines) = run(&["sigma", "--input", &fixture("sigma_vee.json")]);
    assert_eq!(code, EXIT_OK);
    let r = &json_lines(&lines)[0];
    assert_eq!(r["counts"]["simplices"], 5);
    let object: cli::ComplexDef = serde_json::from_value(r["data"]["object"].clone()).unwrap();
    assert_eq!(object.facets.len(), 2);

    let (code, lines) = run(&["pi", "--input", &fixture("s3_edge.json")]);
    assert_eq!(code, EXIT_OK);
    let r = &json_lines(&lines)[0];
    assert_eq!(r["counts"]["elements"], 3);
    assert!(r["data"]["morphism"].is_object());
}

#[test]
fn realize_reports_convention_and_images() {
    let (code, lines) = run(&["realize", "--input", &fixture("s3_edge.json")]);
    assert_eq!(code, EXIT_OK, "{lines:?}");
    let reports = json_lines(&lines);
    assert!(reports.iter().all(|r| r["data"]["convention"] == "inverse"));
    let image = reports.iter().find(|r| r["subject"] == "image").unwrap();
    assert_eq!(image["counts"]["homotopy_checked"], 1);
    assert_eq!(image["data"]["homotopy"]["alpha"], serde_json::json!({"a": "2/3", "b": "1/3"}));
}

#[test]
fn plain_convention_fails_on_noncommuting_labels() {
    let (code, lines) = run(&["realize", "--input", &fixture("s3_edge.json"), "--task", "composite", "--convention", "plain"]);
    assert_eq!(code, EXIT_VALIDATION);
    let r = &json_lines(&lines)[0];
    assert_eq!(r["status"], "fail");
    assert!(!r["witnesses"].as_array().unwrap().is_empty());
    let (code, _) = run(&["realize", "--input", &fixture("s3_edge.json"), "--task", "composite", "--convention", "inverse"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn check_lemmas_on_a_user_file() {
    let (code, lines) = run(&["check-lemmas", "--input", &fixture("c2_chain_hom.json")]);
    assert_eq!(code, EXIT_OK, "{lines:?}");
    assert_eq!(lines.len(), 10);
    let (code, _) = run(&["check-lemmas", "--input", &fixture("cocycle_break.json")]);
    assert_eq!(code, EXIT_VALIDATION);
}

#[test]
fn text_format_is_readable() {
    let (code, lines) = run(&["classes", "--input", &fixture("c2_chain_hom.json"), "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(lines[0].starts_with("[PASS] classes classes-XY"));
    assert!(lines.iter().any(|l| l.trim_start().starts_with("class 1:")));
}

#[test]
fn reports_are_deterministic() {
    for cmd in ["validate", "hom", "classes", "realize", "pi"] {
        let file = if cmd == "hom" || cmd == "classes" { "c2_chain_hom.json" } else { "s3_edge.json" };
        assert_eq!(run(&[cmd, "--input", &fixture(file)]), run(&[cmd, "--input", &fixture(file)]), "{cmd}");
    }
}

#[test]
fn fixtures_round_trip() {
    for name in ["c2_chain_hom.json", "cocycle_break.json", "s3_edge.json", "sigma_vee.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let inst = parse_instance(&text).unwrap();
        let written = serde_json::to_string(&to_file(&inst)).unwrap();
        let file: InstanceFile = serde_json::from_str(&written).unwrap();
        let again = resolve(&file).unwrap();
        for (a, b) in inst.posets.iter().zip(&again.posets) {
            assert_eq!(a.name, b.name);
            assert_eq!(*a.object, *b.object, "{name}: poset {}", a.name);
        }
        for (a, b) in inst.complexes.iter().zip(&again.complexes) {
            assert_eq!(*a.object, *b.object, "{name}: complex {}", a.name);
        }
        assert_eq!(inst.morphisms.len(), again.morphisms.len());
        for ((n, a), (m, b)) in inst.morphisms.iter().zip(&again.morphisms) {
            assert_eq!(n, m);
            match (a, b) {
                (AnyMorphism::Poset(a), AnyMorphism::Poset(b)) => {
                    assert_eq!((a.map(), a.lambda()), (b.map(), b.lambda()))
                }
                (AnyMorphism::Simp(a), AnyMorphism::Simp(b)) => {
                    assert_eq!((a.map(), a.lambda()), (b.map(), b.lambda()))
                }
                _ => panic!("{name}: morphism {n} changed kind"),
            }
        }
        for (a, b) in inst.points.iter().zip(&again.points) {
            assert_eq!(a.point, b.point, "{name}: point {}", a.name);
        }
        // A second pass is a fixed point.
        assert_eq!(to_file(&again), file);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_monofib");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["hom", "--input", &fixture("c2_chain_hom.json")]), EXIT_OK);
    assert_eq!(status(&["validate", "--input", &fixture("cocycle_break.json")]), EXIT_VALIDATION);
    assert_eq!(status(&["validate", "--input", "/nonexistent.json"]), EXIT_PARSE);
    assert_eq!(status(&["hom", "--input", &fixture("c2_chain_hom.json"), "--cap", "1"]), EXIT_CAP);
}

#[test]
fn bundled_battery_passes() {
    let (code, lines) = run(&["check-lemmas"]);
    assert_eq!(code, EXIT_OK, "{lines:?}");
    let reports = json_lines(&lines);
    assert_eq!(reports.len(), 10);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}
