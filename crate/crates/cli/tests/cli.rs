//! End-to-end tests driving the `tricomb` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use tricomb::linkgeom::{corpus, curve_file_text};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tricomb"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn json_report(dir: &Path, args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run_in(dir, &full);
    let text = stdout(&out);
    let value: Value =
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("report must be JSON: {e}\n{text}"));
    (value, out.status.code().unwrap_or(-1))
}

fn all_checks_pass(report: &Value) -> bool {
    report["verification"]
        .as_array()
        .expect("verification section present")
        .iter()
        .all(|c| c["pass"].as_bool() == Some(true))
}

fn write(dir: &Path, name: &str, contents: &str) {
    fs::write(dir.join(name), contents).unwrap();
}

#[test]
fn spin_count_of_rp3() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "rp3.link", "framedlink n=1\n1 1\n2\n");
    let (report, code) = json_report(dir.path(), &["spin-count", "rp3.link"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["spin_structures"], "2");
    assert!(all_checks_pass(&report));
    assert_eq!(report["status"], "ok");
}

#[test]
fn surface_projective_plane_pairs_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (report, code) = json_report(dir.path(), &["surface", "n1"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["pairing"], 0);
    assert_eq!(report["result"]["tangent_term"], 1);
    assert_eq!(report["result"]["twisted_term"], 1);
    assert!(all_checks_pass(&report));
}

#[test]
fn replay_of_empty_script_echoes_the_link() {
    let dir = tempfile::tempdir().unwrap();
    let link = "framedlink n=1\n1 1\n1\n";
    write(dir.path(), "s3.link", link);
    write(dir.path(), "empty.script", "# no moves\n");
    let (report, code) = json_report(dir.path(), &["replay", "s3.link", "empty.script"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["link"].as_str().unwrap(), link);
    assert!(all_checks_pass(&report));
}

#[test]
fn evenize_reports_verified_witness() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "three.link", "framedlink n=1\n1 1\n3\n");
    let (report, code) = json_report(dir.path(), &["evenize", "three.link"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["phase"], "guided");
    assert!(all_checks_pass(&report));
    // the emitted witness re-parses and replays outside the process too
    let script =
        tricomb::surgery::MoveScript::from_text(report["result"]["script"].as_str().unwrap())
            .unwrap();
    let link = tricomb::surgery::FramedLinkMatrix::from_text("framedlink n=1\n1 1\n3\n").unwrap();
    let result =
        tricomb::surgery::FramedLinkMatrix::from_text(report["result"]["link"].as_str().unwrap())
            .unwrap();
    // labels are not part of the file format, so compare matrices
    assert_eq!(
        tricomb::surgery::apply_script(&link, &script)
            .unwrap()
            .matrix(),
        result.matrix()
    );
    assert!(tricomb::surgery::handle_parity(&result).all_even);
}

#[test]
fn evenize_of_even_link_is_a_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "even.link", "framedlink n=2\n2 2\n0 3\n3 -2\n");
    let (report, code) = json_report(dir.path(), &["evenize", "even.link"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["phase"], "already-even");
    assert_eq!(report["result"]["moves"], 0);
}

#[test]
fn heegaard_solve_solvable_and_unsolvable() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "h.heegaard",
        "heegaard g=2\n2 2\n1 1\n0 1\n0 1\n",
    );
    let (report, code) = json_report(dir.path(), &["heegaard-solve", "h.heegaard"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["twists"], serde_json::json!([1, 1]));
    assert_eq!(report["result"]["framings"], serde_json::json!(["2", "2"]));
    assert!(all_checks_pass(&report));

    write(
        dir.path(),
        "uns.heegaard",
        "heegaard g=2\n2 2\n2 4\n6 2\n1 0\n",
    );
    let (report, code) = json_report(dir.path(), &["heegaard-solve", "uns.heegaard"]);
    assert_eq!(code, 1);
    assert_eq!(report["status"], "error");
    assert_eq!(report["result"]["certificate"], serde_json::json!([1, 0]));
}

#[test]
fn linking_number_of_hopf_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = corpus::hopf_pair();
    write(dir.path(), "a.curve", &curve_file_text(&a, None));
    write(dir.path(), "b.curve", &curve_file_text(&b, None));
    let (report, code) = json_report(dir.path(), &["link", "a.curve", "b.curve"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["linking_number"], 1);
    let gauss = report["result"]["gauss"].as_f64().unwrap();
    assert!((gauss - 1.0).abs() < 0.1);
    assert!(all_checks_pass(&report));
}

#[test]
fn selflink_and_extends_on_twisted_unknots() {
    let dir = tempfile::tempdir().unwrap();
    for (k, parity) in [(0i64, false), (3, true)] {
        let (curve, field) = corpus::twisted_unknot(k).unwrap();
        let name = format!("tw{k}.curve");
        write(dir.path(), &name, &curve_file_text(&curve, Some(&field)));
        let (report, code) = json_report(dir.path(), &["selflink", &name]);
        assert_eq!(code, 0, "selflink of {k} twists");
        assert_eq!(report["result"]["self_linking"], k);
        assert!(all_checks_pass(&report));
        let (report, code) = json_report(dir.path(), &["extends", &name]);
        assert_eq!(code, 0);
        assert_eq!(report["result"]["extends"], parity);
    }
}

#[test]
fn ledger_validation_and_decision() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "good.ledger", "group 1\ncombing 0 euler 4\n");
    let (report, code) = json_report(dir.path(), &["ledger", "good.ledger"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["parallelizable"], true);
    assert_eq!(report["result"]["witness"], "v1");
    assert!(all_checks_pass(&report));

    write(dir.path(), "odd.ledger", "group 0 2\ncombing 0 euler 1\n");
    let (report, code) = json_report(dir.path(), &["ledger", "odd.ledger"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["parallelizable"], false);

    // corrupted euler entry: surgery law and evenness break
    write(
        dir.path(),
        "bad.ledger",
        "group 1\ncombing 0 euler 0\ncombing 1 euler -3\nsurgery 0 1 beta 1\n",
    );
    let (report, code) = json_report(dir.path(), &["ledger", "bad.ledger"]);
    assert_eq!(code, 1);
    assert_eq!(report["status"], "check-failed");
    assert!(!all_checks_pass(&report));
}

#[test]
fn exit_codes_for_usage_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    write(dir.path(), "bad.link", "framedlink n=1\n1 1\nX\n");
    let out = run_in(dir.path(), &["parity", "bad.link"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");

    let out = run_in(dir.path(), &["parity", "missing.link"]);
    assert_eq!(out.status.code(), Some(2));

    // asymmetric matrix is rejected with a located error
    write(dir.path(), "asym.link", "framedlink n=2\n2 2\n0 1\n2 0\n");
    let out = run_in(dir.path(), &["homology", "asym.link"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_format_is_the_default_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "rp3.link", "framedlink n=1\n1 1\n2\n");
    let a = run_in(dir.path(), &["spin-count", "rp3.link"]);
    let b = run_in(dir.path(), &["spin-count", "rp3.link"]);
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.contains("spin_structures: 2"));
    assert!(text.contains("status: ok"));
    assert!(text.contains("sha256="));
}

#[test]
fn seed_flag_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "rp3.link", "framedlink n=1\n1 1\n2\n");
    let (report, _) = json_report(dir.path(), &["--seed", "7", "spin-count", "rp3.link"]);
    assert_eq!(report["seed"], 7);
}

#[test]
fn char_sublink_and_parity_reports() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "e.link", "framedlink n=2\n2 2\n3 1\n1 -1\n");
    let (report, code) = json_report(dir.path(), &["char-sublink", "e.link"]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&report));
    let (report, code) = json_report(dir.path(), &["parity", "e.link"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["parities"], serde_json::json!([1, 1]));
    assert_eq!(report["result"]["all_even"], false);

    let (report, code) = json_report(dir.path(), &["homology", "e.link"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["group"], "Z/4");
    assert!(all_checks_pass(&report));
}
