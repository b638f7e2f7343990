use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn desk() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/desk_cfo.json")
}

fn ngrpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngrpd")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn nerve_of_z2_is_a_one_groupoid_but_not_a_zero_groupoid() {
    let nerve = data("nerve_z2.json");
    let one = ngrpd(&["check", "--kind", "groupoid", "--n", "1", "--input", path(&nerve)]);
    assert_eq!(code(&one), 0, "{}", stderr(&one));
    assert_eq!(json(&one)["status"], "pass");

    let zero = ngrpd(&["check", "--kind", "groupoid", "--n", "0", "--input", path(&nerve)]);
    assert_eq!(code(&zero), 1);
    assert_eq!(json(&zero)["status"], "fail");
    let text = ngrpd(&["--format", "text", "check", "--kind", "groupoid", "--n", "0", "--input", path(&nerve)]);
    assert!(stdout(&text).contains("(k=1, i=0) is not an isomorphism"), "{}", stdout(&text));
}

#[test]
fn classify_separates_fibrations_from_hypercovers() {
    let o = ngrpd(&["check", "--kind", "classify", "--n", "1", "--map", path(&data("bz2_to_point.json"))]);
    let j = json(&o);
    assert_eq!(code(&o), 0);
    assert_eq!(j["classification"]["is_fibration"], true, "{j}");
    assert_eq!(j["classification"]["is_hypercover"], false, "{j}");
    assert_eq!(j["classification"]["is_weak_equivalence"], false, "{j}");
}

#[test]
fn invalid_marked_category_is_refused() {
    let o = ngrpd(&["--format", "text", "compare-models", "--cat", path(&data("h_outside_w.json"))]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert!(out.starts_with("status: refused"), "{out}");
    assert!(out.contains("f is in H"), "{out}");
}

#[test]
fn short_zigzags_are_inconclusive_on_the_desk_category() {
    let desk = desk();
    let o = ngrpd(&["compare-models", "--cat", path(&desk), "--from", "U", "--to", "Z", "--max-length", "2"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert_eq!(json(&o)["status"], "inconclusive");
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"levels\": [1,\n").unwrap();
    let o = ngrpd(&["check", "--kind", "groupoid", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains("bad.json"), "{err}");
    assert!(err.contains("line 3, column"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_file_and_unknown_flag_are_usage_errors() {
    let o = ngrpd(&["check", "--kind", "groupoid", "--input", "/nonexistent/x.json"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("/nonexistent/x.json"));

    let o = ngrpd(&["check", "--kind", "groupoid", "--bogus"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--bogus"));

    let o = ngrpd(&["delta", "--k", "2", "--N", "2", "--boundary", "--horn", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn fiber_of_the_double_cover() {
    let o = ngrpd(&["fiber", "--base", path(&data("fig8.json")), "--cover", path(&data("double_a.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o), serde_json::json!({"perms": [[1, 0], [0, 1]], "rank": 2}));
}

#[test]
fn build_cover_inverts_fiber() {
    let o = ngrpd(&["build-cover", "--base", path(&data("fig8.json")), "--action", path(&data("action_double_a.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let expected = std::fs::read_to_string(data("double_a.json")).unwrap();
    assert_eq!(stdout(&o).trim_end(), expected.trim_end());
}

#[test]
fn delta_boundary_sizes() {
    let o = ngrpd(&["delta", "--k", "2", "--N", "3", "--boundary"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j = json(&o);
    let sizes: Vec<usize> = j["levels"].as_array().unwrap().iter().map(|l| l.as_array().unwrap().len()).collect();
    assert_eq!(sizes, [3, 6, 9, 12]);
}

#[test]
fn factorize_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = format!("{}/", dir.path().display());
    let o = ngrpd(&["factorize", "--map", path(&data("cech_augmentation.json")), "--out-prefix", &prefix]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for f in ["middle.json", "r.json", "q.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let q = dir.path().join("q.json");
    let o = ngrpd(&["check", "--kind", "fibration", "--map", q.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn audits_pass_on_the_samples() {
    let o = ngrpd(&["galois-audit", "--sample", path(&data("galois_sample"))]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = ngrpd(&["audit-site", "--site", "z2", "--bound", "2", "--nonempty"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn empty_set_is_not_covered_by_surjections() {
    let o = ngrpd(&["--format", "text", "audit-site", "--site", "finsets", "--bound", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("C1"), "{}", stdout(&o));
}

#[test]
fn out_flag_writes_the_printed_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = ngrpd(&["--out", out.to_str().unwrap(), "check", "--kind", "groupoid", "--input", path(&data("nerve_z2.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&o));
}

#[test]
fn localized_category_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("loc.json");
    let o = ngrpd(&["--out", cat.to_str().unwrap(), "localize", "--site", "finsets", "--n", "0", "--bound", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = ngrpd(&["compare-models", "--cat", cat.to_str().unwrap(), "--max-length", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn selftest_output_is_byte_stable() {
    let a = ngrpd(&["selftest", "--filter", "grpd", "--jobs", "2"]);
    let b = ngrpd(&["selftest", "--filter", "grpd", "--jobs", "2"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_names_a_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("desk_cfo.json"), "{\"objects\": [").unwrap();
    let o = ngrpd(&["selftest", "--filter", "localization", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let j = json(&o);
    assert_eq!(j["status"], "fail");
    assert!(j["criteria"][0]["failures"][0].as_str().unwrap().contains("desk_cfo.json"), "{j}");
}
