use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use stringalg::fixtures;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn fixture(&self, name: &str) -> PathBuf {
        let (_, text) = fixtures::ALL.iter().find(|(n, _)| *n == name).unwrap();
        self.file(&format!("{name}.sqa"), text)
    }
}

fn run(file: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringalg"))
        .arg(file)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_meta_torsion_free_fixture() {
    let ws = Workspace::new();
    let v = json(&run(
        &ws.fixture("stable_omega_plus_two"),
        &["--json", "classify"],
    ));
    assert_eq!(v["domestic"], false);
    assert_eq!(v["meta_torsion_free"], true);
}

#[test]
fn stable_rank_omega_plus_one() {
    let ws = Workspace::new();
    let v = json(&run(
        &ws.fixture("stable_omega_plus_one"),
        &["stable-rank", "--json"],
    ));
    assert_eq!(v["value"], "omega_plus_one");
}

#[test]
fn stable_rank_needs_meta_torsion_free() {
    let ws = Workspace::new();
    let o = run(&ws.fixture("lambda2"), &["stable-rank"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_file_exits_with_locus() {
    let ws = Workspace::new();
    let f = ws.file("bad.sqa", "algebra X\nvertices v\n");
    let o = run(&f, &["validate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn invalid_algebra_reports_violations() {
    let ws = Workspace::new();
    let f = ws.file(
        "three.sqa",
        "algebra Three\nvertices: v\narrow a: v -> v\narrow b: v -> v\narrow c: v -> v\nrelations: a a\n",
    );
    let o = run(&f, &["validate", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["is_string_algebra"], false);
    assert!(v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["axiom"] == "out-degree"));
}

#[test]
fn lambda2_bands() {
    let ws = Workspace::new();
    let o = run(&ws.fixture("lambda2"), &["bands"]);
    assert_eq!(
        stdout(&o),
        "a b' prime=true\nb a' prime=true\nd e' prime=true\ne d' prime=true\n"
    );
    let o = run(&ws.fixture("lambda2"), &["prime-bands", "--up-to-inverse"]);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn hammock_and_expand() {
    let ws = Workspace::new();
    let f = ws.fixture("lambda2");
    assert_eq!(stdout(&run(&f, &["hammock", "succ", "a"])), "e c a b' a\n");
    assert_eq!(stdout(&run(&f, &["hammock", "pred", "a"])), "c a\n");
    assert_eq!(stdout(&run(&f, &["hammock", "succ", "c"])), "1(v2,+)\n");
    assert_eq!(
        stdout(&run(&f, &["expand", "--op", "l", "c"])),
        "undefined@1\n"
    );
    let v = json(&run(
        &ws.fixture("gp23"),
        &["--json", "expand", "--op", "l", "a"],
    ));
    assert_eq!(v["defined"], true);
    assert_eq!(v["period"], "a b'");
}

#[test]
fn bad_word_is_a_parse_error() {
    let ws = Workspace::new();
    let o = run(&ws.fixture("gp23"), &["generate-path", "a z"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dot_output_marks_weak_arrows() {
    let ws = Workspace::new();
    let out = ws.dir.path().join("q.dot");
    let o = run(
        &ws.fixture("gp23"),
        &[
            "bridge-quiver",
            "--extended",
            "--weak",
            "--dot",
            out.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    let dot = std::fs::read_to_string(out).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("style=dashed"));
}

#[test]
fn generate_path_round_trips() {
    let ws = Workspace::new();
    let v = json(&run(
        &ws.fixture("negative_power"),
        &["--json", "generate-path", "e a"],
    ));
    assert_eq!(v["word"], "e a");
    assert_eq!(v["exponents"][0], -1);
}

#[test]
fn rank_of_inclusion() {
    let ws = Workspace::new();
    let v = json(&run(
        &ws.fixture("gp23"),
        &["--json", "rank", "ss", "1(v,-)", "1(v,-)", "b'"],
    ));
    assert_eq!(v["class"], "stable_radical");
}

#[test]
fn oracle_check_passes() {
    let ws = Workspace::new();
    let v = json(&run(
        &ws.fixture("lambda2"),
        &["--json", "oracle", "check", "--budget", "6"],
    ));
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 19);
    assert!(reports
        .iter()
        .all(|r| r["mismatches"].as_array().unwrap().is_empty()));
}

#[test]
fn output_is_deterministic() {
    let ws = Workspace::new();
    let f = ws.fixture("stable_omega");
    let args = ["--json", "bridge-quiver", "--extended", "--weak"];
    assert_eq!(run(&f, &args).stdout, run(&f, &args).stdout);
}
