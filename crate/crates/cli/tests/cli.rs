use std::path::PathBuf;
use std::process::{Command, Output};

fn partcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partcat")).args(args).output().expect("spawn partcat")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("partcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn rotate_singletons_up_right() {
    let out = partcat(&["op", "rotate", "--corner", "up_right", "-:wb:[l1][l2]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "w:w:[u1][l1]\n");
}

#[test]
fn cyclic_rotation_undoes_itself() {
    let once = partcat(&["op", "rotate", "--steps", "1", "wb:b:[u1 l1][u2]"]);
    let lit = stdout(&once);
    let back = partcat(&["op", "rotate", "--steps", "-1", lit.trim()]);
    assert_eq!(stdout(&back), "wb:b:[u1 l1][u2]\n");
}

#[test]
fn compose_and_tensor() {
    let out = partcat(&["op", "tensor", "w:w:[u1 l1]", "-:wb:[l1 l2]"]);
    assert_eq!(stdout(&out), "w:wwb:[u1 l1][l2 l3]\n");
    let out = partcat(&["op", "compose", "-:wb:[l1 l2]", "wb:-:[u1 u2]"]);
    assert_eq!(stdout(&out), "wb:wb:[u1 u2][l1 l2]\n");
}

#[test]
fn analyze_four_block() {
    let gens = scratch("four.txt", "# one generator\n-:wbwb:[l1 l2 l3 l4]\n");
    let out = partcat(&["analyze", gens.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "K = {0}"), "{text}");
    assert!(text.lines().any(|l| l == "F = {4}"), "{text}");
}

#[test]
fn analyzer_output_feeds_classify() {
    let gens = scratch("pairs.txt", "-:wb:[l1 l2]\n");
    let z = scratch("pairs.z", &stdout(&partcat(&["analyze", gens.to_str().unwrap()])));
    let out = partcat(&["classify", "--zdata", z.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l.starts_with("row=O")), "{}", stdout(&out));
}

#[test]
fn classify_tuple() {
    let out = partcat(&["classify", "--tuple", "{2};+-{0,2};2Z;Z;Z;Z"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "row=O1 u=1 m=1 D={}\n");
}

#[test]
fn closure_reports_case() {
    let gens = scratch("closure.txt", "-:wbwb:[l1 l2 l3 l4]\n-:wb:[l1][l2]\n");
    let members = gens.with_extension("members");
    let out = partcat(&["closure", "--gen", gens.to_str().unwrap(), "--cap", "4", "--out", members.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("outcome = fixpoint"));
    assert!(text.lines().any(|l| l == "case = S"), "{text}");
    let dumped = std::fs::read_to_string(members).unwrap();
    assert!(dumped.lines().any(|l| l == "-:wb:[l1][l2]"));
}

#[test]
fn enumerate_pairings() {
    let out = partcat(&["enumerate", "--lower", "4", "--filter", "p2"]);
    assert_eq!(stdout(&out).lines().count(), 48);
    let out = partcat(&["enumerate", "--lower", "2", "--upper", "1"]);
    assert_eq!(stdout(&out).lines().count(), 40);
}

#[test]
fn show_draws_blocks() {
    let out = partcat(&["show", "wb:wbw:[u1 l1][u2][l2 l3]"]);
    assert_eq!(stdout(&out), "   A B\nu: w b\nl: w b w\n   A C C\nA = {u1, l1}\nB = {u2}\nC = {l2, l3}\n");
}

#[test]
fn verify_single_check() {
    let out = partcat(&["verify", "--check", "chi_lemma", "--budget", "points=4,caps=4..4,samples=20"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("chi_lemma pass"));
}

#[test]
fn bad_literal_in_file_names_the_line() {
    let bad = scratch("bad.txt", "# header\n-:wb:[l1 l2]\n-:wq:[l1]\n");
    let out = partcat(&["parse", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.txt:3:"), "{err}");
}

#[test]
fn domain_errors_exit_one() {
    let out = partcat(&["op", "erase", "--turn", "l1,l3", "-:wbw:[l1 l2 l3]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(partcat(&["op", "rotate", "--corner", "sideways", "w:w:[u1 l1]"]).status.code(), Some(2));
    assert_eq!(partcat(&["closure"]).status.code(), Some(2));
}
