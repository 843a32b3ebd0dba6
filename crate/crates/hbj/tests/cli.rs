use std::process::{Command, Output};

fn hbj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbj")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_accepts_catalog_elements() {
    for e in ["twist_alpha(1)", "twist_boundary", "twist_block(1,2)", "handle_swap(1)*twist_alpha(2)^-1"] {
        let o = hbj(&["--genus", "2", "verify", e]);
        assert_eq!(o.status.code(), Some(0), "{e}");
        assert_eq!(stdout(&o).trim(), "OK");
    }
}

#[test]
fn boundary_magnus_matrix() {
    let o = hbj(&["--genus", "2", "magnus", "twist_boundary"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "[[2 - 1*x1 - 1*x1^-1, 1 - 1*x1 - 1*x2^-1 + 1*x1 x2^-1],\n [1 - 1*x1^-1 - 1*x2 + 1*x2 x1^-1, 2 - 1*x2 - 1*x2^-1]]"
    );
}

#[test]
fn meridian_twist_degree_one() {
    let o = hbj(&["--genus", "2", "disk-twist", "a1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "a1 (x) -(1 . a1)\na2 (x) 0");
    let o = hbj(&["--genus", "2", "mccullough", "a1"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn milnor_triple() {
    let o = hbj(&["--genus", "3", "milnor", "[t12,t23]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("square: commutes\n"));
}

#[test]
fn fox_derivatives() {
    let o = hbj(&["--genus", "2", "fox", "a1 b1 a1^-1", "1"]);
    assert_eq!(stdout(&o).trim(), "left: 1 - 1*a1 b1 a1^-1\nright: -1*a1^-1 + 1*b1 a1^-1");
}

#[test]
fn tree_bracket_of_opposite_segments_vanishes() {
    let o = hbj(&[
        "--genus",
        "2",
        "tree-bracket",
        "(tree 1 (node (leaf () 1) (leaf () 2)))",
        "(tree 1 (node (leaf () 2) (leaf () 1)))",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "a1 (x) 0\na2 (x) 0");
}

#[test]
fn exit_codes() {
    assert_eq!(hbj(&["--genus", "2", "verify", "bogus(1)"]).status.code(), Some(2));
    assert_eq!(hbj(&["--genus", "2", "fox", "a1", "9"]).status.code(), Some(2));
    assert_eq!(hbj(&["--genus", "1", "mccullough", "b1"]).status.code(), Some(3));
    assert_eq!(hbj(&["--genus", "2", "--expansion", "file", "varrho", "id"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["--genus", "2", "--format", "json", "--deg", "1", "tau", "twist_alpha(1)"];
    let a = stdout(&hbj(&args));
    let b = stdout(&hbj(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["status"], "OK");
    assert_eq!(v["command"], "tau");
}
