//! End-to-end tests of the binary: golden bytes for the documented
//! examples, plus the exit-code contract (0 success/equality, 1 inequality
//! or family violation, 2 usage/parse errors).

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn porder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_porder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn porder_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_porder"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is utf-8")
}

#[test]
fn count_antichain2_golden() {
    let out = porder(&["count", "--Q", "antichain2", "--X", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "labels: z1=0 z2=1 x1=2 y=3\n\
         left  (apex side): 7\n\
         right (dual side): 7\n\
         equal: yes\n\
         left  classes: 5 classes (2+2+1+1+1)\n\
         right classes: 5 classes (2+2+1+1+1)\n\
         blocks:\n\
         \x20 {0,1}  left 7  right 7\n"
    );
}

#[test]
fn count_chain2_golden() {
    let out = porder(&["count", "--Q", "chain2", "--X", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "labels: z1=0 z2=1 x1=2 y=3\n\
         left  (apex side): 6\n\
         right (dual side): 6\n\
         equal: yes\n\
         left  classes: 6 classes (1+1+1+1+1+1)\n\
         right classes: 6 classes (1+1+1+1+1+1)\n\
         blocks:\n\
         \x20 {0,1}; 0<1  left 5  right 5\n\
         \x20 {0,1,2}; 0<1,0<2,2<1  left 1  right 1\n"
    );
}

#[test]
fn count_empty_anchor_golden() {
    let out = porder(&["count", "--Q", "empty", "--X", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("left  (apex side): 3\n"));
    assert!(text.contains("right (dual side): 3\n"));
    assert!(text.contains("equal: yes\n"));
}

#[test]
fn count_json_line_shape() {
    let out = porder(&["count", "--Q", "antichain2", "--X", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).expect("valid json");
    assert_eq!(v["command"], "count");
    assert_eq!(v["lhs"], 7);
    assert_eq!(v["rhs"], 7);
    assert_eq!(v["equal"], true);
    assert_eq!(v["params"]["x"], 1);
    assert_eq!(v["classes"]["lhs"].as_array().unwrap().len(), 5);
    assert_eq!(v["classes"]["rhs"].as_array().unwrap().len(), 5);
}

#[test]
fn tau_swaps_chain_and_antichain() {
    let out = porder_stdin(&["map", "tau", "--Y", "z"], "carrier: x z\nx < z\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "carrier: x z\n");

    let out = porder_stdin(&["map", "tau", "--Y", "z"], "carrier: x z\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "carrier: x z\nx < z\n");
}

#[test]
fn sigma_round_trip_is_byte_identical() {
    let original = "carrier: x z y\nx < y\n";
    let forth = porder_stdin(&["map", "sigma", "--Z", "z", "--apex", "y"], original);
    assert_eq!(forth.status.code(), Some(0));
    assert_eq!(stdout_of(&forth), "carrier: x z\nx < z\n");
    let back = porder_stdin(
        &["map", "sigma-inverse", "--Z", "z", "--apex", "y"],
        stdout_of(&forth),
    );
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout_of(&back), original);
}

#[test]
fn sigma_rejects_family_violations_with_exit_one() {
    // every point maximal: the lower element is a maximal point outside
    // the anchor, so the max condition fails
    let out = porder_stdin(
        &["map", "sigma", "--Z", "z1,z2", "--apex", "y"],
        "carrier: z1 z2 x y\n",
    );
    assert_eq!(out.status.code(), Some(1));
    let err = std::str::from_utf8(&out.stderr).unwrap();
    assert!(err.contains("not in the required family"), "stderr: {err}");
}

#[test]
fn parse_errors_exit_two_with_line_numbers() {
    let out = porder_stdin(
        &["map", "tau", "--Y", "c"],
        "carrier: a b c\na < b\nb < c\n",
    );
    assert_eq!(out.status.code(), Some(2));
    let err = std::str::from_utf8(&out.stderr).unwrap();
    assert!(err.contains("line 1"), "stderr: {err}");
    assert!(err.contains("not transitively closed"), "stderr: {err}");

    let out = porder(&["count", "--Q", "no-such-file.por", "--X", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = porder(&["count"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_dot_golden() {
    let out = porder_stdin(&["export-dot"], "carrier: a b c\na < b\na < c\nb < c\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "digraph poset {\n\
         \x20 rankdir=BT;\n\
         \x20 \"a\" [shape=circle];\n\
         \x20 \"b\" [shape=circle];\n\
         \x20 \"c\" [shape=circle];\n\
         \x20 \"a\" -> \"b\";\n\
         \x20 \"b\" -> \"c\";\n\
         }\n"
    );

    let out = porder_stdin(&["export-dot"], "carrier: a b\n");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(text.matches("->").count(), 0);
    assert_eq!(text.matches("shape=circle").count(), 2);
}

#[test]
fn export_dot_styles_roles() {
    // two legs below an apex point, styled: legs black, top plain, apex diamond
    let out = porder_stdin(
        &["export-dot", "--Z", "a,c", "--apex", "y"],
        "carrier: a b c y\na < b\nc < b\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(text.matches("fillcolor=black").count(), 2);
    assert_eq!(text.matches("shape=diamond").count(), 1);
    assert_eq!(text.matches("->").count(), 2);
}

#[test]
fn enumerate_lists_family_members() {
    let out = porder(&[
        "enumerate",
        "--family",
        "mstar",
        "--Q",
        "antichain2",
        "--X",
        "1",
        "--apex",
        "y",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stanzas: Vec<&str> = stdout_of(&out).split("\n\n").collect();
    assert_eq!(stanzas.len(), 7);
    assert!(stanzas
        .iter()
        .all(|s| s.starts_with("carrier: z1 z2 x1 y\n")));

    // without an apex the plain family over the same split has 3 members
    let out = porder(&[
        "enumerate",
        "--family",
        "mstar",
        "--Q",
        "antichain2",
        "--X",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).split("\n\n").count(), 3);
}

#[test]
fn count_reads_anchor_files() {
    let path = std::env::temp_dir().join(format!("porder-anchor-{}.txt", std::process::id()));
    std::fs::write(&path, "carrier: p q\np < q\n").unwrap();
    let out = porder(&["count", "--Q", path.to_str().unwrap(), "--X", "1"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("labels: p=0 q=1 x1=2 y=3"), "stdout: {text}");
    assert!(text.contains("left  (apex side): 6"), "stdout: {text}");
}

#[test]
fn verify_theorem_sweep_is_equal() {
    let out = porder(&["verify", "theorem", "--maxZ", "2", "--maxX", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.lines().skip(1).all(|l| l.ends_with("yes")));
    // 1 + 1 + 3 anchors, two lower sizes each, plus the header
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn verify_partition_reports_blocks() {
    let out = porder(&[
        "verify",
        "partition",
        "--Q",
        "chain2",
        "--X",
        "1",
        "--which",
        "c",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("6 members in 2 blocks"));

    let out = porder(&[
        "verify",
        "partition",
        "--Q",
        "chain2",
        "--X",
        "1",
        "--which",
        "mstar",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["total"], 3);
}
