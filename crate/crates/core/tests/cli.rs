use std::process::Command;

fn ddh(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ddh")).args(args).output().expect("spawn ddh");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn session() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/sessions/worked.toml")
}

#[test]
fn reduce_prints_remainder_and_certificate() {
    let (out, _, code) = ddh(&["--session", session(), "reduce", "--set", "R", "--poly", "d1^2 x1"]);
    assert_eq!(code, 0);
    assert!(out.contains("remainder: x1\n"));
    assert!(out.contains("multiplier [d1 x1 - x1]: I^1 S^1"));
    assert!(out.contains("certificate verified: yes"));
}

#[test]
fn lift_worked_instance() {
    let (out, _, code) = ddh(&["--session", session(), "lift", "--system", "S", "--point", "t1", "--solver", "exact:deg=2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("b = t1 + e\n"), "{out}");
}

#[test]
fn incoherent_pair_exits_one() {
    let (out, _, code) = ddh(&["--field", "Q(t1,t2)", "coherent", "--set", "d1 x1 - t2; d2 x1"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness delta-polynomial: -1"));
    let (_, _, code) = ddh(&["--field", "Q(t1,t2)", "coherent", "--set", "d1 x1 - t2; d2 x1 - t1"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    let (_, err, code) = ddh(&["rank", "--poly", "x1 x2"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 4"));
    let (_, _, code) = ddh(&["--algebra", "bogus", "rank", "--poly", "x1"]);
    assert_eq!(code, 2);
    let (_, err, code) = ddh(&["lift", "--system", "d1 x1 - x1 - e*t1^5", "--point", "0", "--solver", "exact:deg=1"]);
    assert_eq!(code, 3);
    assert!(err.contains("no solution found at bound degree 1"));
    let (_, _, code) = ddh(&["lift", "--system", "x1^2 - 1 - e", "--point", "2"]);
    assert_eq!(code, 1);
    let (_, _, code) = ddh(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn axiom_and_structure_checks() {
    let (out, _, code) = ddh(&["--session", session(), "check-axiom3", "--lambda", "L", "--gamma", "G", "--witness", "a"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("witness: pass\n"));
    let (out, _, code) = ddh(&["--field", "Q", "check-axiom3", "--lambda", "d1 x1 - 1", "--gamma", "d1 x1_0 - 1; d1 x1_1 - 1"]);
    assert_eq!(code, 1);
    assert!(out.contains("component 1: d1 x1_1 -> remainder 1 (NOT a member)"));
    let (out, _, code) = ddh(&["--structure", "t1 + t1*e", "check-structure"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL: e o d1 = d1 o e"));
}

#[test]
fn prolongation_commands() {
    let args = ["--algebra", "split:2", "--structure", "t1*u0 + (t1 + 1)*u1"];
    let (out, _, _) = ddh(&[&args[..], &["prolong", "--set", "d1 x1 - t1"]].concat());
    assert_eq!(out, "d1 x1 - t1:\n  (0) d1 x1_0 - t1\n  (1) d1 x1_1 - t1 - 1\n");
    let (out, _, _) = ddh(&[&args[..], &["nabla", "--point", "t1^2"]].concat());
    assert_eq!(out, "x1_0 = t1^2\nx1_1 = t1^2 + 2*t1 + 1\n");
    let (out, _, _) = ddh(&[&args[..], &["pihat", "--factor", "1", "--point", "x1_0 = 3; x1_1 = 5"]].concat());
    assert_eq!(out, "x1 = 5\n");
    let (out, _, code) = ddh(&[
        "--field", "Q", "--algebra", "split:2", "extend", "--set", "d1 x1 - 1", "--element", "t1", "--target", "t1 + 1", "--over", "Q(t1)",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("x1 = t1*u0 + (t1 + 1)*u1\n"));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["--session", session(), "check-structure", "--samples", "8", "--seed", "3"];
    assert_eq!(ddh(&args), ddh(&args));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let (out, _, code) = ddh(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!((out.as_str(), code), ("", 0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), ddh(&args).0);
}
