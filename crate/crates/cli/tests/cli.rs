use std::path::PathBuf;
use std::process::{Command, Output};

fn clonoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clonoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn factor_output() {
    let o = clonoid(&["factor", "-p", "2", "-q", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(x+1)^2 * (x^2+x+1)^2");
    let o = clonoid(&["factor", "-p", "5", "-q", "3"]);
    assert_eq!(stdout(&o).trim(), "(x+1)^1 * (x+4)^1");
    let o = clonoid(&["factor", "-p", "3", "--poly", "x^4+2"]);
    assert_eq!(stdout(&o).trim(), "(x+1)^1 * (x+2)^1 * (x^2+1)^1");
}

#[test]
fn same_characteristic_is_a_domain_error() {
    let o = clonoid(&["factor", "-p", "2", "-q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).starts_with("error[SameCharacteristic]:"),
        "{}",
        stderr(&o)
    );
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn count_and_lattice() {
    assert_eq!(
        stdout(&clonoid(&["count", "-p", "2", "-q", "3"])).trim(),
        "6"
    );
    let o = clonoid(&["lattice", "-p", "3", "-q", "2", "--format", "dot"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.contains("rankdir=BT"));
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 4);
    let json: serde_json::Value = serde_json::from_str(&stdout(&clonoid(&[
        "lattice", "-p", "2", "-q", "7", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 18);
}

#[test]
fn top_generator() {
    let o = clonoid(&[
        "generator",
        "-p",
        "2",
        "-q",
        "3",
        "--clonoid",
        r#"{"constants":true,"exponents":[2]}"#,
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"], serde_json::json!([1, 0, 1]));
    let o = clonoid(&[
        "generator",
        "-p",
        "2",
        "-q",
        "3",
        "--clonoid",
        r#"{"constants":true,"exponents":[7]}"#,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[InvalidClonoid]"));
}

#[test]
fn closure_and_membership_from_files() {
    let f1 = write_tmp("f1.json", r#"{"p":2,"q":3,"arity":1,"values":[0,1,0]}"#);
    let o = clonoid(&[
        "closure",
        "-p",
        "2",
        "-q",
        "3",
        "--arity",
        "2",
        "--file",
        f1.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("dim 8 of 9"));

    let tables = write_tmp(
        "tables.json",
        r#"[{"p":2,"q":3,"arity":1,"values":[0,1,0]},
            {"p":2,"q":3,"arity":1,"values":[1,1,1]},
            {"p":2,"q":3,"arity":2,"values":[0,0,0,0,1,0,0,0,0]}]"#,
    );
    let o = clonoid(&[
        "member",
        "-p",
        "2",
        "-q",
        "3",
        "--clonoid",
        r#"{"constants":false,"exponents":[2]}"#,
        "--file",
        tables.to_str().unwrap(),
    ]);
    assert_eq!(
        stdout(&o).split_whitespace().collect::<Vec<_>>(),
        ["true", "false", "true"]
    );
}

#[test]
fn parse_errors_carry_positions() {
    let bad = write_tmp("bad.json", "{\"p\": 2,\n \"q\": }");
    let o = clonoid(&[
        "closure",
        "-p",
        "2",
        "-q",
        "3",
        "--arity",
        "1",
        "--file",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).starts_with("error[ParseError]: parse error at 2:"),
        "{}",
        stderr(&o)
    );
    let o = clonoid(&[
        "closure",
        "-p",
        "2",
        "-q",
        "3",
        "--arity",
        "1",
        "--file",
        "/nonexistent/tables.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[Io]"));
}

#[test]
fn guard_violations_exit_3() {
    let f = write_tmp(
        "f7.json",
        r#"{"p":2,"q":7,"arity":1,"values":[0,1,0,0,0,0,0]}"#,
    );
    let o = clonoid(&[
        "closure",
        "-p",
        "2",
        "-q",
        "7",
        "--arity",
        "4",
        "--file",
        f.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error[TooLarge]"), "{}", stderr(&o));
    assert!(stderr(&o).contains("exceeds the desk-scale bound"));
}

#[test]
fn verify_runs() {
    let o = clonoid(&["verify", "-p", "2", "-q", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("count: formula=6 bruteforce=6"));
    assert!(!stdout(&o).contains("FAIL"));
    let o = clonoid(&["verify", "-p", "2", "-q", "7"]);
    assert!(stdout(&o).contains("invariant subspaces: chain-product=9 bruteforce=9"));
    let o = clonoid(&["verify", "-p", "6", "-q", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[NotAPrimePower]"));
}

#[test]
fn json_output_is_stable() {
    let args = [
        "verify", "-p", "5", "-q", "3", "--format", "json", "--seed", "11",
    ];
    assert_eq!(clonoid(&args).stdout, clonoid(&args).stdout);
    let args = ["lattice", "-p", "3", "-q", "4", "--format", "json"];
    assert_eq!(clonoid(&args).stdout, clonoid(&args).stdout);
}
