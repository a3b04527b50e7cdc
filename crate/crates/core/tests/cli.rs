use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multimod"))
}

fn stdout(c: &mut Command) -> (bool, String) {
    let out = c.output().unwrap();
    (out.status.success(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn missing_file_fails() {
    let out = bin().args(["solve", "/nonexistent/x.smt2"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn parse_error_fails() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.smt2");
    fs::write(&f, "(assert (= x 0))").unwrap();
    assert!(!bin().arg("solve").arg(&f).output().unwrap().status.success());
}

#[test]
fn empty_instance_is_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.smt2");
    fs::write(&f, "").unwrap();
    let (ok, out) = stdout(bin().args(["solve", "--lift-strategy", "ilp"]).arg(&f));
    assert!(ok);
    assert_eq!(out.lines().next(), Some("unknown"));
}

#[test]
fn gen_then_solve_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("mot");
    let (ok, _) = stdout(bin().args(["gen", "--family", "motivating", "--p", "3", "--q", "19", "-o"]).arg(&base));
    assert!(ok);
    let smt = base.with_extension("smt2");
    assert!(base.with_extension("mma").exists());

    let (ok, out) = stdout(bin().arg("solve").arg(&smt).arg("--stats"));
    assert!(ok);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "unsat");
    assert!(lines.iter().any(|l| l.starts_with("nodes: ")));
    assert!(lines.iter().any(|l| l.starts_with("time-ms: ")));

    let (_, traced) = stdout(bin().arg("solve").arg(&smt).args(["--trace", "--threads", "3"]));
    assert_eq!(traced.lines().next(), Some("unsat"));
    assert!(traced.lines().count() > 1);

    let (ok, out) = stdout(bin().arg("oracle").arg(&smt));
    assert!(ok);
    assert_eq!(out.trim(), "unsat");
}

#[test]
fn buggy_instance_has_a_model() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("bug");
    let (ok, _) = stdout(
        bin()
            .args(["gen", "--family", "motivating", "--p", "3", "--q", "19", "--buggy", "-o"])
            .arg(&base),
    );
    assert!(ok);
    let smt = base.with_extension("smt2");
    let (_, out) = stdout(bin().arg("oracle").arg(&smt));
    assert!(out.starts_with("sat\n"));
    let (_, out) = stdout(bin().arg("solve").arg(&smt));
    assert!(out.starts_with("unknown\nreason: "));
}

#[test]
fn bad_arguments_fail() {
    assert!(!bin().args(["gen", "--family", "nope", "--p", "3", "-o", "x"]).output().unwrap().status.success());
    assert!(!bin().args(["solve", "x.smt2", "--lift-strategy", "magic"]).output().unwrap().status.success());
    assert!(!bin().args(["gen", "--family", "motivating", "--p", "4", "--q", "19", "-o", "/tmp/never"]).output().unwrap().status.success());
}
