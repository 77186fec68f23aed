use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galcover"))
}

fn case_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/cases").join(name)
}

#[test]
fn passing_case_exits_zero() {
    let out = bin().args(["verify", "--bound", "500", "case"]).arg(case_file("s4.json")).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn failing_case_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let mut case: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(case_file("s4.json")).unwrap()).unwrap();
    case["f"][0] = "5".into();
    let path = dir.path().join("mutated.json");
    std::fs::write(&path, case.to_string()).unwrap();
    let out = bin().args(["--out"]).arg(dir.path()).args(["verify", "--bound", "500", "case"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(dir.path().join("report.json").exists());
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn factor_and_sweep_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    std::fs::write(&f, "4 1 -5 0 1").unwrap();
    let out = bin().arg("factor-modp").arg(&f).arg("11").output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(x+4)(x^3+7x^2+1)");

    let h = dir.path().join("h.txt");
    std::fs::write(&h, "6 0 -5 0 1").unwrap();
    let out = bin().arg("sweep").arg(&h).args(["--bound", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_input_is_an_error() {
    let out = bin().args(["factor-modp", "/nonexistent/poly", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
