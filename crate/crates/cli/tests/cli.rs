use std::path::Path;
use std::process::{Command, Output};

fn gtperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtperm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tetrahedron() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data/tetrahedron.txt")
        .display()
        .to_string()
}

#[test]
fn sg_psl2_7() {
    let o = gtperm(&["sg", "psl2:7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("114"), "{text}");
    assert!(text.contains("2^9"), "{text}");
}

#[test]
fn gt1_dihedral_9_as_json() {
    let o = gtperm(&["gt1", "dihedral:9", "--json", "-"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["gt"]["order"], 2);
    assert_eq!(v["gt"]["gbar_order"], 2916);
}

#[test]
fn bad_input_exits_nonzero() {
    let o = gtperm(&["sg", "psl2:6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert!(!gtperm(&["dessin", "/nonexistent/file"]).status.success());
}

#[test]
fn cap_error_names_the_flag() {
    let o = gtperm(&["gt1", "psl2:7", "--cap", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--cap"));
}

#[test]
fn json_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = gtperm(&["sg", "psl2:7", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let report = gtperm::report::Report::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text);
    assert_eq!(report.sg.unwrap().order_decimal, "512");
}

#[test]
fn dessin_cyclic_structures() {
    let o = gtperm(&["dessin", &tetrahedron(), "--cyclic", "3", "--json", "-"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dessin"]["regular"], true);
    assert_eq!(v["dessin"]["monodromy_order"], "12");
    assert_eq!(v["dessin"]["cyclic"]["classes"], 3);
}

#[test]
fn repro_tables_pass() {
    let o = gtperm(&["repro", "two-groups"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(gtperm(&["repro", "nope"]).status.code(), Some(1));
}

#[test]
fn atlas_list() {
    let o = gtperm(&["atlas", "list"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("psl2:q"));
}
