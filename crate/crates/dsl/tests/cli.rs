mod common;

use std::io::Write;
use std::process::{Command, Output};

fn funcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funcat")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    common::fixture_dir().join(name).to_string_lossy().into_owned()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".fc").tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn check_accepts_fixtures() {
    for (name, _) in common::fixtures() {
        let out = funcat(&["check", &fixture(&name)]);
        assert_eq!(out.status.code(), Some(0), "{}: {}", name, String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn diagnostics_carry_file_line_and_column() {
    let f = temp_file("ring Z\nmodule M over Z = free 1\nmorphism f : M -> N = identity\n");
    let path = f.path().to_string_lossy().into_owned();
    let out = funcat(&["check", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), format!("{}:3:19: unresolved name `N`", path));
}

#[test]
fn run_prints_the_tor_row() {
    let out = funcat(&["run", &fixture("tor.fc"), "--task", "tor"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("== tor [derive] pass\n"), "{}", text);
    assert!(text.contains("\nn=1: Z/2\n"));
}

#[test]
fn json_output_parses() {
    let out = funcat(&["run", &fixture("group_homology.fc"), "--task", "cyclic_four", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let task = &v["tasks"][0];
    assert_eq!(task["name"], "cyclic_four");
    assert_eq!(task["status"], "pass");
    assert_eq!(task["tables"][0]["title"], "E2");
}

#[test]
fn failing_task_sets_the_exit_code() {
    // two identities do not compose to zero, so they are not a complex
    let f = temp_file("ring Z\nmodule M over Z = free 1\nmorphism i : M -> M = identity\ntask t = homology complex=[i, i]\ntask ok = validate\n");
    let out = funcat(&["run", &f.path().to_string_lossy()]);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert_eq!(out.status.code(), Some(1), "{}", text);
    assert!(text.contains("== t [homology] error\nmessage: "), "{}", text);
    assert!(text.contains("task=ok: validate | pass"), "{}", text);
}

#[test]
fn verify_command_needs_a_seed() {
    let out = funcat(&["verify-paper", &fixture("verify.fc"), "--suite", "kernel"]);
    assert_eq!(out.status.code(), Some(2));
    let out = funcat(&["verify-paper", &fixture("verify.fc"), "--suite", "kernel", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("20/20 pass"));
}

#[test]
fn output_is_byte_identical_across_processes() {
    for args in [
        vec!["run", "verify.fc", "--seed", "3"],
        vec!["run", "group_homology.fc", "--format", "json"],
        vec!["verify-paper", "verify.fc", "--suite", "les", "--seed", "42", "--cases", "30"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".fc") { fixture(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (funcat(&args), funcat(&args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn max_degree_is_bounded() {
    let out = funcat(&["run", &fixture("tor.fc"), "--max-degree", "99"]);
    assert_eq!(out.status.code(), Some(2));
}
