use std::process::Command;

fn cantorkit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cantorkit")).args(args).output().unwrap()
}

#[test]
fn spec_from_file_and_svg_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("ac.json");
    std::fs::write(&spec, "{\"type\": \"subdivision\", \"n\": 4, \"removed\": [2]}\n").unwrap();
    let svg = dir.path().join("ac.svg");
    let out = cantorkit(&["render", "--spec", spec.to_str().unwrap(), "--depth", "3", "--out", svg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"interval\"").count(), 1 + 2 + 4 + 8);

    let inline = cantorkit(&["render", "--spec", "ac", "--depth", "3"]);
    assert_eq!(inline.stdout, text.as_bytes());
}

#[test]
fn text_outputs() {
    let out = cantorkit(&["construct", "--spec", "cantor", "--depth", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[0/1, 1/1]\n[0/1, 1/3] ∪ [2/3, 1/1]\n");
    let out = cantorkit(&["cantorfun", "--x", "1/4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1/3\n");
    let out = cantorkit(&["member", "--spec", "ac", "--x", "1/3"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("excluded at depth 2"));
}

#[test]
fn help_is_not_an_error() {
    assert_eq!(cantorkit(&["--help"]).status.code(), Some(0));
    assert_eq!(cantorkit(&[]).status.code(), Some(2));
}

#[test]
fn parse_errors_report_position() {
    let out = cantorkit(&["analyze", "--spec", "{\"type\": \"power\", \"m\": 4, \"k\": 1}"]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "validation");
    assert!(diag["message"].as_str().unwrap().contains("at 1:27"), "{diag}");
}
