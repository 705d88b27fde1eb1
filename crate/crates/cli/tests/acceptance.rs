//! Acceptance suite for the command-line surface: canonical roundtrips, the
//! construct-then-verify pipeline, and diagnostics for corrupted input.

use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::time::Instant;

use cs2g_cli::docs::{parse_document, serialize_document};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cs2g"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Criterion 9: golden document handling. Every kind roundtrips
/// byte-identically, the
/// standard-example pipeline verifies clean, and corrupted fixtures exit 2
/// carrying field-path diagnostics.
#[test]
fn criterion_9_cli_golden() {
    let start = Instant::now();

    for name in [
        "std1.tuple.json",
        "std1.complex.json",
        "std1.groupoid.json",
        "std1.form.json",
        "std1.courant.json",
        "dirac1.subcomplex.json",
        "skew.alpha.json",
        "std1.csg.json",
    ] {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let doc = parse_document(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(serialize_document(&doc), text, "{name} is not canonical");
    }

    // example standard --dim 1 | verify - exits 0.
    let example = run_cli(&["example", "standard", "--dim", "1"]);
    assert!(example.status.success());
    let mut child = Command::new(env!("CARGO_BIN_EXE_cs2g"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.as_mut().unwrap().write_all(&example.stdout).unwrap();
    let verify = child.wait_with_output().unwrap();
    assert_eq!(verify.status.code(), Some(0));

    // Corrupted fixtures exit 2 with a field path on stderr.
    for (name, expected_path) in [
        ("bad_rational.tuple.json", "$.payload.pairing[0][1]"),
        ("unknown_field.complex.json", "$.payload.extra"),
        ("bad_shape.complex.json", "$.payload.d2"),
    ] {
        let out = run_cli(&["verify", fixture_path(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.contains(expected_path), "{name}: {stderr}");
    }
    let out = run_cli(&["verify", fixture_path("syntax_error.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance: 9 CLI golden tests: PASS ({elapsed:.2}s)");
    assert!(elapsed < 2.0, "criterion 9 exceeded its runtime target");
}
