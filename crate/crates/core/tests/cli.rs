use std::path::Path;
use std::process::Command;

use powerlambda::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("powerlambda").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn analyze_is_stable() {
    let (code, a, _) = call(&["analyze", "semidihedral:16", "--stable"]);
    assert_eq!(code, 0);
    let (_, b, _) = call(&["analyze", "semidihedral:16", "--stable"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["lambda"], 16);
    assert_eq!(v["family"], "semidihedral");
    assert_eq!(v["class_numbers"]["2"], 5);
    assert!(v.get("timing_ms").is_none());
    let (_, timed, _) = call(&["analyze", "cyclic:4"]);
    assert!(timed.contains("timing_ms"));
}

#[test]
fn lambda_methods() {
    let (code, out, _) = call(&["lambda", "quaternion:8", "--method", "both"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["constructive"]["lambda"], 9);
    assert_eq!(v["exact"]["lambda"], 9);
    assert_eq!(v["agree"], true);

    let (code, out, _) = call(&["lambda", "dihedral:64", "--method", "both"]);
    assert_eq!(code, 0);
    assert!(out.contains("skipped"));

    let (code, _, err) = call(&["lambda", "cyclic:6"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a p-group"));
    let (code, out, _) = call(&["lambda", "cyclic:6", "--method", "exact"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"lambda\": 8"));
}

#[test]
fn resource_limits() {
    let (code, _, _) = call(&["lambda", "cyclic:48", "--method", "exact"]);
    assert_eq!(code, 3);
    let (code, _, _) = call(&["analyze", "cyclic:100000"]);
    assert_eq!(code, 3);
}

#[test]
fn check_labelling_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d8.csv");
    let csv_s = csv.to_str().unwrap();
    let (code, _, _) = call(&["lambda", "dihedral:8", "--csv", csv_s]);
    assert_eq!(code, 0);
    let (code, out, _) = call(&["check", "dihedral:8", csv_s]);
    assert_eq!((code, out.as_str()), (0, "valid: span 8\n"));

    std::fs::write(
        &csv,
        "element,label\n1,0\nx,1\nx^2,2\nx^3,3\ny,4\nxy,5\nx^2y,6\nx^3y,7\n",
    )
    .unwrap();
    let (code, out, _) = call(&["check", "dihedral:8", csv_s]);
    assert_eq!(code, 2);
    assert!(out.contains("violation: 1 and x at distance 1"));

    std::fs::write(&csv, "element,label\n1,0\n").unwrap();
    assert_eq!(call(&["check", "dihedral:8", csv_s]).0, 1);
    std::fs::write(&csv, "vertex;label\n").unwrap();
    assert_eq!(call(&["check", "dihedral:8", csv_s]).0, 1);
}

#[test]
fn export_formats() {
    let (code, out, _) = call(&["export", "cyclic:3", "--format", "edges"]);
    assert_eq!((code, out.as_str()), (0, "3\n0 1\n0 2\n1 2\n"));
    let (_, out, _) = call(&["export", "cyclic:3", "--format", "cayley"]);
    assert_eq!(out, "3\n0 1 2\n1 2 0\n2 0 1\nnames: 1,x,x^2\n");
    let (_, out, _) = call(&["export", "cyclic:2", "--format", "dot"]);
    assert!(out.starts_with("graph \"cyclic:2\" {"));
    assert_eq!(call(&["export", "cyclic:3", "--format", "svg"]).0, 1);
}

#[test]
fn bundled_cayley_file() {
    let spec = format!("file:{}", data("s3.cayley"));
    let (code, out, _) = call(&["lambda", &spec, "--method", "exact"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"lambda\": 6"));
    let (code, out, _) = call(&["analyze", &spec, "--stable"]);
    assert_eq!(code, 0);
    assert!(out.contains("not-p-group"));
}

#[test]
fn suite_reports_expected_failure() {
    let (code, out, _) = call(&["suite", "--max-order", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("XFAIL lower-hook cyclic:6"));
    assert!(!out.contains("\nFAIL"));
    let (code, _, _) = call(&["suite", "--max-order", "4", "--include", "torus:2"]);
    assert_eq!(code, 1);
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(call(&["lambda"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["analyze", "cyclic"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_powerlambda");
    let status = Command::new(bin)
        .args(["lambda", "semidihedral:16"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(bin)
        .args(["analyze", "dihedral:64"])
        .env("LAMBDA_MAX_ORDER", "32")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
}

#[test]
fn corrupted_cayley_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.cayley");
    // C4 with x*x changed from x^2 to x^3
    std::fs::write(&path, "4\n0 1 2 3\n1 3 3 0\n2 3 0 1\n3 0 1 2\n").unwrap();
    let spec = format!("file:{}", path.display());
    let (code, _, err) = call(&["suite", "--max-order", "4", "--include", &spec]);
    assert_eq!(code, 1);
    assert!(err.contains("associative"), "{err}");
}

#[test]
fn documented_examples() {
    let (code, out, _) = call(&["lambda", "elemab:3,2", "--method", "both"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (
            v["constructive"]["lambda"].as_i64(),
            v["exact"]["lambda"].as_i64()
        ),
        (Some(9), Some(9))
    );

    let (_, out, _) = call(&["lambda", "heisenberg:3"]);
    assert!(out.contains("\"lambda\": 27"));

    let (_, out, _) = call(&["analyze", "quaternion:8", "--stable"]);
    assert!(out.contains("\"universal-nonidentity-vertex\""));

    let (_, dot, _) = call(&["export", "elemab:2,2", "--format", "dot"]);
    assert_eq!(dot.matches(" -- ").count(), 3);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.cayley");
    let (code, _, _) = call(&[
        "export",
        "quaternion:8",
        "--format",
        "cayley",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (_, out, _) = call(&[
        "lambda",
        &format!("file:{}", path.display()),
        "--method",
        "exact",
    ]);
    assert!(out.contains("\"lambda\": 9"));
}
