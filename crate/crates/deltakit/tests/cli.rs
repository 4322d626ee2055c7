//! End-to-end tests of the batch binary: exit codes, determinism, file
//! input, and CSV emission.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deltakit"))
}

#[test]
fn invariants_on_a_catalog_pair_exits_zero() {
    let out = bin()
        .args(["--catalog", "P1:O(1)", "--task", "invariants"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"value\": \"2/1\""), "{text}");
    assert!(text.contains("\"ding_stable\": true"));
}

#[test]
fn identical_jobs_emit_byte_identical_json() {
    let run = || {
        bin()
            .args([
                "--catalog",
                "P1xP1:O(1,2)",
                "--task",
                "convergence",
                "--m-range",
                "1..6",
            ])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn malformed_geometry_exits_two() {
    let dir = std::env::temp_dir().join("deltakit-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{
  "schema_version": 1,
  "polytope": { "dimension": 2, "vertices": [["0","0"], ["1","1"], ["2","2"]] }
}"#,
    )
    .unwrap();
    let out = bin()
        .args(["--input", path.to_str().unwrap(), "--task", "invariants"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not full-dimensional"), "{err}");
}

#[test]
fn klt_violation_exits_two_and_names_the_invariant() {
    let dir = std::env::temp_dir().join("deltakit-cli-klt");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("klt.json");
    std::fs::write(
        &path,
        r#"{
  "schema_version": 1,
  "polytope": { "dimension": 1, "vertices": [["0"], ["2"]] },
  "boundary": { "1": "1" }
}"#,
    )
    .unwrap();
    let out = bin()
        .args(["--input", path.to_str().unwrap(), "--task", "invariants"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("klt violated"), "{err}");
}

#[test]
fn unknown_catalog_key_exits_two() {
    let out = bin()
        .args(["--catalog", "P9:O(1)", "--task", "invariants"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn file_pair_matches_catalog_result() {
    // Serialize a twisted pair through the documented schema and rerun.
    let pair = deltakit::catalog::pair("P1:O(2):theta[0]=1/2").unwrap();
    let doc = deltakit::job::serialize_pair(&pair);
    let dir = std::env::temp_dir().join("deltakit-cli-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let from_file = bin()
        .args(["--input", path.to_str().unwrap(), "--task", "invariants"])
        .output()
        .unwrap();
    assert!(from_file.status.success());
    let text = String::from_utf8(from_file.stdout).unwrap();
    assert!(text.contains("\"value\": \"1/2\""), "{text}");
}

#[test]
fn csv_format_emits_series_headers() {
    let out = bin()
        .args([
            "--catalog",
            "P2:O(1)",
            "--task",
            "convergence",
            "--m-range",
            "1,2,3",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# series: delta_m\nm,delta_m\n"), "{text}");
    assert_eq!(text.matches("3,3").count(), 1, "{text}");
}

#[test]
fn quantize_from_sampled_profile_document() {
    // A metric supplied as sample points follows the documented shape.
    let points: Vec<(f64, f64)> = (0..400)
        .map(|k| {
            let x = -25.0 + 50.0 * k as f64 / 399.0;
            (x, 0.08 * (-x * x / 6.0).exp())
        })
        .collect();
    let doc = deltakit::job::InputDoc {
        schema_version: 1,
        polytope: None,
        fan: None,
        boundary: None,
        metric_profile: Some(deltakit::job::ProfileDoc {
            degree: 1,
            points,
            asymptotics: (0.0, 0.0),
        }),
    };
    let dir = std::env::temp_dir().join("deltakit-cli-profile");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("profile.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = bin()
        .args([
            "--input",
            path.to_str().unwrap(),
            "--task",
            "quantize",
            "--m-range",
            "2,4",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"partition\""));
}

#[test]
fn probe_without_a_bracketed_crossing_exits_one() {
    // Exponents far below the threshold leave every slope positive, so no
    // sign change can be bracketed and the probe reports inconclusive.
    let out = bin()
        .args([
            "--catalog",
            "P1:O(1)",
            "--task",
            "probe",
            "--lambda-grid",
            "0.05:0.2:2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"inconclusive\": true"), "{text}");
}

#[test]
fn output_flag_writes_the_report_file() {
    let dir = std::env::temp_dir().join("deltakit-cli-output");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = bin()
        .args([
            "--catalog",
            "P1:O(3)",
            "--task",
            "invariants",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"input\": \"P1:O(3)\""));
}
