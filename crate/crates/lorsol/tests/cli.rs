//! End-to-end tests of the `lorsol` binary: exit codes, report shapes,
//! structured errors and byte-determinism.

use std::process::{Command, Output};

fn lorsol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorsol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn soliton_xiia_example() {
    // published unique solution for family II with alpha = 0, beta = 1
    let out = lorsol(&["soliton", "--family", "II", "--alpha", "0", "--beta", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["exists"], serde_json::json!(true));
    let p = &v["particular"];
    assert_eq!(p["x"][0]["exact"], "-1");
    assert_eq!(p["x"][1]["exact"], "0");
    assert_eq!(p["x"][2]["exact"], "0");
    assert_eq!(p["lambda"]["exact"], "0");
    assert_eq!(v["soliton_class"], "steady");
    assert_eq!(v["paper_representative_verified"], serde_json::json!(true));
}

#[test]
fn segre_complex_example() {
    let out = lorsol(&[
        "segre", "--family", "Ib", "--alpha", "1", "--beta", "1", "--gamma", "1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["segre_type"], "COMPLEX_1ZZ");
    assert_eq!(v["type"], "{1zz̄}");
}

#[test]
fn curvature_reports_paper_match() {
    let out = lorsol(&[
        "curvature", "--family", "Ia", "--alpha", "2", "--beta", "0", "--gamma", "0",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["paper_table_match"], serde_json::json!(true));
    assert_eq!(v["scal"]["exact"], "2"); // eigenvalues (-2, 2, 2)
    assert!(v["r_components"].as_array().unwrap().iter().any(|c| {
        c["i"] == 2 && c["j"] == 3 && c["k"] == 2 && c["l"] == 3
    }));
}

#[test]
fn exact_sqrt2_parameter_syntax() {
    let out = lorsol(&["soliton", "--family", "III", "--alpha", "1/2+1r2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // lambda = -alpha^2/2 = -(9/4 + sqrt2)/2 = -9/8 - 1/2*sqrt2
    assert_eq!(v["particular"]["lambda"]["exact"], "-9/8-1/2*sqrt2");
}

#[test]
fn list_families_has_seven_rows() {
    let out = lorsol(&["list-families"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let rows = v["families"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().any(|r| r["family"] == "II" && r["equation"] == "(g_II)"));
    assert!(rows.iter().any(|r| {
        r["family"] == "IV3" && r["constraints"].as_str().unwrap().contains("alpha*gamma = 0")
    }));
}

#[test]
fn walker_check_battery_passes() {
    // small grid keeps the run fast; residuals do not depend on grid size
    let out = lorsol(&["walker-check", "--grid", "6"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["passed"], serde_json::json!(true));
    assert!(v["max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn walker_check_single_spec_and_threshold() {
    let dir = std::env::temp_dir().join("lorsol-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("walker.json");
    std::fs::write(
        &spec,
        r#"{"eps": 1.0, "kappa": 1.0, "p": [1.0], "q": [], "lambda": -1.0, "gamma": 0.5, "w0": 0.0, "w0p": 1.0, "grid": 8}"#,
    )
    .unwrap();
    let out = lorsol(&["walker-check", "--input", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["nilpotency"], serde_json::json!(true));
    assert!(v["residual_max"].as_f64().unwrap() < 1e-8);
    // an unreachable threshold flips the exit code to 1
    let out = lorsol(&[
        "walker-check", "--input", spec.to_str().unwrap(), "--tol", "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // CSV export carries the integrated profile
    let out = lorsol(&[
        "walker-check", "--input", spec.to_str().unwrap(), "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("y,w,mu\n"));
    assert_eq!(text.lines().count(), 202);
}

#[test]
fn input_errors_exit_2_with_error_object() {
    // unknown family
    let out = lorsol(&["soliton", "--family", "V", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).expect("structured error");
    assert_eq!(err["error"]["kind"], "parse");

    // malformed JSON input
    let dir = std::env::temp_dir().join("lorsol-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = lorsol(&["soliton", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "json");

    // constraint violation: Ib requires beta != 0
    let out = lorsol(&[
        "soliton", "--family", "Ib", "--alpha", "1", "--beta", "0", "--gamma", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // unknown fields in input documents are rejected (strict parsing)
    let extra = dir.join("extra.json");
    std::fs::write(
        &extra,
        r#"{"metric": [], "brackets": [], "surprise": 1}"#,
    )
    .unwrap();
    let out = lorsol(&["soliton", "--input", extra.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn algebra_document_roundtrip() {
    // family II (alpha=1, beta=1) given as an explicit algebra document
    let dir = std::env::temp_dir().join("lorsol-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let doc = dir.join("alg.json");
    std::fs::write(
        &doc,
        r#"{
            "metric": [[{"a":[1,1],"b":[0,1]}, {"a":[0,1],"b":[0,1]}, {"a":[0,1],"b":[0,1]}],
                       [{"a":[0,1],"b":[0,1]}, {"a":[1,1],"b":[0,1]}, {"a":[0,1],"b":[0,1]}],
                       [{"a":[0,1],"b":[0,1]}, {"a":[0,1],"b":[0,1]}, {"a":[-1,1],"b":[0,1]}]],
            "brackets": [
                {"i":1, "j":2, "k":2, "c": {"a":[1,2],"b":[0,1]}},
                {"i":1, "j":2, "k":3, "c": {"a":[-1,2],"b":[0,1]}},
                {"i":1, "j":3, "k":2, "c": {"a":[-3,2],"b":[0,1]}},
                {"i":1, "j":3, "k":3, "c": {"a":[-1,2],"b":[0,1]}},
                {"i":2, "j":3, "k":1, "c": {"a":[1,1],"b":[0,1]}}
            ],
            "family": "II",
            "params": {"alpha": {"a":[1,1],"b":[0,1]}, "beta": {"a":[1,1],"b":[0,1]}}
        }"#,
    )
    .unwrap();
    let out = lorsol(&["soliton", "--input", doc.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    // (XIIb) at alpha = beta = 1: lambda = -1/2
    assert_eq!(v["particular"]["lambda"]["exact"], "-1/2");
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["curvature", "--family", "IV3", "--alpha", "1", "--beta", "1/2", "--gamma", "0", "--delta", "1r2"],
        vec!["soliton", "--family", "II", "--alpha", "1", "--beta", "1"],
        vec!["walker-check", "--grid", "4"],
        vec!["list-families", "--format", "csv"],
    ] {
        let a = lorsol(&args);
        let b = lorsol(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn csv_rejected_where_unsupported() {
    let out = lorsol(&["segre", "--family", "III", "--alpha", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_input");
}

#[test]
fn output_file_flag_writes_report() {
    let dir = std::env::temp_dir().join("lorsol-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let _ = std::fs::remove_file(&path);
    let out = lorsol(&[
        "segre", "--family", "III", "--alpha", "2", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["segre_type"], "JORDAN_3");
}
