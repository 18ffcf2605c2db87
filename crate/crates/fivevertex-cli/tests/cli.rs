//! End-to-end tests of the command-line interface: flags, report
//! schemas, exit codes and determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fivevertex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

#[test]
fn compute_hypergeometric_route() {
    let out = run(&[
        "compute", "--L", "2", "--M", "2", "--N", "1", "--x", "4/1", "--alpha", "1/1", "--delta",
        "1/1", "--method", "hypergeom",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["z"], "6/1");
    assert_eq!(report["method"], "hypergeom");
}

#[test]
fn compute_cross_check_on_closed_form_boundary() {
    // N = 0 collapses to a closed form; every route must agree
    let out = run(&[
        "compute", "--L", "3", "--M", "2", "--N", "0", "--u", "5/2", "--cross-check",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["method_independent"], true);
    let cases = report["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 6);
    assert!(cases.iter().all(|c| c["pass"] == true));
}

#[test]
fn compute_rejects_coincident_rapidities() {
    let out = run(&[
        "compute", "--L", "2", "--M", "2", "--N", "1", "--method", "theorem1", "--u-list",
        "2/1,2/1", "--xi-list", "1/1,3/1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("distinct"), "stderr: {err}");
}

#[test]
fn compute_inhomogeneous_routes_agree() {
    let out = run(&[
        "compute", "--L", "2", "--M", "2", "--N", "1", "--u-list", "2/1,3/1", "--xi-list",
        "1/1,5/1", "--cross-check",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["z"], "611/150");
    assert_eq!(report["cases"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_sigma_form_single_geometry() {
    let out = run(&[
        "verify", "--suite", "painleve", "--L", "2", "--M", "2", "--N", "1",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["all_pass"], true);
    assert_eq!(report["cases"][0]["actual"], "0/1");
}

#[test]
fn verify_intertwiner_family_filter() {
    let out = run(&["verify", "--suite", "rll", "--solution", "four-vertex", "--seed", "7"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["all_pass"], true);
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_are_byte_identical_for_equal_seeds() {
    let args = [
        "verify", "--suite", "appendix-b", "--seed", "11", "--draws", "3",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn table_row_count_and_round_trip() {
    let base = [
        "table", "--L", "3", "--M", "3", "--N", "1", "--x-grid", "2..5", "--decimals", "6",
    ];
    let json_out = run(&base);
    assert!(json_out.status.success());
    let report = json_of(&json_out);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);

    let mut csv_args = base.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv_out = run(&csv_args);
    assert!(csv_out.status.success());
    let text = stdout_of(&csv_out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let x_pos = header.iter().position(|h| *h == "x").unwrap();
    let sigma_pos = header.iter().position(|h| *h == "sigma").unwrap();
    let coeff_pos = header.iter().position(|h| *h == "z_coefficient").unwrap();
    for (line, row) in lines.zip(rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[x_pos], row["x"].as_str().unwrap());
        assert_eq!(fields[sigma_pos], row["sigma"].as_str().unwrap());
        assert_eq!(fields[coeff_pos], row["z_coefficient"].as_str().unwrap());
    }
}

#[test]
fn table_exact_value_appears_at_square_grid_points() {
    let out = run(&[
        "table", "--L", "3", "--M", "3", "--N", "1", "--x-grid", "4/1,9/1",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    for row in report["rows"].as_array().unwrap() {
        assert!(row["z"].is_string(), "square x must collapse: {row}");
    }
}

#[test]
fn table_rejects_pole_grid() {
    let out = run(&["table", "--L", "2", "--M", "2", "--N", "1", "--x-grid", "0..3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_matches_box_formula() {
    let out = run(&["count", "--L", "4", "--M", "4", "--N", "2"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["configurations"], 20);
    assert_eq!(report["monotone_arrays"], 20);
    assert_eq!(report["box_product"], "20");
    assert_eq!(report["all_equal"], true);

    let out = run(&["count", "--L", "3", "--M", "3", "--N", "0"]);
    assert_eq!(json_of(&out)["configurations"], 1);

    // A = 0 forces the empty diagram
    let out = run(&["count", "--L", "2", "--M", "3", "--N", "2"]);
    assert_eq!(json_of(&out)["configurations"], 1);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("fivevertex-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("compute.json");
    std::fs::write(
        &path,
        r#"{ "L": 2, "M": 2, "N": 1, "x": "4/1", "method": "hypergeom" }"#,
    )
    .unwrap();
    let out = run(&["compute", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["z"], "6/1");

    // explicit flag wins over the file
    let out = run(&[
        "compute", "--config", path.to_str().unwrap(), "--method", "hankel-explicit",
    ]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["method"], "hankel-explicit");
    assert_eq!(report["z"], "6/1");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compute_without_rapidity_is_invalid() {
    let out = run(&["compute", "--L", "2", "--M", "2", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
