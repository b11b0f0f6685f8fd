use std::process::{Command, Output};

fn gft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gft"))
        .args(args)
        .env("GFT_GRID_PRESET", "fast")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_member_exits_zero() {
    let o = gft(&["classify", "--function", "kp:p=0.5", "--class", "cop:p=0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classification"]["verdict"], "member-consistent");
    assert_eq!(v["oracle"]["verdict"], "concave-consistent");
}

#[test]
fn classify_identity_is_a_violation_near_zero() {
    let o = gft(&["classify", "--function", "identity", "--class", "co"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let report = &v["classification"]["reports"][0];
    assert_eq!(report["verdict"], "violation");
    assert_eq!(report["argmin_z"]["re"], 0.0);
    assert_eq!(report["argmin_z"]["im"], 0.0);
    assert_eq!(report["min_margin"], -2.0);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(gft(&["classify", "--function", "kalpha:alpha=2.5", "--class", "co"]).status.code(), Some(2));
    assert_eq!(gft(&["classify", "--function", "kp:p=0.5", "--class", "cop:p=1.5"]).status.code(), Some(2));
    assert_eq!(gft(&["margins", "--function", "koebe", "--theorem", "thm7"]).status.code(), Some(2));
    assert_eq!(gft(&["margins", "--function", "koebe", "--theorem", "thm1", "--angles", "4"]).status.code(), Some(2));
    assert_eq!(gft(&["margins", "--function", "hyperbolic", "--theorem", "thm1"]).status.code(), Some(2));
    assert_eq!(gft(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn empty_scan_exits_three() {
    let o = gft(&[
        "margins", "--function", "halfplane", "--theorem", "thm1", "--radii", "0.9", "--epsilon", "5", "--no-center",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn margins_csv_and_json() {
    let o = gft(&["margins", "--function", "halfplane", "--theorem", "thm1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("re(z),im(z),margin\n"));
    let o = gft(&["margins", "--function", "kp:p=0.5", "--theorem", "reM:p=0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["function", "theorem", "grid", "samples_used", "samples_excluded", "min_margin", "argmin_z", "verdict"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["radii", "angles", "epsilon", "margin_tol"] {
        assert!(v["grid"].get(key).is_some(), "missing grid.{key}");
    }
    assert_eq!(v["grid"]["angles"], 128);
}

#[test]
fn curve_csv_has_exclusion_column() {
    let o = gft(&["curve", "--function", "halfplane", "--r", "0.99", "--n", "256"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,re(w),im(w),excluded"));
    assert_eq!(lines.next(), Some("0,,,1"));
    assert_eq!(text.lines().count(), 257);
}

#[test]
fn catalog_lists_families() {
    let o = gft(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().any(|f| f["name"] == "kp"));
}

#[test]
fn verify_bundles_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = gft(&["verify", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let x = std::fs::read(a.join("verify.json")).unwrap();
    let y = std::fs::read(b.join("verify.json")).unwrap();
    assert!(!x.is_empty());
    assert_eq!(x, y);
}
