use std::process::{Command, Output};

use num_complex::Complex64;
use schwarz::bounds::{theorem31_bound_at, BoundResult};
use schwarz::disks::second_derivative_disk;
use schwarz::{Disk, FunctionExpr, PrescribedData, UnitDiskPoint};

fn schwarz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schwarz"))
        .args(args)
        .env_remove("THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn second_disk_json_round_trips() {
    let o = schwarz(&[
        "disk", "second", "--z0", "0.5,0", "--delta0", "0.3,0", "--delta1", "0.2,0", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d: Disk = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((d.center.re - 0.2847289).abs() < 1e-7);
    assert!((d.radius - 3.1061333).abs() < 1e-7);
    let data = PrescribedData::new(
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::new(0.2, 0.0),
    )
    .unwrap();
    let lib = second_derivative_disk(&data);
    assert!((d.center - lib.center).norm() <= 1e-12);
    assert!((d.radius - lib.radius).abs() <= 1e-12);
}

#[test]
fn szasz_text_output() {
    let o = schwarz(&["bound", "szasz", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3.78125");
}

#[test]
fn thm31_json_round_trips() {
    let o = schwarz(&[
        "bound", "thm31", "--z0", "-0.3,0.4", "--delta0", "0.1,-0.6", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let got: BoundResult = serde_json::from_str(&stdout(&o)).unwrap();
    let lib = theorem31_bound_at(
        UnitDiskPoint::new(Complex64::new(-0.3, 0.4)).unwrap(),
        UnitDiskPoint::new(Complex64::new(0.1, -0.6)).unwrap(),
    )
    .unwrap();
    assert!((got.value - lib.value).abs() <= 1e-12);
    assert_eq!(got.branch, lib.branch);
    assert!(stdout(&o).contains("\"branch\":\"rR1_branch\""));
}

#[test]
fn invalid_input_exits_two() {
    let o = schwarz(&["disk", "dieudonne", "--z0", "0.5,0", "--w0", "0.6,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("|w0|"));

    let o = schwarz(&["disk", "schwarz-pick", "--z0", "0.5;0", "--delta0", "0,0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = schwarz(&["disk", "schwarz-pick", "--z0", "1.5,0", "--delta0", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("z0"));

    let o = schwarz(&["bound", "thm31", "--r", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_csv_header() {
    let o = schwarz(&[
        "bound", "table", "--r-grid", "0,0.5", "--R-grid", "0,0.9", "--csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,R,thm31,ruscheweyh2,szasz,branch"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn emitted_extremal_matches_library() {
    let o = schwarz(&[
        "extremal",
        "emit",
        "--kind",
        "thm31-deg2",
        "--r",
        "0.5",
        "--R",
        "0.25",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let f: FunctionExpr = serde_json::from_str(&stdout(&o)).unwrap();
    let jet = f.eval_jet(UnitDiskPoint::from_re(0.5).unwrap()).unwrap();
    assert!((jet.f0.norm() - 0.25).abs() < 1e-12);
    assert!((jet.f2.norm() - 3.6111111).abs() < 1e-7);
}

#[test]
fn extremal_verify_reports_status() {
    let o = schwarz(&[
        "extremal",
        "verify",
        "--kind",
        "szasz",
        "--r",
        "0.5",
        "--json",
        "--emit-function",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(doc["function"].is_object());

    let o = schwarz(&[
        "extremal",
        "verify",
        "--kind",
        "thm21-boundary",
        "--z0",
        "0.5,0",
        "--delta0",
        "0.3,0",
        "--delta1",
        "0.2,0",
        "--alpha",
        "0.99,0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn interior_alpha_counts_as_violation() {
    let o = schwarz(&[
        "verify",
        "attainment",
        "--kind",
        "thm21-boundary",
        "--alpha-scale",
        "0.99",
        "--samples",
        "20",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["violations"], 20);
    assert!(doc["worst_margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "verify",
        "membership",
        "--seed",
        "7",
        "--samples",
        "300",
        "--json",
    ];
    let a = schwarz(&args);
    let b = schwarz(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let parallel = Command::new(env!("CARGO_BIN_EXE_schwarz"))
        .args(args)
        .arg("--parallel")
        .env("THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, parallel.stdout);
    assert!(!stdout(&a).contains("wall_time"));
}

#[test]
fn empty_run_reports_null_margin() {
    let o = schwarz(&[
        "verify",
        "membership",
        "--suite",
        "thm21",
        "--samples",
        "0",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc["worst_margin"].is_null());
}

#[test]
fn tightness_with_function() {
    let o = schwarz(&[
        "verify",
        "tightness",
        "--r",
        "0.5",
        "--R",
        "0.9",
        "--samples",
        "400",
        "--json",
        "--emit-function",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let best = doc["report"]["tightness"]["best"].as_f64().unwrap();
    assert!((best - 0.9457778).abs() < 1e-6);
    let f: FunctionExpr = serde_json::from_value(doc["function"].clone()).unwrap();
    let g2 = f
        .eval_jet(UnitDiskPoint::from_re(0.5).unwrap())
        .unwrap()
        .f2
        .norm();
    assert!((g2 - best).abs() < 1e-12);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("schwarz-cli-{}.json", std::process::id()));
    let o = schwarz(&[
        "bound",
        "ruscheweyh",
        "--r",
        "0.5",
        "--R",
        "0",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let b: BoundResult = serde_json::from_str(&text).unwrap();
    assert!((b.value - 16.0 / 3.0).abs() < 1e-12);
}
