use std::f64::consts::TAU;
use std::path::Path;
use std::process::{Command, Output};

use evac_core::cli::{read_csv, write_csv, SWEEP_HEADER};

fn evac(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_evac"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("EVAC_THREADS", n),
        None => cmd.env_remove("EVAC_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn field(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("{key} missing in {report}"))
        .parse()
        .unwrap()
}

const SMALL_SWEEP: [&str; 7] = ["sweep", "--s-min", "1", "--s-max", "2.5", "--s-step", "0.5"];

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let a = evac(&SMALL_SWEEP, Some("1"));
    let b = evac(&SMALL_SWEEP, Some("3"));
    let c = evac(&SMALL_SWEEP, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn sweep_matches_golden() {
    let out = evac(&SMALL_SWEEP, None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, golden("sweep_1_2.5.csv"));

    let rows = read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 4);
    // spot values from the closed forms
    let bsp1 = 1.0 + 3f64.sqrt() + TAU / 3.0;
    assert!((rows[0].ub_bsp.unwrap() - bsp1).abs() < 1e-6);
    assert!((rows[0].ratio.unwrap() - 1.0).abs() < 1e-4);
    assert!((rows[2].ub_half_chord.unwrap() - (1.0 + TAU) / 2.0).abs() < 1e-6);
    assert_eq!(rows[3].ub_bsp, None);
    assert_eq!(rows[3].lb_bes_antipodal, None);
}

#[test]
fn csv_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let mut args: Vec<&str> = SMALL_SWEEP.to_vec();
    let p = path.to_str().unwrap();
    args.extend(["--output", p]);
    assert!(evac(&args, None).status.success());
    let bytes = std::fs::read(&path).unwrap();
    let rows = read_csv(bytes.as_slice()).unwrap();
    let mut again = Vec::new();
    write_csv(&rows, &mut again).unwrap();
    assert_eq!(again, bytes);
    assert_eq!(read_csv(again.as_slice()).unwrap(), rows);
}

#[test]
fn sweep_json_rows() {
    let out = evac(
        &[
            "sweep", "--s-min", "4", "--s-max", "4.5", "--s-step", "0.5", "--format", "json",
        ],
        None,
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let hc4 = (1.0 + 2.0 * (-0.5f64).acos()) / 4.0 + 0.75f64.sqrt();
    assert!((rows[0]["ub_half_chord"].as_f64().unwrap() - hc4).abs() < 1e-5);
    assert!(rows[0]["ub_bsp"].is_null());
    assert!((rows[1]["lb_bes_antipodal"].as_f64().unwrap() - (1.0 + 1.75f64.sin())).abs() < 1e-6);
    for key in SWEEP_HEADER {
        assert!(rows[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn simulate_reports() {
    let out = evac(&["simulate", "half-chord", "--s", "4"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, golden("simulate_half_chord_4.txt"));
    assert!((field(&text, "evac_time") - 2.163_22).abs() < 1e-4);

    let bsp = evac(&["simulate", "bsp", "--s", "1"], None);
    let bsp = field(&String::from_utf8(bsp.stdout).unwrap(), "evac_time");
    assert!((bsp - 4.826_45).abs() < 1e-4);

    let fc = evac(
        &["simulate", "fast-chord", "--s", "1", "--x3", "6.28318"],
        None,
    );
    let fc = field(&String::from_utf8(fc.stdout).unwrap(), "evac_time");
    assert!((fc - bsp).abs() < 2e-2);
}

#[test]
fn simulate_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let p = path.to_str().unwrap();
    let out = evac(
        &[
            "simulate",
            "bsp",
            "--s",
            "2",
            "--trace",
            p,
            "--trace-step",
            "0.5",
        ],
        None,
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("t,fast_x,fast_y,slow_x,slow_y,explored_fraction")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    // 0, 0.5, ..., 2.5 and the meeting time
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0], vec![0.0; 6]);
    assert_eq!(rows.last().unwrap()[5], 1.0);
    assert!(rows.windows(2).all(|w| w[1][5] >= w[0][5]));
}

#[test]
fn constants_json() {
    let out = evac(&["constants"], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["c_1.71", "c_1.86", "c_2.07", "c_2.75", "c_4.84", "c_4.97"]
    );
    let value = |k: &str| v[k]["value"].as_f64().unwrap();
    assert!((value("c_1.86") - 1.856).abs() < 1e-3);
    assert!((value("c_2.07") - 2.072).abs() < 1e-2);
    assert!((value("c_4.97") - 4.9699).abs() < 1e-3);
    for k in keys {
        assert!(v[k]["residual"].as_f64().unwrap() <= 1e-9, "{k}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| evac(args, None).status.code().unwrap();
    assert_eq!(
        code(&["sweep", "--s-min", "2", "--s-max", "1", "--s-step", "0.1"]),
        2
    );
    assert_eq!(
        code(&["sweep", "--s-min", "1", "--s-max", "9", "--s-step", "0.1"]),
        2
    );
    assert_eq!(code(&["simulate", "zigzag", "--s", "2"]), 2);
    assert_eq!(code(&["simulate", "half-chord", "--s", "0.5"]), 2);
    assert_eq!(
        code(&["simulate", "fast-chord", "--s", "2", "--x3", "9"]),
        2
    );
    assert_eq!(
        code(&["simulate", "fast-chord", "--s", "2", "--x3", "5.27"]),
        3
    );
    assert_eq!(evac(&SMALL_SWEEP, Some("zero")).status.code(), Some(2));
}
