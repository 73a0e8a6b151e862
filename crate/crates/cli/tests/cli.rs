use std::path::PathBuf;
use std::process::{Command, Output};

fn harmsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmsum")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

// Small enough to finish in a few seconds.
const SMALL: &[&str] = &["--x-samples", "3", "--series-terms", "20000", "--tail-window", "200"];
const SMALL_GRID: &[&str] = &["--n-max", "6", "--r-max", "4"];

#[test]
fn expand_prints_polynomials() {
    let out = harmsum(&["expand", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "b0^2 + b1");

    let out = harmsum(&["expand", "--r", "4"]);
    assert_eq!(stdout(&out).trim(), "b0^4 + 6 b0^2 b1 + 4 b0 b2 + 3 b1^2 + b3");
}

#[test]
fn expand_evaluates() {
    let out = harmsum(&["expand", "--r", "1", "--eval", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "b0 = -4/3");

    // n alone means x = 0.
    let out = harmsum(&["expand", "--r", "1", "--eval", "1"]);
    assert_eq!(stdout(&out).trim(), "b0 = -4/3");
}

#[test]
fn expand_rejects_pole_and_bad_order() {
    assert_eq!(harmsum(&["expand", "--r", "2", "--eval", "2,-5"]).status.code(), Some(2));
    assert_eq!(harmsum(&["expand", "--r", "0"]).status.code(), Some(2));
    assert_eq!(harmsum(&["expand", "--r", "2", "--eval", "x,0"]).status.code(), Some(2));
}

#[test]
fn verify_smallest_grid() {
    let out = harmsum(&["verify", "--n-max", "1", "--r-max", "1", "--x-samples", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n=1 r=1 x=0/1 alternating_sum=-8/9 closed_form_times_f=-8/9 jet=-8/9 status=pass"));
    assert!(text.contains("summary: 2 cases, 2 passed, 0 failed"));
}

#[test]
fn verify_with_random_and_explicit_points() {
    let out = harmsum(&["verify", "--n-max", "4", "--r-max", "3", "--x-samples", "5", "--x", "1/3", "--x", "-1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // x = 0 and two explicit points over n <= 4, five random points, r <= 3.
    assert!(text.contains(&format!("summary: {} cases", (3 + 5) * 4 * 4)));
    assert!(text.contains("x=-1/2"));
}

#[test]
fn verify_json_and_csv() {
    let out = harmsum(&["verify", "--n-max", "2", "--r-max", "2", "--x-samples", "0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["reports"][1]["methods"][0]["value"], "-8/9");

    let out = harmsum(&["verify", "--n-max", "2", "--r-max", "2", "--x-samples", "0", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("check,n,r,x,"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn verify_pole_and_bad_flags_exit_2() {
    assert_eq!(harmsum(&["verify", "--x", "-3"]).status.code(), Some(2));
    assert_eq!(harmsum(&["verify", "--x", "1/0"]).status.code(), Some(2));
    assert_eq!(harmsum(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(harmsum(&["verify", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn series_small_run_is_informational() {
    let out = harmsum(&["series", "--r", "1", "--terms", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("target      -2"));
    assert!(!text.contains("estimate"));
}

#[test]
fn series_csv_checkpoints() {
    let out = harmsum(&["series", "--r", "0", "--terms", "100", "--format", "csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,term,partial_sum");
    let ns: Vec<&str> = lines[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ns, ["1", "2", "5", "10", "20", "50", "100"]);
    let first: Vec<f64> = lines[1].split(',').skip(1).map(|s| s.parse().unwrap()).collect();
    assert!((first[0] - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(first[0], first[1]);
}

#[test]
fn series_r4_tail_estimate() {
    let out = harmsum(&["series", "--r", "4", "--terms", "1000000", "--tail-fit", "1000", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["target"], "120");
    let est = v["tail_estimate"]["value"].as_f64().unwrap();
    assert!((est - 120.0).abs() / 120.0 < 0.005, "{est}");
}

#[test]
fn series_bad_tail_window() {
    assert_eq!(harmsum(&["series", "--r", "1", "--terms", "500", "--tail-fit", "1000"]).status.code(), Some(2));
    assert_eq!(harmsum(&["series", "--r", "1", "--terms", "5000", "--tail-fit", "10"]).status.code(), Some(2));
}

#[test]
fn report_is_byte_identical_across_runs() {
    let (p1, p2) = (scratch("report-a.json"), scratch("report-b.json"));
    let mut args1 = vec!["report", "--out", p1.to_str().unwrap()];
    args1.extend_from_slice(SMALL);
    args1.extend_from_slice(SMALL_GRID);
    let mut args2 = vec!["report", "--out", p2.to_str().unwrap()];
    args2.extend_from_slice(SMALL);
    args2.extend_from_slice(SMALL_GRID);
    let (o1, o2) = (harmsum(&args1), harmsum(&args2));
    assert_eq!(o1.status.code(), o2.status.code());
    let (a, b) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);

    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["suite"], "harmsum-acceptance");
    assert_eq!(v["config"]["n_max"], 6);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 7);
    for c in criteria {
        assert!(c["status"] == "pass" || c["status"] == "fail");
    }
    let passed = v["summary"]["passed"].as_u64().unwrap();
    let failed = v["summary"]["failed"].as_u64().unwrap();
    assert_eq!(passed + failed, 7);
    assert_eq!(o1.status.code(), Some(if failed == 0 { 0 } else { 1 }));
}

#[test]
fn report_seed_changes_random_points() {
    let mut a = vec!["report", "--seed", "1"];
    a.extend_from_slice(SMALL);
    a.extend_from_slice(SMALL_GRID);
    let mut b = vec!["report", "--seed", "2"];
    b.extend_from_slice(SMALL);
    b.extend_from_slice(SMALL_GRID);
    let (va, vb): (serde_json::Value, serde_json::Value) = (
        serde_json::from_slice(&harmsum(&a).stdout).unwrap(),
        serde_json::from_slice(&harmsum(&b).stdout).unwrap(),
    );
    assert_ne!(va["criteria"][1]["details"]["points"], vb["criteria"][1]["details"]["points"]);
}

#[test]
fn report_includes_bell_results_at_r12() {
    let mut args = vec!["report"];
    args.extend_from_slice(SMALL);
    args.extend_from_slice(&["--r-max", "12", "--n-max", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&harmsum(&args).stdout).unwrap();
    let orders = v["criteria"][2]["details"]["orders"].as_array().unwrap();
    assert_eq!(orders.len(), 12);
    assert!(orders.iter().all(|o| o["bell_equal"] == true));
}

#[test]
fn report_unwritable_path_exit_2() {
    let out = harmsum(&["report", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_invalid_config_exit_2() {
    assert_eq!(harmsum(&["report", "--tail-window", "5"]).status.code(), Some(2));
}
