//! Acceptance criteria 1-8, one line each.
//!
//! Runs the default suite configuration twice; the first run supplies
//! criteria 1-7 and the byte comparison of both runs is criterion 8.
//!
//! A failing criterion is printed as FAIL. The process exits nonzero unless
//! every failing check is listed in `KNOWN_RED`.

use std::process::ExitCode;

use harmsum::suite::{run_report, tolerances, Criterion, SuiteConfig};
use serde_json::Value;

/// Checks known to be outside tolerance at the default configuration:
/// `(criterion name, order, field)`.
const KNOWN_RED: &[(&str, u64, &str)] = &[("series-limits", 4, "partial_sum_pass")];

struct Line {
    index: usize,
    label: &'static str,
    pass: bool,
    summary: String,
    unexpected: Vec<String>,
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn sweep_summary(c: &Criterion) -> String {
    let d = &c.details;
    format!("{} cases, {} failed (n <= {}, r <= {})", d["cases"], d["failed"], d["n_max"], d["r_max"])
}

fn series_failures(c: &Criterion) -> Vec<(u64, &'static str)> {
    let mut out = Vec::new();
    for row in c.details["orders"].as_array().into_iter().flatten() {
        let r = row["r"].as_u64().unwrap_or(u64::MAX);
        for field in ["partial_sum_pass", "estimate_pass"] {
            if row[field] != Value::Bool(true) {
                out.push((r, field));
            }
        }
    }
    out
}

fn line_for(index: usize, label: &'static str, c: &Criterion) -> Line {
    let d = &c.details;
    let summary = match c.name.as_str() {
        "finite-identity-at-zero" | "finite-identity-random-x" => sweep_summary(c),
        "symbolic-fidelity" => format!(
            "reference expansions s=2..5, Bell equivalence / partition counts r <= {}, Bell numbers r <= {}",
            d["orders"].as_array().map_or(0, Vec::len),
            tolerances::BELL_ENUMERATION_MAX
        ),
        "worked-examples" => format!("{} exact comparisons, {} failed (n <= {})", d["cases"], d["failed"], d["n_max"]),
        "series-limits" => {
            let rows: Vec<String> = d["orders"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|row| {
                    format!(
                        "r={} raw {:.2e} est {:.2e}",
                        row["r"],
                        num(&row["partial_rel_dev"]),
                        num(&row["estimate_rel_dev"])
                    )
                })
                .collect();
            let sq = &d["squared_second_order_variant"];
            format!(
                "N={}: {}; squared variant -> {:.6} (converges to 6: {}); tolerances raw {} / corrected {}",
                d["terms"],
                rows.join(", "),
                num(&sq["estimate"]),
                sq["converges_to_6"],
                tolerances::RAW_SERIES_REL,
                tolerances::TAIL_SERIES_REL
            )
        }
        "float-exact-terms" => {
            let worst = d["orders"].as_array().into_iter().flatten().map(|r| num(&r["max_rel_error"])).fold(0.0, f64::max);
            format!("max relative error {worst:.2e} (tolerance {:e}, n <= {})", tolerances::TERM_REL, d["n_max"])
        }
        "quadrature" => format!(
            "max relative error F {:.2e}, log-power {:.2e}, 2-d {:.2e} (tolerance {:e})",
            num(&d["max_rel_error_f"]),
            num(&d["max_rel_error_logpow"]),
            num(&d["max_rel_error_2d"]),
            tolerances::QUAD_REL
        ),
        _ => String::new(),
    };

    let mut unexpected = Vec::new();
    if !c.passed() {
        if c.name == "series-limits" {
            for (r, field) in series_failures(c) {
                if !KNOWN_RED.contains(&(c.name.as_str(), r, field)) {
                    unexpected.push(format!("{} r={r} {field}", c.name));
                }
            }
            if d["squared_second_order_variant"]["converges_to_6"] != Value::Bool(false) {
                unexpected.push("squared variant not excluded".to_string());
            }
        } else {
            unexpected.push(c.name.clone());
        }
    }
    Line { index, label, pass: c.passed(), summary, unexpected }
}

fn main() -> ExitCode {
    let config = SuiteConfig::default();
    let quiet = |_: &str| {};
    let first = run_report(&config, &quiet).expect("default configuration is valid");
    let second = run_report(&config, &quiet).expect("default configuration is valid");
    let (a, b) = (first.to_json(), second.to_json());

    let labels = [
        "exact identity at x = 0",
        "exact identity at random x",
        "symbolic fidelity",
        "worked examples",
        "series limits",
        "float/exact terms",
        "quadrature",
    ];
    assert_eq!(first.criteria.len(), labels.len());
    let mut lines: Vec<Line> = first
        .criteria
        .iter()
        .zip(labels)
        .enumerate()
        .map(|(i, (c, label))| line_for(i + 1, label, c))
        .collect();
    let same = a == b;
    lines.push(Line {
        index: 8,
        label: "determinism",
        pass: same,
        summary: format!("two reports, {} bytes, identical: {same}", a.len()),
        unexpected: if same { vec![] } else { vec!["determinism".into()] },
    });

    let mut unexpected = Vec::new();
    for l in &lines {
        println!(
            "criterion {} {:<28} {}  {}",
            l.index,
            l.label,
            if l.pass { "PASS" } else { "FAIL" },
            l.summary
        );
        unexpected.extend(l.unexpected.iter().cloned());
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!("acceptance: {} passed, {} failed", lines.len() - failed, failed);
    if !KNOWN_RED.is_empty() && failed > 0 {
        for (name, r, field) in KNOWN_RED {
            println!("known out-of-tolerance check: {name} r={r} {field}");
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
