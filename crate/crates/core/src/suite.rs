//! Suite configuration, the verification sweep and the JSON acceptance
//! report behind the `harmsum` CLI.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::harmonic::check_pole;
use crate::oracles::{bell_number_by_enumeration, partition_count};
use crate::quadrature::{quad_2d, quad_f, quad_logpow};
use crate::series::{exact_series_term, run_series, tail_corrected_sum, tail_corrected_sum_of, target};
use crate::symbolic::{bell_poly, f_poly, BetaMonomial, BetaPolynomial, FPolyCache};
use crate::verify::{alt_sum_deriv, closed_F, verify_classics, verify_examples, verify_orders, VerificationReport};

/// Exit thresholds for every acceptance criterion.
pub mod tolerances {
    /// Raw partial sums at the configured N, relative to `(-1)^r (r+1)!`.
    pub const RAW_SERIES_REL: f64 = 0.05;
    /// Tail-corrected estimates, relative to `(-1)^r (r+1)!`.
    pub const TAIL_SERIES_REL: f64 = 0.005;
    /// Highest series order checked against its target.
    pub const SERIES_MAX_ORDER: u32 = 4;
    /// Floating series terms against their exact values.
    pub const TERM_REL: f64 = 1e-12;
    pub const TERM_MAX_N: u64 = 50;
    pub const TERM_MAX_ORDER: u32 = 6;
    /// Quadrature against the exact closed forms.
    pub const QUAD_REL: f64 = 1e-8;
    pub const QUAD_MAX_N: u32 = 30;
    pub const QUAD_MAX_ORDER: u32 = 4;
    /// Random-x sweep bounds.
    pub const RANDOM_X_MAX_N: u64 = 30;
    pub const RANDOM_X_MAX_ORDER: u32 = 6;
    /// Worked-example and low-order identity range.
    pub const EXAMPLES_MAX_N: u64 = 100;
    /// Bell-polynomial equivalence is checked at least this far.
    pub const BELL_MIN_ORDER: u32 = 12;
    /// Bell numbers are enumerated up to this order.
    pub const BELL_ENUMERATION_MAX: u32 = 10;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub n_max: u64,
    pub r_max: u32,
    pub x_samples: usize,
    pub series_terms: u64,
    pub tail_window: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 200,
            r_max: 8,
            x_samples: 100,
            series_terms: 1_000_000,
            tail_window: 1000,
            seed: 0x5eed,
            format: OutputFormat::Text,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.series_terms == 0 {
            return Err(Error::InvalidArgument("n_max and series_terms must be positive".into()));
        }
        if self.tail_window < 100 || self.tail_window as u64 >= self.series_terms {
            return Err(Error::InvalidArgument(format!(
                "tail window must satisfy 100 <= M < N (M = {}, N = {})",
                self.tail_window, self.series_terms
            )));
        }
        Ok(())
    }
}

/// `x = p/q` with `q` in `[1, 64]`, `p` in `[-q, 10q]`, drawn from a ChaCha8
/// stream seeded by `seed`; poles for any `n <= max_n` are redrawn.
pub fn random_points(seed: u64, count: usize, max_n: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q: i64 = rng.gen_range(1..=64);
        let p: i64 = rng.gen_range(-q..=10 * q);
        let x = Rational::frac(p, q);
        if check_pole(max_n, &x).is_ok() {
            out.push(x);
        }
    }
    out
}

/// Every report of a verification sweep, in deterministic order.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub reports: Vec<VerificationReport>,
    pub passed: usize,
    pub failed: usize,
}

impl SweepResult {
    fn new(reports: Vec<VerificationReport>) -> Self {
        let passed = reports.iter().filter(|r| r.passed()).count();
        let failed = reports.len() - passed;
        SweepResult { reports, passed, failed }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Three-way check over `1 <= n <= n_max`, `0 <= r <= r_max` at each `x`.
pub fn sweep(n_range: std::ops::RangeInclusive<u64>, r_max: u32, points: &[Rational]) -> SweepResult {
    let cache = FPolyCache::new(r_max);
    let cases: Vec<(u64, &Rational)> = points
        .iter()
        .flat_map(|x| n_range.clone().map(move |n| (n, x)))
        .collect();
    let reports: Vec<VerificationReport> = cases
        .par_iter()
        .flat_map_iter(|&(n, x)| verify_orders(n, r_max, x, &cache))
        .collect();
    SweepResult::new(reports)
}

/// The `verify` command's grid: `x = 0` over the full range plus every
/// explicit and random point over the reduced range.
pub fn run_verification(config: &SuiteConfig, explicit: &[Rational], progress: &dyn Fn(&str)) -> Result<SweepResult> {
    for x in explicit {
        check_pole(config.n_max, x)?;
    }
    let zero = sweep(1..=config.n_max, config.r_max, &[Rational::zero()]);
    progress(&format!("x = 0 grid: {} cases, {} failed", zero.reports.len(), zero.failed));
    let mut reports = zero.reports;
    if !explicit.is_empty() {
        let extra = sweep(1..=config.n_max, config.r_max, explicit);
        progress(&format!("explicit x: {} cases, {} failed", extra.reports.len(), extra.failed));
        reports.extend(extra.reports);
    }
    if config.x_samples > 0 {
        let n_max = config.n_max.min(tolerances::RANDOM_X_MAX_N);
        let r_max = config.r_max.min(tolerances::RANDOM_X_MAX_ORDER);
        let points = random_points(config.seed, config.x_samples, n_max);
        let random = sweep(1..=n_max, r_max, &points);
        progress(&format!("random x: {} cases, {} failed", random.reports.len(), random.failed));
        reports.extend(random.reports);
    }
    Ok(SweepResult::new(reports))
}

/// `f64` that serialises as a JSON number with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Float17(pub f64);

impl Serialize for Float17 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(serializer)
        } else {
            serializer.serialize_none()
        }
    }
}

/// [`Float17`] as a JSON value.
pub fn f17(x: f64) -> Value {
    serde_json::to_value(Float17(x)).expect("finite or null")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub name: String,
    pub status: CriterionStatus,
    pub details: Value,
}

impl Criterion {
    fn new(name: &str, pass: bool, details: Value) -> Self {
        Criterion {
            name: name.to_string(),
            status: if pass { CriterionStatus::Pass } else { CriterionStatus::Fail },
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CriterionStatus::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub criteria: Vec<Criterion>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

const FAILURE_SAMPLE: usize = 5;

fn sweep_details(result: &SweepResult) -> Value {
    let failures: Vec<String> = result
        .reports
        .iter()
        .filter(|r| !r.passed())
        .take(FAILURE_SAMPLE)
        .map(VerificationReport::to_record_line)
        .collect();
    json!({
        "cases": result.reports.len(),
        "passed": result.passed,
        "failed": result.failed,
        "first_failures": failures,
    })
}

/// Exact three-way agreement at `x = 0` over the configured grid.
pub fn criterion_finite_identity(config: &SuiteConfig) -> Criterion {
    let result = sweep(1..=config.n_max, config.r_max, &[Rational::zero()]);
    let mut details = sweep_details(&result);
    details["n_max"] = json!(config.n_max);
    details["r_max"] = json!(config.r_max);
    Criterion::new("finite-identity-at-zero", result.all_passed(), details)
}

/// Exact three-way agreement at seeded random rational points.
pub fn criterion_random_points(config: &SuiteConfig) -> Criterion {
    let n_max = config.n_max.min(tolerances::RANDOM_X_MAX_N);
    let r_max = config.r_max.min(tolerances::RANDOM_X_MAX_ORDER);
    let points = random_points(config.seed, config.x_samples, n_max);
    let result = sweep(1..=n_max, r_max, &points);
    let mut details = sweep_details(&result);
    details["points"] = json!(points.iter().map(Rational::to_fraction_string).collect::<Vec<_>>());
    details["n_max"] = json!(n_max);
    details["r_max"] = json!(r_max);
    Criterion::new("finite-identity-random-x", result.all_passed() && !points.is_empty(), details)
}

fn bp(terms: &[(i64, &[(usize, u32)])]) -> BetaPolynomial {
    BetaPolynomial::from_terms(terms.iter().map(|&(c, m)| (BetaMonomial::from_pairs(m), BigInt::from(c))))
}

/// `f_2` through `f_5` written out term by term, independent of the
/// recurrence.
pub fn reference_expansions() -> Vec<(u32, BetaPolynomial)> {
    vec![
        (2, bp(&[(1, &[(0, 2)]), (1, &[(1, 1)])])),
        (3, bp(&[(1, &[(0, 3)]), (3, &[(0, 1), (1, 1)]), (1, &[(2, 1)])])),
        (
            4,
            bp(&[
                (1, &[(0, 4)]),
                (6, &[(0, 2), (1, 1)]),
                (3, &[(1, 2)]),
                (4, &[(0, 1), (2, 1)]),
                (1, &[(3, 1)]),
            ]),
        ),
        (
            5,
            bp(&[
                (1, &[(0, 5)]),
                (10, &[(0, 3), (1, 1)]),
                (10, &[(0, 2), (2, 1)]),
                (15, &[(0, 1), (1, 2)]),
                (5, &[(0, 1), (3, 1)]),
                (10, &[(1, 1), (2, 1)]),
                (1, &[(4, 1)]),
            ]),
        ),
    ]
}

/// Symbolic checks on the recurrence polynomials.
pub fn criterion_symbolic(config: &SuiteConfig) -> Criterion {
    let max_r = config.r_max.max(tolerances::BELL_MIN_ORDER);
    let cache = FPolyCache::new(max_r);

    let reference: Vec<Value> = reference_expansions()
        .into_iter()
        .map(|(s, p)| {
            json!({ "s": s, "expected": p.to_string(), "computed": cache.get(s).to_string(), "match": cache.get(s) == &p })
        })
        .collect();
    let reference_ok = reference.iter().all(|v| v["match"] == json!(true));

    let mut bell_ok = true;
    let mut count_ok = true;
    let mut weight_ok = true;
    let mut rows = Vec::new();
    for r in 1..=max_r {
        let f = cache.get(r);
        let same = f == &bell_poly(r);
        let partitions = partition_count(r);
        let count_match = BigInt::from(f.len()) == partitions;
        let homogeneous = f.homogeneous_weight() == Some(r);
        bell_ok &= same;
        count_ok &= count_match;
        weight_ok &= homogeneous;
        rows.push(json!({
            "r": r,
            "bell_equal": same,
            "monomials": f.len(),
            "partitions": partitions.to_string(),
            "weight_homogeneous": homogeneous,
        }));
    }

    let mut ones_ok = true;
    let mut bell_numbers = Vec::new();
    for r in 1..=tolerances::BELL_ENUMERATION_MAX {
        let ones = vec![Rational::one(); r as usize];
        let value = cache.get(r).evaluate_with(&ones);
        let enumerated = bell_number_by_enumeration(r);
        let ok = value == Rational::integer(enumerated);
        ones_ok &= ok;
        bell_numbers.push(json!({ "r": r, "substituted": value.to_string(), "enumerated": enumerated, "match": ok }));
    }

    Criterion::new(
        "symbolic-fidelity",
        reference_ok && bell_ok && count_ok && weight_ok && ones_ok,
        json!({
            "reference_expansions": reference,
            "orders": rows,
            "bell_numbers": bell_numbers,
        }),
    )
}

/// Worked third/fourth-order identities plus the three low-order ones.
pub fn criterion_examples() -> Criterion {
    let reports: Vec<VerificationReport> = (1..=tolerances::EXAMPLES_MAX_N)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut v = verify_examples(n);
            v.extend(verify_classics(n));
            v
        })
        .collect();
    let result = SweepResult::new(reports);
    let sample: Vec<String> = result
        .reports
        .iter()
        .filter(|r| r.n == 1)
        .map(VerificationReport::to_record_line)
        .collect();
    let mut details = sweep_details(&result);
    details["n_max"] = json!(tolerances::EXAMPLES_MAX_N);
    details["n1_records"] = json!(sample);
    Criterion::new("worked-examples", result.all_passed(), details)
}

/// Series limits for `r <= 4`, raw and tail-corrected, plus the squared
/// variant of the second-order bracket, which must not reach 6.
pub fn criterion_series(config: &SuiteConfig, progress: &dyn Fn(&str)) -> Criterion {
    let orders: Vec<u32> = (0..=tolerances::SERIES_MAX_ORDER).collect();
    let results: Vec<(u32, Result<crate::series::TailEstimate>)> = orders
        .par_iter()
        .map(|&r| (r, tail_corrected_sum(r, config.series_terms, config.tail_window)))
        .collect();
    let mut all_ok = true;
    let mut rows = Vec::new();
    for (r, res) in results {
        let goal = target(r).to_f64().expect("small");
        match res {
            Ok(est) => {
                let raw_dev = ((est.partial_sum - goal) / goal).abs();
                let tail_dev = ((est.value - goal) / goal).abs();
                let raw_ok = raw_dev <= tolerances::RAW_SERIES_REL;
                let tail_ok = tail_dev <= tolerances::TAIL_SERIES_REL;
                all_ok &= raw_ok && tail_ok;
                progress(&format!("series r={r}: estimate {:.9} (target {goal})", est.value));
                rows.push(json!({
                    "r": r,
                    "target": target(r).to_string(),
                    "partial_sum": f17(est.partial_sum),
                    "partial_rel_dev": f17(raw_dev),
                    "estimate": f17(est.value),
                    "estimate_rel_dev": f17(tail_dev),
                    "uncertainty": f17(est.uncertainty),
                    "within_uncertainty": (est.value - goal).abs() <= est.uncertainty,
                    "partial_sum_pass": raw_ok,
                    "estimate_pass": tail_ok,
                }));
            }
            Err(e) => {
                all_ok = false;
                rows.push(json!({ "r": r, "error": e.to_string(), "partial_sum_pass": false, "estimate_pass": false }));
            }
        }
    }

    // b0^2 + b1^2: the second bracket squared instead of to the first power.
    let squared = bp(&[(1, &[(0, 2)]), (1, &[(1, 2)])]);
    let squared_row = match tail_corrected_sum_of(&squared, 2, config.series_terms, config.tail_window) {
        Ok(est) => {
            let dev = ((est.value - 6.0) / 6.0).abs();
            let excluded = dev > tolerances::TAIL_SERIES_REL;
            json!({
                "bracket": squared.to_string(),
                "estimate": f17(est.value),
                "rel_dev_from_6": f17(dev),
                "uncertainty": f17(est.uncertainty),
                "converges_to_6": !excluded,
            })
        }
        Err(e) => json!({ "bracket": squared.to_string(), "error": e.to_string() }),
    };
    let adjudicated = squared_row["converges_to_6"] == json!(false);

    Criterion::new(
        "series-limits",
        all_ok && adjudicated,
        json!({
            "terms": config.series_terms,
            "tail_window": config.tail_window,
            "raw_tolerance": f17(tolerances::RAW_SERIES_REL),
            "tail_tolerance": f17(tolerances::TAIL_SERIES_REL),
            "orders": rows,
            "squared_second_order_variant": squared_row,
        }),
    )
}

/// Largest relative gap between floating and exact series terms.
pub fn max_term_error(max_n: u64, max_r: u32) -> Vec<(u32, f64)> {
    let samples: Vec<u64> = (1..=max_n).collect();
    (0..=max_r)
        .into_par_iter()
        .map(|r| {
            let run = run_series(&f_poly(r), max_n, &[], &samples);
            let worst = run
                .samples
                .iter()
                .map(|&(n, t)| {
                    let exact = exact_series_term(n, r).to_f64();
                    ((t - exact) / exact).abs()
                })
                .fold(0.0, f64::max);
            (r, worst)
        })
        .collect()
}

pub fn criterion_terms() -> Criterion {
    let worst = max_term_error(tolerances::TERM_MAX_N, tolerances::TERM_MAX_ORDER);
    let ok = worst.iter().all(|&(_, e)| e <= tolerances::TERM_REL);
    let rows: Vec<Value> = worst.iter().map(|&(r, e)| json!({ "r": r, "max_rel_error": f17(e) })).collect();
    Criterion::new(
        "float-exact-terms",
        ok,
        json!({ "n_max": tolerances::TERM_MAX_N, "tolerance": f17(tolerances::TERM_REL), "orders": rows }),
    )
}

/// Evaluation points for the quadrature checks.
pub fn quadrature_points() -> [Rational; 4] {
    [Rational::zero(), Rational::frac(1, 2), Rational::one(), Rational::frac(5, 2)]
}

pub fn criterion_quadrature() -> Criterion {
    let points = quadrature_points();
    let mut jobs: Vec<(&'static str, u32, u32, Rational)> = Vec::new();
    for n in 0..=tolerances::QUAD_MAX_N {
        for x in &points {
            jobs.push(("F", n, 0, x.clone()));
            for r in 0..=tolerances::QUAD_MAX_ORDER {
                jobs.push(("logpow", n, r, x.clone()));
            }
        }
        jobs.push(("2d", n, 1, Rational::zero()));
    }
    let outcomes: Vec<(&'static str, std::result::Result<f64, String>)> = jobs
        .par_iter()
        .map(|(kind, n, r, x)| {
            let (n, r) = (*n, *r);
            let xf = x.to_f64();
            let res = match *kind {
                "F" => quad_f(n, xf).map(|q| (q.value, closed_F(n as u64, x).expect("no pole").to_f64())),
                "logpow" => quad_logpow(n, r, xf).map(|q| (q.value, alt_sum_deriv(n as u64, r, x).expect("no pole").to_f64())),
                _ => quad_2d(n).map(|q| (q.value, (-alt_sum_deriv(n as u64, 1, x).expect("no pole")).to_f64())),
            };
            (*kind, res.map(|(q, exact)| ((q - exact) / exact).abs()).map_err(|e| e.to_string()))
        })
        .collect();

    let mut worst = [0.0f64; 3];
    let mut errors = Vec::new();
    for (kind, out) in outcomes {
        let slot = match kind {
            "F" => 0,
            "logpow" => 1,
            _ => 2,
        };
        match out {
            Ok(e) => worst[slot] = worst[slot].max(e),
            Err(msg) => errors.push(format!("{kind}: {msg}")),
        }
    }
    let ok = errors.is_empty() && worst.iter().all(|&e| e <= tolerances::QUAD_REL);
    Criterion::new(
        "quadrature",
        ok,
        json!({
            "n_max": tolerances::QUAD_MAX_N,
            "r_max": tolerances::QUAD_MAX_ORDER,
            "x": points.iter().map(Rational::to_fraction_string).collect::<Vec<_>>(),
            "tolerance": f17(tolerances::QUAD_REL),
            "max_rel_error_f": f17(worst[0]),
            "max_rel_error_logpow": f17(worst[1]),
            "max_rel_error_2d": f17(worst[2]),
            "errors": errors,
        }),
    )
}

/// Runs every criterion in a fixed order.
pub fn run_report(config: &SuiteConfig, progress: &dyn Fn(&str)) -> Result<SuiteReport> {
    config.validate()?;
    let mut criteria = Vec::new();
    let mut push = |c: Criterion| {
        progress(&format!("{}: {}", c.name, if c.passed() { "pass" } else { "FAIL" }));
        criteria.push(c);
    };
    push(criterion_finite_identity(config));
    push(criterion_random_points(config));
    push(criterion_symbolic(config));
    push(criterion_examples());
    push(criterion_series(config, progress));
    push(criterion_terms());
    push(criterion_quadrature());
    let passed = criteria.iter().filter(|c| c.passed()).count();
    let failed = criteria.len() - passed;
    Ok(SuiteReport {
        suite: "harmsum-acceptance".to_string(),
        config: config.clone(),
        criteria,
        summary: Summary { passed, failed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_points_are_reproducible_and_in_range() {
        let a = random_points(7, 200, 30);
        assert_eq!(a, random_points(7, 200, 30));
        assert_ne!(a, random_points(8, 200, 30));
        for x in &a {
            assert!(x.denom() <= &BigInt::from(64));
            assert!(x > &Rational::frac(-1, 1) && x <= &Rational::frac(10, 1));
        }
    }

    #[test]
    fn float17_format() {
        assert_eq!(serde_json::to_string(&Float17(1.0)).unwrap(), "1.0000000000000000e0");
        assert_eq!(serde_json::to_string(&Float17(-0.25)).unwrap(), "-2.5000000000000000e-1");
        assert_eq!(serde_json::to_string(&Float17(f64::NAN)).unwrap(), "null");
        let v: f64 = serde_json::from_str(&serde_json::to_string(&Float17(0.1)).unwrap()).unwrap();
        assert_eq!(v, 0.1);
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let bad = SuiteConfig { tail_window: 50, ..SuiteConfig::default() };
        assert!(bad.validate().is_err());
        let bad = SuiteConfig { series_terms: 500, ..SuiteConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn small_sweep_passes() {
        let res = sweep(1..=5, 3, &[Rational::zero(), Rational::frac(7, 3)]);
        assert_eq!(res.reports.len(), 2 * 5 * 4);
        assert!(res.all_passed());
        assert_eq!(res.reports[0].n, 1);
        assert_eq!(res.reports[0].r, 0);
    }

    #[test]
    fn explicit_pole_rejected() {
        let cfg = SuiteConfig { n_max: 3, r_max: 1, x_samples: 0, ..SuiteConfig::default() };
        let err = run_verification(&cfg, &[Rational::frac(-3, 1)], &|_| {}).unwrap_err();
        assert!(matches!(err, Error::Pole { .. }));
    }

    #[test]
    fn reference_expansions_match_recurrence() {
        for (s, p) in reference_expansions() {
            assert_eq!(f_poly(s), p);
        }
    }
}
