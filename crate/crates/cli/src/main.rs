use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harmsum::series::{log_checkpoints, run_series, tail_corrected_sum, target};
use harmsum::suite::{f17, run_report, run_verification, OutputFormat, SuiteConfig};
use harmsum::symbolic::f_poly;
use harmsum::{Error, Rational};
use num_traits::ToPrimitive;
use serde_json::json;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "harmsum", version, about = "Exact and numerical checks of binomial harmonic-sum identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Three-way exact check of F^(r)(x) over an (n, r) grid.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Extra evaluation points, e.g. `--x 1/3 --x -1/2`.
        #[arg(long = "x", allow_hyphen_values = true, value_parser = parse_rational)]
        x: Vec<Rational>,
    },
    /// Print the derivative polynomial f_r in the b_j variables.
    Expand {
        #[arg(long)]
        r: u32,
        /// Evaluate at `n` or `n,x`.
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// Partial sums of the order-r series with a tail-corrected estimate.
    Series {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1_000_000)]
        terms: u64,
        /// Number of sampled terms in the tail fit (default 1000 when N allows).
        #[arg(long = "tail-fit")]
        tail_fit: Option<usize>,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// Run every acceptance criterion and emit a JSON report.
    Report {
        #[command(flatten)]
        config: ConfigArgs,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long = "n-max", default_value_t = 200)]
    n_max: u64,
    #[arg(long = "r-max", default_value_t = 8)]
    r_max: u32,
    #[arg(long = "x-samples", default_value_t = 100)]
    x_samples: usize,
    #[arg(long = "series-terms", default_value_t = 1_000_000)]
    series_terms: u64,
    #[arg(long = "tail-window", default_value_t = 1000)]
    tail_window: usize,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: OutputFormat,
}

impl From<ConfigArgs> for SuiteConfig {
    fn from(a: ConfigArgs) -> Self {
        SuiteConfig {
            n_max: a.n_max,
            r_max: a.r_max,
            x_samples: a.x_samples,
            series_terms: a.series_terms,
            tail_window: a.tail_window,
            seed: a.seed,
            format: a.format,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn progress(msg: &str) {
    eprintln!("[harmsum] {msg}");
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

fn cmd_verify(config: SuiteConfig, x: Vec<Rational>) -> ExitCode {
    if config.n_max == 0 {
        return usage("--n-max must be positive");
    }
    let result = match run_verification(&config, &x, &progress) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let mut out = io::stdout().lock();
    let written = match config.format {
        OutputFormat::Json => {
            let doc = json!({
                "config": &config,
                "summary": { "cases": result.reports.len(), "passed": result.passed, "failed": result.failed },
                "reports": &result.reports,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serialises"))
        }
        OutputFormat::Csv => (|| {
            writeln!(out, "check,n,r,x,method_1,value_1,method_2,value_2,method_3,value_3,status")?;
            for rep in &result.reports {
                write!(out, "{},{},{},{}", rep.check, rep.n, rep.r, rep.x.to_fraction_string())?;
                for m in &rep.methods {
                    let v = m.value.as_ref().map_or_else(String::new, Rational::to_fraction_string);
                    write!(out, ",{},{}", m.method, v)?;
                }
                writeln!(out, ",{}", if rep.passed() { "pass" } else { "fail" })?;
            }
            Ok(())
        })(),
        OutputFormat::Text => (|| {
            for rep in &result.reports {
                writeln!(out, "{}", rep.to_record_line())?;
            }
            writeln!(
                out,
                "summary: {} cases, {} passed, {} failed",
                result.reports.len(),
                result.passed,
                result.failed
            )
        })(),
    };
    if written.is_err() {
        return ExitCode::from(EXIT_USAGE);
    }
    status(result.all_passed())
}

fn cmd_expand(r: u32, eval: Option<String>) -> ExitCode {
    if r == 0 {
        return usage("--r must be at least 1");
    }
    let poly = f_poly(r);
    let Some(arg) = eval else {
        println!("{poly}");
        return ExitCode::SUCCESS;
    };
    let (n_str, x_str) = match arg.split_once(',') {
        Some((n, x)) => (n.trim(), x.trim()),
        None => (arg.trim(), "0"),
    };
    let Ok(n) = n_str.parse::<u64>() else {
        return usage(format!("invalid n {n_str:?}"));
    };
    let x: Rational = match x_str.parse() {
        Ok(x) => x,
        Err(e) => return usage(e),
    };
    match poly.evaluate(n, &x) {
        Ok(v) => {
            println!("{poly} = {v}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn cmd_series(r: u32, terms: u64, tail_fit: Option<usize>, format: OutputFormat) -> ExitCode {
    if terms == 0 {
        return usage("--terms must be positive");
    }
    let window = match tail_fit {
        Some(m) if m < 100 || m as u64 >= terms => {
            return usage(format!("--tail-fit must satisfy 100 <= M < terms (got {m})"));
        }
        Some(m) => Some(m),
        None if terms > 1000 => Some(1000),
        None => None,
    };
    let cps = log_checkpoints(terms);
    let run = run_series(&f_poly(r), terms, &cps, &[]);
    let goal = target(r);
    let goal_f = goal.to_f64().expect("small target");
    let estimate = match window.map(|m| tail_corrected_sum(r, terms, m)).transpose() {
        Ok(e) => e,
        Err(e) => return usage(e),
    };

    match format {
        OutputFormat::Csv => {
            println!("n,term,partial_sum");
            for c in &run.checkpoints {
                println!("{},{:.16e},{:.16e}", c.n, c.term, c.partial_sum);
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "r": r,
                "terms": terms,
                "target": goal.to_string(),
                "checkpoints": run.checkpoints.iter().map(|c| json!({
                    "n": c.n,
                    "term": f17(c.term),
                    "partial_sum": f17(c.partial_sum),
                })).collect::<Vec<_>>(),
                "partial_sum": f17(run.partial_sum),
                "partial_rel_dev": f17(((run.partial_sum - goal_f) / goal_f).abs()),
                "tail_estimate": estimate.as_ref().map(|e| json!({
                    "value": f17(e.value),
                    "uncertainty": f17(e.uncertainty),
                    "rel_dev": f17(((e.value - goal_f) / goal_f).abs()),
                    "fit_range": [e.model.fit_range.0, e.model.fit_range.1],
                    "fit_points": e.model.window,
                    "coefficients": e.model.coefficients.iter().map(|&c| f17(c)).collect::<Vec<_>>(),
                })),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialises"));
        }
        OutputFormat::Text => {
            println!("{:>10}  {:>24}  {:>24}", "n", "term", "partial_sum");
            for c in &run.checkpoints {
                println!("{:>10}  {:>24.16e}  {:>24.16e}", c.n, c.term, c.partial_sum);
            }
            println!("target      {goal}");
            println!(
                "partial sum {:.12} (relative deviation {:.3e})",
                run.partial_sum,
                ((run.partial_sum - goal_f) / goal_f).abs()
            );
            if let Some(est) = &estimate {
                println!(
                    "estimate    {:.12} +/- {:.3e} (relative deviation {:.3e}, fit over n in [{}, {}], {} points)",
                    est.value,
                    est.uncertainty,
                    ((est.value - goal_f) / goal_f).abs(),
                    est.model.fit_range.0,
                    est.model.fit_range.1,
                    est.model.window
                );
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_report(config: SuiteConfig, out: Option<PathBuf>) -> ExitCode {
    // Fail before the long run if the destination cannot be written.
    let mut file = match &out {
        Some(path) => match fs::File::create(path) {
            Ok(f) => Some(f),
            Err(e) => return usage(format!("cannot write {}: {e}", path.display())),
        },
        None => None,
    };
    let report = match run_report(&config, &progress) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let text = report.to_json();
    let written = match file.as_mut() {
        Some(f) => f.write_all(text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return usage(format!("write failed: {e}"));
    }
    progress(&format!("{} passed, {} failed", report.summary.passed, report.summary.failed));
    status(report.all_passed())
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { config, x } => cmd_verify(config.into(), x),
        Command::Expand { r, eval } => cmd_expand(r, eval),
        Command::Series { r, terms, tail_fit, format } => cmd_series(r, terms, tail_fit, format),
        Command::Report { config, out } => cmd_report(config.into(), out),
    }
}
