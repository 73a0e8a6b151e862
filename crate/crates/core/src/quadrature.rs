//! Numerical cross-checks of the defining integrals.
//!
//! One adaptive 15-point Gauss-Kronrod rule handles everything; the log
//! singularity at `t = 0` is removed by `u = -ln t` before integrating.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of `|K15 - G7|` over the final partition; never negative.
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    pub fn relative_error_to(&self, exact: f64) -> f64 {
        ((self.value - exact) / exact).abs()
    }
}

/// Default evaluation budget per one-dimensional integral.
pub const MAX_EVALUATIONS: usize = 2_000_000;

/// Requested relative tolerance for the user-facing integrals.
pub const REL_TOL: f64 = 1e-10;

// Kronrod abscissae on [0, 1] (symmetric), Gauss points are the odd ones.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive bisection until the summed error estimate is below
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_evaluations: usize,
) -> Result<QuadResult> {
    let mut pieces = vec![gauss_kronrod(&mut f, a, b)];
    let mut evaluations = 15;
    loop {
        let value: f64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadResult { value, error_estimate: error, evaluations });
        }
        if evaluations + 30 > max_evaluations {
            return Err(Error::QuadratureBudget {
                tolerance: rel_tol,
                evaluations,
                estimate: value,
            });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("nonempty");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Interval cannot be split further in f64.
            return Err(Error::QuadratureBudget {
                tolerance: rel_tol,
                evaluations,
                estimate: value,
            });
        }
        pieces.push(gauss_kronrod(&mut f, p.a, mid));
        pieces.push(gauss_kronrod(&mut f, mid, p.b));
        evaluations += 30;
    }
}

/// `int_0^1 (1 - t^2)^n t^x dt`.
pub fn quad_f(n: u32, x: f64) -> Result<QuadResult> {
    if !(x > -1.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must exceed -1")));
    }
    let integrand = |t: f64| {
        if t == 0.0 {
            // t^x at 0: 1 for x = 0, 0 for x > 0; x in (-1, 0) is integrable
            // but never sampled since GK nodes are interior.
            return if x == 0.0 { 1.0 } else { 0.0 };
        }
        (1.0 - t * t).powi(n as i32) * t.powf(x)
    };
    integrate(integrand, 0.0, 1.0, REL_TOL, 0.0, MAX_EVALUATIONS)
}

/// Fraction of the peak below which the transformed log-power integrand is
/// truncated.
pub const TRUNCATION_RATIO: f64 = 1e-18;

const MAX_U: f64 = 1e5;

/// `int_0^1 (1 - t^2)^n (ln t)^r t^x dt`, computed as
/// `(-1)^r int_0^U (1 - e^{-2u})^n u^r e^{-(x+1)u} du`.
pub fn quad_logpow(n: u32, r: u32, x: f64) -> Result<QuadResult> {
    if !(x > -1.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must exceed -1")));
    }
    let g = |u: f64| {
        if u == 0.0 {
            return if n == 0 && r == 0 { 1.0 } else { 0.0 };
        }
        (-(-2.0 * u).exp_m1()).powi(n as i32) * u.powi(r as i32) * (-(x + 1.0) * u).exp()
    };
    let upper = truncation_point(&g)?;
    let res = integrate(g, 0.0, upper, REL_TOL, 0.0, MAX_EVALUATIONS)?;
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    Ok(QuadResult { value: sign * res.value, ..res })
}

/// First grid point past the peak of a log-concave integrand where it has
/// dropped below `TRUNCATION_RATIO` of the peak.
fn truncation_point(g: &impl Fn(f64) -> f64) -> Result<f64> {
    let step = 0.25;
    let mut peak = 0.0f64;
    let mut u = step;
    let mut prev = g(0.0);
    while u <= MAX_U {
        let v = g(u);
        peak = peak.max(v);
        if v < prev && v < TRUNCATION_RATIO * peak {
            return Ok(u);
        }
        prev = v;
        u += step;
    }
    Err(Error::TruncationUnreachable(MAX_U))
}

/// `int_0^1 int_0^1 (1 - x^2 y^2)^n dy dx` by iterated adaptive rules.
pub fn quad_2d(n: u32) -> Result<QuadResult> {
    let mut inner_evals = 0usize;
    let mut inner_err = 0.0f64;
    let mut failure = None;
    let outer = integrate(
        |x: f64| {
            match integrate(
                |y: f64| (1.0 - x * x * y * y).powi(n as i32),
                0.0,
                1.0,
                1e-13,
                1e-15,
                MAX_EVALUATIONS,
            ) {
                Ok(r) => {
                    inner_evals += r.evaluations;
                    inner_err = inner_err.max(r.error_estimate);
                    r.value
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        1.0,
        REL_TOL,
        0.0,
        MAX_EVALUATIONS,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;
    Ok(QuadResult {
        value: outer.value,
        error_estimate: outer.error_estimate + inner_err,
        evaluations: inner_evals,
    })
}
