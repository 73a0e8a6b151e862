//! Floating-point evaluation of
//!
//! ```text
//! sum_{n>=1} 2^{2n-1} / (n (2n+1) C(2n,n)) * f_{n,r}(0) = (-1)^r (r+1)!
//! ```
//!
//! Every per-term quantity is advanced by an O(1) recurrence: the ratio
//! `a_n = a_{n-1} 2n/(2n+1)` for `a_n = 2^{2n}/((2n+1) C(2n,n))` and one
//! added reciprocal power per odd sum. Neither `2^{2n}` nor `C(2n,n)` is
//! ever formed.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::symbolic::{f_poly, BetaPolynomial, CompiledPolynomial};
use crate::verify::closed_F;

/// Neumaier's variant of compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new(init: f64) -> Self {
        CompensatedSum { sum: init, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// State of the series after its `n`-th term.
#[derive(Clone, Debug)]
pub struct SeriesState {
    n: u64,
    a: f64,
    // odd_sums[j - 1] = sum_{k=0..n} (2k+1)^{-j}
    odd_sums: Vec<CompensatedSum>,
    betas: Vec<f64>,
    // (-1)^{j-1} j! for j = 0..vars
    beta_scale: Vec<f64>,
    poly: CompiledPolynomial,
    partial: CompensatedSum,
}

impl SeriesState {
    /// State at `n = 0` (no terms summed) for the bracket `poly`.
    pub fn new(poly: &BetaPolynomial) -> Self {
        let poly = poly.compile();
        let vars = poly.vars();
        let beta_scale = (0..vars)
            .map(|j| {
                let f: f64 = (1..=j).map(|i| i as f64).product();
                if j % 2 == 1 {
                    f
                } else {
                    -f
                }
            })
            .collect();
        SeriesState {
            n: 0,
            a: 1.0,
            odd_sums: vec![CompensatedSum::new(1.0); vars + 1],
            betas: vec![0.0; vars],
            beta_scale,
            poly,
            partial: CompensatedSum::default(),
        }
    }

    pub fn for_order(r: u32) -> Self {
        Self::new(&f_poly(r))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `2^{2n} / ((2n+1) C(2n,n))` at the current `n`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// `sum_{k=0..n} (2k+1)^{-j}`, for `1 <= j <= vars + 1`.
    pub fn odd_sum(&self, j: usize) -> f64 {
        self.odd_sums[j - 1].value()
    }

    pub fn partial(&self) -> f64 {
        self.partial.value()
    }

    /// Moves to `n + 1` and returns that term.
    #[inline]
    pub fn advance(&mut self) -> f64 {
        self.n += 1;
        let n = self.n as f64;
        let odd = 2.0 * n + 1.0;
        self.a *= 2.0 * n / odd;
        let inv = 1.0 / odd;
        let mut p = inv;
        for s in self.odd_sums.iter_mut() {
            s.add(p);
            p *= inv;
        }
        for (j, b) in self.betas.iter_mut().enumerate() {
            *b = self.beta_scale[j] * self.odd_sums[j].value();
        }
        let term = self.a / (2.0 * n) * self.poly.eval(&self.betas);
        self.partial.add(term);
        term
    }
}

/// The `n`-th term for order `r`, by running the recurrences from `n = 1`.
pub fn series_term(n: u64, r: u32) -> f64 {
    assert!(n >= 1, "series starts at n = 1");
    let mut state = SeriesState::for_order(r);
    let mut term = 0.0;
    for _ in 0..n {
        term = state.advance();
    }
    term
}

/// Exact value of the same term: `F(0) / (2n) * f_{n,r}(0)`.
pub fn exact_series_term(n: u64, r: u32) -> Rational {
    assert!(n >= 1, "series starts at n = 1");
    let zero = Rational::zero();
    let f_value = f_poly(r).evaluate(n, &zero).expect("x = 0 is never a pole");
    let a = closed_F(n, &zero).expect("x = 0 is never a pole");
    a * f_value / Rational::integer(2 * n)
}

/// `S_N = sum_{n=1..N}` of the order-`r` series.
pub fn partial_sum(r: u32, terms: u64) -> f64 {
    partial_sum_of(&f_poly(r), terms)
}

pub fn partial_sum_of(poly: &BetaPolynomial, terms: u64) -> f64 {
    let mut state = SeriesState::new(poly);
    for _ in 0..terms {
        state.advance();
    }
    state.partial()
}

/// `(-1)^r (r+1)!`.
pub fn target(r: u32) -> BigInt {
    let f = factorial(r as u64 + 1);
    if r % 2 == 0 {
        f
    } else {
        -f
    }
}

/// One row of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Checkpoint {
    pub n: u64,
    pub term: f64,
    pub partial_sum: f64,
}

/// `1, 2, 5, 10, 20, 50, ...` below `terms`, then `terms` itself.
pub fn log_checkpoints(terms: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 1u64;
    'outer: loop {
        for m in [1, 2, 5] {
            let c = decade.saturating_mul(m);
            if c >= terms {
                break 'outer;
            }
            out.push(c);
        }
        decade = decade.saturating_mul(10);
    }
    if terms >= 1 {
        out.push(terms);
    }
    out
}

/// Output of a single forward pass.
#[derive(Clone, Debug)]
pub struct SeriesRun {
    pub terms: u64,
    pub partial_sum: f64,
    pub checkpoints: Vec<Checkpoint>,
    /// `(n, t_n)` at the requested sample indices, ascending.
    pub samples: Vec<(u64, f64)>,
}

/// Sums `terms` terms, recording `checkpoints` and `samples` (both sorted).
pub fn run_series(poly: &BetaPolynomial, terms: u64, checkpoints: &[u64], samples: &[u64]) -> SeriesRun {
    let mut state = SeriesState::new(poly);
    let mut cps = Vec::with_capacity(checkpoints.len());
    let mut out_samples = Vec::with_capacity(samples.len());
    let (mut ci, mut si) = (0, 0);
    for _ in 0..terms {
        let term = state.advance();
        let n = state.n();
        while ci < checkpoints.len() && checkpoints[ci] <= n {
            if checkpoints[ci] == n {
                cps.push(Checkpoint { n, term, partial_sum: state.partial() });
            }
            ci += 1;
        }
        while si < samples.len() && samples[si] <= n {
            if samples[si] == n {
                out_samples.push((n, term));
            }
            si += 1;
        }
    }
    SeriesRun {
        terms,
        partial_sum: state.partial(),
        checkpoints: cps,
        samples: out_samples,
    }
}

/// Least-squares model `t_n ~ n^{-3/2} sum_i c_i (ln n)^i` fitted over a
/// window of computed terms, integrated over `(N, inf)`.
#[derive(Clone, Debug, Serialize)]
pub struct TailModel {
    /// Number of fitted points.
    pub window: usize,
    /// First and last fitted index.
    pub fit_range: (u64, u64),
    /// `c_0..c_d` in powers of `ln n`.
    pub coefficients: Vec<f64>,
    /// RMS of `t_n n^{3/2} - P(ln n)` over the window.
    pub residual_rms: f64,
    /// Largest `|t_n n^{3/2} - P(ln n)| / |P(ln n)|` over the window.
    pub max_relative_residual: f64,
    /// `int_N^inf n^{-3/2} P(ln n) dn`.
    pub tail: f64,
    /// Standard error of `tail` induced by the residual norm.
    pub tail_std_error: f64,
    /// `|(A^+)^T g|_1 * max |residual|`: the largest change in `tail` from
    /// perturbing every fitted value by at most the worst residual.
    pub tail_bias_bound: f64,
}

/// Fitted-tail estimate of the full series.
#[derive(Clone, Debug, Serialize)]
pub struct TailEstimate {
    pub partial_sum: f64,
    pub value: f64,
    /// `UNCERTAINTY_SIGMAS * tail_std_error + tail_bias_bound`. A fit
    /// diagnostic, not a rigorous bound on the remainder.
    pub uncertainty: f64,
    pub model: TailModel,
}

/// Multiplier on the fit standard error in the reported uncertainty.
pub const UNCERTAINTY_SIGMAS: f64 = 3.0;

/// Sample indices for the tail fit: `window` points spaced geometrically
/// over `[sqrt(N), N]`, deduplicated.
///
/// A window of consecutive final terms spans a sliver of `ln n` and leaves
/// the higher `ln` powers undetermined, so the window is spread in `ln n`.
pub fn tail_fit_indices(terms: u64, window: usize) -> Vec<u64> {
    let lo = ((terms as f64).sqrt().ceil() as u64).max(2);
    let lo_ln = (lo as f64).ln();
    let hi_ln = (terms as f64).ln();
    let mut idx: Vec<u64> = (0..window)
        .map(|i| {
            let t = if window == 1 { 1.0 } else { i as f64 / (window - 1) as f64 };
            (lo_ln + t * (hi_ln - lo_ln)).exp().round() as u64
        })
        .map(|n| n.clamp(lo, terms))
        .collect();
    idx.push(terms);
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// Fits the tail model of degree `degree` in `ln n` to `samples` and
/// integrates it from `terms` to infinity.
pub fn fit_tail(samples: &[(u64, f64)], degree: usize, terms: u64) -> Result<TailModel> {
    let p = degree + 1;
    if samples.len() < p + 1 {
        return Err(Error::DegenerateFit(format!(
            "{} points cannot determine {} coefficients with a residual",
            samples.len(),
            p
        )));
    }
    let s: Vec<f64> = samples.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let y: Vec<f64> = samples.iter().map(|&(n, t)| t * (n as f64).powf(1.5)).collect();
    let (s_lo, s_hi) = (s[0], s[s.len() - 1]);
    let mid = 0.5 * (s_lo + s_hi);
    let half = 0.5 * (s_hi - s_lo);
    if half <= 0.0 {
        return Err(Error::DegenerateFit("window spans a single index".into()));
    }
    let u = |sv: f64| (sv - mid) / half;

    let m = samples.len();
    let design = DMatrix::from_fn(m, p, |i, k| u(s[i]).powi(k as i32));
    let rhs = DVector::from_vec(y.clone());
    let svd = design.clone().svd(true, true);
    let sv_max = svd.singular_values.max();
    let sv_min = svd.singular_values.min();
    if !(sv_min > sv_max * 1e-13) {
        return Err(Error::DegenerateFit(format!(
            "normal equations singular (singular values {sv_min:e} / {sv_max:e})"
        )));
    }
    let coeffs_u = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::DegenerateFit(e.to_string()))?;

    let fitted = &design * &coeffs_u;
    let resid = &rhs - &fitted;
    let rss = resid.norm_squared();
    let residual_rms = (rss / m as f64).sqrt();
    let max_relative_residual = resid
        .iter()
        .zip(fitted.iter())
        .map(|(r, f)| (r / f).abs())
        .fold(0.0, f64::max);

    // int_N^inf n^{-3/2} P dn = 2 e^{-L/2} sum_k (2/h)^k P^{(k)}(u_L),
    // via n = e^s, s = L + 2w and int_0^inf e^{-w} w^k dw = k!.
    let big_l = (terms as f64).ln();
    let u_l = u(big_l);
    let tail_functional = DVector::from_fn(p, |i, _| {
        let mut acc = 0.0;
        let mut scale = 1.0;
        for k in 0..=i {
            // d^k/du^k u^i = i!/(i-k)! u^{i-k}
            let falling: f64 = ((i - k + 1)..=i).map(|v| v as f64).product();
            acc += scale * falling * u_l.powi((i - k) as i32);
            scale *= 2.0 / half;
        }
        2.0 * (-big_l / 2.0).exp() * acc
    });
    let tail = tail_functional.dot(&coeffs_u);

    // Var(tail) = sigma^2 g^T (A^T A)^{-1} g = sigma^2 |S^{-1} V^T g|^2.
    let dof = (m - p).max(1) as f64;
    let sigma = (rss / dof).sqrt();
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let proj = v_t * &tail_functional;
    let leverage: f64 = proj
        .iter()
        .zip(svd.singular_values.iter())
        .map(|(g, sv)| (g / sv).powi(2))
        .sum::<f64>()
        .sqrt();
    let tail_std_error = sigma * leverage;

    // Worst case of a data perturbation bounded by the largest residual:
    // |g^T A^+ e| <= |(A^+)^T g|_1 |e|_inf, with (A^+)^T g = U S^{-1} V^T g.
    let u_mat = svd.u.as_ref().expect("requested U");
    let scaled = DVector::from_iterator(
        p,
        proj.iter().zip(svd.singular_values.iter()).map(|(g, sv)| g / sv),
    );
    let influence = u_mat * scaled;
    let max_residual = resid.amax();
    let tail_bias_bound = influence.lp_norm(1) * max_residual;

    let coefficients = to_ln_powers(coeffs_u.as_slice(), mid, half);
    Ok(TailModel {
        window: m,
        fit_range: (samples[0].0, samples[m - 1].0),
        coefficients,
        residual_rms,
        max_relative_residual,
        tail,
        tail_std_error,
        tail_bias_bound,
    })
}

/// Re-expands `sum a_i ((s - mid)/half)^i` in powers of `s`.
fn to_ln_powers(a: &[f64], mid: f64, half: f64) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        let scale = ai / half.powi(i as i32);
        let mut binom = 1.0;
        for k in 0..=i {
            // C(i, k) s^k (-mid)^{i-k}
            out[k] += scale * binom * (-mid).powi((i - k) as i32);
            binom = binom * (i - k) as f64 / (k + 1) as f64;
        }
    }
    out
}

/// Partial sum over `terms` terms plus the fitted tail.
pub fn tail_corrected_sum(r: u32, terms: u64, window: usize) -> Result<TailEstimate> {
    tail_corrected_sum_of(&f_poly(r), r as usize, terms, window)
}

/// As [`tail_corrected_sum`] for an arbitrary bracket whose growth is
/// polynomial of degree `degree` in `ln n`.
pub fn tail_corrected_sum_of(poly: &BetaPolynomial, degree: usize, terms: u64, window: usize) -> Result<TailEstimate> {
    if window < 100 || window as u64 >= terms {
        return Err(Error::InvalidArgument(format!(
            "tail window must satisfy 100 <= M < N (M = {window}, N = {terms})"
        )));
    }
    let samples = tail_fit_indices(terms, window);
    let run = run_series(poly, terms, &[], &samples);
    let model = fit_tail(&run.samples, degree, terms)?;
    let uncertainty = UNCERTAINTY_SIGMAS * model.tail_std_error + model.tail_bias_bound;
    Ok(TailEstimate {
        partial_sum: run.partial_sum,
        value: run.partial_sum + model.tail,
        uncertainty,
        model,
    })
}
