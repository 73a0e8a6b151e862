//! Exact verification of
//!
//! ```text
//! F^{(r)}(x) = (-1)^r r! sum_k C(n,k) (-1)^k (x+2k+1)^{-(r+1)}
//!            = n! 2^n / prod_k (x+2k+1) * f_{n,r}(x)
//! ```
//!
//! where `F(x) = int_0^1 (1-t^2)^n t^x dt`. Each side is computed by an
//! independent route and a jet expansion of the product form serves as a
//! third witness.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, binomial_row, factorial, Rational, TaylorJet};
use crate::harmonic::{check_pole, harmonic};
use crate::symbolic::{f_poly, BetaPolynomial, FPolyCache};

fn sign(k: u64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum_k C(n,k) (-1)^k (x+2k+1)^{-(s+1)}` for `s = 0..=r_max`.
fn alternating_sums(n: u64, r_max: u32, x: &Rational) -> Result<Vec<Rational>> {
    check_pole(n, x)?;
    let row = binomial_row(n);
    let mut sums = vec![Rational::zero(); r_max as usize + 1];
    for (k, c) in row.into_iter().enumerate() {
        let k = k as u64;
        let inv = (x + Rational::integer(2 * k + 1)).recip()?;
        let mut term = Rational::integer(c * sign(k)) * &inv;
        for s in sums.iter_mut() {
            *s = &*s + &term;
            term = term * &inv;
        }
    }
    Ok(sums)
}

/// `(-1)^r r!` as a rational.
fn signed_factorial(r: u32) -> Rational {
    Rational::integer(factorial(r as u64) * sign(r as u64))
}

/// Alternating-sum form of `F^{(r)}(x)`.
pub fn alt_sum_deriv(n: u64, r: u32, x: &Rational) -> Result<Rational> {
    Ok(alt_sum_derivs(n, r, x)?.pop().expect("r + 1 entries"))
}

/// `F^{(0..=r_max)}(x)` by the alternating sum.
pub fn alt_sum_derivs(n: u64, r_max: u32, x: &Rational) -> Result<Vec<Rational>> {
    let sums = alternating_sums(n, r_max, x)?;
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(r, s)| signed_factorial(r as u32) * s)
        .collect())
}

/// `F(x) = n! 2^n / prod_{k=0..n} (x + 2k + 1)`.
#[allow(non_snake_case)]
pub fn closed_F(n: u64, x: &Rational) -> Result<Rational> {
    check_pole(n, x)?;
    let numer = factorial(n) * BigInt::from(2).pow(n as u32);
    let denom: Rational = (0..=n).map(|k| x + Rational::integer(2 * k + 1)).product();
    Rational::integer(numer).checked_div(&denom)
}

/// `F(0) = 2^{2n} / ((2n+1) C(2n,n))`, written through the central binomial.
pub fn central_binomial_value(n: u64) -> Rational {
    let denom = BigInt::from(2 * n + 1) * binomial(2 * n, n);
    Rational::new(BigInt::from(2).pow(2 * n as u32), denom).expect("positive")
}

/// Product form: `F(x) * f_{n,r}(x)`.
pub fn poly_deriv(n: u64, r: u32, x: &Rational) -> Result<Rational> {
    poly_deriv_with(n, &f_poly(r), x)
}

fn poly_deriv_with(n: u64, f: &BetaPolynomial, x: &Rational) -> Result<Rational> {
    Ok(closed_F(n, x)? * f.evaluate(n, x)?)
}

/// `F^{(0..=r_max)}(x)` from the cached polynomials.
pub fn poly_derivs(n: u64, cache: &FPolyCache, r_max: u32, x: &Rational) -> Result<Vec<Rational>> {
    let f_value = closed_F(n, x)?;
    let (numers, base) = crate::harmonic::beta_derivs_common_base(n, r_max.max(1) - 1, x)?;
    Ok((0..=r_max)
        .map(|r| {
            let f = cache.get(r);
            &f_value * f.evaluate_over_base(&numers, &base).expect("f_r is weight-homogeneous")
        })
        .collect())
}

/// Taylor jet of `F(x + e)` to order `order`.
///
/// The denominator `prod_k (x + 2k + 1 + e)` is expanded first and inverted
/// once by power-series division.
pub fn jet_of_f(n: u64, x: &Rational, order: usize) -> Result<TaylorJet> {
    let mut denom = TaylorJet::one(order);
    for k in 0..=n {
        let factor = TaylorJet::affine(x + Rational::integer(2 * k + 1), Rational::one(), order);
        denom = denom.mul(&factor)?;
    }
    let inv = denom.reciprocal().map_err(|e| match check_pole(n, x) {
        Err(pole) => pole,
        Ok(()) => e,
    })?;
    let scale = Rational::integer(factorial(n) * BigInt::from(2).pow(n as u32));
    Ok(inv.scale(&scale))
}

/// `r! c_r` of the jet of `F` at `x`.
pub fn jet_deriv(n: u64, r: u32, x: &Rational) -> Result<Rational> {
    Ok(jet_derivs(n, r, x)?.pop().expect("r + 1 entries"))
}

pub fn jet_derivs(n: u64, r_max: u32, x: &Rational) -> Result<Vec<Rational>> {
    let jet = jet_of_f(n, x, r_max as usize)?;
    Ok(jet
        .coeffs()
        .iter()
        .enumerate()
        .map(|(r, c)| Rational::integer(factorial(r as u64)) * c)
        .collect())
}

/// Which identity a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `F^{(r)}(x)` three ways.
    FiniteIdentity,
    /// `C(2n,n) sum C(n,k)(-1)^k/(2k+1) = 2^{2n}/(2n+1)`.
    CentralBinomialOrder0,
    /// Same with `(2k+1)^2` and the first odd harmonic sum.
    CentralBinomialOrder1,
    /// Same with `(2k+1)^3`, squared first-order plus second-order sum.
    CentralBinomialOrder2,
    /// Third-derivative identity with its literal harmonic bracket.
    ThirdOrderBracket,
    /// Fourth-derivative identity with its literal harmonic bracket.
    FourthOrderBracket,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::FiniteIdentity => "finite-identity",
            Check::CentralBinomialOrder0 => "central-binomial-order0",
            Check::CentralBinomialOrder1 => "central-binomial-order1",
            Check::CentralBinomialOrder2 => "central-binomial-order2",
            Check::ThirdOrderBracket => "third-order-bracket",
            Check::FourthOrderBracket => "fourth-order-bracket",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodValue {
    pub method: &'static str,
    /// `None` when the method could not be evaluated (pole).
    pub value: Option<Rational>,
}

/// Outcome of one exact comparison. Passes iff all three values exist and
/// are identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: Check,
    pub n: u64,
    pub r: u32,
    pub x: Rational,
    pub methods: [MethodValue; 3],
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    fn from_values(check: Check, n: u64, r: u32, x: Rational, methods: [MethodValue; 3]) -> Self {
        let pass = match (&methods[0].value, &methods[1].value, &methods[2].value) {
            (Some(a), Some(b), Some(c)) => a == b && b == c,
            _ => false,
        };
        let detail = (!pass).then(|| {
            let shown: Vec<String> = methods
                .iter()
                .map(|m| match &m.value {
                    Some(v) => format!("{}={}", m.method, v.to_fraction_string()),
                    None => format!("{}=undefined", m.method),
                })
                .collect();
            format!("mismatch: {}", shown.join(", "))
        });
        VerificationReport {
            check,
            n,
            r,
            x,
            methods,
            status: if pass { Status::Pass } else { Status::Fail },
            detail,
        }
    }

    fn failed(check: Check, n: u64, r: u32, x: Rational, names: [&'static str; 3], err: &Error) -> Self {
        VerificationReport {
            check,
            n,
            r,
            x,
            methods: names.map(|method| MethodValue { method, value: None }),
            status: Status::Fail,
            detail: Some(err.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The agreed value, when the report passed.
    pub fn value(&self) -> Option<&Rational> {
        if self.passed() {
            self.methods[0].value.as_ref()
        } else {
            None
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.detail = Some(match self.detail.take() {
            Some(d) => format!("{d}; {note}"),
            None => note.to_string(),
        });
        self
    }

    /// One whitespace-separated `key=value` record.
    pub fn to_record_line(&self) -> String {
        let mut line = format!(
            "check={} n={} r={} x={}",
            self.check,
            self.n,
            self.r,
            self.x.to_fraction_string()
        );
        for m in &self.methods {
            let v = m.value.as_ref().map_or_else(|| "undefined".to_string(), Rational::to_fraction_string);
            line.push_str(&format!(" {}={}", m.method, v));
        }
        line.push_str(match self.status {
            Status::Pass => " status=pass",
            Status::Fail => " status=fail",
        });
        if let Some(d) = &self.detail {
            line.push_str(&format!(" detail={d:?}"));
        }
        line
    }
}

const IDENTITY_METHODS: [&str; 3] = ["alternating_sum", "closed_form_times_f", "jet"];

/// Three-way comparison of `F^{(r)}(x)`. Poles yield a failed report.
pub fn verify_case(n: u64, r: u32, x: &Rational) -> VerificationReport {
    let compute = || -> Result<[Rational; 3]> {
        Ok([alt_sum_deriv(n, r, x)?, poly_deriv(n, r, x)?, jet_deriv(n, r, x)?])
    };
    match compute() {
        Ok(values) => identity_report(n, r, x, values),
        Err(e) => VerificationReport::failed(Check::FiniteIdentity, n, r, x.clone(), IDENTITY_METHODS, &e),
    }
}

fn identity_report(n: u64, r: u32, x: &Rational, [a, b, c]: [Rational; 3]) -> VerificationReport {
    VerificationReport::from_values(
        Check::FiniteIdentity,
        n,
        r,
        x.clone(),
        [
            MethodValue { method: IDENTITY_METHODS[0], value: Some(a) },
            MethodValue { method: IDENTITY_METHODS[1], value: Some(b) },
            MethodValue { method: IDENTITY_METHODS[2], value: Some(c) },
        ],
    )
}

/// [`verify_case`] for every `r <= r_max` at one `(n, x)`, sharing the
/// expensive parts between orders.
pub fn verify_orders(n: u64, r_max: u32, x: &Rational, cache: &FPolyCache) -> Vec<VerificationReport> {
    let compute = || -> Result<(Vec<Rational>, Vec<Rational>, Vec<Rational>)> {
        Ok((
            alt_sum_derivs(n, r_max, x)?,
            poly_derivs(n, cache, r_max, x)?,
            jet_derivs(n, r_max, x)?,
        ))
    };
    match compute() {
        Ok((alt, poly, jet)) => alt
            .into_iter()
            .zip(poly)
            .zip(jet)
            .enumerate()
            .map(|(r, ((a, b), c))| identity_report(n, r as u32, x, [a, b, c]))
            .collect(),
        Err(e) => (0..=r_max)
            .map(|r| VerificationReport::failed(Check::FiniteIdentity, n, r, x.clone(), IDENTITY_METHODS, &e))
            .collect(),
    }
}

/// `H_{2n+1}^{(j)} - H_n^{(j)} / 2^j` from ordinary harmonic numbers.
fn odd_part(n: u64, j: u32) -> Rational {
    let scale = Rational::new(1, BigInt::from(2).pow(j)).expect("nonzero");
    let tail = if n == 0 { Rational::zero() } else { harmonic(n, j) };
    harmonic(2 * n + 1, j) - scale * tail
}

fn mv(method: &'static str, value: Rational) -> MethodValue {
    MethodValue { method, value: Some(value) }
}

/// The three low-order central binomial identities at `x = 0`, each as
/// (direct alternating sum, harmonic-number form, closed form times f).
pub fn verify_classics(n: u64) -> Vec<VerificationReport> {
    let zero = Rational::zero();
    let central = Rational::integer(binomial(2 * n, n));
    let scale = Rational::new(BigInt::from(2).pow(2 * n as u32), 2 * n + 1).expect("positive");
    let sums = alternating_sums(n, 2, &zero).expect("x = 0 is never a pole");
    let h1 = odd_part(n, 1);
    let h2 = odd_part(n, 2);
    let polys = FPolyCache::new(2);
    let prod = poly_derivs(n, &polys, 2, &zero).expect("x = 0 is never a pole");

    let order0 = VerificationReport::from_values(
        Check::CentralBinomialOrder0,
        n,
        0,
        zero.clone(),
        [
            mv("alternating_sum", &central * &sums[0]),
            mv("harmonic_form", scale.clone()),
            mv("closed_form_times_f", &central * &prod[0]),
        ],
    );
    // F'(0) = -sum C(n,k)(-1)^k/(2k+1)^2
    let order1 = VerificationReport::from_values(
        Check::CentralBinomialOrder1,
        n,
        1,
        zero.clone(),
        [
            mv("alternating_sum", &central * &sums[1]),
            mv("harmonic_form", &scale * &h1),
            mv("closed_form_times_f", -(&central * &prod[1])),
        ],
    );
    let order2 = VerificationReport::from_values(
        Check::CentralBinomialOrder2,
        n,
        2,
        zero,
        [
            mv("alternating_sum", Rational::integer(2) * &central * &sums[2]),
            mv("harmonic_form", &scale * (&h1 * &h1 + &h2)),
            mv("closed_form_times_f", &central * &prod[2]),
        ],
    )
    .with_note(
        "second-order sum enters to the first power; the infinite-series display that squares it \
         is checked numerically by the series engine",
    );
    vec![order0, order1, order2]
}

/// The worked third- and fourth-order identities at `x = 0`.
///
/// The left sides are the alternating sums; the brackets are transcribed
/// literally in odd harmonic sums `h_j`, with the fourth-order bracket read
/// as `h1^4 + 6 h1^2 h2 + 3 h2^2 + 8 h1 h3 + 6 h4` (the printed form drops
/// the `+` before `3 h2^2`).
pub fn verify_examples(n: u64) -> Vec<VerificationReport> {
    let zero = Rational::zero();
    let f0 = central_binomial_value(n);
    let sums = alternating_sums(n, 4, &zero).expect("x = 0 is never a pole");
    let h: Vec<Rational> = (1..=4).map(|j| odd_part(n, j)).collect();
    let (h1, h2, h3, h4) = (&h[0], &h[1], &h[2], &h[3]);
    let int = |v: i64| Rational::integer(v);

    let bracket_a = -(h1 * h1 * h1) - int(3) * h1 * h2 - int(2) * h3;
    let bracket_b =
        h1 * h1 * h1 * h1 + int(6) * h1 * h1 * h2 + int(3) * h2 * h2 + int(8) * h1 * h3 + int(6) * h4;

    let mut out = Vec::with_capacity(2);
    for (check, r, bracket, lhs_scale) in [
        (Check::ThirdOrderBracket, 3u32, bracket_a, -6i64),
        (Check::FourthOrderBracket, 4u32, bracket_b, 24i64),
    ] {
        let f_value = f_poly(r).evaluate(n, &zero).expect("x = 0 is never a pole");
        let mut report = VerificationReport::from_values(
            check,
            n,
            r,
            zero.clone(),
            [
                mv("alternating_sum", int(lhs_scale) * &sums[r as usize]),
                mv("literal_bracket", &f0 * &bracket),
                mv("closed_form_times_f", &f0 * &f_value),
            ],
        );
        if bracket != f_value {
            report = report.with_note("literal bracket differs from the recurrence polynomial");
            report.status = Status::Fail;
        }
        out.push(report);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    #[test]
    fn alt_sum_examples() {
        let zero = Rational::zero();
        assert_eq!(alt_sum_deriv(1, 1, &zero).unwrap(), q(-8, 9));
        assert_eq!(alt_sum_deriv(2, 0, &zero).unwrap(), q(8, 15));
        for r in 0..7 {
            assert_eq!(alt_sum_deriv(0, r, &zero).unwrap(), signed_factorial(r));
        }
        assert_eq!(alt_sum_deriv(1, 1, &q(1, 1)).unwrap(), q(-3, 16));
    }

    #[test]
    fn closed_form_examples() {
        let zero = Rational::zero();
        assert_eq!(closed_F(1, &zero).unwrap(), q(2, 3));
        assert_eq!(closed_F(2, &zero).unwrap(), q(8, 15));
        for x in [q(0, 1), q(5, 2), q(-1, 2), q(7, 1)] {
            assert_eq!(closed_F(0, &x).unwrap(), (x.clone() + Rational::one()).recip().unwrap());
        }
        for n in 0..40 {
            assert_eq!(closed_F(n, &zero).unwrap(), central_binomial_value(n));
        }
    }

    #[test]
    fn poly_deriv_examples() {
        let zero = Rational::zero();
        assert_eq!(poly_deriv(1, 1, &zero).unwrap(), q(-8, 9));
        assert_eq!(poly_deriv(1, 1, &q(1, 1)).unwrap(), q(-3, 16));
        for n in 0..10 {
            assert_eq!(poly_deriv(n, 0, &zero).unwrap(), closed_F(n, &zero).unwrap());
        }
    }

    #[test]
    fn jet_deriv_examples() {
        let zero = Rational::zero();
        assert_eq!(jet_deriv(1, 1, &zero).unwrap(), q(-8, 9));
        assert_eq!(jet_deriv(1, 0, &zero).unwrap(), q(2, 3));
        let j = jet_of_f(1, &zero, 3).unwrap();
        assert_eq!(j.coeff(1), &q(-8, 9));
        assert_eq!(jet_deriv(2, 2, &zero).unwrap(), alt_sum_deriv(2, 2, &zero).unwrap());
    }

    #[test]
    fn poles_are_errors() {
        let pole = q(-3, 1);
        assert!(matches!(alt_sum_deriv(1, 1, &pole), Err(Error::Pole { .. })));
        assert!(matches!(closed_F(1, &pole), Err(Error::Pole { .. })));
        assert!(matches!(poly_deriv(1, 1, &pole), Err(Error::Pole { .. })));
        assert!(matches!(jet_deriv(1, 1, &pole), Err(Error::Pole { .. })));
        let report = verify_case(1, 1, &pole);
        assert!(!report.passed());
        assert!(report.detail.unwrap().contains("pole"));
    }

    #[test]
    fn verify_case_examples() {
        let r = verify_case(1, 1, &Rational::zero());
        assert!(r.passed());
        assert_eq!(r.value(), Some(&q(-8, 9)));
        assert!(verify_case(1, 1, &q(1, 2)).passed());
        assert!(verify_case(200, 8, &Rational::zero()).passed());
    }

    #[test]
    fn verify_orders_matches_single_cases() {
        let cache = FPolyCache::new(5);
        let x = q(-1, 3);
        let batch = verify_orders(6, 5, &x, &cache);
        for (r, rep) in batch.iter().enumerate() {
            assert!(rep.passed());
            assert_eq!(rep, &verify_case(6, r as u32, &x));
        }
    }

    #[test]
    fn classics_small_n() {
        let reps = verify_classics(1);
        assert!(reps.iter().all(VerificationReport::passed));
        assert_eq!(reps[0].value(), Some(&q(4, 3)));
        assert_eq!(reps[1].value(), Some(&q(16, 9)));
        for n in 1..=30 {
            assert!(verify_classics(n).iter().all(VerificationReport::passed), "n={n}");
        }
    }

    #[test]
    fn examples_small_n() {
        let reps = verify_examples(1);
        assert!(reps.iter().all(VerificationReport::passed));
        // -3! (1 - 1/81) = -480/81
        assert_eq!(reps[0].value(), Some(&q(-160, 27)));
        assert_eq!(f_poly(3).evaluate(1, &Rational::zero()).unwrap(), q(-80, 9));
        // 4! (1 - 1/243)
        assert_eq!(reps[1].value(), Some(&q(24 * 242, 243)));
    }

    #[test]
    fn record_line_format() {
        let line = verify_case(1, 1, &Rational::zero()).to_record_line();
        assert_eq!(
            line,
            "check=finite-identity n=1 r=1 x=0/1 alternating_sum=-8/9 closed_form_times_f=-8/9 jet=-8/9 status=pass"
        );
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(verify_case(1, 1, &q(1, 2))).unwrap();
        assert_eq!(v["x"], "1/2");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["methods"][2]["method"], "jet");
        assert!(v["methods"][0]["value"].as_str().unwrap().contains('/'));
        assert!(v.get("detail").is_none());
    }
}
