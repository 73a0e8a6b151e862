//! Exact scalars and truncated power series.
//!
//! Nothing in here touches floating point except the explicit lossy
//! conversion [`Rational::to_f64`], which is only used for reporting.

mod jet;
mod rational;

pub use jet::TaylorJet;
pub use rational::Rational;

use num_bigint::BigInt;
use num_traits::One;

/// Binomial coefficients C(n, 0..=n) by the running product
/// C(n, k) = C(n, k-1) * (n - k + 1) / k, each division exact.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 1..=n {
        c = c * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 1..=k {
        c = c * BigInt::from(n - k + i) / BigInt::from(i);
    }
    c
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
