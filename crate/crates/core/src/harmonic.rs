//! Harmonic numbers of order r, odd-indexed harmonic sums and the
//! derivatives of `beta_n(x) = -sum_{k=0..n} 1/(x + 2k + 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

/// `H_n^{(r)} = sum_{k=1..n} k^{-r}` by direct summation.
pub fn harmonic(n: u64, r: u32) -> Rational {
    (1..=n).map(|k| inverse_power(&BigInt::from(k), r)).sum()
}

/// `sum_{k=0..n} (2k+1)^{-j}`.
pub fn odd_harmonic(n: u64, j: u32) -> Rational {
    (0..=n).map(|k| inverse_power(&BigInt::from(2 * k + 1), j)).sum()
}

fn inverse_power(base: &BigInt, exp: u32) -> Rational {
    Rational::new(1, base.pow(exp)).expect("positive base")
}

/// Fails with [`Error::Pole`] when `x = -(2k+1)` for some `0 <= k <= n`.
pub fn check_pole(n: u64, x: &Rational) -> Result<()> {
    if !x.is_integer() || x.signum() >= 0 {
        return Ok(());
    }
    let neg: BigInt = -x.numer();
    let odd = &neg % 2u32 == BigInt::from(1);
    if odd && neg <= BigInt::from(2 * n + 1) {
        let odd_value: u64 = neg.try_into().expect("bounded by 2n+1");
        return Err(Error::Pole { x: x.clone(), odd: odd_value });
    }
    Ok(())
}

/// `beta_n^{(j)}(x) = (-1)^{j-1} j! sum_{k=0..n} (x + 2k + 1)^{-(j+1)}`.
pub fn beta_deriv_at(n: u64, j: u32, x: &Rational) -> Result<Rational> {
    Ok(beta_derivs_at(n, j, x)?.pop().expect("j + 1 entries"))
}

/// `beta_n^{(0)}(x), ..., beta_n^{(max_j)}(x)` sharing one pass over k.
pub fn beta_derivs_at(n: u64, max_j: u32, x: &Rational) -> Result<Vec<Rational>> {
    check_pole(n, x)?;
    // sums[j] = sum_k (x + 2k + 1)^{-(j+1)}
    let mut sums = vec![Rational::zero(); max_j as usize + 1];
    for k in 0..=n {
        let inv = (x + Rational::integer(2 * k + 1)).recip()?;
        let mut p = inv.clone();
        for s in sums.iter_mut() {
            *s = &*s + &p;
            p = &p * &inv;
        }
    }
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(j, s)| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            Rational::integer(factorial(j as u64) * sign) * s
        })
        .collect())
}

/// The same values over one integer base: `beta_n^{(j)}(x) = numers[j] / base^{j+1}`.
///
/// With `x = p/q` and `m_k = p + (2k+1)q`, `base = lcm |m_k|` and
/// `1/(x + 2k + 1) = u_k / base` for the integer `u_k = q base / m_k`.
pub fn beta_derivs_common_base(n: u64, max_j: u32, x: &Rational) -> Result<(Vec<BigInt>, BigInt)> {
    check_pole(n, x)?;
    let (p, q) = (x.numer(), x.denom());
    let m: Vec<BigInt> = (0..=n).map(|k| p + BigInt::from(2 * k + 1) * q).collect();
    let base = m.iter().fold(BigInt::one(), |acc, mk| acc.lcm(mk));
    let mut sums = vec![BigInt::zero(); max_j as usize + 1];
    for mk in &m {
        let u = q * &base / mk;
        let mut pow = u.clone();
        for s in sums.iter_mut() {
            *s += &pow;
            pow *= &u;
        }
    }
    let numers = sums
        .into_iter()
        .enumerate()
        .map(|(j, s)| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            factorial(j as u64) * sign * s
        })
        .collect();
    Ok((numers, base))
}

/// Harmonic numbers `H_m^{(j)}` for `m <= max_n`, `1 <= j <= max_order`,
/// filled incrementally one reciprocal power per step.
#[derive(Clone, Debug)]
pub struct HarmonicTable {
    max_n: u64,
    max_order: u32,
    // values[m][j - 1] = H_m^{(j)}, values[0] is all zeros.
    values: Vec<Vec<Rational>>,
}

impl HarmonicTable {
    pub fn new(max_n: u64, max_order: u32) -> Self {
        let mut values = Vec::with_capacity(max_n as usize + 1);
        values.push(vec![Rational::zero(); max_order as usize]);
        for m in 1..=max_n {
            let prev = values.last().expect("seeded");
            let base = BigInt::from(m);
            let row = (1..=max_order)
                .map(|j| &prev[j as usize - 1] + inverse_power(&base, j))
                .collect();
            values.push(row);
        }
        HarmonicTable { max_n, max_order, values }
    }

    /// Table large enough to hold the odd sums for every `n <= max_n`.
    pub fn for_odd_sums(max_n: u64, max_order: u32) -> Self {
        Self::new(2 * max_n + 1, max_order)
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// `H_m^{(j)}`; `H_0^{(j)} = 0`.
    pub fn get(&self, m: u64, j: u32) -> &Rational {
        assert!(m <= self.max_n && (1..=self.max_order).contains(&j), "H_{m}^({j}) outside table");
        &self.values[m as usize][j as usize - 1]
    }

    /// `H_{2n+1}^{(j)} - 2^{-j} H_n^{(j)}`, the odd sum written through
    /// ordinary harmonic numbers.
    pub fn odd(&self, n: u64, j: u32) -> Rational {
        let scale = Rational::new(1, BigInt::from(2).pow(j)).expect("nonzero");
        self.get(2 * n + 1, j) - scale * self.get(n, j)
    }

    /// `beta_n^{(j)}(0) = (-1)^{j-1} j! (H_{2n+1}^{(j+1)} - 2^{-(j+1)} H_n^{(j+1)})`.
    pub fn beta_deriv_at_zero(&self, n: u64, j: u32) -> Rational {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        Rational::integer(factorial(j as u64) * sign) * self.odd(n, j + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    #[test]
    fn common_base_matches_rational_sums() {
        for x in [q(0, 1), q(1, 2), q(-1, 3), q(7, 5), q(-13, 64)] {
            let direct = beta_derivs_at(9, 6, &x).unwrap();
            let (numers, base) = beta_derivs_common_base(9, 6, &x).unwrap();
            for (j, (d, num)) in direct.iter().zip(&numers).enumerate() {
                let scaled = Rational::new(num.clone(), base.pow(j as u32 + 1)).unwrap();
                assert_eq!(&scaled, d, "x = {x}, j = {j}");
            }
        }
        assert!(beta_derivs_common_base(3, 2, &q(-5, 1)).is_err());
    }

    // Oracle: one unreduced common-denominator fraction, reduced at the end.
    fn brute_harmonic(n: i64, r: u32) -> Rational {
        let mut num = BigInt::from(0);
        let mut den = BigInt::from(1);
        for k in 1..=n {
            let kp = BigInt::from(k).pow(r);
            num = num * &kp + &den;
            den *= kp;
        }
        Rational::new(num, den).unwrap()
    }

    #[test]
    fn harmonic_examples() {
        for r in 1..6 {
            assert_eq!(harmonic(1, r), Rational::one());
        }
        assert_eq!(harmonic(3, 1), q(11, 6));
        assert_eq!(harmonic(2, 2), q(5, 4));
        for n in 1..15 {
            for r in 1..5 {
                assert_eq!(harmonic(n, r), brute_harmonic(n as i64, r));
            }
        }
    }

    #[test]
    fn odd_harmonic_examples() {
        for j in 1..6 {
            assert_eq!(odd_harmonic(0, j), Rational::one());
        }
        assert_eq!(odd_harmonic(1, 1), q(4, 3));
        assert_eq!(harmonic(3, 1) - q(1, 2) * harmonic(1, 1), q(4, 3));
        assert_eq!(odd_harmonic(2, 2), q(259, 225));
        assert_eq!(harmonic(5, 2) - q(1, 4) * harmonic(2, 2), q(259, 225));
    }

    #[test]
    fn beta_examples() {
        let zero = Rational::zero();
        assert_eq!(beta_deriv_at(1, 0, &zero).unwrap(), q(-4, 3));
        assert_eq!(beta_deriv_at(0, 1, &zero).unwrap(), q(1, 1));
        assert_eq!(beta_deriv_at(1, 1, &zero).unwrap(), q(10, 9));
        // beta_1''(0) = -2 (1 + 1/27)
        assert_eq!(beta_deriv_at(1, 2, &zero).unwrap(), q(-56, 27));
        // at x = 1: -(1/2 + 1/4)
        assert_eq!(beta_deriv_at(1, 0, &q(1, 1)).unwrap(), q(-3, 4));
    }

    #[test]
    fn poles_detected() {
        assert!(matches!(beta_deriv_at(1, 0, &q(-3, 1)), Err(Error::Pole { odd: 3, .. })));
        assert!(matches!(beta_deriv_at(0, 0, &q(-1, 1)), Err(Error::Pole { odd: 1, .. })));
        assert!(beta_deriv_at(0, 0, &q(-3, 1)).is_ok());
        assert!(beta_deriv_at(5, 0, &q(-2, 1)).is_ok());
        assert!(beta_deriv_at(5, 0, &q(-3, 2)).is_ok());
        assert!(check_pole(5, &q(-11, 1)).is_err());
        assert!(check_pole(5, &q(-13, 1)).is_ok());
    }

    #[test]
    fn table_odd_sums_agree_with_direct_sums() {
        let table = HarmonicTable::for_odd_sums(300, 10);
        for j in 1..=10u32 {
            let mut running = Rational::zero();
            for n in 0..=300u64 {
                running = running + inverse_power(&BigInt::from(2 * n + 1), j);
                assert_eq!(table.odd(n, j), running, "n={n} j={j}");
            }
            assert_eq!(running, odd_harmonic(300, j));
        }
        for &(m, j) in &[(1u64, 1u32), (17, 3), (250, 7), (601, 10)] {
            assert_eq!(table.get(m, j), &harmonic(m, j));
        }
    }

    #[test]
    fn table_increments_are_reciprocal_powers() {
        let table = HarmonicTable::new(60, 6);
        for m in 2..=60u64 {
            for j in 1..=6 {
                let step = table.get(m, j) - table.get(m - 1, j);
                assert_eq!(step, Rational::new(1, BigInt::from(m).pow(j)).unwrap());
            }
        }
    }

    #[test]
    fn beta_signs_and_table_route() {
        let table = HarmonicTable::for_odd_sums(40, 9);
        let zero = Rational::zero();
        for n in 0..=40u64 {
            let direct = beta_derivs_at(n, 8, &zero).unwrap();
            for j in 0..=8u32 {
                let v = &direct[j as usize];
                assert_eq!(v, &table.beta_deriv_at_zero(n, j));
                let expected_sign = if j == 0 { -1 } else if j % 2 == 1 { 1 } else { -1 };
                assert_eq!(v.signum(), expected_sign);
            }
        }
    }
}
