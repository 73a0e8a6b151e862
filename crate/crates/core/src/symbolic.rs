//! The derivative polynomials `f_{n,s}` as sparse integer polynomials in the
//! variables `b_j`, where `b_j` stands for the j-th derivative of
//! `beta_n(x)`. The polynomials do not depend on `n`; `n` and `x` only enter
//! at evaluation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::exact::{binomial, Rational};
use crate::harmonic::beta_derivs_at;

/// `prod_j b_j^{e_j}` with trailing zero exponents trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BetaMonomial {
    exponents: Vec<u32>,
}

impl BetaMonomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        BetaMonomial { exponents }
    }

    pub fn one() -> Self {
        BetaMonomial::default()
    }

    /// The single variable `b_j`.
    pub fn var(j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        BetaMonomial { exponents: e }
    }

    /// Builds from `(variable, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let len = pairs.iter().map(|&(j, _)| j + 1).max().unwrap_or(0);
        let mut e = vec![0; len];
        for &(j, p) in pairs {
            e[j] += p;
        }
        BetaMonomial::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.exponents.get(j).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `sum_j (j+1) e_j`: the derivative order this monomial contributes.
    pub fn weight(&self) -> u32 {
        self.exponents.iter().enumerate().map(|(j, &e)| (j as u32 + 1) * e).sum()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    fn times_var(&self, j: usize) -> Self {
        let mut e = self.exponents.clone();
        if e.len() <= j {
            e.resize(j + 1, 0);
        }
        e[j] += 1;
        BetaMonomial { exponents: e }
    }

    /// `b_j^{e_j - 1} b_{j+1}` times the rest; caller ensures `e_j > 0`.
    fn shift_one(&self, j: usize) -> Self {
        let mut e = self.exponents.clone();
        e[j] -= 1;
        if e.len() <= j + 1 {
            e.resize(j + 2, 0);
        }
        e[j + 1] += 1;
        BetaMonomial::new(e)
    }

    /// Display order: higher total degree first, then lexicographically
    /// larger exponent vectors first.
    pub fn graded_cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| {
                let len = self.exponents.len().max(other.exponents.len());
                (0..len)
                    .map(|j| other.exponent(j).cmp(&self.exponent(j)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

impl fmt::Display for BetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match e {
                1 => write!(f, "b{j}")?,
                _ => write!(f, "b{j}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with big-integer coefficients; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BetaPolynomial {
    terms: BTreeMap<BetaMonomial, BigInt>,
}

impl BetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(BetaMonomial::one(), BigInt::one())])
    }

    pub fn var(j: usize) -> Self {
        Self::from_terms([(BetaMonomial::var(j), BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BetaMonomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Accumulates `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: BetaMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BetaMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &BetaMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest variable index present, if any variable is.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.exponents.len().checked_sub(1)).max()
    }

    /// Every monomial shares weight `w`.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(BetaMonomial::weight);
        let w = weights.next()?;
        weights.all(|x| x == w).then_some(w)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, k)| (m.clone(), k * c)))
    }

    pub fn mul_var(&self, j: usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.times_var(j), c.clone())))
    }

    /// The derivation `b_j -> b_{j+1}` extended by the product rule.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (j, &e) in m.exponents.iter().enumerate() {
                if e > 0 {
                    out.add_term(m.shift_one(j), c * BigInt::from(e));
                }
            }
        }
        out
    }

    /// `b_0 p + D p`: one step of `f_{s+1} = beta f_s + d/dx f_s`.
    pub fn recurrence_step(&self) -> Self {
        self.mul_var(0).add(&self.derive())
    }

    /// Exact value with `b_j := values[j]`.
    pub fn evaluate_with(&self, values: &[Rational]) -> Rational {
        let max_exp = self.terms.keys().flat_map(|m| m.exponents.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<Rational>> = values
            .iter()
            .map(|v| {
                let mut row = vec![Rational::one()];
                for _ in 0..max_exp {
                    let next = row.last().expect("seeded") * v;
                    row.push(next);
                }
                row
            })
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(Rational::integer(c.clone()), |acc, (j, &e)| acc * &powers[j][e as usize])
            })
            .sum()
    }

    /// Value with `b_j := numers[j] / base^{j+1}`, summed over integers and
    /// reduced once. `None` unless every monomial has the same weight.
    pub fn evaluate_over_base(&self, numers: &[BigInt], base: &BigInt) -> Option<Rational> {
        let w = self.homogeneous_weight()?;
        let total: BigInt = self
            .terms
            .iter()
            .map(|(m, c)| {
                m.exponents
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(c.clone(), |acc, (j, &e)| acc * numers[j].pow(e))
            })
            .sum();
        Rational::new(total, base.pow(w)).ok()
    }

    /// Substitutes `b_j := beta_n^{(j)}(x)`.
    pub fn evaluate(&self, n: u64, x: &Rational) -> Result<Rational> {
        let max_j = self.max_var().unwrap_or(0) as u32;
        let values = beta_derivs_at(n, max_j, x)?;
        Ok(self.evaluate_with(&values))
    }

    /// Floating-point form for hot loops.
    pub fn compile(&self) -> CompiledPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let factors = m
                    .exponents
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| (j, e as i32))
                    .collect();
                (c.to_f64().unwrap_or(f64::NAN), factors)
            })
            .collect();
        CompiledPolynomial {
            terms,
            vars: self.max_var().map_or(0, |j| j + 1),
        }
    }

    /// Terms sorted for display.
    pub fn sorted_terms(&self) -> Vec<(&BetaMonomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.graded_cmp(b.0));
        v
    }
}

impl fmt::Display for BetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude} {m}")?;
            }
        }
        Ok(())
    }
}

/// `f64` mirror of a [`BetaPolynomial`].
#[derive(Clone, Debug)]
pub struct CompiledPolynomial {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
    vars: usize,
}

impl CompiledPolynomial {
    /// Number of `b_j` values `eval` reads.
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn eval(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, factors)| factors.iter().fold(*c, |acc, &(j, e)| acc * values[j].powi(e)))
            .sum()
    }
}

/// `f_{n,r}` in the `b_j` variables; `r = 0` gives the constant 1.
pub fn f_poly(r: u32) -> BetaPolynomial {
    let mut p = BetaPolynomial::one();
    for _ in 0..r {
        p = p.recurrence_step();
    }
    p
}

/// Complete Bell polynomial `B_r(b_0, ..., b_{r-1})` from
/// `B_{s+1} = sum_{k=0..s} C(s, k) B_{s-k} b_k`, `B_0 = 1`.
pub fn bell_poly(r: u32) -> BetaPolynomial {
    let mut table = vec![BetaPolynomial::one()];
    for s in 0..r as usize {
        let mut next = BetaPolynomial::zero();
        for k in 0..=s {
            let term = table[s - k].mul_var(k).scale(&binomial(s as u64, k as u64));
            next = next.add(&term);
        }
        table.push(next);
    }
    table.pop().expect("nonempty")
}

/// `f_poly(0..=max_r)` built once and shared read-only.
#[derive(Clone, Debug)]
pub struct FPolyCache {
    polys: Vec<BetaPolynomial>,
}

impl FPolyCache {
    pub fn new(max_r: u32) -> Self {
        let mut polys = vec![BetaPolynomial::one()];
        for _ in 0..max_r {
            let next = polys.last().expect("seeded").recurrence_step();
            polys.push(next);
        }
        FPolyCache { polys }
    }

    pub fn max_r(&self) -> u32 {
        self.polys.len() as u32 - 1
    }

    pub fn get(&self, r: u32) -> &BetaPolynomial {
        &self.polys[r as usize]
    }
}
