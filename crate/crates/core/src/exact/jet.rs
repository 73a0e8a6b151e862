use crate::error::{Error, Result};
use crate::exact::Rational;

/// Truncated power series `c_0 + c_1 e + ... + c_order e^order` with exact
/// coefficients. Dense: orders here stay small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorJet {
    coeffs: Vec<Rational>,
}

impl TaylorJet {
    /// `a0 + a1 e`, zero-padded to `order`.
    pub fn affine(a0: Rational, a1: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = a0;
        if order >= 1 {
            coeffs[1] = a1;
        }
        TaylorJet { coeffs }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::affine(c, Rational::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// Builds a jet from explicit coefficients; `coeffs` must be non-empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a jet needs at least one coefficient".into()));
        }
        Ok(TaylorJet { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    fn check_order(&self, other: &TaylorJet) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &TaylorJet) -> Result<TaylorJet> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                    .map(|i| &self.coeffs[i] * &other.coeffs[k - i])
                    .sum()
            })
            .collect();
        Ok(TaylorJet { coeffs })
    }

    pub fn add(&self, other: &TaylorJet) -> Result<TaylorJet> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TaylorJet { coeffs })
    }

    pub fn scale(&self, factor: &Rational) -> TaylorJet {
        TaylorJet {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Power-series division `1 / self`:
    /// `b_0 = 1/a_0`, `b_k = -(1/a_0) * sum_{i=1..k} a_i b_{k-i}`.
    pub fn reciprocal(&self) -> Result<TaylorJet> {
        let a = &self.coeffs;
        let inv0 = a[0].recip().map_err(|_| Error::ZeroLeadingCoefficient)?;
        let mut b: Vec<Rational> = Vec::with_capacity(a.len());
        b.push(inv0.clone());
        for k in 1..a.len() {
            let acc: Rational = (1..=k)
                .filter(|&i| !a[i].is_zero())
                .map(|i| &a[i] * &b[k - i])
                .sum();
            b.push(-(acc * &inv0));
        }
        Ok(TaylorJet { coeffs: b })
    }
}
