use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A power series in a named variable, known through an explicit order.
///
/// `coeffs[i]` is the coefficient of `var^i` for `0 <= i <= order`; nothing
/// beyond the order is known, so no operation ever extends it.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    var: String,
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Series whose order is `coeffs.len() - 1`.
    pub fn new(var: impl Into<String>, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain(
                "a truncated series needs at least one coefficient",
            ));
        }
        Ok(Self {
            var: var.into(),
            coeffs,
        })
    }

    pub fn zero(var: impl Into<String>, order: usize) -> Self {
        Self {
            var: var.into(),
            coeffs: vec![T::zero(); order + 1],
        }
    }

    /// A polynomial read as a series, truncated or zero-padded to `order`.
    pub fn from_poly(var: impl Into<String>, p: &Poly<T>, order: usize) -> Self {
        Self {
            var: var.into(),
            coeffs: (0..=order).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    /// Drops the terms above `order`; asking for a higher order is an error.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::IncompatibleSeries(format!(
                "cannot extend a series of order {} to order {order}",
                self.order()
            )));
        }
        Ok(Self {
            var: self.var.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::IncompatibleSeries(format!(
                "variables `{}` and `{}` differ",
                self.var, other.var
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        Ok(Self {
            var: self.var.clone(),
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        Ok(Self {
            var: self.var.clone(),
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
                .collect(),
        })
    }

    /// Cauchy product through the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(T::zero(), |acc, i| {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * b.clone()
                    }
                })
            })
            .collect();
        Ok(Self {
            var: self.var.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Index of the first coefficient where the two series differ, comparing
    /// through the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}
