//! Cigler's q-Stirling and q-Bell numbers.
//!
//! A partition of `{0, ..., n-1}` is weighted by `q^cigl`, where `cigl` is the
//! sum of the elements sharing a block with 0. Choosing the `j` nonzero
//! elements of that block contributes the subset-sum generating function
//! `q^(j(j+1)/2) [n-1 choose j]_q`, and the remaining `n-1-j` elements are
//! partitioned classically, which gives
//!
//! ```text
//! S^cigl[n,k] = sum_j q^(j(j+1)/2) [n-1 choose j]_q S(n-1-j, k-1).
//! ```
//!
//! The same numbers arise as Poisson(1) averages of the deformed power
//! `x (x - 1 + q) (x - 1 + q^2) ... (x - 1 + q^(n-1))`.

use num_traits::{One, Zero};

use crate::classical::stirling2_table;
use crate::error::{Error, Result};
use crate::qcore::q_binomial;
use crate::report::Report;
use crate::series::TruncatedSeries;
use crate::{Poly, QPoly, Rational};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("cigl numbers are defined for n >= 1"));
    }
    Ok(())
}

/// `sum over k-block partitions of {0..n-1} of q^cigl`.
pub fn cigl_stirling(n: usize, k: usize) -> Result<QPoly> {
    check_n(n)?;
    if k > n {
        return Err(Error::domain(format!(
            "cigl_stirling needs 0 <= k <= n, got n={n} k={k}"
        )));
    }
    if k == 0 {
        return Ok(QPoly::zero());
    }
    let classical = stirling2_table(n - 1);
    let mut acc = QPoly::zero();
    for j in 0..n {
        let rest = n - 1 - j;
        if k - 1 > rest {
            continue;
        }
        let s = &classical[rest][k - 1];
        if s.is_zero() {
            continue;
        }
        let term = q_binomial(n - 1, j as i64)
            .shift(j * (j + 1) / 2)
            .scale(&Rational::from_integer(s.clone()));
        acc += &term;
    }
    Ok(acc)
}

pub fn cigl_bell(n: usize) -> Result<QPoly> {
    check_n(n)?;
    (1..=n).try_fold(QPoly::zero(), |acc, k| Ok(acc + cigl_stirling(n, k)?))
}

/// `x (x - 1 + q) ... (x - 1 + q^(n-1))` as a polynomial in `x` whose
/// coefficients are polynomials in `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CiglFallingPower {
    n: usize,
    poly: Poly<QPoly>,
}

impl CiglFallingPower {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let poly = (0..n).fold(Poly::one(), |acc: Poly<QPoly>, j| {
            // x - 1 + q^j
            let constant = QPoly::monomial(Rational::one(), j) - QPoly::one();
            acc * Poly::new(vec![constant, QPoly::one()])
        });
        Ok(Self { n, poly })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients of `x^0, ..., x^n`.
    pub fn monomial_coeffs(&self) -> &[QPoly] {
        self.poly.coeffs()
    }

    /// Value at a nonnegative integer `x`, as a polynomial in `q`.
    pub fn at(&self, x: usize) -> QPoly {
        self.poly
            .eval(&QPoly::constant(Rational::from_integer(x.into())))
    }

    /// Coefficients `c_m` with `P = sum_m c_m x(x-1)...(x-m+1)`, using
    /// `x^i = sum_m S(i, m) x(x-1)...(x-m+1)`.
    pub fn falling_basis(&self) -> Vec<QPoly> {
        let classical = stirling2_table(self.n);
        (0..=self.n)
            .map(|m| {
                self.monomial_coeffs()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i >= m)
                    .fold(QPoly::zero(), |acc, (i, a)| {
                        acc + a.scale(&Rational::from_integer(classical[i][m].clone()))
                    })
            })
            .collect()
    }
}

/// `c_{n,0..=n}` of the deformed power in the ordinary falling-factorial basis.
pub fn cigl_falling_power_expand(n: usize) -> Result<Vec<QPoly>> {
    Ok(CiglFallingPower::new(n)?.falling_basis())
}

/// Checks the cigl-Dobinski identity:
///
/// * (a) `sum_m c_{n,m} = cigl_bell(n)`, the Poisson(1) average of the deformed power;
/// * (b) `sum_k lambda^k P_n(k)/k! = e^lambda sum_m c_{n,m} lambda^m` through `order`.
pub fn cigl_dobinski_verify(n: usize, order: usize) -> Result<Report> {
    cigl_dobinski_verify_with(&cigl_falling_power_expand(n)?, n, order)
}

/// As [`cigl_dobinski_verify`] with caller-supplied `c_{n,m}`.
pub fn cigl_dobinski_verify_with(coeffs: &[QPoly], n: usize, order: usize) -> Result<Report> {
    check_n(n)?;
    if order < n {
        return Err(Error::domain(format!(
            "series order must be at least n (n={n}, order={order})"
        )));
    }
    let mut report = Report::new("cigl-dobinski");

    let total = coeffs.iter().fold(QPoly::zero(), |acc, c| acc + c);
    let bell = cigl_bell(n)?;
    let failure =
        (total != bell).then(|| format!("n={n}: sum_m c_m = {total}, cigl_bell = {bell}"));
    report.push("(a) exact Poisson(1) average", 1, failure);

    let power = CiglFallingPower::new(n)?;
    let mut inv_fact = vec![Rational::one()];
    for k in 1..=order {
        let next = &inv_fact[k - 1] / Rational::from_integer(k.into());
        inv_fact.push(next);
    }
    let var = "lambda";
    let lhs = TruncatedSeries::new(
        var,
        (0..=order)
            .map(|k| power.at(k).scale(&inv_fact[k]))
            .collect(),
    )?;
    let exp = TruncatedSeries::new(var, inv_fact.iter().cloned().map(QPoly::constant).collect())?;
    let rhs = exp.mul(&TruncatedSeries::from_poly(
        var,
        &Poly::new(coeffs.to_vec()),
        order,
    ))?;
    let failure = lhs.first_mismatch(&rhs).map(|i| {
        format!(
            "lambda^{i}: lhs {} != rhs {}",
            lhs.coeffs()[i],
            rhs.coeffs()[i]
        )
    });
    report.push("(b) formal series in lambda", order + 1, failure);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical;
    use crate::partition::{weighted_sum, Statistic};

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(cigl_stirling(2, 1).unwrap(), p("q"));
        assert_eq!(cigl_stirling(3, 2).unwrap(), p("1 + q + q^2"));
        assert!(cigl_stirling(3, 0).unwrap().is_zero());
        assert!(cigl_stirling(0, 0).is_err());
        assert!(cigl_stirling(3, 4).is_err());
    }

    #[test]
    fn bell_examples() {
        assert_eq!(cigl_bell(2).unwrap(), p("1 + q"));
        assert_eq!(cigl_bell(3).unwrap(), p("2 + q + q^2 + q^3"));
        assert_eq!(cigl_bell(4).unwrap().eval(&r(1, 1)), r(15, 1));
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for n in 1..=8 {
            for k in 1..=n {
                assert_eq!(
                    cigl_stirling(n, k).unwrap(),
                    weighted_sum(n, Some(k), Statistic::Cigl).unwrap(),
                    "n={n} k={k}"
                );
            }
            assert_eq!(
                cigl_bell(n).unwrap(),
                weighted_sum(n, None, Statistic::Cigl).unwrap()
            );
        }
    }

    #[test]
    fn classical_limit() {
        for n in 1..=10 {
            for k in 1..=n {
                assert_eq!(
                    cigl_stirling(n, k).unwrap().eval(&r(1, 1)),
                    Rational::from_integer(classical::stirling2(n, k))
                );
            }
            let power = CiglFallingPower::new(n).unwrap();
            let at_one: Vec<Rational> = power
                .monomial_coeffs()
                .iter()
                .map(|c| c.eval(&r(1, 1)))
                .collect();
            let mut expected = vec![Rational::zero(); n + 1];
            expected[n] = Rational::one();
            assert_eq!(at_one, expected, "n={n}");
        }
    }

    #[test]
    fn falling_power_examples() {
        assert_eq!(
            cigl_falling_power_expand(2).unwrap(),
            vec![QPoly::zero(), p("q"), p("1")]
        );
        assert_eq!(
            cigl_falling_power_expand(1).unwrap(),
            vec![QPoly::zero(), p("1")]
        );
        let at_one: Vec<Rational> = cigl_falling_power_expand(5)
            .unwrap()
            .iter()
            .map(|c| c.eval(&r(1, 1)))
            .collect();
        let expected: Vec<Rational> = (0..=5)
            .map(|m| Rational::from_integer(classical::stirling2(5, m)))
            .collect();
        assert_eq!(at_one, expected);
        let power = CiglFallingPower::new(3).unwrap();
        assert_eq!(power.n(), 3);
        assert_eq!(power.monomial_coeffs().len(), 4);
        assert!(power.at(0).is_zero());
    }

    #[test]
    fn dobinski_examples() {
        let c2: QPoly = cigl_falling_power_expand(2)
            .unwrap()
            .iter()
            .fold(QPoly::zero(), |a, c| a + c);
        assert_eq!(c2, cigl_bell(2).unwrap());
        assert!(cigl_dobinski_verify(2, 4).unwrap().passed());
        assert!(cigl_dobinski_verify(3, 6).unwrap().passed());
        assert!(cigl_dobinski_verify(3, 2).is_err());
    }

    #[test]
    fn dobinski_detects_perturbation() {
        let mut c = cigl_falling_power_expand(4).unwrap();
        c[2] = &c[2] + &p("q");
        let report = cigl_dobinski_verify_with(&c, 4, 8).unwrap();
        assert!(!report.checks[0].passed());
        assert!(!report.checks[1].passed());
    }

    #[test]
    fn numeric_smoke_test_at_lambda_one() {
        // sum_k P_n(k)/k! over k <= 60, times enclosures of 1/e
        let q = r(1, 2);
        let n = 5;
        let power = CiglFallingPower::new(n).unwrap();
        let mut fact = Rational::one();
        let mut partial = Rational::zero();
        for k in 0..=60usize {
            if k > 0 {
                fact *= Rational::from_integer(k.into());
            }
            partial += power.at(k).eval(&q) / &fact;
        }
        let mut inv_e = Rational::zero();
        let mut t = Rational::one();
        for k in 0..60u32 {
            if k > 0 {
                t /= Rational::from_integer(k.into());
            }
            inv_e = if k % 2 == 0 { inv_e + &t } else { inv_e - &t };
        }
        let got = partial * inv_e;
        let exact = cigl_bell(n).unwrap().eval(&q);
        let tol = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(40));
        let diff = if got > exact {
            &got - &exact
        } else {
            &exact - &got
        };
        assert!(diff < tol, "diff {diff}");
    }
}
