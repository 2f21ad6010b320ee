//! q-integers, q-factorials, Gaussian binomials, q-falling factorials, the
//! q-exponential series and the Jackson derivative.
//!
//! Each primitive has a generic form taking the value of `q` in some ring `T`
//! (`*_in`) and a symbolic form returning a [`QPoly`]. Symbolic results are the
//! generic ones evaluated at `q = QPoly::x()`, so numeric and symbolic paths
//! share one implementation.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar};
use crate::series::TruncatedSeries;
use crate::{QPoly, QRationalFunction, Rational};

/// Name of the formal variable of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVar {
    T,
    Lambda,
}

impl SeriesVar {
    pub fn name(self) -> &'static str {
        match self {
            SeriesVar::T => "t",
            SeriesVar::Lambda => "lambda",
        }
    }
}

/// Rejects `q <= 0` for numeric evaluations.
pub fn check_q(q: &Rational) -> Result<()> {
    if q.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("q must be positive, got {q}")))
    }
}

/// `1 + q + ... + q^(n-1)`, with every `n <= 0` mapped to zero.
pub fn q_number_in<T: Scalar>(n: i64, q: &T) -> T {
    let mut acc = T::zero();
    let mut pw = T::one();
    for _ in 0..n.max(0) {
        acc = acc + pw.clone();
        pw = pw * q.clone();
    }
    acc
}

/// `n_q` at a rational `q`, using the closed form `(1 - q^n)/(1 - q)` off `q = 1`.
pub fn q_number_at(n: u64, q: &Rational) -> Rational {
    if q.is_one() {
        return Rational::from_integer(n.into());
    }
    (Rational::one() - q.pow_u(n)) / (Rational::one() - q)
}

pub fn q_int(n: usize) -> QPoly {
    QPoly::new(vec![Rational::one(); n])
}

pub fn q_factorial_in<T: Scalar>(n: usize, q: &T) -> T {
    (1..=n as i64).fold(T::one(), |acc, j| acc * q_number_in(j, q))
}

pub fn q_factorial(n: usize) -> QPoly {
    q_factorial_in(n, &QPoly::x())
}

/// Gaussian binomial `[n choose k]_q` from the q-Pascal rule
/// `[n,k] = [n-1,k-1] + q^k [n-1,k]`; zero for `k < 0` or `k > n`.
pub fn q_binomial_in<T: Scalar>(n: usize, k: i64, q: &T) -> T {
    if k < 0 || k as usize > n {
        return T::zero();
    }
    let k = k as usize;
    let powers: Vec<T> = std::iter::successors(Some(T::one()), |p| Some(p.clone() * q.clone()))
        .take(k + 1)
        .collect();
    let mut row = vec![T::zero(); k + 1];
    row[0] = T::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = row[j - 1].clone() + powers[j].clone() * row[j].clone();
        }
    }
    row[k].clone()
}

pub fn q_binomial(n: usize, k: i64) -> QPoly {
    q_binomial_in(n, k, &QPoly::x())
}

/// `x_q (x-1)_q ... (x-k+1)_q`; vanishes once a factor reaches `0_q`.
pub fn q_falling_factorial_in<T: Scalar>(x: usize, k: usize, q: &T) -> T {
    if k > x {
        return T::zero();
    }
    (0..k).fold(T::one(), |acc, j| acc * q_number_in((x - j) as i64, q))
}

pub fn q_falling_factorial(x: usize, k: usize) -> QPoly {
    q_falling_factorial_in(x, k, &QPoly::x())
}

/// `sum_{k <= order} var^k / k_q!` with `q` given in the field `T`.
pub fn q_exp_series_in<T: FieldScalar>(
    var: SeriesVar,
    order: usize,
    q: &T,
) -> Result<TruncatedSeries<T>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = T::one();
    coeffs.push(T::one());
    for k in 1..=order {
        let qk = q_number_in(k as i64, q);
        if qk.is_zero() {
            return Err(Error::domain(format!("{k}_q vanishes at q = {q:?}")));
        }
        fact = fact * qk;
        coeffs.push(T::one() / fact.clone());
    }
    TruncatedSeries::new(var.name(), coeffs)
}

/// The q-exponential with coefficients `1/k_q!` as rational functions of `q`.
pub fn q_exp_series_symbolic(var: SeriesVar, order: usize) -> TruncatedSeries<QRationalFunction> {
    let q = QRationalFunction::from(QPoly::x());
    q_exp_series_in(var, order, &q).expect("k_q is a nonzero polynomial")
}

/// The q-exponential at a rational `q > 0`.
pub fn q_exp_series_at(
    var: SeriesVar,
    order: usize,
    q: &Rational,
) -> Result<TruncatedSeries<Rational>> {
    check_q(q)?;
    q_exp_series_in(var, order, q)
}

/// Jackson derivative on coefficients: `t^n -> n_q t^(n-1)`.
///
/// The result has order one less than the input; differentiating an order-0
/// series is an error because nothing of the result would be known.
pub fn jackson_derivative<T: Scalar>(f: &TruncatedSeries<T>, q: &T) -> Result<TruncatedSeries<T>> {
    if f.order() == 0 {
        return Err(Error::domain(
            "Jackson derivative of an order-0 series has no known coefficients",
        ));
    }
    let coeffs = (0..f.order())
        .map(|n| q_number_in(n as i64 + 1, q) * f.coeffs()[n + 1].clone())
        .collect();
    TruncatedSeries::new(f.var(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn q_int_examples() {
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(3), p("1 + q + q^2"));
        assert_eq!(q_int(5).eval(&r(1, 1)), r(5, 1));
        for n in 1..10 {
            assert_eq!(q_int(n).eval(&r(0, 1)), r(1, 1));
            assert_eq!(q_number_at(n as u64, &r(2, 3)), q_int(n).eval(&r(2, 3)));
        }
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(0), p("1"));
        // (1)(1+q)(1+q+q^2) expanded by hand
        assert_eq!(q_factorial(3), p("1 + 2*q + 2*q^2 + q^3"));
        assert_eq!(q_factorial(4).eval(&r(1, 1)), r(24, 1));
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(7, 0), p("1"));
        assert_eq!(q_binomial(2, 1), p("1 + q"));
        assert_eq!(q_binomial(4, 2).eval(&r(1, 1)), r(6, 1));
        assert_eq!(q_binomial(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
        assert!(q_binomial(3, -1).is_zero());
        assert!(q_binomial(3, 4).is_zero());
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(q_falling_factorial(6, 0), p("1"));
        assert_eq!(q_falling_factorial(3, 2), p("1 + q + q^2") * p("1 + q"));
        assert!(q_falling_factorial(2, 3).is_zero());
    }

    #[test]
    fn q_exp_examples() {
        let sym = q_exp_series_symbolic(SeriesVar::Lambda, 2);
        let expected: Vec<QRationalFunction> = vec![
            QRationalFunction::one(),
            QRationalFunction::one(),
            QRationalFunction::new(p("1"), p("1 + q")).unwrap(),
        ];
        assert_eq!(sym.coeffs(), expected.as_slice());
        assert_eq!(sym.var(), "lambda");

        let classical = q_exp_series_at(SeriesVar::T, 3, &r(1, 1)).unwrap();
        assert_eq!(classical.coeffs(), &[r(1, 1), r(1, 1), r(1, 2), r(1, 6)]);
        // k_q! at q = 1/2 is 1, 1, 3/2, 21/8
        let half = q_exp_series_at(SeriesVar::T, 3, &r(1, 2)).unwrap();
        assert_eq!(half.coeffs(), &[r(1, 1), r(1, 1), r(2, 3), r(8, 21)]);

        assert!(matches!(
            q_exp_series_at(SeriesVar::T, 3, &r(0, 1)),
            Err(Error::Domain(_))
        ));
        assert!(q_exp_series_at(SeriesVar::T, 3, &r(-1, 2)).is_err());
        // q = -1 makes 2_q vanish; the generic path reports it instead of dividing by zero
        assert!(q_exp_series_in(SeriesVar::T, 3, &r(-1, 1)).is_err());
    }

    #[test]
    fn jackson_examples() {
        let q = QPoly::x();
        let cube = TruncatedSeries::from_poly("t", &Poly::<QPoly>::monomial(QPoly::one(), 3), 3);
        let d = jackson_derivative(&cube, &q).unwrap();
        assert_eq!(
            d.coeffs(),
            &[QPoly::zero(), QPoly::zero(), p("1 + q + q^2")]
        );

        let e = q_exp_series_symbolic(SeriesVar::T, 8);
        let qr = QRationalFunction::from(QPoly::x());
        assert_eq!(jackson_derivative(&e, &qr).unwrap(), e.truncate(7).unwrap());

        let constant = TruncatedSeries::new("t", vec![r(5, 1)]).unwrap();
        assert!(jackson_derivative(&constant, &r(1, 2)).is_err());
    }

    #[test]
    fn subset_sums_match_shifted_q_binomial() {
        // exhaustive enumeration of subsets of {1..n-1}
        for n in 1..=10usize {
            let m = n - 1;
            let mut by_size = vec![QPoly::zero(); m + 1];
            for mask in 0u32..(1 << m) {
                let sum: usize = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).sum();
                let j = mask.count_ones() as usize;
                by_size[j] = &by_size[j] + &QPoly::monomial(Rational::one(), sum);
            }
            for (j, got) in by_size.iter().enumerate() {
                let expected = q_binomial(m, j as i64).shift(j * (j + 1) / 2);
                assert_eq!(got, &expected, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn q_pascal_and_symmetry() {
        let q = QPoly::x();
        for n in 1..=12usize {
            for k in 1..=n as i64 {
                let lhs = q_binomial(n, k);
                let rhs = q_binomial(n - 1, k - 1) + q.pow_u(k as u64) * q_binomial(n - 1, k);
                assert_eq!(lhs, rhs, "n={n} k={k}");
                assert_eq!(lhs, q_binomial(n, n as i64 - k));
            }
        }
    }

    #[test]
    fn falling_factorial_is_factorial_ratio() {
        for x in 0..=9usize {
            for k in 0..=x {
                let ratio = q_factorial(x).exact_div(&q_factorial(x - k)).unwrap();
                assert_eq!(q_falling_factorial(x, k), ratio);
            }
        }
    }

    fn arb_series() -> impl Strategy<Value = TruncatedSeries<Rational>> {
        prop::collection::vec((-9i64..10, 1i64..5), 2..9).prop_map(|v| {
            TruncatedSeries::new("t", v.into_iter().map(|(n, d)| r(n, d)).collect()).unwrap()
        })
    }

    /// `(f(t) - f(qt)) / ((1 - q) t)` computed on the polynomial directly.
    fn difference_quotient(
        f: &TruncatedSeries<Rational>,
        q: &Rational,
    ) -> TruncatedSeries<Rational> {
        let poly = Poly::new(f.coeffs().to_vec());
        let dilated = Poly::new(
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * q.pow_u(i as u64))
                .collect(),
        );
        let numer = poly - dilated;
        let denom = Poly::new(vec![Rational::zero(), Rational::one() - q]);
        let quotient = numer.exact_div(&denom).expect("t divides f(t) - f(qt)");
        TruncatedSeries::from_poly("t", &quotient, f.order() - 1)
    }

    proptest! {
        #[test]
        fn jackson_is_linear(a in arb_series(), b in arb_series(), c in -5i64..6, qn in 1i64..7) {
            let q = r(qn, 3);
            let lhs = jackson_derivative(&a.add(&b.scale(&r(c, 1))).unwrap(), &q).unwrap();
            let rhs = jackson_derivative(&a, &q).unwrap()
                .add(&jackson_derivative(&b, &q).unwrap().scale(&r(c, 1))).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jackson_matches_difference_quotient(f in arb_series(), qn in 1i64..9) {
            let q = r(qn, 4);
            prop_assume!(q != r(1, 1));
            prop_assert_eq!(jackson_derivative(&f, &q).unwrap(), difference_quotient(&f, &q));
        }

        #[test]
        fn jackson_monomial_rule(n in 1usize..12, qn in 1i64..9) {
            let q = r(qn, 5);
            let mono = TruncatedSeries::from_poly("t", &Poly::monomial(r(1, 1), n), n);
            let d = jackson_derivative(&mono, &q).unwrap();
            let expected = TruncatedSeries::from_poly("t", &Poly::monomial(q_number_at(n as u64, &q), n - 1), n - 1);
            prop_assert_eq!(d, expected);
        }
    }
}
