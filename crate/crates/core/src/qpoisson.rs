//! The q-Poisson distribution `p_k = lambda^k / (k_q! e_q(lambda))`.
//!
//! Quantities that need the irrational normaliser `e_q(lambda)` are computed as
//! certified enclosures: the series are summed in outward-rounded interval
//! arithmetic and the remaining tails are bounded geometrically. Identities in
//! which the normaliser cancels ([`verify_eq8`]) are checked exactly on the
//! unnormalised generating function instead.
//!
//! # Tail bounds
//!
//! Every summand has the form `a_k = w(k) lambda^k / k_q!`. For the weights
//! used here (`1`, `(k_q)^n`, and `k_q (k-1)_q ... (k-m+1)_q` once `k >= m`)
//! the ratio `r_k = a_{k+1}/a_k` is non-increasing in `k` for every `q > 0`,
//! since both `(k+1)_q / k_q` and `1/(k+1)_q` are. So once `r_K < 1`,
//! `sum_{k>K} a_k <= a_K r_K / (1 - r_K)`.
//!
//! For `q < 1` the ratio of `e_q` tends to `lambda (1 - q)`, so the
//! distribution only exists when `lambda (1 - q) < 1`; outside that region the
//! certified operations report a domain error.

use num_traits::{One, Signed, Zero};

use crate::certified::{BigFloat, CertifiedValue, Interval, Round};
use crate::error::{Error, Result};
use crate::qcore::{check_q, jackson_derivative, q_number_at};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::Rational;

pub const DEFAULT_MAX_TERMS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct QPoissonParams {
    pub lambda: Rational,
    pub q: Rational,
    /// Target half-width of certified results.
    pub eps: Rational,
    pub max_terms: usize,
}

impl QPoissonParams {
    pub fn new(lambda: Rational, q: Rational, eps: Rational) -> Result<Self> {
        check_q(&q)?;
        if !lambda.is_positive() {
            return Err(Error::domain(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if !eps.is_positive() {
            return Err(Error::domain(format!(
                "tolerance must be positive, got {eps}"
            )));
        }
        Ok(Self {
            lambda,
            q,
            eps,
            max_terms: DEFAULT_MAX_TERMS,
        })
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// Whether `e_q(lambda)` converges, i.e. `q >= 1` or `lambda (1 - q) < 1`.
    pub fn converges(&self) -> bool {
        self.q >= Rational::one() || &self.lambda * (Rational::one() - &self.q) < Rational::one()
    }

    fn check_convergent(&self) -> Result<()> {
        if self.converges() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "e_q(lambda) diverges for q = {}, lambda = {}: need lambda * (1 - q) < 1",
                self.q, self.lambda
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Weight {
    /// Indicator of a single index.
    Point(usize),
    /// `(k_q)^n`.
    Power(u32),
    /// `k_q (k-1)_q ... (k-m+1)_q`.
    Falling(u32),
}

impl Weight {
    fn at(self, k: usize, q: &Rational) -> Rational {
        match self {
            Weight::Point(j) => {
                if k == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Weight::Power(n) => q_number_at(k as u64, q).pow_u(n as u64),
            Weight::Falling(m) => {
                if (m as usize) > k {
                    return Rational::zero();
                }
                (0..m as usize).fold(Rational::one(), |acc, j| {
                    acc * q_number_at((k - j) as u64, q)
                })
            }
        }
    }
}

/// Upper bound of `a * rho / (1 - rho)` for exact `0 <= rho < 1`.
fn geometric_tail(a: &BigFloat, rho: &Rational) -> BigFloat {
    let factor = rho / (Rational::one() - rho);
    a.mul(&BigFloat::from_rational(&factor, Round::Up), Round::Up)
}

/// Tracks the last ratio and decides when the geometric tail bound applies.
#[derive(Default)]
struct RatioGate {
    prev: Option<Rational>,
}

impl RatioGate {
    fn admit(&mut self, rho: Rational) -> Option<Rational> {
        let ok = rho < Rational::one() && self.prev.as_ref().is_some_and(|p| &rho <= p);
        self.prev = Some(rho.clone());
        ok.then_some(rho)
    }
}

/// Certified enclosure of `sum_k w(k) p_k`.
fn expectation(weight: Weight, params: &QPoissonParams) -> Result<CertifiedValue> {
    params.check_convergent()?;
    let (q, lambda) = (&params.q, &params.lambda);
    let lam = Interval::from_rational(lambda);

    // term = lambda^k / k_q!
    let mut term = Interval::from_rational(&Rational::one());
    let mut den = term.clone();
    let mut num = Interval::from_rational(&weight.at(0, q)).mul(&term);
    let mut w_k = weight.at(0, q);
    let mut den_gate = RatioGate::default();
    let mut num_gate = RatioGate::default();
    let mut last_bound: Option<Rational> = None;

    for k in 0..=params.max_terms {
        if k > 0 {
            term = term
                .mul(&lam)
                .div(&Interval::from_rational(&q_number_at(k as u64, q)));
            den = den.add(&term);
            w_k = weight.at(k, q);
            if !w_k.is_zero() {
                num = num.add(&Interval::from_rational(&w_k).mul(&term));
            }
        }
        let next_q = q_number_at(k as u64 + 1, q);
        let den_tail = den_gate
            .admit(lambda / &next_q)
            .map(|rho| geometric_tail(&term.hi, &rho));

        let num_tail = match weight {
            Weight::Point(j) if k >= j => Some(BigFloat::zero()),
            Weight::Point(_) => None,
            _ if w_k.is_zero() => None,
            _ => {
                let w_next = weight.at(k + 1, q);
                let rho = lambda * &w_next / (&w_k * &next_q);
                num_gate.admit(rho).map(|rho| {
                    let a = BigFloat::from_rational(&w_k, Round::Up).mul(&term.hi, Round::Up);
                    geometric_tail(&a, &rho)
                })
            }
        };

        let (Some(den_tail), Some(num_tail)) = (den_tail, num_tail) else {
            continue;
        };
        let lo = num.lo.div(&den.hi.add(&den_tail, Round::Up), Round::Down);
        let hi = num.hi.add(&num_tail, Round::Up).div(&den.lo, Round::Up);
        let value = CertifiedValue::new(lo.to_rational(), hi.to_rational());
        let half = value.half_width();
        if half <= params.eps {
            return Ok(value);
        }
        last_bound = Some(half);
    }
    Err(Error::Convergence {
        terms: params.max_terms + 1,
        last_bound: last_bound.unwrap_or_else(|| term.hi.to_rational()),
    })
}

/// `P(X = k)`.
pub fn pmf(k: usize, params: &QPoissonParams) -> Result<CertifiedValue> {
    expectation(Weight::Point(k), params)
}

/// `E[(X_q)^n]`, the q-Dobinski sum; at `lambda = 1` it encloses `B_n(q)`.
pub fn moment(n: usize, params: &QPoissonParams) -> Result<CertifiedValue> {
    expectation(Weight::Power(n as u32), params)
}

/// `E[X_q (X-1)_q ... (X-m+1)_q]`, which equals `lambda^m`.
pub fn factorial_moment(m: usize, params: &QPoissonParams) -> Result<CertifiedValue> {
    expectation(Weight::Falling(m as u32), params)
}

/// `sum_{n <= order} lambda^n / n_q! t^n`: the generating function without
/// its `1/e_q(lambda)` factor.
pub fn pgf_unnormalized(params: &QPoissonParams, order: usize) -> TruncatedSeries<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut u = Rational::one();
    coeffs.push(u.clone());
    for n in 1..=order {
        u = u * &params.lambda / q_number_at(n as u64, &params.q);
        coeffs.push(u.clone());
    }
    TruncatedSeries::new("t", coeffs).expect("at least one coefficient")
}

/// Exact checks of the generating-function relations, with the normaliser
/// cancelled:
///
/// * (a) `[d_q^n G]_{t=0} / n_q! = u_n` for `n <= order`
/// * (b) `n_q u_n = lambda u_{n-1}` for `1 <= n <= order`, the termwise form
///   of `[d_q G]_{t=1} = lambda`.
pub fn verify_eq8(params: &QPoissonParams, order: usize) -> Result<Report> {
    verify_eq8_with(params, &pgf_unnormalized(params, order))
}

/// As [`verify_eq8`] on a caller-supplied series.
pub fn verify_eq8_with(
    params: &QPoissonParams,
    series: &TruncatedSeries<Rational>,
) -> Result<Report> {
    let order = series.order();
    if order < 2 {
        return Err(Error::domain(format!(
            "verify_eq8 needs order >= 2, got {order}"
        )));
    }
    let (q, lambda) = (&params.q, &params.lambda);
    let mut report = Report::new("eq8");

    let mut failure = None;
    let mut derived = series.clone();
    let mut expected = Rational::one();
    let mut fact = Rational::one();
    for n in 0..=order {
        if n > 0 {
            derived = jackson_derivative(&derived, q)?;
            let nq = q_number_at(n as u64, q);
            expected = expected * lambda / &nq;
            fact *= nq;
        }
        let recovered = &derived.coeffs()[0] / &fact;
        if recovered != expected {
            failure = Some(format!("n={n}: recovered {recovered}, expected {expected}"));
            break;
        }
    }
    report.push("(a) q-Maclaurin recovery", order + 1, failure);

    let u = series.coeffs();
    let failure = (1..=order).find_map(|n| {
        let lhs = q_number_at(n as u64, q) * &u[n];
        let rhs = lambda * &u[n - 1];
        (lhs != rhs).then(|| format!("n={n}: n_q u_n = {lhs}, lambda u_(n-1) = {rhs}"))
    });
    report.push("(b) termwise mean identity", order, failure);
    Ok(report)
}
