//! Carlitz q-Stirling numbers of the second kind, q-Bell polynomials and the
//! q-Dobinski identity.
//!
//! The numbers are characterised by expanding the q-integer power in q-falling
//! factorials,
//!
//! ```text
//! (x_q)^n = sum_k S_q[n,k] * x_q (x-1)_q ... (x-k+1)_q     for all x >= 0,
//! ```
//!
//! and computed by the recurrence `S_q[n,k] = q^(k-1) S_q[n-1,k-1] + k_q S_q[n-1,k]`,
//! which follows from `x_q = k_q + q^k (x-k)_q`. [`solve_defining_relation`]
//! recovers the same numbers by a triangular solve of the expansion itself and
//! is kept as an independent check on the recurrence.

use num_traits::{One, Zero};

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};
use crate::partition::{weighted_sum, Statistic};
use crate::qcore::{
    q_exp_series_symbolic, q_falling_factorial, q_falling_factorial_in, q_int, q_number_in,
    SeriesVar,
};
use crate::qpoisson::{self, QPoissonParams};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::{Degree, Poly, QPoly, QRationalFunction, Rational};

/// Triangle `S_q[n,k]` for `0 <= k <= n <= n_max` over any ring in which `q`
/// is given.
#[derive(Debug, Clone, PartialEq)]
pub struct QStirlingTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> QStirlingTable<T> {
    /// Builds the triangle with `q` taking the given value.
    pub fn carlitz_in(n_max: usize, q: &T) -> Self {
        let mut rows: Vec<Vec<T>> = vec![vec![T::one()]];
        let mut q_pow = vec![T::one()];
        for n in 1..=n_max {
            q_pow.push(q_pow[n - 1].clone() * q.clone());
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let mut v = T::zero();
                    if k >= 1 {
                        v = v + q_pow[k - 1].clone() * prev[k - 1].clone();
                    }
                    if k < n {
                        v = v + q_number_in(k as i64, q) * prev[k].clone();
                    }
                    v
                })
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S_q[n,k]`, zero for `k > n`; `None` past `n_max`.
    pub fn get(&self, n: usize, k: usize) -> Option<T> {
        let row = self.rows.get(n)?;
        Some(row.get(k).cloned().unwrap_or_else(T::zero))
    }

    pub fn row(&self, n: usize) -> Option<&[T]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// A copy with one entry replaced, for exercising the verifiers.
    pub fn with_entry(&self, n: usize, k: usize, value: T) -> Self {
        let mut rows = self.rows.clone();
        rows[n][k] = value;
        Self { rows }
    }

    /// Entry-wise image under a ring map, e.g. evaluation at a rational `q`.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> QStirlingTable<U> {
        QStirlingTable {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }
}

impl QStirlingTable<QPoly> {
    /// The symbolic triangle, entries polynomials in `q`.
    pub fn carlitz(n_max: usize) -> Self {
        Self::carlitz_in(n_max, &QPoly::x())
    }
}

/// `S_q[n,k]` as a polynomial in `q`.
pub fn carlitz_stirling(n: usize, k: usize) -> Result<QPoly> {
    if k > n {
        return Err(Error::domain(format!(
            "carlitz_stirling needs 0 <= k <= n, got n={n} k={k}"
        )));
    }
    Ok(QStirlingTable::carlitz(n).get(n, k).unwrap())
}

/// Independent route to row `n`: impose the defining expansion at
/// `x = 0, ..., n` and back-substitute in the field of rational functions.
/// The node matrix is lower triangular with diagonal `x_q!`.
pub fn solve_defining_relation(n: usize) -> Result<Vec<QPoly>> {
    let q = QRationalFunction::from(QPoly::x());
    let mut row: Vec<QRationalFunction> = Vec::with_capacity(n + 1);
    for x in 0..=n {
        let lhs = q_number_in(x as i64, &q).pow_u(n as u64);
        let known = row
            .iter()
            .enumerate()
            .fold(QRationalFunction::zero(), |acc, (k, s)| {
                acc + s.clone() * q_falling_factorial_in(x, k, &q)
            });
        let diag = q_falling_factorial_in(x, x, &q);
        row.push((lhs - known) / diag);
    }
    row.into_iter()
        .enumerate()
        .map(|(k, f)| {
            f.as_poly().cloned().ok_or_else(|| {
                Error::domain(format!("S_q[{n},{k}] solved to a non-polynomial {f}"))
            })
        })
        .collect()
}

/// Checks `(x_q)^n = sum_k S_q[n,k] * falling(x, k)` as polynomial identities
/// for `x = 0..=x_max`.
pub fn verify_defining_relation(n: usize, x_max: usize) -> Result<Report> {
    verify_defining_relation_with(&QStirlingTable::carlitz(n), n, x_max)
}

pub fn verify_defining_relation_with(
    table: &QStirlingTable<QPoly>,
    n: usize,
    x_max: usize,
) -> Result<Report> {
    if x_max < n {
        return Err(Error::domain(format!(
            "x_max must be at least n (n={n}, x_max={x_max})"
        )));
    }
    let row = table
        .row(n)
        .ok_or_else(|| Error::domain(format!("table stops before row {n}")))?;
    let mut failure = None;
    for x in 0..=x_max {
        let lhs = q_int(x).pow_u(n as u64);
        let rhs = row.iter().enumerate().fold(QPoly::zero(), |acc, (k, s)| {
            acc + s * &q_falling_factorial(x, k)
        });
        if lhs != rhs {
            failure = Some(format!("n={n}, x={x}: lhs {lhs} != rhs {rhs}"));
            break;
        }
    }
    let mut report = Report::new("defining-relation");
    report.push(format!("(x_q)^{n} expansion"), x_max + 1, failure);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMode {
    /// `B_n(q) = sum_k S_q[n,k]`.
    AtOne,
    /// Also keep `S_q[n,k]` as the coefficient of `lambda^k`.
    Polynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QBellValue {
    pub n: usize,
    pub poly: QPoly,
    /// `lambda_form[k] = S_q[n,k]` when requested.
    pub lambda_form: Option<Vec<QPoly>>,
}

impl QBellValue {
    /// `sum_k S_q[n,k](q) * lambda^k` at rational `q` and `lambda`.
    pub fn eval(&self, q: &Rational, lambda: &Rational) -> Rational {
        match &self.lambda_form {
            Some(form) => Poly::new(form.iter().map(|s| s.eval(q)).collect()).eval(lambda),
            None => {
                let row = QStirlingTable::carlitz(self.n);
                let form: Vec<Rational> =
                    row.row(self.n).unwrap().iter().map(|s| s.eval(q)).collect();
                Poly::new(form).eval(lambda)
            }
        }
    }
}

pub fn q_bell(n: usize, mode: LambdaMode) -> QBellValue {
    let table = QStirlingTable::carlitz(n);
    let row = table.row(n).unwrap().to_vec();
    let poly = row.iter().fold(QPoly::zero(), |acc, s| acc + s);
    QBellValue {
        n,
        poly,
        lambda_form: (mode == LambdaMode::Polynomial).then_some(row),
    }
}

/// Formal q-Dobinski check through order `order` in `lambda`:
///
/// * `sum_k lambda^k (k_q)^n / k_q!  ==  e_q(lambda) * sum_j S_q[n,j] lambda^j`
/// * `sum_k lambda^k falling(k, m) / k_q!  ==  lambda^m e_q(lambda)` for each `m <= n`
///
/// with rational-function coefficients.
pub fn dobinski_formal_verify(n: usize, order: usize) -> Result<Report> {
    dobinski_formal_verify_with(&QStirlingTable::carlitz(n), n, order)
}

pub fn dobinski_formal_verify_with(
    table: &QStirlingTable<QPoly>,
    n: usize,
    order: usize,
) -> Result<Report> {
    if order < n {
        return Err(Error::domain(format!(
            "series order must be at least n (n={n}, order={order})"
        )));
    }
    let row = table
        .row(n)
        .ok_or_else(|| Error::domain(format!("table stops before row {n}")))?;
    let var = SeriesVar::Lambda;
    let q = QRationalFunction::from(QPoly::x());
    let exp_q = q_exp_series_symbolic(var, order);

    let lhs = TruncatedSeries::new(
        var.name(),
        (0..=order)
            .map(|k| q_number_in(k as i64, &q).pow_u(n as u64) * exp_q.coeffs()[k].clone())
            .collect(),
    )?;
    let bell_lambda = Poly::new(row.iter().cloned().map(QRationalFunction::from).collect());
    let rhs = exp_q.mul(&TruncatedSeries::from_poly(var.name(), &bell_lambda, order))?;

    let mut report = Report::new("q-dobinski-formal");
    let failure = lhs.first_mismatch(&rhs).map(|i| {
        format!(
            "lambda^{i}: lhs {} != rhs {}",
            lhs.coeffs()[i],
            rhs.coeffs()[i]
        )
    });
    report.push(format!("moment series n={n}"), order + 1, failure);

    let mut failure = None;
    for m in 0..=n {
        let lhs = TruncatedSeries::new(
            var.name(),
            (0..=order)
                .map(|k| q_falling_factorial_in(k, m, &q) * exp_q.coeffs()[k].clone())
                .collect(),
        )?;
        let shifted = TruncatedSeries::from_poly(
            var.name(),
            &Poly::monomial(QRationalFunction::one(), m),
            order,
        );
        let rhs = exp_q.mul(&shifted)?;
        if let Some(i) = lhs.first_mismatch(&rhs) {
            failure = Some(format!(
                "m={m}, lambda^{i}: lhs {} != rhs {}",
                lhs.coeffs()[i],
                rhs.coeffs()[i]
            ));
            break;
        }
    }
    report.push("factorial moments m<=n", (n + 1) * (order + 1), failure);
    Ok(report)
}

/// q-Dobinski sum `sum_k lambda^k (k_q)^n / k_q!` normalised by `e_q(lambda)`,
/// as a certified enclosure of half-width at most `eps`.
///
/// The enclosure contains `sum_k S_q[n,k](q) lambda^k`.
pub fn dobinski_numeric(
    n: usize,
    q: &Rational,
    lambda: &Rational,
    eps: &Rational,
) -> Result<CertifiedValue> {
    qpoisson::moment(
        n,
        &QPoissonParams::new(lambda.clone(), q.clone(), eps.clone())?,
    )
}

/// `S_q[n,k]` has nonnegative integer coefficients.
pub fn has_counting_coefficients(p: &QPoly) -> bool {
    p.coeffs()
        .iter()
        .all(|c| c.is_integer() && *c >= Rational::zero())
}

/// Exponents found by [`inv_calibration`], with the report.
#[derive(Debug, Clone, PartialEq)]
pub struct InvCalibration {
    /// `exponents[k]` is the `e` with `S_q[n,k] = q^e * inv_sum(n,k)` for every
    /// `n` checked, when such an `e` exists; index 0 is unused.
    pub exponents: Vec<Option<usize>>,
    pub report: Report,
}

/// Compares `S_q[n,k]` with the inv-weighted partition sums for
/// `1 <= k <= n <= n_max`: each ratio must be a single monomial `q^e(k)` with
/// `e(k)` independent of `n`.
pub fn inv_calibration(n_max: usize) -> Result<InvCalibration> {
    inv_calibration_with(&QStirlingTable::carlitz(n_max), n_max)
}

pub fn inv_calibration_with(table: &QStirlingTable<QPoly>, n_max: usize) -> Result<InvCalibration> {
    if n_max == 0 || table.n_max() < n_max {
        return Err(Error::domain(format!(
            "inv calibration needs 1 <= n_max <= {}",
            table.n_max()
        )));
    }
    let mut exponents: Vec<Option<usize>> = vec![None; n_max + 1];
    let mut monomial_failure = None;
    let mut consistency_failure = None;
    let mut cases = 0;
    for n in 1..=n_max {
        for k in 1..=n {
            cases += 1;
            let carlitz = table.get(n, k).unwrap_or_else(QPoly::zero);
            let inv = weighted_sum(n, Some(k), Statistic::Inv)?;
            let e = match (carlitz.degree(), inv.degree()) {
                (Degree::Finite(a), Degree::Finite(b)) if a >= b && inv.shift(a - b) == carlitz => {
                    a - b
                }
                _ => {
                    monomial_failure.get_or_insert_with(|| {
                        format!("n={n}, k={k}: ({carlitz}) / ({inv}) is not a power of q")
                    });
                    continue;
                }
            };
            match exponents[k] {
                None => exponents[k] = Some(e),
                Some(prev) if prev != e => {
                    consistency_failure.get_or_insert_with(|| {
                        format!("n={n}, k={k}: exponent {e}, earlier rows gave {prev}")
                    });
                }
                Some(_) => {}
            }
        }
    }
    let mut report = Report::new("inv-calibration");
    report.push("ratio is a monomial", cases, monomial_failure);
    report.push("exponent depends only on k", cases, consistency_failure);
    Ok(InvCalibration { exponents, report })
}
