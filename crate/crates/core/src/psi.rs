//! Stirling and Bell numbers for an arbitrary number sequence `psi`.
//!
//! `psi` replaces the q-integers: factorials become `psi_1 psi_2 ... psi_n` and
//! falling factorials `psi_x psi_(x-1) ... psi_(x-k+1)`. The Stirling numbers
//! of row `n` are the unique solution of
//!
//! ```text
//! (psi_x)^n = sum_k S[n,k] psi_x psi_(x-1) ... psi_(x-k+1)
//! ```
//!
//! imposed at the nodes `x = 0..=n`. The node matrix is lower triangular with
//! diagonal `k_psi!`, so forward substitution is exact. For a general sequence
//! the relation need not hold beyond those nodes; [`psi_residuals`] reports
//! what happens there.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::parse_rational;
use crate::qcore::q_number_at;
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Source {
    Gauss(Rational),
    Natural,
    Fibonacci,
    Table(BTreeMap<usize, Rational>),
}

/// An exact rational sequence with `psi_0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiSequence {
    name: String,
    source: Source,
}

impl PsiSequence {
    /// `psi_n = 1 + q + ... + q^(n-1)` at a fixed rational `q`.
    pub fn gauss(q: Rational) -> Self {
        Self {
            name: format!("gauss({q})"),
            source: Source::Gauss(q),
        }
    }

    pub fn natural() -> Self {
        Self {
            name: "natural".into(),
            source: Source::Natural,
        }
    }

    /// Fibonacci numbers with `F_1 = F_2 = 1`.
    pub fn fibonacci() -> Self {
        Self {
            name: "fibonacci".into(),
            source: Source::Fibonacci,
        }
    }

    /// A finite table of values. Index 0 must be present with value 0 and no
    /// listed value at a positive index may vanish.
    pub fn from_table(name: impl Into<String>, values: BTreeMap<usize, Rational>) -> Result<Self> {
        let name = name.into();
        match values.get(&0) {
            Some(v) if v.is_zero() => {}
            Some(v) => {
                return Err(Error::domain(format!(
                    "sequence `{name}` has psi_0 = {v}, expected 0"
                )))
            }
            None => return Err(Error::MissingIndex { name, index: 0 }),
        }
        if let Some((&index, _)) = values.iter().find(|(&n, v)| n > 0 && v.is_zero()) {
            return Err(Error::SingularSequence { name, index });
        }
        Ok(Self {
            name,
            source: Source::Table(values),
        })
    }

    /// Parses lines of the form `n value`, with `value` an integer or `a/b`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_table(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}: `{line}`", lineno + 1));
            let mut fields = line.split_whitespace();
            let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(bad("expected `n value`"));
            };
            let n: usize = n.parse().map_err(|_| bad("bad index"))?;
            let v = parse_rational(v).map_err(|_| bad("bad value"))?;
            if values.insert(n, v).is_some() {
                return Err(bad("duplicate index"));
            }
        }
        Self::from_table(name, values)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_table(path.display().to_string(), &text)
    }

    /// `gauss:a/b`, `natural`, `fibonacci` or `file:PATH`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        match spec.split_once(':') {
            Some(("gauss", q)) => Ok(Self::gauss(parse_rational(q)?)),
            Some(("file", path)) => Self::from_file(path),
            None if spec == "natural" => Ok(Self::natural()),
            None if spec == "fibonacci" => Ok(Self::fibonacci()),
            _ => Err(Error::Parse(format!(
                "unknown sequence `{spec}` (expected gauss:a/b, natural, fibonacci or file:PATH)"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `psi_n`, nonzero for `n >= 1`.
    pub fn value(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let v = match &self.source {
            Source::Gauss(q) => q_number_at(n as u64, q),
            Source::Natural => Rational::from_integer(n.into()),
            Source::Fibonacci => {
                let (mut a, mut b) = (BigInt::zero(), BigInt::one());
                for _ in 1..n {
                    (a, b) = (b.clone(), a + b);
                }
                Rational::from_integer(b)
            }
            Source::Table(values) => {
                values.get(&n).cloned().ok_or_else(|| Error::MissingIndex {
                    name: self.name.clone(),
                    index: n,
                })?
            }
        };
        if v.is_zero() {
            return Err(Error::SingularSequence {
                name: self.name.clone(),
                index: n,
            });
        }
        Ok(v)
    }

    /// `psi_n` with negative indices read as 0.
    fn value_signed(&self, n: i64) -> Result<Rational> {
        if n <= 0 {
            Ok(Rational::zero())
        } else {
            self.value(n as usize)
        }
    }
}

impl fmt::Display for PsiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// `psi_1 psi_2 ... psi_n`.
pub fn psi_factorial(n: usize, psi: &PsiSequence) -> Result<Rational> {
    (1..=n).try_fold(Rational::one(), |acc, j| Ok(acc * psi.value(j)?))
}

/// `psi_x psi_(x-1) ... psi_(x-k+1)`; zero once the product reaches `psi_0`.
pub fn psi_falling_factorial(x: usize, k: usize, psi: &PsiSequence) -> Result<Rational> {
    let mut acc = Rational::one();
    for j in 0..k {
        let v = psi.value_signed(x as i64 - j as i64)?;
        if v.is_zero() {
            return Ok(v);
        }
        acc *= v;
    }
    Ok(acc)
}

/// Row `n` of the Stirling triangle, `S[n,0..=n]`.
pub fn psi_stirling_row(n: usize, psi: &PsiSequence) -> Result<Vec<Rational>> {
    let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
    for x in 0..=n {
        let mut rhs = psi.value(x)?.pow_u(n as u64);
        for (k, s) in row.iter().enumerate() {
            if !s.is_zero() {
                rhs -= s * psi_falling_factorial(x, k, psi)?;
            }
        }
        row.push(rhs / psi_factorial(x, psi)?);
    }
    Ok(row)
}

/// Rows `0..=n` of the Stirling triangle.
pub fn psi_stirling(n: usize, psi: &PsiSequence) -> Result<Vec<Vec<Rational>>> {
    (0..=n).map(|m| psi_stirling_row(m, psi)).collect()
}

pub fn psi_bell(n: usize, psi: &PsiSequence) -> Result<Rational> {
    Ok(psi_stirling_row(n, psi)?.into_iter().sum())
}

/// `(psi_x)^n - sum_k S[n,k] psi_x ... psi_(x-k+1)` at the held-out nodes
/// `x = n+1 ..= n+extra`.
pub fn psi_residuals(n: usize, psi: &PsiSequence, extra: usize) -> Result<Vec<(usize, Rational)>> {
    let row = psi_stirling_row(n, psi)?;
    (n + 1..=n + extra)
        .map(|x| {
            let mut r = psi.value(x)?.pow_u(n as u64);
            for (k, s) in row.iter().enumerate() {
                r -= s * psi_falling_factorial(x, k, psi)?;
            }
            Ok((x, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::carlitz_stirling;
    use crate::classical;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn factorial_examples() {
        let fib = PsiSequence::fibonacci();
        assert_eq!(psi_factorial(0, &fib).unwrap(), int(1));
        assert_eq!(psi_factorial(4, &fib).unwrap(), int(6));
        assert_eq!(
            psi_factorial(4, &PsiSequence::gauss(int(1))).unwrap(),
            int(24)
        );
        let values: Vec<Rational> = (0..=10).map(|n| fib.value(n).unwrap()).collect();
        assert_eq!(values, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55].map(int));
    }

    #[test]
    fn falling_factorial_examples() {
        let fib = PsiSequence::fibonacci();
        assert_eq!(psi_falling_factorial(7, 0, &fib).unwrap(), int(1));
        assert_eq!(psi_falling_factorial(4, 2, &fib).unwrap(), int(6));
        assert_eq!(psi_falling_factorial(2, 3, &fib).unwrap(), int(0));
    }

    #[test]
    fn stirling_and_bell_examples() {
        let fib = PsiSequence::fibonacci();
        assert_eq!(
            psi_stirling_row(2, &fib).unwrap(),
            vec![int(0), int(1), int(0)]
        );
        assert_eq!(psi_bell(2, &fib).unwrap(), int(1));
        assert_eq!(psi_bell(4, &PsiSequence::natural()).unwrap(), int(15));
        assert_eq!(psi_bell(3, &PsiSequence::gauss(r(1, 2))).unwrap(), r(19, 8));
        assert_eq!(psi_stirling_row(0, &fib).unwrap(), vec![int(1)]);
    }

    #[test]
    fn triangularity() {
        for psi in [
            PsiSequence::fibonacci(),
            PsiSequence::natural(),
            PsiSequence::gauss(r(3, 7)),
        ] {
            for x in 0..8 {
                for k in x + 1..10 {
                    assert!(psi_falling_factorial(x, k, &psi).unwrap().is_zero());
                }
                assert_eq!(
                    psi_falling_factorial(x, x, &psi).unwrap(),
                    psi_factorial(x, &psi).unwrap()
                );
            }
        }
    }

    #[test]
    fn gauss_matches_carlitz() {
        for q in [r(1, 10), r(1, 2), r(9, 10), int(2), int(10)] {
            let psi = PsiSequence::gauss(q.clone());
            let table = psi_stirling(8, &psi).unwrap();
            for n in 1..=8 {
                for k in 0..=n {
                    let expected = if k == 0 {
                        Rational::zero()
                    } else {
                        carlitz_stirling(n, k).unwrap().eval(&q)
                    };
                    assert_eq!(table[n][k], expected, "q={q} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn natural_matches_classical() {
        let table = psi_stirling(10, &PsiSequence::natural()).unwrap();
        for (n, row) in table.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                assert_eq!(*s, Rational::from_integer(classical::stirling2(n, k)));
            }
        }
    }

    #[test]
    fn residuals_vanish_for_genuine_identities() {
        for psi in [PsiSequence::natural(), PsiSequence::gauss(r(2, 3))] {
            for n in 0..=6 {
                for (_, res) in psi_residuals(n, &psi, 3).unwrap() {
                    assert!(res.is_zero());
                }
            }
        }
        // Fibonacci is not an identity beyond the nodes: F_5^2 = 25, but the n=2 row gives F_5 = 5.
        assert_eq!(
            psi_residuals(2, &PsiSequence::fibonacci(), 1).unwrap(),
            vec![(3, int(2))]
        );
    }

    #[test]
    fn singular_and_missing_values() {
        let q_minus_one = PsiSequence::gauss(int(-1));
        assert!(matches!(
            psi_factorial(3, &q_minus_one),
            Err(Error::SingularSequence { index: 2, .. })
        ));
        let t = PsiSequence::parse_table("t", "# head\n0 0\n1 1\n\n2 3/2\n").unwrap();
        assert_eq!(psi_factorial(2, &t).unwrap(), r(3, 2));
        assert!(matches!(
            psi_stirling_row(3, &t),
            Err(Error::MissingIndex { index: 3, .. })
        ));
        assert!(matches!(
            PsiSequence::parse_table("t", "1 1\n"),
            Err(Error::MissingIndex { index: 0, .. })
        ));
        assert!(PsiSequence::parse_table("t", "0 1\n").is_err());
        assert!(matches!(
            PsiSequence::parse_table("t", "0 0\n1 0\n"),
            Err(Error::SingularSequence { index: 1, .. })
        ));
        assert!(matches!(
            PsiSequence::parse_table("t", "0 0\n0 0\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            PsiSequence::parse_table("t", "0 0 0\n"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            PsiSequence::from_spec("gauss:1/2").unwrap(),
            PsiSequence::gauss(r(1, 2))
        );
        assert_eq!(PsiSequence::from_spec("natural").unwrap().name(), "natural");
        assert_eq!(
            PsiSequence::from_spec("fibonacci").unwrap(),
            PsiSequence::fibonacci()
        );
        assert!(PsiSequence::from_spec("lucas").is_err());
        assert!(PsiSequence::from_spec("gauss:x").is_err());
        assert!(PsiSequence::from_spec("file:/nonexistent/psi.txt").is_err());
    }
}
