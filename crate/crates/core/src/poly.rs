//! Dense univariate polynomials over an arbitrary [`Scalar`] ring.
//!
//! Coefficients are stored in ascending order and trailing zeros are always
//! trimmed, so two equal polynomials have identical representations. The zero
//! polynomial has no coefficients and degree [`Degree::NegInfinity`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar};
use crate::Rational;

/// Degree of a polynomial; the zero polynomial sits below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `c * x^degree`.
    pub fn monomial(c: T, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the end.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Applies a ring map coefficient-wise.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: FieldScalar> Poly<T> {
    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(lead) = divisor.leading_coeff() else {
            return Err(Error::domain("polynomial division by zero"));
        };
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }
}

impl Poly<Rational> {
    /// Common denominator of the coefficients and the primitive integer
    /// polynomial `self * lcm(denominators) / gcd(numerators)`, sign chosen so
    /// the leading coefficient is positive. Returns `(content, primitive)` with
    /// `self = content * primitive`.
    pub fn content_and_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        let prim = ints.into_iter().map(|c| c / &g).collect();
        (Rational::new(g, lcm), prim)
    }

    /// Monic greatest common divisor over the rationals; zero iff both inputs
    /// are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, mut a) = self.content_and_primitive();
        let (_, mut b) = other.content_and_primitive();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_part(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        Poly::new(a.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Canonical text form in the variable `var`, ascending powers.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            match i {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }

    /// Parses the output of [`render`](Self::render) (or any sum of
    /// `c*var^e` terms) back into a polynomial.
    pub fn parse_in(s: &str, var: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = Self::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let (coef_str, power) = match body.find(var) {
                None => (body, 0usize),
                Some(pos) => {
                    let head = &body[..pos];
                    let tail = &body[pos + var.len()..];
                    let power = if tail.is_empty() {
                        1
                    } else if let Some(e) = tail.strip_prefix('^') {
                        e.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                    } else {
                        return Err(Error::Parse(format!("bad term `{term}`")));
                    };
                    let coef = match head {
                        "" => "1",
                        h => h
                            .strip_suffix('*')
                            .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?,
                    };
                    (coef, power)
                }
            };
            let mut c = parse_rational(coef_str)?;
            if neg {
                c = -c;
            }
            acc = acc + Self::monomial(c, power);
        }
        Ok(acc)
    }
}

/// Parses `a` or `a/b` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(
            s.parse::<BigInt>().map_err(|_| bad())?,
        )),
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive_part(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl FromStr for Poly<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, "q")
    }
}

impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }
}

impl<T: Scalar> Add<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Scalar> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: &Poly<T>) -> Poly<T> {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Scalar> AddAssign<&Poly<T>> for Poly<T> {
    fn add_assign(&mut self, rhs: &Poly<T>) {
        *self = &*self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QPoly;
    use proptest::prelude::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("1 + q") + p("1 - q"), p("2"));
        assert_eq!(p("1 + q") * p("1 + q"), p("1 + 2*q + q^2"));
        let zero = p("3 + q") * QPoly::zero();
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), Degree::NegInfinity);
        assert!(zero.coeffs().is_empty());
    }

    #[test]
    fn eval_examples() {
        let f = p("1 + q + q^2");
        assert_eq!(f.eval(&r(1, 1)), r(3, 1));
        assert_eq!(f.eval(&r(1, 2)), r(7, 4));
        assert_eq!(QPoly::zero().eval(&r(5, 3)), r(0, 1));
    }

    #[test]
    fn degree_ordering() {
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p("q^3 - q").degree(), Degree::Finite(3));
        assert_eq!((p("q^2 + 1") - p("q^2")).degree(), Degree::Finite(0));
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(p("1 + 2*q + q^2").to_string(), "1 + 2*q + q^2");
        let f = QPoly::new(vec![r(-1, 2), r(0, 1), r(-1, 1), r(3, 4)]);
        assert_eq!(f.to_string(), "-1/2 - q^2 + 3/4*q^3");
        assert_eq!(p(&f.to_string()), f);
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p("-q").to_string(), "-q");
        assert!("q^x".parse::<QPoly>().is_err());
        assert!("1 + ".parse::<QPoly>().is_err());
        assert!("1/0".parse::<QPoly>().is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = p("1 + 2*q + q^2");
        let b = p("1 + q");
        assert_eq!(a.exact_div(&b), Some(b.clone()));
        assert_eq!(p("q^2").exact_div(&b), None);
        let (qt, rm) = p("q^3 + 2").div_rem(&p("2*q")).unwrap();
        assert_eq!(qt, p("1/2*q^2"));
        assert_eq!(rm, p("2"));
        assert!(a.div_rem(&QPoly::zero()).is_err());

        let g = (p("1 + q") * p("1 + q + q^2")).gcd(&(p("1 + q") * p("1 - q")));
        assert_eq!(g, p("1 + q"));
        assert_eq!(p("3*q + 3").gcd(&QPoly::zero()), p("1 + q"));
        assert!(QPoly::zero().gcd(&QPoly::zero()).is_zero());
        assert_eq!(p("1/2 + q").gcd(&p("2 + 4*q")), p("1/2 + q"));
    }

    fn small_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-9i64..10, 1i64..4), 0..6)
            .prop_map(|c| Poly::new(c.into_iter().map(|(n, d)| r(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in small_poly(), b in small_poly(), n in -9i64..10, d in 1i64..5) {
            let x = r(n, d);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }

        #[test]
        fn render_parse_round_trip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<QPoly>().unwrap(), a);
        }
    }
}
