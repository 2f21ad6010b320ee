use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{QPoly, Rational};

/// A reduced quotient of two polynomials in `q` over the rationals.
///
/// The representation is canonical: numerator and denominator are coprime and
/// the denominator is monic, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRationalFunction {
    num: QPoly,
    den: QPoly,
}

impl QRationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lead = den.leading_coeff().unwrap().clone();
        if lead.is_one() {
            Self { num, den }
        } else {
            let inv = lead.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    /// The polynomial this function equals, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Evaluates at a rational `q`; `None` where the denominator vanishes.
    pub fn eval(&self, q: &Rational) -> Option<Rational> {
        let d = self.den.eval(q);
        (!d.is_zero()).then(|| self.num.eval(q) / d)
    }

    pub fn checked_recip(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| Self::reduce(self.den.clone(), self.num.clone()))
    }
}

impl From<QPoly> for QRationalFunction {
    fn from(p: QPoly) -> Self {
        Self {
            num: p,
            den: QPoly::one(),
        }
    }
}

impl From<Rational> for QRationalFunction {
    fn from(c: Rational) -> Self {
        QPoly::constant(c).into()
    }
}

impl fmt::Display for QRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for QRationalFunction {
    fn zero() -> Self {
        Self {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRationalFunction {
    fn one() -> Self {
        Self {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }
}

impl Add for QRationalFunction {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return Self::reduce(self.num + rhs.num, self.den);
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = rhs.den.exact_div(&g).unwrap();
        Self::reduce(self.num * &b + rhs.num * &a, a * &rhs.den)
    }
}

impl Sub for QRationalFunction {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for QRationalFunction {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for QRationalFunction {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-cancel so the product is already reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = self.num.exact_div(&g1).unwrap() * rhs.num.exact_div(&g2).unwrap();
        let den = self.den.exact_div(&g2).unwrap() * rhs.den.exact_div(&g1).unwrap();
        let inv = den.leading_coeff().unwrap().recip();
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Div for QRationalFunction {
    type Output = Self;

    /// # Panics
    /// On division by the zero function, like integer division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        let inv = rhs
            .checked_recip()
            .expect("division by the zero rational function");
        self * inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn f(n: &str, d: &str) -> QRationalFunction {
        QRationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        let h = f("1 - q^2", "2 + 2*q");
        assert_eq!(h.numer(), &p("1/2 - 1/2*q"));
        assert_eq!(h.denom(), &p("1"));
        assert_eq!(h.as_poly(), Some(&p("1/2 - 1/2*q")));
        assert!(QRationalFunction::new(p("1"), QPoly::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let a = f("1", "1 + q");
        let b = f("q", "1 + q");
        assert!((a.clone() + b.clone()).is_one());
        assert_eq!(a.clone() * f("1 + q", "1"), QRationalFunction::one());
        assert_eq!((a.clone() / a.clone()), QRationalFunction::one());
        assert!((a.clone() - a.clone()).is_zero());
        assert_eq!(a.to_string(), "(1)/(1 + q)");
        assert_eq!(
            a.eval(&Rational::new(1.into(), 2.into())),
            Some(Rational::new(2.into(), 3.into()))
        );
        assert_eq!(a.eval(&Rational::from_integer((-1).into())), None);
    }

    #[test]
    fn reduction_is_idempotent() {
        let h = f("1 + 2*q + q^2", "1 - q^2");
        let again = QRationalFunction::new(h.numer().clone(), h.denom().clone()).unwrap();
        assert_eq!(h, again);
        assert_eq!(h, f("-1 - q", "-1 + q"));
    }

    fn small_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-6i64..7, 0..5).prop_map(|c| {
            QPoly::new(
                c.into_iter()
                    .map(|v| Rational::from_integer(v.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_on_random_fractions(n in small_poly(), d in small_poly(), m in small_poly()) {
            prop_assume!(!d.is_zero() && !m.is_zero());
            let h = QRationalFunction::new(&n * &m, &d * &m).unwrap();
            let again = QRationalFunction::new(h.numer().clone(), h.denom().clone()).unwrap();
            prop_assert_eq!(&h, &again);
            prop_assert_eq!(h, QRationalFunction::new(n, d).unwrap());
        }
    }
}
