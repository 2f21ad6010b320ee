//! Outward-rounded interval arithmetic on nonnegative binary floats, and the
//! [`CertifiedValue`] reported for every infinite sum.
//!
//! A [`BigFloat`] is `mantissa * 2^exponent` with the mantissa kept to
//! [`PRECISION`] bits. Every operation takes a rounding direction, so an
//! [`Interval`] built from lower/upper roundings always encloses the exact
//! real result. Only nonnegative quantities occur in the series we sum, which
//! keeps the interval rules to their monotone forms.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Mantissa width in bits.
pub const PRECISION: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// A nonnegative dyadic number `mantissa * 2^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigUint,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        Self {
            mant: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn from_parts(mut mant: BigUint, mut exp: i64, rnd: Round, mut inexact: bool) -> Self {
        if mant.is_zero() {
            return if inexact && rnd == Round::Up {
                // positive but below the working scale
                Self {
                    mant: BigUint::one(),
                    exp: exp - PRECISION as i64,
                }
            } else {
                Self::zero()
            };
        }
        let bits = mant.bits();
        if bits > PRECISION {
            let shift = bits - PRECISION;
            inexact |= mant.trailing_zeros().unwrap_or(0) < shift;
            mant >>= shift;
            exp += shift as i64;
        } else if inexact {
            let shift = PRECISION - bits;
            mant <<= shift;
            exp -= shift as i64;
        }
        if inexact && rnd == Round::Up {
            mant += 1u32;
        }
        Self { mant, exp }
    }

    /// Rounds a nonnegative rational in the given direction.
    pub fn from_rational(r: &Rational, rnd: Round) -> Self {
        assert!(!r.is_negative(), "BigFloat holds nonnegative values only");
        let num = r.numer().magnitude().clone();
        let den = r.denom().magnitude().clone();
        Self::quotient(num, 0, &den, 0, rnd)
    }

    fn quotient(num: BigUint, num_exp: i64, den: &BigUint, den_exp: i64, rnd: Round) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = (PRECISION + 1 + den.bits()).saturating_sub(num.bits());
        let (q, r) = (num << shift).div_rem(den);
        Self::from_parts(q, num_exp - shift as i64 - den_exp, rnd, !r.is_zero())
    }

    /// Exact value.
    pub fn to_rational(&self) -> Rational {
        let m = BigInt::from(self.mant.clone());
        if self.exp >= 0 {
            Rational::from_integer(m << self.exp as usize)
        } else {
            Rational::new(m, BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Position just above the highest set bit.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn add(&self, other: &Self, rnd: Round) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        if small.top() < big.top() - 2 * PRECISION as i64 {
            // small lies entirely below the last retained bit of the sum
            return Self::from_parts(big.mant.clone(), big.exp, rnd, true);
        }
        let e = big.exp.min(small.exp);
        let m = (&big.mant << (big.exp - e) as usize) + (&small.mant << (small.exp - e) as usize);
        Self::from_parts(m, e, rnd, false)
    }

    /// `self - other`; requires `self >= other`.
    pub fn sub(&self, other: &Self, rnd: Round) -> Self {
        assert!(self >= other, "BigFloat subtraction would go negative");
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let m = (&self.mant << (self.exp - e) as usize) - (&other.mant << (other.exp - e) as usize);
        Self::from_parts(m, e, rnd, false)
    }

    pub fn mul(&self, other: &Self, rnd: Round) -> Self {
        Self::from_parts(&self.mant * &other.mant, self.exp + other.exp, rnd, false)
    }

    /// # Panics
    /// When dividing by zero.
    pub fn div(&self, other: &Self, rnd: Round) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        Self::quotient(self.mant.clone(), self.exp, &other.mant, other.exp, rnd)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        self.top().cmp(&other.top()).then_with(|| {
            let e = self.exp.min(other.exp);
            (&self.mant << (self.exp - e) as usize).cmp(&(&other.mant << (other.exp - e) as usize))
        })
    }
}

/// A closed interval `[lo, hi]` of nonnegative reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: BigFloat,
    pub hi: BigFloat,
}

impl Interval {
    pub fn zero() -> Self {
        Self {
            lo: BigFloat::zero(),
            hi: BigFloat::zero(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self {
            lo: BigFloat::from_rational(r, Round::Down),
            hi: BigFloat::from_rational(r, Round::Up),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.add(&other.lo, Round::Down),
            hi: self.hi.add(&other.hi, Round::Up),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.mul(&other.lo, Round::Down),
            hi: self.hi.mul(&other.hi, Round::Up),
        }
    }

    /// Requires `other.lo > 0`.
    pub fn div(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.div(&other.hi, Round::Down),
            hi: self.hi.div(&other.lo, Round::Up),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::from_rational(&Rational::one()), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.hi.is_zero()
    }
}

/// An exact enclosure `[lo, hi]` of a real quantity computed by a certified
/// summation.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedValue {
    lo: Rational,
    hi: Rational,
}

impl CertifiedValue {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Self { lo, hi }
    }

    pub fn from_interval(iv: &Interval) -> Self {
        Self::new(iv.lo.to_rational(), iv.hi.to_rational())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Midpoint of the enclosure.
    pub fn estimate(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn half_width(&self) -> Rational {
        (&self.hi - &self.lo) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn estimate_f64(&self) -> f64 {
        self.estimate().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {}",
            format_decimal(&self.estimate(), 20),
            format_error_bound(&self.half_width())
        )
    }
}

/// Decimal expansion of `r` truncated toward zero after `digits` fractional
/// digits, trailing zeros removed.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (a.numer() * &scale) / a.denom();
    let (int, frac) = scaled.div_rem(&scale);
    let mut frac = format!("{:0>width$}", frac.to_string(), width = digits);
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Scientific rendering of a nonnegative bound, rounded upward to three
/// significant digits so the printed bound is never smaller than the true one.
pub fn format_error_bound(r: &Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    // find e with 10^e <= r < 10^(e+1)
    let ten = Rational::from_integer(10.into());
    let mut e: i64 = 0;
    let mut x = r.clone();
    while x >= ten {
        x /= &ten;
        e += 1;
    }
    while x < Rational::one() {
        x *= &ten;
        e -= 1;
    }
    let scaled = x * Rational::from_integer(100.into());
    let mut m = scaled.ceil().to_integer().to_u64().unwrap();
    if m >= 1000 {
        m /= 10;
        e += 1;
    }
    format!("{}.{:02}e{}", m / 100, m % 100, e)
}

/// Parses a tolerance written as a decimal or in scientific notation
/// (`1e-12`, `0.5`, `2.5E-3`) into an exact positive rational.
pub fn parse_tolerance(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a tolerance: `{s}`"));
    let s = s.trim();
    if let Ok(r) = crate::poly::parse_rational(s) {
        return positive(r, s);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let m: BigInt = digits.parse().map_err(|_| bad())?;
    let e = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let r = if e >= 0 {
        Rational::from_integer(m * ten.pow(e as u32))
    } else {
        Rational::new(m, ten.pow((-e) as u32))
    };
    positive(r, s)
}

fn positive(r: Rational, s: &str) -> Result<Rational> {
    if r.is_positive() {
        Ok(r)
    } else {
        Err(Error::domain(format!(
            "tolerance must be positive, got `{s}`"
        )))
    }
}
