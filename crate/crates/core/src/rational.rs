//! Exact rational scalars.
//!
//! Every quantity in the crate is a [`Rational`]; there is no floating-point
//! path anywhere. The textual form used by reports and JSON inputs is `p/q`
//! (or a bare integer `p`), always in lowest terms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p / q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn from_u64(p: u64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn to_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or `p`. Whitespace around the parts is tolerated.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::RationalLiteral(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Smallest integer `>= q`.
pub fn ceil(q: &Rational) -> BigInt {
    let (quot, rem) = q.numer().div_rem(q.denom());
    if rem.is_positive() {
        quot + 1
    } else {
        quot
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

pub fn min<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn positive_part(q: &Rational) -> Rational {
    if q.is_positive() {
        q.clone()
    } else {
        Rational::zero()
    }
}
