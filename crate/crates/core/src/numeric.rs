//! Exact carriers for truth values (`[0,1]`) and distances (`[0,∞]`).
//!
//! Both types wrap an arbitrary-precision rational kept in lowest terms, so
//! structural equality is numeric equality. The two carriers never convert
//! into each other implicitly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: &'static str },
    #[error("{value} is outside {carrier}")]
    OutOfRange {
        value: String,
        carrier: &'static str,
    },
}

/// An exact rational in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitRat(BigRational);

impl UnitRat {
    pub fn new(value: BigRational) -> Result<Self, NumericError> {
        if value.is_negative() || value > BigRational::one() {
            return Err(NumericError::OutOfRange {
                value: format_rational(&value),
                carrier: "[0,1]",
            });
        }
        Ok(UnitRat(value))
    }

    /// `n/d`; panics unless `0 <= n <= d` and `d > 0`.
    pub fn frac(n: u64, d: u64) -> Self {
        assert!(d > 0 && n <= d, "{n}/{d} is not in [0,1]");
        UnitRat(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> Self {
        UnitRat(BigRational::zero())
    }

    pub fn one() -> Self {
        UnitRat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    /// Wraps a value the caller has already shown to lie in `[0,1]`.
    pub(crate) fn from_rational_unchecked(value: BigRational) -> Self {
        debug_assert!(!value.is_negative() && value <= BigRational::one());
        UnitRat(value)
    }
}

impl fmt::Display for UnitRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl FromStr for UnitRat {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = parse_rational(s)?;
        UnitRat::new(value)
    }
}

/// An exact element of `[0,∞]`: a nonnegative rational or infinity.
///
/// The derived order puts every `Finite` below `Infinity`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    Finite(BigRational),
    Infinity,
}

impl ExtRat {
    pub fn finite(value: BigRational) -> Result<Self, NumericError> {
        if value.is_negative() {
            return Err(NumericError::OutOfRange {
                value: format_rational(&value),
                carrier: "[0,inf]",
            });
        }
        Ok(ExtRat::Finite(value))
    }

    /// `n/d`; panics if `d == 0`.
    pub fn frac(n: u64, d: u64) -> Self {
        assert!(d > 0, "zero denominator");
        ExtRat::Finite(BigRational::new(n.into(), d.into()))
    }

    pub fn int(n: u64) -> Self {
        ExtRat::Finite(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExtRat::Finite(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRat::Finite(r) if r.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinity => None,
        }
    }

    /// Wraps a value the caller has already shown to be nonnegative.
    pub(crate) fn from_rational_unchecked(value: BigRational) -> Self {
        debug_assert!(!value.is_negative());
        ExtRat::Finite(value)
    }
}

pub fn ext_add(a: &ExtRat, b: &ExtRat) -> ExtRat {
    match (a, b) {
        (ExtRat::Finite(x), ExtRat::Finite(y)) => ExtRat::Finite(x + y),
        _ => ExtRat::Infinity,
    }
}

pub fn ext_cmp(a: &ExtRat, b: &ExtRat) -> Ordering {
    a.cmp(b)
}

impl Add for ExtRat {
    type Output = ExtRat;

    fn add(self, rhs: ExtRat) -> ExtRat {
        ext_add(&self, &rhs)
    }
}

impl<'a> Add<&'a ExtRat> for &'a ExtRat {
    type Output = ExtRat;

    fn add(self, rhs: &'a ExtRat) -> ExtRat {
        ext_add(self, rhs)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => f.write_str(&format_rational(r)),
            ExtRat::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRat {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ExtRat::Infinity);
        }
        parse_rational(s).map(ExtRat::Finite)
    }
}

pub fn parse_ext(text: &str) -> Result<ExtRat, NumericError> {
    text.parse()
}

pub fn format_ext(value: &ExtRat) -> String {
    value.to_string()
}

/// Parses `digits` or `digits/digits` into a canonical nonnegative rational.
fn parse_rational(token: &str) -> Result<BigRational, NumericError> {
    let err = |reason| NumericError::Parse {
        token: token.to_string(),
        reason,
    };
    let digits = |part: &str| -> Result<BigInt, NumericError> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected `inf`, `digits` or `digits/digits`"));
        }
        Ok(part.parse::<BigInt>().expect("ascii digits"))
    };
    match token.split_once('/') {
        None => Ok(BigRational::from_integer(digits(token)?)),
        Some((num, den)) => {
            let num = digits(num)?;
            let den = digits(den)?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(e("2/3") + e("1/3"), e("1"));
        assert_eq!(e("5") + ExtRat::Infinity, ExtRat::Infinity);
        assert_eq!(e("0") + e("7/2"), e("7/2"));
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(
            ext_cmp(&ExtRat::Infinity, &ExtRat::Infinity),
            Ordering::Equal
        );
        assert_eq!(ext_cmp(&e("3/2"), &e("2")), Ordering::Less);
        assert_eq!(
            ext_cmp(&ExtRat::Infinity, &e("1000000000")),
            Ordering::Greater
        );
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_ext("inf").unwrap(), ExtRat::Infinity);
        assert_eq!(parse_ext("6/4").unwrap(), ExtRat::frac(3, 2));
        assert_eq!(format_ext(&parse_ext("6/4").unwrap()), "3/2");
        assert_eq!(format_ext(&parse_ext("8/4").unwrap()), "2");
        let err = parse_ext("7/0").unwrap_err();
        assert!(err.to_string().contains("7/0"), "{err}");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "-1", "1.5", "1/", "/2", "infinity", "1/2/3", " 1"] {
            assert!(parse_ext(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn unit_rat_bounds() {
        assert!("3/2".parse::<UnitRat>().is_err());
        assert!("inf".parse::<UnitRat>().is_err());
        assert_eq!("2/4".parse::<UnitRat>().unwrap(), UnitRat::frac(1, 2));
        assert_eq!(UnitRat::frac(3, 3), UnitRat::one());
    }
}
