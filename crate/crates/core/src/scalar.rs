//! Exact scalar types.
//!
//! Every quantity the solver touches is an exact number. The numeric core
//! (simplex, bipartite coloring extraction, solution validation) is generic
//! over [`ExactNum`]; the pipeline instantiates it with [`ExactScalar`], an
//! arbitrary-precision rational.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

/// Arbitrary-precision rational. All solver arithmetic is carried out in it.
pub type ExactScalar = BigRational;

/// An exact, totally ordered ring element.
pub trait ExactNum: Clone + Ord + Num + Signed + Debug + Display {
    fn from_int(v: i64) -> Self;
    /// True when the value has denominator 1.
    fn is_integral(&self) -> bool;
}

/// An [`ExactNum`] with exact division.
pub trait ExactField: ExactNum {}

impl ExactNum for i64 {
    fn from_int(v: i64) -> Self {
        v
    }
    fn is_integral(&self) -> bool {
        true
    }
}

impl ExactNum for i128 {
    fn from_int(v: i64) -> Self {
        v as i128
    }
    fn is_integral(&self) -> bool {
        true
    }
}

macro_rules! impl_ratio {
    ($int:ty, $conv:expr) => {
        impl ExactNum for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer($conv(v))
            }
            fn is_integral(&self) -> bool {
                self.is_integer()
            }
        }
        impl ExactField for Ratio<$int> {}
    };
}

impl_ratio!(i64, |v: i64| v);
impl_ratio!(i128, |v: i64| v as i128);
impl_ratio!(BigInt, BigInt::from);

pub fn int(v: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `⌈q⌉`, computed by integer division.
pub fn ceil(q: &ExactScalar) -> ExactScalar {
    q.ceil()
}

/// `⌊q⌋`, computed by integer division.
pub fn floor(q: &ExactScalar) -> ExactScalar {
    q.floor()
}

/// The value as a machine integer, if it is integral and fits.
pub fn to_i64(q: &ExactScalar) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.numer()).ok()
}

/// Formats as `p/q`, omitting a unit denominator.
pub fn format_scalar(q: &ExactScalar) -> String {
    q.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{0}`: expected `p/q` or `p`")]
pub struct ParseScalarError(pub String);

/// Parses `p/q` or `p`. The denominator must be non-zero.
pub fn parse_scalar(s: &str) -> Result<ExactScalar, ParseScalarError> {
    let s = s.trim();
    let err = || ParseScalarError(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s).map_err(|_| err())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Positive part `max(0, v)`.
pub fn pos<T: ExactNum>(v: T) -> T {
    if v.is_negative() {
        T::zero()
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_scalar("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(format_scalar(&ratio(2, 4)), "1/2");
        assert_eq!(format_scalar(&int(-3)), "-3");
    }

    #[test]
    fn floor_ceil_are_exact() {
        assert_eq!(ceil(&ratio(-5, 2)), int(-2));
        assert_eq!(floor(&ratio(-5, 2)), int(-3));
        assert_eq!(ceil(&int(4)), int(4));
        assert_eq!(to_i64(&ratio(6, 3)), Some(2));
        assert_eq!(to_i64(&ratio(1, 3)), None);
    }

    #[test]
    fn integrality_across_types() {
        assert!(5i64.is_integral());
        assert!(!Ratio::<i64>::new(1, 2).is_integral());
        assert!(<Ratio<i128> as ExactNum>::from_int(3).is_integral());
    }
}
