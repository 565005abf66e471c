//! Exact rational scalars.
//!
//! Everything in the crate is built on `num_rational::BigRational`; this module
//! adds parsing from user text and a few helpers used all over the place.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type ExactRational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// Parses `"3/2"`, `"-4"`, or a terminating decimal such as `"0.25"` exactly.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    let err = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {text:?}") };
    if s.is_empty() {
        return Err(err("empty rational"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(ExactRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err("bad decimal"));
        }
        let neg = whole.starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let w: BigInt = if whole_abs.is_empty() {
            BigInt::zero()
        } else {
            whole_abs.parse().map_err(|_| err("bad decimal"))?
        };
        let f: BigInt = frac.parse().map_err(|_| err("bad decimal"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = ExactRational::new(w * &scale + f, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| err("bad integer"))?;
    Ok(ExactRational::from_integer(n))
}

/// Smallest integer `>= q`.
pub fn ceil_i64(q: &ExactRational) -> i64 {
    let c = q.ceil().to_integer();
    i64::try_from(c).expect("exponent out of i64 range")
}

/// Largest integer `<= q`.
pub fn floor_i64(q: &ExactRational) -> i64 {
    let c = q.floor().to_integer();
    i64::try_from(c).expect("exponent out of i64 range")
}

pub fn to_i64(q: &ExactRational) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.to_integer()).ok()
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a ExactRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn sign(q: &ExactRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_i64(&rat(-7, 2)), -3);
        assert_eq!(floor_i64(&rat(-7, 2)), -4);
        assert_eq!(ceil_i64(&int(5)), 5);
    }
}
