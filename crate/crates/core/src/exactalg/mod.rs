//! Exact arithmetic kernel: arbitrary-precision rationals, dense univariate
//! polynomials and reduced rational functions.
//!
//! Every value is kept in a canonical form, so structural equality is
//! mathematical equality. A rational function is zero exactly when its
//! numerator is the empty coefficient list.

mod poly;
mod ratfunc;

pub use poly::{interpolate, Poly};
pub use num_bigint::BigInt;
pub use ratfunc::RatFunc;

use alloc::format;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: reduced fractions of big integers with a positive
/// denominator.
pub type Scalar = num_rational::BigRational;

/// `numer / denom` as a scalar. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("rational number {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => BigInt::from_str(text)
            .map(Scalar::from_integer)
            .map_err(|_| bad()),
    }
}

/// Rational square root, if `value` is the square of a rational.
pub fn rational_sqrt(value: &Scalar) -> Option<Scalar> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().sqrt();
    let d = value.denom().sqrt();
    if &(&n * &n) == value.numer() && &(&d * &d) == value.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Least common multiple of the denominators of `values` (1 for none).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
