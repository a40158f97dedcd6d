//! Parsing and formatting of exact rational capacities.
//!
//! Capacities travel through the JSON interfaces as strings: a base-10
//! integer like `"5"` or a fraction `"p/q"` with positive denominator.
//! Values are always stored in lowest terms with a positive denominator
//! (guaranteed by the underlying big-rational representation).

use crate::{Error, Rational, Result};
use num::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Parse `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |reason: &'static str| Error::BadRational {
        literal: text.to_string(),
        reason,
    };
    let mut parts = text.splitn(2, '/');
    let numer_text = parts.next().unwrap_or("");
    let numer = BigInt::from_str(numer_text).map_err(|_| bad("numerator is not an integer"))?;
    match parts.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(denom_text) => {
            let denom =
                BigInt::from_str(denom_text).map_err(|_| bad("denominator is not an integer"))?;
            if denom.is_zero() {
                return Err(bad("zero denominator"));
            }
            if denom.is_negative() {
                return Err(bad("denominator must be positive"));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Format a rational as `"p"` when integral, else `"p/q"`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Shorthand for small integer rationals.
pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q` rationals; panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
