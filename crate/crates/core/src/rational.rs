//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as an exact rational")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let numer: BigInt = digits.parse().map_err(|_| err())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(p))
}

/// Always `"p/q"`, including integers (`"3/1"`), so the text form is uniform.
pub fn format(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact value of a finite double.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
