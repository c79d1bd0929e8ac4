//! Parsing and formatting for exact rationals and the file formats used by
//! the command-line tools.
//!
//! Rational values cross process boundaries as strings ("3/4", "2", "0.125")
//! so that no exactness is lost in JSON or CSV. Decimal inputs are converted
//! exactly: "0.1" becomes 1/10, not the nearest double.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors from parsing exact numeric text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    /// The text was not an integer, fraction, or finite decimal.
    #[error("cannot parse {input:?} as an exact rational")]
    Invalid {
        /// The offending input text.
        input: String,
    },
    /// A fraction had a zero denominator.
    #[error("zero denominator in {input:?}")]
    ZeroDenominator {
        /// The offending input text.
        input: String,
    },
}

/// Parses "p/q", an integer "n", or a finite decimal "a.b" into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let s = text.trim();
    let invalid = || ParseError::Invalid {
        input: text.to_string(),
    };
    if s.is_empty() {
        return Err(invalid());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| invalid())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| invalid())?;
        if d.is_zero() {
            return Err(ParseError::ZeroDenominator {
                input: text.to_string(),
            });
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, fractional)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_part = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| invalid())?
        };
        if fractional.is_empty() || !fractional.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let digits = BigInt::from_str(fractional).map_err(|_| invalid())?;
        let scale = BigInt::from(10u8).pow(fractional.len() as u32);
        let magnitude = whole_part.abs() * &scale + digits;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(signed, scale));
    }
    let n = BigInt::from_str(s).map_err(|_| invalid())?;
    Ok(BigRational::from(n))
}

/// Parses a comma- or whitespace-separated list of exact rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, ParseError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|part| !part.is_empty())
        .map(parse_rational)
        .collect()
}

/// Formats a rational as "p/q", or "p" when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom() == &BigInt::from(1) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Nearest double to an exact rational (for display columns only).
pub fn rational_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Converts a finite double to the exact rational it represents.
///
/// Every finite f64 is a rational with a power-of-two denominator; this is
/// the exact inverse of that representation, not a nearest-decimal guess.
pub fn f64_to_rational(value: f64) -> Option<BigRational> {
    BigRational::from_float(value)
}

/// Serde adapter: a `BigRational` field carried as an exact string.
pub mod rational_string {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Serializes the rational as "p/q".
    pub fn serialize<S: Serializer>(value: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        format_rational(value).serialize(ser)
    }

    /// Parses "p/q", integer, or decimal text.
    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a `Vec<BigRational>` field carried as exact strings.
pub mod rational_vec {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Serializes each rational as "p/q".
    pub fn serialize<S: Serializer>(values: &[BigRational], ser: S) -> Result<S::Ok, S::Error> {
        values
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .serialize(ser)
    }

    /// Parses a list of exact rational strings.
    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigRational>, D::Error> {
        let texts = Vec::<String>::deserialize(de)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-0.1").unwrap(), rat(-1, 10));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" 2/6 ").unwrap(), rat(1, 3));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "abc", "1/0", "1.2.3", "1/", "0x10", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn formats_round_trip() {
        for (n, d) in [(3, 4), (-3, 4), (7, 1), (0, 1), (12345, 4096)] {
            let q = rat(n, d);
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }

    #[test]
    fn parses_lists() {
        assert_eq!(
            parse_rational_list("1/2, 1/4 1/4").unwrap(),
            vec![rat(1, 2), rat(1, 4), rat(1, 4)]
        );
        assert!(parse_rational_list("1/2, zebra").is_err());
    }

    #[test]
    fn f64_conversion_is_exact_for_dyadics() {
        assert_eq!(f64_to_rational(0.375).unwrap(), rat(3, 8));
        assert_eq!(rational_to_f64(&rat(3, 8)), 0.375);
    }
}
