//! Small text helpers shared by the command-line front end: exact rational
//! parsing and comma-separated coefficient lists.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Parse an exact rational "n" or "n/d" with optional leading sign.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Syntax {
            position: 0,
            message: "empty rational".into(),
        });
    }
    let (num_text, den_text) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numer: BigInt = num_text.parse().map_err(|_| Error::Syntax {
        position: 0,
        message: format!("invalid integer '{num_text}'"),
    })?;
    let denom: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| Error::Syntax {
            position: 0,
            message: format!("invalid denominator '{d}'"),
        })?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(Error::ZeroInput("zero denominator".into()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Parse a comma-separated list of rationals.
pub fn parse_rational_csv(text: &str) -> Result<Vec<BigRational>> {
    text.split(',').map(parse_rational).collect()
}

/// Render a rational in lowest terms, with "/1" suppressed.
pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        assert_eq!(rational_string(&parse_rational("-7").unwrap()), "-7");
        assert_eq!(rational_string(&parse_rational("3/2").unwrap()), "3/2");
        assert_eq!(rational_string(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(rational_string(&parse_rational(" 10/5 ").unwrap()), "2");
        assert_eq!(rational_string(&parse_rational("-3/-6").unwrap()), "1/2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn csv_round_trip() {
        let v = parse_rational_csv("2,3,5,7,-1").unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(rational_string(&v[4]), "-1");
    }
}
