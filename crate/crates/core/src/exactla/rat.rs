//! The scalar type: arbitrary-precision rationals, always reduced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ground field scalar. `BigRational` keeps the invariants we need:
/// gcd(numerator, denominator) = 1 and denominator > 0.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `p / q`, reduced on construction. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// The value as an `i64` when it is an integer in range; used by canonical
/// serializers that render small integers as numbers.
pub fn as_small_integer(x: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Renders in the canonical text form: bare integer, or `p/q` with q > 1.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the canonical text form. Rejects non-reduced and non-positive
/// denominators so that parsing is the exact inverse of [`format_rat`].
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let parse_int = |s: &str, what: &str| -> Result<BigInt, String> {
        s.parse::<BigInt>().map_err(|_| format!("invalid {what}: {s:?}"))
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(text, "integer")?)),
        Some((p, q)) => {
            let numer = parse_int(p, "numerator")?;
            let denom = parse_int(q, "denominator")?;
            if denom.is_zero() {
                return Err(format!("zero denominator in {text:?}"));
            }
            if denom.is_negative() {
                let r = BigRational::new(numer, denom);
                return Err(format!(
                    "negative denominator in {text:?}; write {} instead",
                    format_rat(&r)
                ));
            }
            let r = BigRational::new(numer.clone(), denom.clone());
            if r.numer() != &numer || r.denom() != &denom {
                return Err(format!(
                    "non-reduced rational {text:?}; write {} instead",
                    format_rat(&r)
                ));
            }
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_parse_roundtrip() {
        for r in [rat(0), rat(-7), ratio(1, 2), ratio(-3, 4), ratio(22, 7)] {
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(parse_rat("2/4").unwrap_err().contains("1/2"));
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn reduction_is_automatic() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(1, -2), ratio(-1, 2));
    }
}
