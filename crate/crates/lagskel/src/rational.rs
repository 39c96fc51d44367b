//! Exact rational scalars.
//!
//! Every quantity in this crate — energies, constraint values, multipliers,
//! skeleton coordinates — is an arbitrary-precision rational. There is no
//! epsilon anywhere: all comparisons are exact, which the skeleton update
//! logic depends on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (enforced by the underlying representation).
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational from a string, exactly.
///
/// Accepts plain integers (`"-3"`), fractions (`"2/7"`), and decimal
/// strings (`"0.3"` becomes 3/10). Decimal inputs are converted without
/// any floating-point round trip.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseRational(s.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::ParseRational(s.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::ParseRational(s.to_string()))?;
        if d.is_zero() {
            return Err(Error::ParseRational(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| Error::ParseRational(s.to_string()))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::ParseRational(s.to_string()));
        }
        let frac_digits: BigInt = frac_part
            .parse()
            .map_err(|_| Error::ParseRational(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut value = Rational::new(int_digits.abs() * &scale + frac_digits, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::ParseRational(s.to_string()))?;
    Ok(Rational::from_integer(n))
}

/// Formats a rational in the explicit `p/q` wire form used by the skeleton
/// dump and the characteristic-set tables (`3` prints as `3/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Sum of a sequence of rationals.
pub fn rational_sum<'a, I: IntoIterator<Item = &'a Rational>>(iter: I) -> Rational {
    let mut acc = Rational::zero();
    for r in iter {
        acc += r;
    }
    acc
}

/// Exact dot product of two equally long slices.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// True if the rational is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("-2.5").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rational("10").unwrap(), rat(10));
        assert_eq!(parse_rational("-7/21").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational(" 4.50 ").unwrap(), ratio(9, 2));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a", "1.2.3", "2/", "0x3", "1e3", "3.-1"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn wire_format_is_explicit() {
        assert_eq!(format_rational(&rat(3)), "3/1");
        assert_eq!(format_rational(&ratio(-1, 2)), "-1/2");
        assert_eq!(format_rational(&rat(0)), "0/1");
        // round trip
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
    }
}
