//! Exact rational scalars: aliases and parsing/formatting helpers around
//! `num::BigRational`.

use crate::error::QesError;
use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Rational = num::BigRational;

/// Integer as a rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction n/d as a rational.
///
/// Panics if `d == 0` (callers pass literal denominators).
pub fn rfrac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// n! as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Lossy conversion to f64 (saturates on overflow, which cannot occur for the
/// magnitudes this crate produces).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact dyadic rational equal to a finite f64.
pub fn from_f64(x: f64) -> Result<Rational, QesError> {
    Rational::from_float(x).ok_or_else(|| QesError::InvalidInput(format!("non-finite value {x}")))
}

/// Render as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The rational with the smallest denominator in the closed interval
/// [lo, hi], by continued-fraction descent. Far cheaper to compute with
/// than an interval midpoint, whose denominator is as deep as the interval
/// is narrow.
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "simplest_in needs an ordered interval");
    if lo == hi {
        return lo.clone();
    }
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_in(&-hi, &-lo);
    }
    // now 0 < lo < hi
    let c = lo.ceil();
    if c <= *hi {
        return c;
    }
    let a = lo.floor();
    let inner = simplest_in(&(rint(1) / (hi - &a)), &(rint(1) / (lo - &a)));
    a + rint(1) / inner
}

/// Parse an integer (`-3`), fraction (`5/12`) or plain decimal (`-0.25`).
pub fn parse_rational(s: &str) -> Result<Rational, QesError> {
    let s = s.trim();
    let bad = || QesError::InvalidInput(format!("cannot parse '{s}' as a rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(QesError::InvalidInput(format!("zero denominator in '{s}'")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_digits: BigInt = frac_part.parse().map_err(|_| bad())?;
        let mut numer = int_digits.abs() * &scale + frac_digits;
        if negative {
            numer = -numer;
        }
        return Ok(Rational::new(numer, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_decimals() {
        assert_eq!(parse_rational("7").unwrap(), rint(7));
        assert_eq!(parse_rational("-3/9").unwrap(), rfrac(-1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), rfrac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rfrac(-3, 2));
        assert_eq!(parse_rational("-.5").unwrap(), rfrac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&rfrac(4, 8)), "1/2");
        assert_eq!(format_rational(&rint(-6)), "-6");
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_in(&rfrac(1, 5), &rfrac(13, 50)), rfrac(1, 4));
        assert_eq!(simplest_in(&rfrac(2, 3), &rfrac(3, 4)), rfrac(2, 3));
        assert_eq!(simplest_in(&rfrac(-1, 3), &rfrac(1, 5)), rint(0));
        assert_eq!(simplest_in(&rfrac(7, 2), &rfrac(9, 2)), rint(4));
        assert_eq!(simplest_in(&rfrac(-13, 50), &rfrac(-1, 5)), rfrac(-1, 4));
        assert_eq!(simplest_in(&rfrac(5, 7), &rfrac(5, 7)), rfrac(5, 7));
        // containment and minimal denominator on a narrow bracket
        let lo = rfrac(355, 113) - rfrac(1, 100_000_000);
        let hi = rfrac(355, 113) + rfrac(1, 100_000_000);
        let s = simplest_in(&lo, &hi);
        assert!(lo <= s && s <= hi);
        assert!(s.denom() <= &num::BigInt::from(113));
    }

    #[test]
    fn f64_round_trip_is_exact() {
        let x = -0.8125f64;
        assert_eq!(to_f64(&from_f64(x).unwrap()), x);
        assert!(from_f64(f64::INFINITY).is_err());
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), rint(1));
        assert_eq!(factorial(5), rint(120));
    }
}
