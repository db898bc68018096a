//! Rational functions (quotients of exact polynomials), always reduced.
//!
//! Carrier for the weight log-derivative g = W′/W = (F − A′)/A and for the
//! exact x-space potential assembled from it.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::QesError;
use crate::poly::RatPoly;
use crate::rational::Rational;

/// Reduced quotient of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    /// Builds and reduces; errors only on a zero denominator.
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self, QesError> {
        if den.is_zero() {
            return Err(QesError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: RatPoly::one() });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let lc = den.leading().expect("nonzero").clone();
        let inv = Rational::from_integer(1.into()) / lc;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: RatPoly) -> Self {
        RatFunc { num: p, den: RatPoly::one() }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(RatPoly::zero())
    }

    pub fn numerator(&self) -> &RatPoly {
        &self.num
    }

    pub fn denominator(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(p) when the reduced denominator is the constant 1.
    pub fn as_polynomial(&self) -> Option<RatPoly> {
        if self.den.degree() == Some(0) {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Quotient-rule derivative, re-reduced.
    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFunc::new(num, den).expect("square of nonzero denominator")
    }

    /// Exact evaluation; None at a pole of the reduced form.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if num::traits::Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Float evaluation; None where the denominator evaluates to exactly 0.0.
    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        let d = self.den.eval_f64(x);
        if d == 0.0 {
            None
        } else {
            Some(self.num.eval_f64(x) / d)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("checked by caller")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rfrac, rint};

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_i64(coeffs)
    }

    #[test]
    fn reduces_on_construction() {
        // (x²−1)/(x−1) = x+1
        let f = RatFunc::new(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(f.as_polynomial().unwrap(), poly(&[1, 1]));
        // denominator normalized monic: (x)/(2x+2) → (1/2 x)/(x+1)
        let g = RatFunc::new(poly(&[0, 1]), poly(&[2, 2])).unwrap();
        assert_eq!(g.denominator(), &poly(&[1, 1]));
        assert_eq!(g.numerator(), &RatPoly::new(vec![rint(0), rfrac(1, 2)]));
        assert!(RatFunc::new(poly(&[1]), RatPoly::zero()).is_err());
    }

    #[test]
    fn derivative_of_inverse_x() {
        // d/dx (1/x) = −1/x²
        let f = RatFunc::new(poly(&[1]), poly(&[0, 1])).unwrap();
        let df = f.derivative();
        assert_eq!(df.numerator(), &poly(&[-1]));
        assert_eq!(df.denominator(), &poly(&[0, 0, 1]));
        // derivative of a constant → 0
        assert!(RatFunc::from_poly(poly(&[5])).derivative().is_zero());
    }

    #[test]
    fn derivative_of_weight_log_term() {
        // g = (F − A′)/A for A = x, F = (α+1) + βx + 2γx², with α=2, β=1, γ=3:
        // g = 2/x + 1 + 6x, g′ = −2/x² + 6
        let a = poly(&[0, 1]);
        let f = poly(&[3, 1, 6]);
        let g = RatFunc::new(&f - &a.derivative(), a).unwrap();
        let dg = g.derivative();
        let expect = RatFunc::new(poly(&[-2, 0, 6]), poly(&[0, 0, 1])).unwrap();
        assert_eq!(dg, expect);
    }

    #[test]
    fn arithmetic_and_eval() {
        let f = RatFunc::new(poly(&[1]), poly(&[0, 1])).unwrap(); // 1/x
        let g = RatFunc::from_poly(poly(&[0, 1])); // x
        let sum = &f + &g; // (1+x²)/x
        assert_eq!(sum.eval(&rint(2)).unwrap(), rfrac(5, 2));
        assert!(sum.eval(&rint(0)).is_none());
        let prod = &f * &g;
        assert_eq!(prod.as_polynomial().unwrap(), RatPoly::one());
        let quot = &g / &f; // x²
        assert_eq!(quot.as_polynomial().unwrap(), poly(&[0, 0, 1]));
        assert_eq!((&sum - &sum).is_zero(), true);
        assert_eq!(sum.eval_f64(2.0).unwrap(), 2.5);
    }
}
