//! Dense univariate polynomials with exact rational coefficients.
//!
//! Carrier for the master function A(x), the weight datum F(x), the
//! subspace term B(x), and every energy polynomial Pₘ(E). All arithmetic is
//! exact; floats appear only in the evaluation helpers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};

use crate::error::QesError;
use crate::rational::{factorial, format_rational, rint, to_f64, Rational};

/// Polynomial with ascending-power coefficients; trailing zeros stripped, so
/// the canonical zero polynomial stores no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    /// Builds from ascending-power coefficients, normalizing trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(rint(1))
    }

    /// The monomial x.
    pub fn x() -> Self {
        RatPoly::new(vec![rint(0), rint(1)])
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::new(vec![c])
    }

    /// c·x^k.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![rint(0); k + 1];
        coeffs[k] = c;
        RatPoly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| rint(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending-power coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// i-th derivative at 0, i.e. i!·(coefficient of x^i).
    pub fn deriv_at_zero(&self, i: usize) -> Rational {
        self.coeff(i) * factorial(i)
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Float evaluation by Horner's rule on rounded coefficients.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    /// Σ|aᵢ||x|ⁱ — the magnitude majorant that bounds rounding error of
    /// float evaluation (each Horner step is exact up to relative ulps of
    /// this quantity, not of the possibly cancelled result).
    pub fn eval_majorant_f64(&self, x: f64) -> f64 {
        let ax = x.abs();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * ax + to_f64(c).abs();
        }
        acc
    }

    /// First formal derivative.
    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rint(i as i64 + 1))
                .collect(),
        )
    }

    /// order-th formal derivative (order 0 returns a clone).
    pub fn derivative_n(&self, order: usize) -> RatPoly {
        let mut p = self.clone();
        for _ in 0..order {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![rint(0); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    /// Leading coefficient scaled to 1 (zero polynomial unchanged).
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = Rational::one() / lc;
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Euclidean division: `self = q·d + r` with deg r < deg d.
    pub fn divmod(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly), QesError> {
        let d_deg = d.degree().ok_or(QesError::DivisionByZero)?;
        let d_lead = d.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - d_deg];
        while rem.len() > d_deg {
            let k = rem.len() - 1 - d_deg;
            let q = rem.last().expect("nonempty") / &d_lead;
            for i in 0..d_deg {
                let t = &q * &d.coeffs[i];
                rem[k + i] -= t;
            }
            rem.pop();
            quot[k] = q;
            while rem.len() > d_deg && rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Division that must be exact; errors on a nonzero remainder.
    pub fn div_exact(&self, d: &RatPoly) -> Result<RatPoly, QesError> {
        let (q, r) = self.divmod(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(QesError::InvalidInput(format!(
                "inexact polynomial division: remainder {r}"
            )))
        }
    }

    /// The unique positive rescaling with coprime integer coefficients
    /// (denominators cleared, content removed). Preserves the root set and
    /// the sign pattern; zero stays zero.
    pub fn primitive_scaled(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        RatPoly::new(
            ints.into_iter()
                .map(|v| Rational::from_integer(v / &content))
                .collect(),
        )
    }

    /// Remainder of `self` by `d` up to a positive constant factor: each
    /// elimination step scales by |lead(d)| instead of dividing by it, so
    /// integer coefficients stay integer (pseudo-division). The positive
    /// scale keeps the result usable inside Sturm chains, where signs carry
    /// the information.
    pub(crate) fn pseudo_rem_positive(&self, d: &RatPoly) -> RatPoly {
        let db = d.degree().expect("nonzero divisor");
        let lead = d.leading().expect("nonzero divisor");
        let lead_abs = lead.abs();
        let sgn = if lead.is_negative() { -Rational::one() } else { Rational::one() };
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            r = &r.scale(&lead_abs) - &d.shift_up(dr - db).scale(&(&sgn * &lr));
            if r.is_zero() {
                break;
            }
        }
        r
    }

    /// Monic greatest common divisor (gcd(0,0) = 0).
    ///
    /// Runs a primitive pseudo-remainder sequence: stripping the integer
    /// content after every step keeps the coefficients as small as the
    /// mathematics allows, where plain rational division would let them
    /// balloon multiplicatively.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.primitive_scaled();
        let mut b = other.primitive_scaled();
        while !b.is_zero() {
            let r = a.pseudo_rem_positive(&b).primitive_scaled();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun square-free decomposition: monic factors with multiplicities,
    /// `self = lc · Π fᵢ^{mᵢ}`, the fᵢ pairwise coprime and square-free.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.degree() == Some(0) {
            out.push((p, 1));
            return out;
        }
        let mut b = p.div_exact(&g).expect("gcd divides");
        let mut d = &dp.div_exact(&g).expect("gcd divides p'") - &b.derivative();
        let mut i = 1usize;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("factor divides");
            let c = d.div_exact(&a).expect("factor divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Renders with the given variable name, ascending powers.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let sign_neg = c.is_negative();
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else {
                out.push_str(if sign_neg { " - " } else { " + " });
            }
            let unit = mag == "1";
            match (i, unit) {
                (0, _) => out.push_str(&mag),
                (1, true) => out.push_str(var),
                (1, false) => {
                    out.push_str(&mag);
                    out.push(' ');
                    out.push_str(var);
                }
                (_, true) => out.push_str(&format!("{var}^{i}")),
                (_, false) => out.push_str(&format!("{mag} {var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        RatPoly::new(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(self.coeffs.len().max(rhs.coeffs.len()), Rational::zero());
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        RatPoly::new(coeffs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::new(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: &RatPoly) -> RatPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rfrac;

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_i64(coeffs)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let p = RatPoly::new(vec![rint(1), rint(0), rint(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(RatPoly::new(vec![rint(0)]).is_zero());
        assert_eq!(RatPoly::zero().degree(), None);
    }

    #[test]
    fn difference_of_squares() {
        let p = &poly(&[1, 1]) * &poly(&[-1, 1]);
        assert_eq!(p, poly(&[-1, 0, 1]));
    }

    #[test]
    fn add_identity_and_scaling() {
        let p = poly(&[3, 0, 5]);
        assert_eq!(&p + &RatPoly::zero(), p);
        // (x²/12 − 1)·12 = x² − 12
        let q = RatPoly::new(vec![rint(-1), rint(0), rfrac(1, 12)]);
        assert_eq!(q.scale(&rint(12)), poly(&[-12, 0, 1]));
    }

    #[test]
    fn divmod_basics() {
        let (q, r) = poly(&[-1, 0, 1]).divmod(&poly(&[-1, 1])).unwrap();
        assert_eq!(q, poly(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = poly(&[0, 0, 0, 1]).divmod(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(q, poly(&[0, 1]));
        assert!(r.is_zero());
        assert!(poly(&[1]).divmod(&RatPoly::zero()).is_err());
    }

    #[test]
    fn divmod_round_trips_exactly() {
        // pseudo-random smoke over exact re-multiplication
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as i64 % 7) - 3
        };
        for _ in 0..50 {
            let p = RatPoly::new((0..8).map(|_| rint(next())).collect());
            let mut d = RatPoly::new((0..4).map(|_| rint(next())).collect());
            if d.degree().is_none() {
                d = poly(&[1, 1]);
            }
            let (q, r) = p.divmod(&d).unwrap();
            assert_eq!(&(&q * &d) + &r, p);
            if let (Some(rd), Some(dd)) = (r.degree(), d.degree()) {
                assert!(rd < dd);
            }
        }
    }

    #[test]
    fn derivative_rules() {
        assert_eq!(poly(&[0, 0, 0, 1]).derivative(), poly(&[0, 0, 3]));
        let p = poly(&[4, 3, 0, 7]);
        assert_eq!(p.derivative_n(0), p);
        // F = (α+1) + βx + 2γx² with α=0, β=0, γ=1 → F'' (0) = 4γ
        let f = RatPoly::new(vec![rint(1), rint(0), rint(2)]);
        assert_eq!(f.deriv_at_zero(2), rint(4));
        // linearity on a sample
        let (a, b) = (rint(3), rint(-2));
        let q = poly(&[1, 0, 2, 5]);
        let lhs = (&p.scale(&a) + &q.scale(&b)).derivative();
        let rhs = &p.derivative().scale(&a) + &q.derivative().scale(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = &poly(&[-1, 1]) * &poly(&[-1, 1]); // (x−1)²
        let q = &poly(&[-1, 1]) * &poly(&[2, 1]); // (x−1)(x+2)
        assert_eq!(p.gcd(&q), poly(&[-1, 1]));
        let dec = (&p * &poly(&[2, 1])).squarefree_decomposition();
        assert_eq!(dec, vec![(poly(&[2, 1]), 1), (poly(&[-1, 1]), 2)]);
        assert_eq!(
            poly(&[0, 0, 1]).squarefree_decomposition(),
            vec![(poly(&[0, 1]), 2)]
        );
    }

    #[test]
    fn eval_exact_and_float_agree_within_majorant_ulps() {
        // degree-12 with mixed-sign coefficients: measure against the
        // magnitude majorant, since cancellation makes a relative-to-result
        // bound unattainable in principle.
        let p = RatPoly::new((0..=12).map(|i| rfrac(if i % 2 == 0 { 1 } else { -1 }, i + 1)).collect());
        for num in [-19i64, -7, -1, 0, 3, 11, 23] {
            let x = rfrac(num, 8);
            let exact = to_f64(&p.eval(&x));
            let approx = p.eval_f64(to_f64(&x));
            let ulp = f64::EPSILON * p.eval_majorant_f64(to_f64(&x)).max(f64::MIN_POSITIVE);
            assert!(
                (exact - approx).abs() <= 8.0 * ulp,
                "x={x}: {exact} vs {approx}"
            );
        }
    }

    #[test]
    fn display_is_readable() {
        let p = RatPoly::new(vec![rfrac(1, 10), rint(0), rfrac(-1, 48), rint(0), rfrac(1, 2880)]);
        assert_eq!(p.to_string_var("E"), "1/10 - 1/48 E^2 + 1/2880 E^4");
        assert_eq!(poly(&[0, -6]).to_string(), "-6 x");
        assert_eq!(RatPoly::zero().to_string(), "0");
        assert_eq!(poly(&[0, 0, 1]).to_string(), "x^2");
    }
}
