//! The master-function problem and its quasi-exact-solvability constraints.
//!
//! A spec pairs the master function A(x) (degree 1..=4, A(0) = 0) with the
//! weight datum F = (AW)′/W (degree ≤ 3, F(0) ≠ 0). Solving the
//! invariant-subspace conditions on span{1, x, …, xⁿ} fixes the potential
//! term B(x) — and, in the quartic case, pins F⁽³⁾ itself — so that the
//! operator L = −Aψ″ − Fψ′ + Bψ maps the subspace into itself.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::Zero;

use crate::error::QesError;
use crate::poly::RatPoly;
use crate::rational::{format_rational, rfrac, rint, to_f64, Rational};

/// Extended-real endpoint of the operator's x-interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::Finite(r) => to_f64(r),
            Endpoint::PosInf => f64::INFINITY,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::Finite(r) => f.write_str(&format_rational(r)),
            Endpoint::PosInf => f.write_str("inf"),
        }
    }
}

/// Open x-interval (a, b) on which the weight is positive and A·W vanishes
/// at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XInterval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl XInterval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Self {
        XInterval { lo, hi }
    }

    /// Strict interior membership of a float point.
    pub fn contains(&self, x: f64) -> bool {
        let above = match &self.lo {
            Endpoint::NegInf => true,
            Endpoint::Finite(r) => x > to_f64(r),
            Endpoint::PosInf => false,
        };
        let below = match &self.hi {
            Endpoint::NegInf => false,
            Endpoint::Finite(r) => x < to_f64(r),
            Endpoint::PosInf => true,
        };
        above && below
    }

    fn is_ordered(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Endpoint::NegInf, Endpoint::NegInf) | (Endpoint::PosInf, Endpoint::PosInf) => false,
            (Endpoint::NegInf, _) | (_, Endpoint::PosInf) => true,
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a < b,
            _ => false,
        }
    }
}

impl fmt::Display for XInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Master function A, weight datum F = (AW)′/W, interval and parameter
/// metadata. W itself is never materialized: everything downstream of the
/// recursion depends on W only through F.
#[derive(Clone, Debug, PartialEq)]
pub struct MasterSpec {
    pub a: RatPoly,
    pub f: RatPoly,
    pub interval: XInterval,
    pub params: BTreeMap<String, Rational>,
}

impl MasterSpec {
    pub fn new(a: RatPoly, f: RatPoly, interval: XInterval) -> Self {
        MasterSpec { a, f, interval, params: BTreeMap::new() }
    }

    /// Operator order k = max(deg A, deg F + 1); only k ≤ 4 admits the
    /// subspace constraints (k ≤ 2 degenerates to an exactly solvable
    /// operator with B ≡ 0).
    pub fn order(&self) -> usize {
        let da = self.a.degree().unwrap_or(0);
        let df = self.f.degree().map_or(0, |d| d + 1);
        da.max(df)
    }

    /// A⁽ⁱ⁾(0).
    pub fn a_deriv0(&self, i: usize) -> Rational {
        self.a.deriv_at_zero(i)
    }

    /// F⁽ⁱ⁾(0).
    pub fn f_deriv0(&self, i: usize) -> Rational {
        self.f.deriv_at_zero(i)
    }

    /// Structural validation; returns every violation rather than failing
    /// on the first.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        match self.a.degree() {
            None => violations.push("A must be nonzero".to_string()),
            Some(d) => {
                if d < 1 || d > 4 {
                    violations.push(format!("deg A = {d} outside 1..=4"));
                }
                if !self.a.coeff(0).is_zero() {
                    violations.push("A(0) must vanish (x divides every master function)".to_string());
                }
            }
        }
        if self.f.coeff(0).is_zero() {
            violations.push("F(0) must be nonzero (P_1 is undefined otherwise)".to_string());
        }
        if self.f.degree().unwrap_or(0) > 3 {
            violations.push(format!("deg F = {} exceeds 3", self.f.degree().unwrap_or(0)));
        }
        if !self.interval.is_ordered() {
            violations.push(format!("interval {} is empty", self.interval));
        }
        ValidationReport { violations }
    }
}

/// Result of [`MasterSpec::validate`].
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One linear invariance condition: the coefficient of x^{l+i} in L(xˡ)
/// must vanish, i.e.
/// `a_coeff·A⁽ⁱ⁺²⁾(0) + f_coeff·F⁽ⁱ⁺¹⁾(0) + b_coeff·B⁽ⁱ⁾(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintRow {
    pub l: usize,
    pub i: usize,
    pub a_coeff: Rational,
    pub f_coeff: Rational,
    pub b_coeff: Rational,
}

impl ConstraintRow {
    /// Exact residual of this row for concrete A, F, B.
    pub fn residual(&self, a: &RatPoly, f: &RatPoly, b: &RatPoly) -> Rational {
        &self.a_coeff * a.deriv_at_zero(self.i + 2)
            + &self.f_coeff * f.deriv_at_zero(self.i + 1)
            + &self.b_coeff * b.deriv_at_zero(self.i)
    }
}

/// The (k−1)(k−2)/2 invariance conditions: one row (l=n, i=1) for k=3;
/// rows (n,1), (n,2), (n−1,2) for k=4.
pub fn invariance_conditions(k: usize, n: usize) -> Result<Vec<ConstraintRow>, QesError> {
    if !(3..=4).contains(&k) {
        return Err(QesError::UnsupportedOrder { k });
    }
    if n < 1 {
        return Err(QesError::InvalidInput(
            "invariance conditions require n >= 1".to_string(),
        ));
    }
    let row = |l: usize, i: usize| {
        let lr = rint(l as i64);
        ConstraintRow {
            l,
            i,
            a_coeff: -(&lr * (&lr - rint(1))) / crate::rational::factorial(i + 2),
            f_coeff: -lr / crate::rational::factorial(i + 1),
            b_coeff: rint(1) / crate::rational::factorial(i),
        }
    };
    let rows = match k {
        3 => vec![row(n, 1)],
        _ => vec![row(n, 1), row(n, 2), row(n - 1, 2)],
    };
    Ok(rows)
}

/// A master spec with its subspace degree n, the derived B(x), and (for
/// quartic A) the pinned weight constraint on F⁽³⁾.
#[derive(Clone, Debug, PartialEq)]
pub struct QesProblem {
    pub spec: MasterSpec,
    pub n: usize,
    pub b: RatPoly,
    pub weight_constraint_f3: Option<Rational>,
}

impl QesProblem {
    /// B⁽ⁱ⁾(0).
    pub fn b_deriv0(&self, i: usize) -> Rational {
        self.b.deriv_at_zero(i)
    }
}

/// Solves the invariance conditions for B (and, when k = 4, the weight
/// constraint on F⁽³⁾):
///
/// ```text
/// B⁽¹⁾ = (n/2)·(A⁽³⁾(n−1)/3 + F⁽²⁾)
/// B⁽²⁾ = −A⁽⁴⁾ n(n−1)/12          (k = 4)
/// F⁽³⁾ = −A⁽⁴⁾ (n−1)/2            (k = 4; filled in when F has deg ≤ 2)
/// ```
///
/// A caller-supplied F⁽³⁾ that disagrees with the required value is an
/// infeasible weight; B itself always has B(0) = 0 (that gauge freedom is
/// absorbed into the eigenvalues).
pub fn solve_constraints(spec: &MasterSpec, n: usize) -> Result<QesProblem, QesError> {
    let report = spec.validate();
    if !report.is_valid() {
        return Err(QesError::DegenerateSpec(report.violations.join("; ")));
    }
    let k = spec.order();
    if k > 4 {
        return Err(QesError::UnsupportedOrder { k });
    }
    let nr = rint(n as i64);
    let mut spec = spec.clone();

    let mut weight_constraint_f3 = None;
    if k == 4 {
        let a4 = spec.a_deriv0(4);
        let required = -&a4 * (&nr - rint(1)) * rfrac(1, 2);
        if spec.f.degree().unwrap_or(0) <= 2 {
            // F⁽³⁾ left unset: fill it in (coefficient = derivative / 3!)
            let cube = RatPoly::monomial(3, &required / rint(6));
            spec.f = &spec.f + &cube;
        } else {
            let given = spec.f_deriv0(3);
            if given != required {
                return Err(QesError::InfeasibleWeight {
                    required: format_rational(&required),
                    given: format_rational(&given),
                });
            }
        }
        weight_constraint_f3 = Some(required);
    }

    let b1 = &nr * rfrac(1, 2) * (spec.a_deriv0(3) * (&nr - rint(1)) * rfrac(1, 3) + spec.f_deriv0(2));
    let b2 = -spec.a_deriv0(4) * &nr * (&nr - rint(1)) * rfrac(1, 12);
    // B = B⁽¹⁾x + (B⁽²⁾/2)x²
    let b = RatPoly::new(vec![rint(0), b1, b2 * rfrac(1, 2)]);

    Ok(QesProblem { spec, n, b, weight_constraint_f3 })
}

/// Applies L = −A·d²/dx² − F·d/dx + B exactly.
pub fn apply_operator(prob: &QesProblem, p: &RatPoly) -> RatPoly {
    let second = &prob.spec.a * &p.derivative_n(2);
    let first = &prob.spec.f * &p.derivative();
    let zeroth = &prob.b * p;
    &(&zeroth - &first) - &second
}
